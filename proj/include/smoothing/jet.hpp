#pragma once

#include "smoothing/multi_index.hpp"
#include "smoothing/series.hpp"

#include <span>
#include <vector>

namespace smoothing {

/// A point of R^d.
using Point = std::vector<double>;
/// An element of the range space F = R^m.
using VectorValue = std::vector<double>;

/// Throws PreconditionError if any entry is NaN or infinite.
void require_finite(std::span<const double> values, const char* what);

/// All partial derivatives d^alpha gamma(x) in R^m for |alpha| <= k at a base point x.
class Jet {
public:
    Jet(Point basepoint, int order, int codim);

    /// Builds a jet from one series per component (normalized coefficients).
    static Jet from_series(Point basepoint, std::span<const Series> components);

    const Point& basepoint() const noexcept { return basepoint_; }
    int dim() const noexcept { return set_->dim(); }
    int order() const noexcept { return set_->order(); }
    int codim() const noexcept { return codim_; }
    const MultiIndexSet& set() const noexcept { return *set_; }

    /// d^alpha gamma(x) for alpha = set()[i], as a span of m components.
    std::span<const double> operator[](std::size_t i) const noexcept
    {
        return {table_.data() + i * static_cast<std::size_t>(codim_), static_cast<std::size_t>(codim_)};
    }
    std::span<double> operator[](std::size_t i) noexcept
    {
        return {table_.data() + i * static_cast<std::size_t>(codim_), static_cast<std::size_t>(codim_)};
    }
    std::span<const double> at(const MultiIndex& alpha) const;

    VectorValue value() const { return VectorValue((*this)[0].begin(), (*this)[0].end()); }

    /// Normalized Taylor series of component c (coefficient = derivative / alpha!).
    Series series(int component) const;

    /// The same jet restricted to a lower order.
    Jet truncated(int order) const;

    bool is_zero() const noexcept;

private:
    Point basepoint_;
    const MultiIndexSet* set_;
    int codim_;
    std::vector<double> table_;
};

} // namespace smoothing
