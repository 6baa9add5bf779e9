#pragma once

#include "smoothing/multi_index.hpp"

#include <span>
#include <vector>

namespace smoothing {

/// Truncated Taylor series in d variables around an (implicit) base point:
/// f(x + t) = sum_{|alpha| <= k} c_alpha t^alpha + O(|t|^{k+1}),
/// stored as normalized coefficients c_alpha = d^alpha f(x) / alpha!.
///
/// Arithmetic is coefficient-exact truncated arithmetic (Leibniz products,
/// homogeneous-degree recurrences for exp/sin/cos and the quotient). With
/// d == 1 this is ordinary univariate Taylor-mode differentiation.
class Series {
public:
    explicit Series(const MultiIndexSet& set);

    static Series constant(const MultiIndexSet& set, double value);
    /// The coordinate function x_axis expanded around a base point with x_axis == value.
    static Series variable(const MultiIndexSet& set, int axis, double value);
    /// Univariate series from coefficients c_0..c_k.
    static Series univariate(std::span<const double> coefficients);

    const MultiIndexSet& set() const noexcept { return *set_; }
    int dim() const noexcept { return set_->dim(); }
    int order() const noexcept { return set_->order(); }
    std::size_t size() const noexcept { return coeffs_.size(); }

    double operator[](std::size_t i) const noexcept { return coeffs_[i]; }
    double& operator[](std::size_t i) noexcept { return coeffs_[i]; }
    std::span<const double> coefficients() const noexcept { return coeffs_; }

    double value() const noexcept { return coeffs_[0]; }
    /// Partial derivative d^alpha f at the base point, alpha = set()[i].
    double derivative(std::size_t i) const noexcept { return coeffs_[i] * set_->factorial(i); }

    Series& operator+=(const Series& other);
    Series& operator-=(const Series& other);
    Series& operator*=(double factor);
    Series& add_scaled(const Series& other, double factor);

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator*(Series a, double s) { return a *= s; }
    friend Series operator*(double s, Series a) { return a *= s; }
    friend Series operator-(Series a) { return a *= -1.0; }
    friend Series operator*(const Series& a, const Series& b);
    /// Throws DomainError when b has a zero constant term.
    friend Series operator/(const Series& a, const Series& b);

    /// sum_k outer[k] * (f - f(x))^k: composition with a univariate series
    /// whose coefficients are taken at the point f(x).
    Series compose(std::span<const double> outer) const;

    /// Multiplies every coefficient c_alpha by s^{|alpha|} (chain rule for x -> s x).
    Series scaled_argument(double s) const;

    /// Multiplies c_alpha by s^{alpha_axis} (chain rule for x_axis -> s x_axis).
    Series scaled_axis(int axis, double s) const;

    /// Embeds a univariate series as a function of coordinate `axis` of `set`.
    static Series embed_axis(const Series& univariate, const MultiIndexSet& set, int axis);

    /// Drops all terms of degree above `order` (which must not exceed the current order).
    Series truncated(int order) const;

private:
    const MultiIndexSet* set_;
    std::vector<double> coeffs_;
};

Series exp(const Series& u);
Series sin(const Series& u);
Series cos(const Series& u);
/// 1 / u; throws DomainError when u has a zero constant term.
Series reciprocal(const Series& u);
/// u^power for a non-negative integer power.
Series pow(const Series& u, int power);

} // namespace smoothing
