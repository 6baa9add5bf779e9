#pragma once

#include "smoothing/jet.hpp"
#include "smoothing/seminorm.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace smoothing {

/// Vector-valued polynomial p(y) = sum_{|alpha| <= degree} y^alpha c_alpha, c_alpha in R^m.
class PolynomialMap {
public:
    PolynomialMap(int dim, int degree, int codim);

    int dim() const noexcept { return set_->dim(); }
    int degree() const noexcept { return set_->order(); }
    int codim() const noexcept { return codim_; }
    const MultiIndexSet& set() const noexcept { return *set_; }

    std::span<const double> coefficient(std::size_t i) const noexcept
    {
        return {coeffs_.data() + i * static_cast<std::size_t>(codim_), static_cast<std::size_t>(codim_)};
    }
    std::span<double> coefficient(std::size_t i) noexcept
    {
        return {coeffs_.data() + i * static_cast<std::size_t>(codim_), static_cast<std::size_t>(codim_)};
    }
    std::span<const double> coefficient(const MultiIndex& alpha) const;
    std::span<const double> raw() const noexcept { return coeffs_; }

    VectorValue operator()(std::span<const double> y) const;

    /// d/dy_axis; a polynomial of degree one less (degree 0 stays degree 0).
    PolynomialMap derivative(int axis) const;

    /// Terms of total degree exactly j (as a polynomial of the same container degree).
    PolynomialMap homogeneous_part(int j) const;
    /// True if every coefficient with |alpha| != j is zero.
    bool is_homogeneous(int j) const noexcept;
    bool is_zero() const noexcept;

    /// Normalized Taylor series of y -> p(u + y) per component, truncated at `order`.
    std::vector<Series> shifted_series(std::span<const double> u, int order) const;

    PolynomialMap& operator*=(double factor);
    PolynomialMap& add_scaled(const PolynomialMap& other, double factor);

    friend bool operator==(const PolynomialMap& a, const PolynomialMap& b)
    {
        return a.set_ == b.set_ && a.codim_ == b.codim_ && a.coeffs_ == b.coeffs_;
    }

private:
    const MultiIndexSet* set_;
    int codim_;
    std::vector<double> coeffs_;
};

/// l-th order Taylor polynomial y -> sum_{|alpha| <= l} d^alpha gamma(x) y^alpha / alpha!.
/// Throws PreconditionError if jet.order() < order.
PolynomialMap taylor_polynomial(const Jet& jet, int order);

/// Symmetric j-linear map beta: (R^d)^j -> R^m, stored once per sorted index
/// tuple (i_1 <= ... <= i_j), keyed by the multi-index of index counts.
class SymmetricForm {
public:
    SymmetricForm(int dim, int arity, int codim);

    int dim() const noexcept { return dim_; }
    int arity() const noexcept { return arity_; }
    int codim() const noexcept { return codim_; }

    /// beta(e_{i_1}, ..., e_{i_j}) where alpha counts the occurrences of each axis (|alpha| == arity).
    std::span<const double> entry(const MultiIndex& counts) const;
    std::span<double> entry(const MultiIndex& counts);

    /// Multilinear evaluation beta(args[0], ..., args[j-1]).
    VectorValue operator()(std::span<const Point> args) const;
    /// beta(y, ..., y).
    VectorValue diagonal(std::span<const double> y) const;
    /// The homogeneous polynomial beta-bar of degree j.
    PolynomialMap diagonal_polynomial() const;

private:
    std::size_t slot(const MultiIndex& counts) const;

    int dim_;
    int arity_;
    int codim_;
    const MultiIndexSet* set_;
    std::vector<double> entries_;
};

/// Recovers the symmetric j-linear form of a homogeneous polynomial of degree j
/// from the 2^j-term signed polarization sum. Throws PreconditionError if p has
/// non-zero terms of another degree or j < 1.
SymmetricForm polarize(const PolynomialMap& p, int j);

/// Deterministic sampling scheme for suprema over the closed max-norm unit ball.
struct SampleScheme {
    int grid_per_axis = 21;
    int random_points = 0;
    std::uint64_t seed = 0;
};

/// Sampled sup_{||y||_inf <= 1} q(p(y)).
double form_norm(const PolynomialMap& p, const SeminormSpec& q, const SampleScheme& scheme = {});

/// sup over (y_1..y_j) in the unit ball^j of q(beta(y_1, ..., y_j)). Multilinearity
/// puts the supremum at vertex tuples; all (2^d)^j of them are enumerated when
/// there are at most `vertex_limit`, otherwise `scheme.random_points` seeded
/// vertex tuples are drawn.
double form_norm(const SymmetricForm& beta, const SeminormSpec& q, const SampleScheme& scheme = {},
                 std::size_t vertex_limit = 1u << 16);

/// sup of q(beta(y, ..., y)) over the same sample points as form_norm(PolynomialMap).
double diagonal_norm(const SymmetricForm& beta, const SeminormSpec& q, const SampleScheme& scheme = {});

/// The polarization constant (2j)^j / j!.
double polarization_constant(int j);

/// Deterministic sample points of [-1,1]^d (grid plus seeded uniform points).
std::vector<Point> unit_ball_samples(int dim, const SampleScheme& scheme);

} // namespace smoothing
