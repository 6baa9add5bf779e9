#include "smoothing/series.hpp"

#include "smoothing/errors.hpp"

#include <cmath>
#include <string>

namespace smoothing {

namespace {

void require_same_set(const Series& a, const Series& b)
{
    if (&a.set() != &b.set()) {
        throw PreconditionError("series with different (dim, order) combined");
    }
}

// Adds factor * A_j * B_{deg - j} into out over all pairs of degree (j, deg - j).
void accumulate_degree_pair(const Series& a, int j, const Series& b, int deg, double factor, Series& out)
{
    const auto& set = out.set();
    for (std::size_t p = set.degree_begin(j); p < set.degree_end(j); ++p) {
        const double ap = a[p];
        if (ap == 0.0) {
            continue;
        }
        for (std::size_t q = set.degree_begin(deg - j); q < set.degree_end(deg - j); ++q) {
            out[set.sum_index(p, q)] += factor * ap * b[q];
        }
    }
}

} // namespace

Series::Series(const MultiIndexSet& set) : set_(&set), coeffs_(set.size(), 0.0) {}

Series Series::constant(const MultiIndexSet& set, double value)
{
    Series s(set);
    s.coeffs_[0] = value;
    return s;
}

Series Series::variable(const MultiIndexSet& set, int axis, double value)
{
    Series s = constant(set, value);
    if (set.order() >= 1) {
        s.coeffs_[set.index_of(MultiIndex::unit(set.dim(), axis))] = 1.0;
    }
    return s;
}

Series Series::univariate(std::span<const double> coefficients)
{
    Series s(MultiIndexSet::get(1, static_cast<int>(coefficients.size()) - 1));
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        s.coeffs_[i] = coefficients[i];
    }
    return s;
}

Series& Series::operator+=(const Series& other)
{
    require_same_set(*this, other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] += other.coeffs_[i];
    }
    return *this;
}

Series& Series::operator-=(const Series& other)
{
    require_same_set(*this, other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] -= other.coeffs_[i];
    }
    return *this;
}

Series& Series::operator*=(double factor)
{
    for (double& c : coeffs_) {
        c *= factor;
    }
    return *this;
}

Series& Series::add_scaled(const Series& other, double factor)
{
    require_same_set(*this, other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] += factor * other.coeffs_[i];
    }
    return *this;
}

Series operator*(const Series& a, const Series& b)
{
    require_same_set(a, b);
    const auto& set = a.set();
    Series out(set);
    const std::size_t n = set.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double ai = a[i];
        if (ai == 0.0) {
            continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t k = set.sum_index(i, j);
            if (k != MultiIndexSet::npos) {
                out[k] += ai * b[j];
            }
        }
    }
    return out;
}

Series operator/(const Series& a, const Series& b)
{
    require_same_set(a, b);
    const double b0 = b[0];
    if (b0 == 0.0) {
        throw DomainError("division by a series with zero constant term");
    }
    const auto& set = a.set();
    Series q(set);
    for (int deg = 0; deg <= set.order(); ++deg) {
        Series acc(set);
        for (int j = 1; j <= deg; ++j) {
            accumulate_degree_pair(b, j, q, deg, 1.0, acc);
        }
        for (std::size_t i = set.degree_begin(deg); i < set.degree_end(deg); ++i) {
            q[i] = (a[i] - acc[i]) / b0;
        }
    }
    return q;
}

Series reciprocal(const Series& u)
{
    return Series::constant(u.set(), 1.0) / u;
}

Series exp(const Series& u)
{
    const auto& set = u.set();
    Series e(set);
    e[0] = std::exp(u[0]);
    for (int deg = 1; deg <= set.order(); ++deg) {
        for (int j = 1; j <= deg; ++j) {
            accumulate_degree_pair(u, j, e, deg, static_cast<double>(j) / deg, e);
        }
    }
    return e;
}

namespace {

void sincos(const Series& u, Series& s, Series& c)
{
    const auto& set = u.set();
    s[0] = std::sin(u[0]);
    c[0] = std::cos(u[0]);
    for (int deg = 1; deg <= set.order(); ++deg) {
        for (int j = 1; j <= deg; ++j) {
            const double w = static_cast<double>(j) / deg;
            accumulate_degree_pair(u, j, c, deg, w, s);
            accumulate_degree_pair(u, j, s, deg, -w, c);
        }
    }
}

} // namespace

Series sin(const Series& u)
{
    Series s(u.set()), c(u.set());
    sincos(u, s, c);
    return s;
}

Series cos(const Series& u)
{
    Series s(u.set()), c(u.set());
    sincos(u, s, c);
    return c;
}

Series pow(const Series& u, int power)
{
    if (power < 0) {
        throw PreconditionError("negative integer power " + std::to_string(power));
    }
    Series result = Series::constant(u.set(), 1.0);
    Series base = u;
    while (power > 0) {
        if (power & 1) {
            result = result * base;
        }
        power >>= 1;
        if (power > 0) {
            base = base * base;
        }
    }
    return result;
}

Series Series::compose(std::span<const double> outer) const
{
    Series shifted = *this;
    shifted[0] = 0.0;
    // Horner in the nilpotent part; terms beyond the truncation order vanish.
    Series result(*set_);
    const int top = std::min<int>(static_cast<int>(outer.size()) - 1, set_->order());
    for (int k = top; k >= 0; --k) {
        result = result * shifted;
        result[0] += outer[static_cast<std::size_t>(k)];
    }
    return result;
}

Series Series::scaled_argument(double s) const
{
    Series out = *this;
    for (int deg = 1; deg <= set_->order(); ++deg) {
        const double f = std::pow(s, deg);
        for (std::size_t i = set_->degree_begin(deg); i < set_->degree_end(deg); ++i) {
            out.coeffs_[i] *= f;
        }
    }
    return out;
}

Series Series::scaled_axis(int axis, double s) const
{
    Series out = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const int a = (*set_)[i][axis];
        if (a > 0) {
            out.coeffs_[i] *= std::pow(s, a);
        }
    }
    return out;
}

Series Series::embed_axis(const Series& univariate, const MultiIndexSet& set, int axis)
{
    if (univariate.dim() != 1 || univariate.order() < set.order()) {
        throw PreconditionError("embed_axis needs a univariate series of sufficient order");
    }
    Series out(set);
    for (int k = 0; k <= set.order(); ++k) {
        MultiIndex alpha(set.dim());
        alpha.set(axis, k);
        out.coeffs_[set.index_of(alpha)] = univariate[static_cast<std::size_t>(k)];
    }
    return out;
}

Series Series::truncated(int order) const
{
    if (order > set_->order()) {
        throw PreconditionError("cannot raise the truncation order of a series");
    }
    const auto& target = MultiIndexSet::get(set_->dim(), order);
    Series out(target);
    for (std::size_t i = 0; i < target.size(); ++i) {
        out.coeffs_[i] = coeffs_[i];
    }
    return out;
}

} // namespace smoothing
