#include "smoothing/polynomial.hpp"

#include "smoothing/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace smoothing {

PolynomialMap::PolynomialMap(int dim, int degree, int codim)
    : set_(&MultiIndexSet::get(dim, degree)), codim_(codim)
{
    if (codim < 1) {
        throw PreconditionError("polynomial codimension must be at least 1");
    }
    coeffs_.assign(set_->size() * static_cast<std::size_t>(codim), 0.0);
}

std::span<const double> PolynomialMap::coefficient(const MultiIndex& alpha) const
{
    const std::size_t i = set_->index_of(alpha);
    if (i == MultiIndexSet::npos) {
        throw PreconditionError("multi-index " + alpha.to_string() + " exceeds polynomial degree");
    }
    return coefficient(i);
}

VectorValue PolynomialMap::operator()(std::span<const double> y) const
{
    if (static_cast<int>(y.size()) != dim()) {
        throw PreconditionError("polynomial evaluated at a point of the wrong dimension");
    }
    VectorValue out(static_cast<std::size_t>(codim_), 0.0);
    for (std::size_t i = 0; i < set_->size(); ++i) {
        const double mono = (*set_)[i].power(y);
        const auto c = coefficient(i);
        for (std::size_t k = 0; k < out.size(); ++k) {
            out[k] += mono * c[k];
        }
    }
    return out;
}

PolynomialMap PolynomialMap::derivative(int axis) const
{
    if (axis < 0 || axis >= dim()) {
        throw PreconditionError("derivative axis out of range");
    }
    PolynomialMap out(dim(), std::max(degree() - 1, 0), codim_);
    for (std::size_t i = 0; i < set_->size(); ++i) {
        const MultiIndex& alpha = (*set_)[i];
        if (alpha[axis] == 0) {
            continue;
        }
        MultiIndex lowered = alpha;
        lowered.set(axis, alpha[axis] - 1);
        auto target = out.coefficient(out.set().index_of(lowered));
        const auto c = coefficient(i);
        for (std::size_t k = 0; k < target.size(); ++k) {
            target[k] += alpha[axis] * c[k];
        }
    }
    return out;
}

PolynomialMap PolynomialMap::homogeneous_part(int j) const
{
    PolynomialMap out(dim(), degree(), codim_);
    if (j < 0 || j > degree()) {
        return out;
    }
    for (std::size_t i = set_->degree_begin(j); i < set_->degree_end(j); ++i) {
        std::copy_n(coefficient(i).begin(), codim_, out.coefficient(i).begin());
    }
    return out;
}

bool PolynomialMap::is_homogeneous(int j) const noexcept
{
    for (std::size_t i = 0; i < set_->size(); ++i) {
        if ((*set_)[i].order() == j) {
            continue;
        }
        for (double c : coefficient(i)) {
            if (c != 0.0) {
                return false;
            }
        }
    }
    return true;
}

bool PolynomialMap::is_zero() const noexcept
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
}

std::vector<Series> PolynomialMap::shifted_series(std::span<const double> u, int order) const
{
    const auto& target = MultiIndexSet::get(dim(), order);
    std::vector<Series> out(static_cast<std::size_t>(codim_), Series(target));
    const int d = dim();
    // powers[i][e] = u_i^e
    std::vector<std::vector<double>> powers(static_cast<std::size_t>(d), std::vector<double>(degree() + 1, 1.0));
    for (int i = 0; i < d; ++i) {
        for (int e = 1; e <= degree(); ++e) {
            powers[i][e] = powers[i][e - 1] * u[static_cast<std::size_t>(i)];
        }
    }
    for (std::size_t a = 0; a < set_->size(); ++a) {
        const MultiIndex& alpha = (*set_)[a];
        const auto c = coefficient(a);
        if (std::all_of(c.begin(), c.end(), [](double v) { return v == 0.0; })) {
            continue;
        }
        for (std::size_t b = 0; b < target.size(); ++b) {
            const MultiIndex& beta = target[b];
            if (!beta.dominated_by(alpha)) {
                continue;
            }
            double w = 1.0;
            for (int i = 0; i < d; ++i) {
                w *= binomial(alpha[i], beta[i]) * powers[i][alpha[i] - beta[i]];
            }
            for (std::size_t k = 0; k < out.size(); ++k) {
                out[k][b] += w * c[k];
            }
        }
    }
    return out;
}

PolynomialMap& PolynomialMap::operator*=(double factor)
{
    for (double& c : coeffs_) {
        c *= factor;
    }
    return *this;
}

PolynomialMap& PolynomialMap::add_scaled(const PolynomialMap& other, double factor)
{
    if (other.set_ != set_ || other.codim_ != codim_) {
        throw PreconditionError("adding polynomials of different shapes");
    }
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] += factor * other.coeffs_[i];
    }
    return *this;
}

PolynomialMap taylor_polynomial(const Jet& jet, int order)
{
    if (order < 0 || jet.order() < order) {
        throw PreconditionError("Taylor polynomial of order " + std::to_string(order) + " needs a jet of order >= " +
                                std::to_string(order) + ", got " + std::to_string(jet.order()));
    }
    PolynomialMap p(jet.dim(), order, jet.codim());
    const auto& set = p.set();
    for (std::size_t i = 0; i < set.size(); ++i) {
        const auto d = jet[i];
        auto c = p.coefficient(i);
        if (i == 0) {
            std::copy(d.begin(), d.end(), c.begin());
            continue;
        }
        const double f = set.factorial(i);
        for (std::size_t k = 0; k < c.size(); ++k) {
            c[k] = d[k] / f;
        }
    }
    return p;
}

SymmetricForm::SymmetricForm(int dim, int arity, int codim)
    : dim_(dim), arity_(arity), codim_(codim), set_(&MultiIndexSet::get(dim, arity))
{
    if (codim < 1) {
        throw PreconditionError("symmetric form codimension must be at least 1");
    }
    entries_.assign((set_->degree_end(arity) - set_->degree_begin(arity)) * static_cast<std::size_t>(codim), 0.0);
}

std::size_t SymmetricForm::slot(const MultiIndex& counts) const
{
    if (counts.dim() != dim_ || counts.order() != arity_) {
        throw PreconditionError("symmetric form entry needs index counts summing to the arity");
    }
    return (set_->index_of(counts) - set_->degree_begin(arity_)) * static_cast<std::size_t>(codim_);
}

std::span<const double> SymmetricForm::entry(const MultiIndex& counts) const
{
    return {entries_.data() + slot(counts), static_cast<std::size_t>(codim_)};
}

std::span<double> SymmetricForm::entry(const MultiIndex& counts)
{
    return {entries_.data() + slot(counts), static_cast<std::size_t>(codim_)};
}

VectorValue SymmetricForm::operator()(std::span<const Point> args) const
{
    if (static_cast<int>(args.size()) != arity_) {
        throw PreconditionError("symmetric form applied to the wrong number of arguments");
    }
    VectorValue out(static_cast<std::size_t>(codim_), 0.0);
    if (arity_ == 0) {
        const auto e = entry(MultiIndex(dim_));
        std::copy(e.begin(), e.end(), out.begin());
        return out;
    }
    // Sum over all index tuples (i_1, ..., i_j) in {0..d-1}^j.
    std::vector<int> tuple(static_cast<std::size_t>(arity_), 0);
    for (;;) {
        double w = 1.0;
        MultiIndex counts(dim_);
        for (int k = 0; k < arity_; ++k) {
            const int axis = tuple[static_cast<std::size_t>(k)];
            w *= args[static_cast<std::size_t>(k)][static_cast<std::size_t>(axis)];
            counts.set(axis, counts[axis] + 1);
        }
        if (w != 0.0) {
            const auto e = entry(counts);
            for (std::size_t c = 0; c < out.size(); ++c) {
                out[c] += w * e[c];
            }
        }
        int k = 0;
        while (k < arity_ && ++tuple[static_cast<std::size_t>(k)] == dim_) {
            tuple[static_cast<std::size_t>(k)] = 0;
            ++k;
        }
        if (k == arity_) {
            break;
        }
    }
    return out;
}

VectorValue SymmetricForm::diagonal(std::span<const double> y) const
{
    std::vector<Point> args(static_cast<std::size_t>(arity_), Point(y.begin(), y.end()));
    return (*this)(args);
}

PolynomialMap SymmetricForm::diagonal_polynomial() const
{
    PolynomialMap p(dim_, arity_, codim_);
    double jfact = 1.0;
    for (int k = 2; k <= arity_; ++k) {
        jfact *= k;
    }
    for (std::size_t i = set_->degree_begin(arity_); i < set_->degree_end(arity_); ++i) {
        const double w = jfact / set_->factorial(i);
        const auto e = entry((*set_)[i]);
        auto c = p.coefficient(i);
        for (std::size_t k = 0; k < c.size(); ++k) {
            c[k] = w * e[k];
        }
    }
    return p;
}

SymmetricForm polarize(const PolynomialMap& p, int j)
{
    if (j < 1) {
        throw PreconditionError("polarization needs degree j >= 1");
    }
    if (!p.is_homogeneous(j)) {
        throw PreconditionError("polarization input is not homogeneous of degree " + std::to_string(j));
    }
    const int d = p.dim();
    SymmetricForm beta(d, j, p.codim());
    const auto& set = MultiIndexSet::get(d, j);
    double jfact = 1.0;
    for (int k = 2; k <= j; ++k) {
        jfact *= k;
    }
    for (std::size_t i = set.degree_begin(j); i < set.degree_end(j); ++i) {
        const MultiIndex& counts = set[i];
        // The sorted tuple of axes represented by `counts`.
        std::vector<int> axes;
        for (int a = 0; a < d; ++a) {
            for (int r = 0; r < counts[a]; ++r) {
                axes.push_back(a);
            }
        }
        VectorValue acc(static_cast<std::size_t>(p.codim()), 0.0);
        for (unsigned mask = 0; mask < (1u << j); ++mask) {
            Point y(static_cast<std::size_t>(d), 0.0);
            int ones = 0;
            for (int k = 0; k < j; ++k) {
                if (mask & (1u << k)) {
                    y[static_cast<std::size_t>(axes[static_cast<std::size_t>(k)])] += 1.0;
                    ++ones;
                }
            }
            const double sign = ((j - ones) % 2 == 0) ? 1.0 : -1.0;
            const VectorValue v = p.degree() >= j ? p(y) : VectorValue(acc.size(), 0.0);
            for (std::size_t c = 0; c < acc.size(); ++c) {
                acc[c] += sign * v[c];
            }
        }
        auto e = beta.entry(counts);
        for (std::size_t c = 0; c < acc.size(); ++c) {
            e[c] = acc[c] / jfact;
        }
    }
    return beta;
}

std::vector<Point> unit_ball_samples(int dim, const SampleScheme& scheme)
{
    if (scheme.grid_per_axis < 2 && scheme.random_points <= 0) {
        throw PreconditionError("sample scheme must produce at least one point");
    }
    std::vector<Point> out;
    if (scheme.grid_per_axis >= 2) {
        std::vector<int> counter(static_cast<std::size_t>(dim), 0);
        for (;;) {
            Point y(static_cast<std::size_t>(dim));
            for (int i = 0; i < dim; ++i) {
                y[static_cast<std::size_t>(i)] =
                    -1.0 + 2.0 * counter[static_cast<std::size_t>(i)] / (scheme.grid_per_axis - 1);
            }
            out.push_back(std::move(y));
            int axis = 0;
            while (axis < dim && ++counter[static_cast<std::size_t>(axis)] == scheme.grid_per_axis) {
                counter[static_cast<std::size_t>(axis)] = 0;
                ++axis;
            }
            if (axis == dim) {
                break;
            }
        }
    }
    std::mt19937_64 rng(scheme.seed);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    for (int s = 0; s < scheme.random_points; ++s) {
        Point y(static_cast<std::size_t>(dim));
        for (double& v : y) {
            v = uniform(rng);
        }
        out.push_back(std::move(y));
    }
    return out;
}

double form_norm(const PolynomialMap& p, const SeminormSpec& q, const SampleScheme& scheme)
{
    double best = 0.0;
    for (const auto& y : unit_ball_samples(p.dim(), scheme)) {
        best = std::max(best, q(p(y)));
    }
    return best;
}

double diagonal_norm(const SymmetricForm& beta, const SeminormSpec& q, const SampleScheme& scheme)
{
    double best = 0.0;
    for (const auto& y : unit_ball_samples(beta.dim(), scheme)) {
        best = std::max(best, q(beta.diagonal(y)));
    }
    return best;
}

double form_norm(const SymmetricForm& beta, const SeminormSpec& q, const SampleScheme& scheme,
                 std::size_t vertex_limit)
{
    const int d = beta.dim();
    const int j = beta.arity();
    if (j == 0) {
        return q(beta(std::span<const Point>{}));
    }
    const std::size_t vertices = std::size_t{1} << d;
    auto vertex = [d](std::size_t code) {
        Point v(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            v[static_cast<std::size_t>(i)] = (code >> i) & 1u ? 1.0 : -1.0;
        }
        return v;
    };
    double total = 1.0;
    for (int k = 0; k < j; ++k) {
        total *= static_cast<double>(vertices);
    }
    double best = 0.0;
    std::vector<Point> args(static_cast<std::size_t>(j));
    if (total <= static_cast<double>(vertex_limit)) {
        std::vector<std::size_t> tuple(static_cast<std::size_t>(j), 0);
        for (;;) {
            for (int k = 0; k < j; ++k) {
                args[static_cast<std::size_t>(k)] = vertex(tuple[static_cast<std::size_t>(k)]);
            }
            best = std::max(best, q(beta(args)));
            int k = 0;
            while (k < j && ++tuple[static_cast<std::size_t>(k)] == vertices) {
                tuple[static_cast<std::size_t>(k)] = 0;
                ++k;
            }
            if (k == j) {
                break;
            }
        }
        return best;
    }
    std::mt19937_64 rng(scheme.seed);
    std::uniform_int_distribution<std::size_t> pick(0, vertices - 1);
    const int draws = std::max(scheme.random_points, 1);
    for (int s = 0; s < draws; ++s) {
        for (int k = 0; k < j; ++k) {
            args[static_cast<std::size_t>(k)] = vertex(pick(rng));
        }
        best = std::max(best, q(beta(args)));
    }
    // Diagonal samples keep ||beta-bar|| <= ||beta|| on shared sample sets.
    return std::max(best, diagonal_norm(beta, q, scheme));
}

double polarization_constant(int j)
{
    double num = 1.0;
    double den = 1.0;
    for (int k = 1; k <= j; ++k) {
        num *= 2.0 * j;
        den *= k;
    }
    return num / den;
}

} // namespace smoothing
