#include "smoothing/seminorm.hpp"

#include "smoothing/errors.hpp"
#include "smoothing/provider.hpp"

#include <algorithm>
#include <cmath>

namespace smoothing {

SeminormSpec SeminormSpec::coordinate_max()
{
    return {Kind::coordinate_max, {}};
}

SeminormSpec SeminormSpec::euclidean()
{
    return {Kind::euclidean, {}};
}

SeminormSpec SeminormSpec::weighted_max(std::vector<double> weights)
{
    if (weights.empty()) {
        throw PreconditionError("weighted-max seminorm needs at least one weight");
    }
    for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw PreconditionError("weighted-max seminorm weights must be positive and finite");
        }
    }
    return {Kind::weighted_max, std::move(weights)};
}

std::string SeminormSpec::name() const
{
    switch (kind_) {
    case Kind::coordinate_max:
        return "coordinate-max";
    case Kind::euclidean:
        return "euclidean";
    case Kind::weighted_max:
        return "weighted-max";
    }
    return "unknown";
}

double SeminormSpec::operator()(std::span<const double> v) const
{
    double r = 0.0;
    switch (kind_) {
    case Kind::coordinate_max:
        for (double x : v) {
            r = std::max(r, std::abs(x));
        }
        return r;
    case Kind::euclidean:
        for (double x : v) {
            r += x * x;
        }
        return std::sqrt(r);
    case Kind::weighted_max:
        if (weights_.size() != v.size()) {
            throw PreconditionError("weighted-max seminorm has " + std::to_string(weights_.size()) +
                                    " weights but the value has " + std::to_string(v.size()) + " components");
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            r = std::max(r, weights_[i] * std::abs(v[i]));
        }
        return r;
    }
    return r;
}

HomogeneousNormSampler::HomogeneousNormSampler(int dim, int max_degree, int grid_per_axis)
    : dim_(dim), max_degree_(max_degree)
{
    check_dim_order(dim, max_degree);
    if (grid_per_axis < 2) {
        throw PreconditionError("direction grid needs at least 2 points per axis");
    }
    const auto& set = MultiIndexSet::get(dim, max_degree);
    std::vector<int> counter(static_cast<std::size_t>(dim), 0);
    for (;;) {
        Point y(static_cast<std::size_t>(dim));
        bool on_boundary = false;
        for (int i = 0; i < dim; ++i) {
            const int c = counter[static_cast<std::size_t>(i)];
            y[static_cast<std::size_t>(i)] = -1.0 + 2.0 * c / (grid_per_axis - 1);
            on_boundary = on_boundary || c == 0 || c == grid_per_axis - 1;
        }
        if (on_boundary) {
            samples_.push_back(y);
        }
        int axis = 0;
        while (axis < dim && ++counter[static_cast<std::size_t>(axis)] == grid_per_axis) {
            counter[static_cast<std::size_t>(axis)] = 0;
            ++axis;
        }
        if (axis == dim) {
            break;
        }
    }
    monomials_.reserve(samples_.size() * set.size());
    for (const auto& y : samples_) {
        for (const auto& alpha : set.indices()) {
            monomials_.push_back(alpha.power(y));
        }
    }
}

double HomogeneousNormSampler::gateaux_norm(const Jet& jet, int j, const SeminormSpec& q) const
{
    if (jet.dim() != dim_ || j > max_degree_ || j > jet.order()) {
        throw PreconditionError("gateaux_norm: jet does not match the sampler (dim/order)");
    }
    const auto m = static_cast<std::size_t>(jet.codim());
    if (j == 0) {
        return q(jet[0]);
    }
    const auto& big = MultiIndexSet::get(dim_, max_degree_);
    const auto& set = jet.set();
    double jfact = 1.0;
    for (int k = 2; k <= j; ++k) {
        jfact *= k;
    }
    // delta^j_x gamma(y) = sum_{|alpha| = j} j!/alpha! d^alpha gamma(x) y^alpha
    std::vector<double> weights;
    std::vector<std::size_t> positions;
    for (std::size_t i = set.degree_begin(j); i < set.degree_end(j); ++i) {
        weights.push_back(jfact / set.factorial(i));
        positions.push_back(i);
    }
    std::vector<double> value(m);
    double best = 0.0;
    for (std::size_t s = 0; s < samples_.size(); ++s) {
        std::fill(value.begin(), value.end(), 0.0);
        for (std::size_t t = 0; t < positions.size(); ++t) {
            // Both sets share the graded ordering, so positions agree.
            const double mono = monomials_[s * big.size() + positions[t]] * weights[t];
            const auto d = jet[positions[t]];
            for (std::size_t c = 0; c < m; ++c) {
                value[c] += mono * d[c];
            }
        }
        best = std::max(best, q(value));
    }
    return best;
}

double ClSeminormProfile::total() const
{
    double r = 0.0;
    for (double v : by_degree) {
        r = std::max(r, v);
    }
    return r;
}

std::vector<double> jet_seminorm_by_degree(const Jet& jet, int order, const SeminormSpec& q, SeminormFlavor flavor,
                                           const HomogeneousNormSampler* sampler)
{
    if (jet.order() < order) {
        throw PreconditionError("jet order " + std::to_string(jet.order()) + " below seminorm order " +
                                std::to_string(order));
    }
    std::vector<double> out(static_cast<std::size_t>(order) + 1, 0.0);
    const auto& set = jet.set();
    if (flavor == SeminormFlavor::partial) {
        for (int j = 0; j <= order; ++j) {
            for (std::size_t i = set.degree_begin(j); i < set.degree_end(j); ++i) {
                out[static_cast<std::size_t>(j)] = std::max(out[static_cast<std::size_t>(j)], q(jet[i]));
            }
        }
        return out;
    }
    if (sampler == nullptr) {
        throw PreconditionError("Gateaux seminorm requires a direction sampler");
    }
    for (int j = 0; j <= order; ++j) {
        out[static_cast<std::size_t>(j)] = sampler->gateaux_norm(jet, j, q);
    }
    return out;
}

ClSeminormProfile seminorm_profile(const JetProvider& provider, std::span<const Point> grid, int order,
                                   const SeminormSpec& q, SeminormFlavor flavor)
{
    ClSeminormProfile profile;
    profile.by_degree.assign(static_cast<std::size_t>(order) + 1, 0.0);
    std::unique_ptr<HomogeneousNormSampler> sampler;
    if (flavor == SeminormFlavor::gateaux) {
        sampler = std::make_unique<HomogeneousNormSampler>(provider.dim(), std::max(order, 1));
    }
    for (const auto& x : grid) {
        const Jet jet = provider.jet(x, order);
        const auto values = jet_seminorm_by_degree(jet, order, q, flavor, sampler.get());
        for (std::size_t j = 0; j < values.size(); ++j) {
            profile.by_degree[j] = std::max(profile.by_degree[j], values[j]);
        }
    }
    return profile;
}

double seminorm_Cl(const JetProvider& provider, std::span<const Point> grid, int order, const SeminormSpec& q,
                   SeminormFlavor flavor)
{
    return seminorm_profile(provider, grid, order, q, flavor).total();
}

} // namespace smoothing
