#include "smoothing/bump.hpp"

#include "smoothing/errors.hpp"
#include "smoothing/seminorm.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <tuple>

namespace smoothing {

double bump_profile(double t)
{
    if (!(std::abs(t) < 1.0)) {
        return 0.0;
    }
    return std::exp(-1.0 / (1.0 - t * t));
}

Series bump_profile_series(double t, int order)
{
    const auto& set = MultiIndexSet::get(1, order);
    if (!(std::abs(t) < 1.0)) {
        return Series(set);
    }
    const Series x = Series::variable(set, 0, t);
    const Series u = Series::constant(set, 1.0) - x * x;
    return exp(Series::constant(set, -1.0) / u);
}

namespace {

// xi(y - w) as a d-variate series from per-axis univariate profile series.
Series product_series(const std::vector<const Series*>& axes, const MultiIndexSet& set)
{
    Series out(set);
    for (std::size_t i = 0; i < set.size(); ++i) {
        double c = 1.0;
        for (int a = 0; a < set.dim(); ++a) {
            c *= (*axes[static_cast<std::size_t>(a)])[static_cast<std::size_t>(set[i][a])];
        }
        out[i] = c;
    }
    return out;
}

} // namespace

Jet bump_jet(std::span<const double> x, int order)
{
    const int d = static_cast<int>(x.size());
    const auto& set = MultiIndexSet::get(d, order);
    std::vector<Series> axes;
    axes.reserve(x.size());
    for (double xi : x) {
        axes.push_back(bump_profile_series(xi, order));
    }
    std::vector<const Series*> ptrs;
    for (const auto& s : axes) {
        ptrs.push_back(&s);
    }
    const Series xi = product_series(ptrs, set);
    return Jet::from_series(Point(x.begin(), x.end()), std::span<const Series>(&xi, 1));
}

PartitionTerms partition_series(std::span<const double> y, int order)
{
    const int d = static_cast<int>(y.size());
    const auto& set = MultiIndexSet::get(d, order);

    // Per axis: the (at most two) integers w with |y_i - w| < 1 and their profile series.
    std::vector<std::vector<int>> cand(static_cast<std::size_t>(d));
    std::vector<std::vector<Series>> cand_series(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) {
        const double ya = y[static_cast<std::size_t>(a)];
        const double base = std::floor(ya);
        for (double w : {base, base + 1.0}) {
            if (std::abs(ya - w) < 1.0) {
                Series s = bump_profile_series(ya - w, order);
                if (s.value() > 0.0) {
                    cand[static_cast<std::size_t>(a)].push_back(static_cast<int>(w));
                    cand_series[static_cast<std::size_t>(a)].push_back(std::move(s));
                }
            }
        }
        if (cand[static_cast<std::size_t>(a)].empty()) {
            throw InvariantError(fmt::format("partition denominator vanishes at coordinate {}", ya));
        }
    }

    PartitionTerms terms;
    std::vector<std::size_t> pick(static_cast<std::size_t>(d), 0);
    std::vector<const Series*> ptrs(static_cast<std::size_t>(d));
    Series denominator(set);
    for (;;) {
        LatticePoint w(static_cast<std::size_t>(d));
        for (int a = 0; a < d; ++a) {
            w[static_cast<std::size_t>(a)] = cand[static_cast<std::size_t>(a)][pick[static_cast<std::size_t>(a)]];
            ptrs[static_cast<std::size_t>(a)] = &cand_series[static_cast<std::size_t>(a)][pick[static_cast<std::size_t>(a)]];
        }
        terms.points.push_back(std::move(w));
        terms.values.push_back(product_series(ptrs, set));
        denominator += terms.values.back();
        int a = 0;
        while (a < d && ++pick[static_cast<std::size_t>(a)] == cand[static_cast<std::size_t>(a)].size()) {
            pick[static_cast<std::size_t>(a)] = 0;
            ++a;
        }
        if (a == d) {
            break;
        }
    }
    if (!(denominator.value() > 0.0)) {
        throw InvariantError("partition denominator is not positive");
    }
    const Series inverse = reciprocal(denominator);
    for (auto& v : terms.values) {
        v = v * inverse;
    }
    return terms;
}

Jet partition_jet(std::span<const int> z, std::span<const double> x, int order)
{
    const PartitionTerms terms = partition_series(x, order);
    for (std::size_t t = 0; t < terms.points.size(); ++t) {
        if (std::equal(z.begin(), z.end(), terms.points[t].begin(), terms.points[t].end())) {
            return Jet::from_series(Point(x.begin(), x.end()), std::span<const Series>(&terms.values[t], 1));
        }
    }
    return Jet(Point(x.begin(), x.end()), order, 1);
}

Jet scaled_partition_jet(int n, std::span<const int> z, std::span<const double> x, int order)
{
    if (n < 1) {
        throw PreconditionError("partition scale must be >= 1");
    }
    Point y(x.begin(), x.end());
    for (double& v : y) {
        v *= n;
    }
    const PartitionTerms terms = partition_series(y, order);
    for (std::size_t t = 0; t < terms.points.size(); ++t) {
        if (std::equal(z.begin(), z.end(), terms.points[t].begin(), terms.points[t].end())) {
            const Series s = terms.values[t].scaled_argument(static_cast<double>(n));
            return Jet::from_series(Point(x.begin(), x.end()), std::span<const Series>(&s, 1));
        }
    }
    return Jet(Point(x.begin(), x.end()), order, 1);
}

namespace {

double shifted_profile(double v)
{
    return bump_profile(2.0 * v - 1.0);
}

double integrate_profile(double upper)
{
    using boost::math::quadrature::gauss_kronrod;
    return gauss_kronrod<double, 31>::integrate(shifted_profile, 0.0, upper, 6, 1e-13);
}

double profile_mass()
{
    static const double mass = integrate_profile(1.0);
    return mass;
}

} // namespace

double smooth_step(double u)
{
    if (u <= 0.0) {
        return 0.0;
    }
    if (u >= 1.0) {
        return 1.0;
    }
    // Integrate over the shorter side for accuracy near both ends.
    if (u <= 0.5) {
        return integrate_profile(u) / profile_mass();
    }
    using boost::math::quadrature::gauss_kronrod;
    const double tail = gauss_kronrod<double, 31>::integrate(shifted_profile, u, 1.0, 6, 1e-13);
    return 1.0 - tail / profile_mass();
}

Series smooth_step_series(double u, int order)
{
    const auto& set = MultiIndexSet::get(1, order);
    Series out(set);
    out[0] = smooth_step(u);
    if (order == 0 || u <= 0.0 || u >= 1.0) {
        return out;
    }
    // G' = g(2u - 1) / mass, so c_k = [g(2u-1)]_{k-1} / (k * mass).
    const Series inner = bump_profile_series(2.0 * u - 1.0, order - 1).scaled_argument(2.0);
    for (int k = 1; k <= order; ++k) {
        out[static_cast<std::size_t>(k)] = inner[static_cast<std::size_t>(k - 1)] / (k * profile_mass());
    }
    return out;
}

std::string PartitionNorm::describe() const
{
    return fmt::format("||h_0||_C^{} = {:.17g} (d={}, Gateaux norms over the max-norm unit ball; grid step {:g} on "
                       "[0,1]^d with seeded offset, seed {}, {} points, {} direction samples per axis; bump {})",
                       order, value, dim, step, seed, points, direction_grid, kBumpDefinition);
}

double default_partition_norm_step(int dim)
{
    switch (dim) {
    case 1:
        return 1e-3;
    case 2:
        return 1e-2;
    case 3:
        return 5e-2;
    default:
        return 1e-1;
    }
}

PartitionNorm compute_partition_norm(int dim, int order, double step, std::uint64_t seed)
{
    check_dim_order(dim, order);
    if (!(step > 0.0 && step <= 0.5)) {
        throw PreconditionError("partition norm grid step must lie in (0, 0.5]");
    }
    PartitionNorm result;
    result.dim = dim;
    result.order = order;
    result.step = step;
    result.seed = seed;
    result.direction_grid = dim <= 2 ? 21 : (dim == 3 ? 9 : 5);
    result.by_degree.assign(static_cast<std::size_t>(order) + 1, 0.0);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, step);
    std::vector<double> offset(static_cast<std::size_t>(dim));
    for (double& o : offset) {
        o = seed == 0 ? 0.0 : uniform(rng);
    }
    const HomogeneousNormSampler sampler(dim, std::max(order, 1), result.direction_grid);
    const SeminormSpec q = SeminormSpec::coordinate_max();
    const LatticePoint origin(static_cast<std::size_t>(dim), 0);

    std::vector<int> counts(static_cast<std::size_t>(dim));
    for (int a = 0; a < dim; ++a) {
        counts[static_cast<std::size_t>(a)] =
            static_cast<int>(std::floor((1.0 - offset[static_cast<std::size_t>(a)]) / step)) + 1;
    }
    std::vector<int> counter(static_cast<std::size_t>(dim), 0);
    Point x(static_cast<std::size_t>(dim));
    for (;;) {
        for (int a = 0; a < dim; ++a) {
            x[static_cast<std::size_t>(a)] =
                offset[static_cast<std::size_t>(a)] + step * counter[static_cast<std::size_t>(a)];
        }
        const Jet jet = partition_jet(origin, x, order);
        for (int j = 0; j <= order; ++j) {
            auto& slot = result.by_degree[static_cast<std::size_t>(j)];
            slot = std::max(slot, sampler.gateaux_norm(jet, j, q));
        }
        ++result.points;
        int a = 0;
        while (a < dim && ++counter[static_cast<std::size_t>(a)] == counts[static_cast<std::size_t>(a)]) {
            counter[static_cast<std::size_t>(a)] = 0;
            ++a;
        }
        if (a == dim) {
            break;
        }
    }
    result.value = *std::max_element(result.by_degree.begin(), result.by_degree.end());
    return result;
}

const PartitionNorm& partition_norm(int dim, int order, std::uint64_t seed)
{
    static std::mutex mutex;
    static std::map<std::tuple<int, int, std::uint64_t>, std::unique_ptr<const PartitionNorm>> cache;
    {
        std::lock_guard lock(mutex);
        auto it = cache.find({dim, order, seed});
        if (it != cache.end()) {
            return *it->second;
        }
    }
    auto computed = std::make_unique<const PartitionNorm>(
        compute_partition_norm(dim, order, default_partition_norm_step(dim), seed));
    std::lock_guard lock(mutex);
    auto [it, inserted] = cache.emplace(std::tuple{dim, order, seed}, std::move(computed));
    return *it->second;
}

double smoothing_bound_constant(int dim, int order, double h0_norm)
{
    const double growth = order == 0 ? 1.0 : std::pow(2.0 * order, order);
    return 1.0 + (order + 1) * std::pow(2.0, dim + 1) * growth * h0_norm;
}

BumpProvider::BumpProvider(Point center, std::vector<double> radius, VectorValue direction)
    : center_(std::move(center)), radius_(std::move(radius)), direction_(std::move(direction))
{
    if (center_.size() != radius_.size() || direction_.empty()) {
        throw PreconditionError("bump provider needs matching center/radius and a non-empty direction");
    }
    for (double r : radius_) {
        if (!(r > 0.0)) {
            throw PreconditionError("bump radius must be positive");
        }
    }
}

Jet BumpProvider::jet(std::span<const double> x, int order) const
{
    Point local(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        local[i] = (x[i] - center_[i]) / radius_[i];
    }
    Jet unit = bump_jet(local, order);
    Jet out(Point(x.begin(), x.end()), order, codim());
    const auto& set = out.set();
    for (std::size_t i = 0; i < set.size(); ++i) {
        double chain = 1.0;
        for (int a = 0; a < set.dim(); ++a) {
            chain /= std::pow(radius_[static_cast<std::size_t>(a)], set[i][a]);
        }
        for (std::size_t c = 0; c < direction_.size(); ++c) {
            out[i][c] = unit[i][0] * chain * direction_[c];
        }
    }
    return out;
}

} // namespace smoothing
