#include "smoothing/dugundji.hpp"

#include "smoothing/bump.hpp"
#include "smoothing/errors.hpp"
#include "smoothing/tolerances.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace smoothing {

namespace {

double euclid(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += (a[i] - b[i]) * (a[i] - b[i]);
    }
    return std::sqrt(s);
}

// Per-axis factor of the periodic partition at coordinate y: (lattice value, weight) pairs.
std::vector<std::pair<std::int64_t, double>> axis_partition(double y)
{
    std::vector<std::pair<std::int64_t, double>> out;
    const double base = std::floor(y);
    double total = 0.0;
    for (double w : {base, base + 1.0}) {
        const double g = bump_profile(y - w);
        if (g > 0.0) {
            out.emplace_back(static_cast<std::int64_t>(w), g);
            total += g;
        }
    }
    if (out.empty()) {
        throw InvariantError(fmt::format("cell partition vanishes at scaled coordinate {}", y));
    }
    for (auto& [_, g] : out) {
        g /= total;
    }
    return out;
}

} // namespace

DugundjiExtension::DugundjiExtension(ClosedSet y, DugundjiOptions options)
    : y_(std::move(y)), options_(options), dim_(0)
{
    if (y_.empty()) {
        throw PreconditionError("Dugundji extension needs a nonempty closed set");
    }
    dim_ = y_.dim();
    check_dim_order(dim_, 0);
    for (const auto& p : y_.points) {
        if (static_cast<int>(p.size()) != dim_) {
            throw PreconditionError("set points have inconsistent dimensions");
        }
        require_finite(p, "set point");
    }
    if (y_.boxes && !y_.boxes->empty() && y_.boxes->open()) {
        throw PreconditionError("Y must be closed: use a closed box union");
    }
    if (options_.n_min > options_.n_max) {
        throw PreconditionError("shell range is empty");
    }
}

double DugundjiExtension::shell_weight(double distance, int n)
{
    return bump_profile(-std::log2(distance) - n);
}

double DugundjiExtension::cell_half_width(int n) const
{
    return std::ldexp(1.0, -n) / std::sqrt(static_cast<double>(dim_));
}

bool DugundjiExtension::in_shell(std::span<const double> p, int n) const
{
    const double d = distance_to_closed(y_, p);
    return d > std::ldexp(1.0, -n - 1) && d < std::ldexp(1.0, -n + 1);
}

DugundjiQuery DugundjiExtension::query(std::span<const double> x) const
{
    if (static_cast<int>(x.size()) != dim_) {
        throw PreconditionError("query point has the wrong dimension");
    }
    require_finite(x, "query point");
    DugundjiQuery q;
    q.x.assign(x.begin(), x.end());
    if (y_.contains(x)) {
        q.on_set = true;
        return q;
    }
    q.distance = distance_to_closed(y_, x);
    if (q.distance == 0.0) {
        q.on_set = true;
        return q;
    }
    const double level = -std::log2(q.distance);
    std::vector<std::pair<int, double>> shells;
    const auto n0 = static_cast<long>(std::floor(level));
    for (long n = n0; n <= n0 + 1; ++n) {
        if (n < options_.n_min || n > options_.n_max) {
            continue;
        }
        const double w = bump_profile(level - static_cast<double>(n));
        if (w > 0.0) {
            shells.emplace_back(static_cast<int>(n), w);
        }
    }
    if (shells.empty()) {
        q.clamped = true;
        const long n = std::clamp<long>(std::lround(level), options_.n_min, options_.n_max);
        shells.emplace_back(static_cast<int>(n), 1.0);
        std::lock_guard lock(mutex_);
        ++clamped_;
    }
    double lambda_total = 0.0;
    double best = -1.0;
    for (const auto& [n, w] : shells) {
        lambda_total += w;
        if (w > best) {
            best = w;
            q.shell = n;
        }
    }
    for (const auto& [n, lambda] : shells) {
        const double a = cell_half_width(n);
        std::vector<std::vector<std::pair<std::int64_t, double>>> axes;
        for (double xi : x) {
            axes.push_back(axis_partition(xi / a));
        }
        std::vector<std::size_t> pick(axes.size(), 0);
        for (;;) {
            CellKey key{n, {}};
            double psi = lambda / lambda_total;
            for (std::size_t i = 0; i < axes.size(); ++i) {
                key.c.push_back(axes[i][pick[i]].first);
                psi *= axes[i][pick[i]].second;
            }
            q.terms.push_back({key, psi, anchor(key, x)});
            std::size_t i = 0;
            while (i < axes.size() && ++pick[i] == axes[i].size()) {
                pick[i] = 0;
                ++i;
            }
            if (i == axes.size()) {
                break;
            }
        }
    }
    return q;
}

const Anchor& DugundjiExtension::anchor(const CellKey& key, std::span<const double> query) const
{
    {
        std::lock_guard lock(mutex_);
        const auto it = cache_.find(key);
        if (it != cache_.end()) {
            return it->second;
        }
    }
    Anchor fresh = resolve(key, query);
    std::lock_guard lock(mutex_);
    return cache_.try_emplace(key, std::move(fresh)).first->second;
}

Anchor DugundjiExtension::resolve(const CellKey& key, std::span<const double> query) const
{
    const double a = cell_half_width(key.n);
    const auto d = static_cast<std::size_t>(dim_);
    Point center(d);
    for (std::size_t i = 0; i < d; ++i) {
        center[i] = static_cast<double>(key.c[i]) * a;
    }
    Anchor out;
    if (in_shell(center, key.n)) {
        out.x = center;
    } else {
        // Deterministic refinement: k = 2^r + 1 interior points per axis, scanned in lexicographic order.
        for (int r = 1; r <= options_.anchor_refinements && out.x.empty(); ++r) {
            const int k = (1 << r) + 1;
            if (std::pow(static_cast<double>(k), static_cast<double>(d)) > 2e5) {
                break;
            }
            std::vector<int> counter(d, 0);
            Point p(d);
            for (bool more = true; more && out.x.empty();) {
                for (std::size_t i = 0; i < d; ++i) {
                    p[i] = center[i] + a * (-1.0 + (2.0 * counter[i] + 1.0) / k);
                }
                if (in_shell(p, key.n)) {
                    out.x = p;
                }
                std::size_t i = d;
                more = false;
                while (i > 0) {
                    --i;
                    if (++counter[i] < k) {
                        more = true;
                        break;
                    }
                    counter[i] = 0;
                }
            }
        }
        if (out.x.empty()) {
            out.x.assign(query.begin(), query.end());
            out.fallback = true;
        }
    }
    out.y = nearest_point(y_, out.x);
    out.distance = euclid(out.x, out.y);
    const double bound = std::ldexp(1.0, -key.n + 1);
    if (!(out.distance < bound)) {
        throw InvariantError(fmt::format("anchor of shell {} cell has d(x, y) = {:.17g}, not below 2^(-n+1) = {:.17g}"
                                         " (fallback: {})",
                                         key.n, out.distance, bound, out.fallback));
    }
    return out;
}

VectorValue DugundjiExtension::combine(const DugundjiQuery& q, const JetProvider& gamma)
{
    if (q.on_set) {
        return gamma.value(q.x);
    }
    VectorValue out(static_cast<std::size_t>(gamma.codim()), 0.0);
    for (const auto& t : q.terms) {
        const VectorValue v = gamma.value(t.anchor.y);
        for (std::size_t c = 0; c < out.size(); ++c) {
            out[c] += t.weight * v[c];
        }
    }
    return out;
}

VectorValue DugundjiExtension::evaluate(const JetProvider& gamma, std::span<const double> x) const
{
    return combine(query(x), gamma);
}

std::vector<std::pair<CellKey, Anchor>> DugundjiExtension::anchors() const
{
    std::lock_guard lock(mutex_);
    return {cache_.begin(), cache_.end()};
}

std::size_t DugundjiExtension::clamped_queries() const
{
    std::lock_guard lock(mutex_);
    return clamped_;
}

DugundjiProvider::DugundjiProvider(std::shared_ptr<const DugundjiExtension> extension, ProviderPtr gamma)
    : extension_(std::move(extension)), gamma_(std::move(gamma))
{
    if (!extension_ || !gamma_ || gamma_->dim() != extension_->dim()) {
        throw PreconditionError("Dugundji provider needs an extension and a function of the same dimension");
    }
}

Jet DugundjiProvider::jet(std::span<const double> x, int order) const
{
    if (order != 0) {
        throw PreconditionError("the Dugundji extension is only continuous; request order 0");
    }
    Jet out(Point(x.begin(), x.end()), 0, codim());
    const VectorValue v = extension_->evaluate(*gamma_, x);
    std::copy(v.begin(), v.end(), out[0].begin());
    return out;
}

std::string DugundjiReport::csv() const
{
    std::string out = "query";
    const std::size_t d = rows.empty() ? 0 : rows.front().x.size();
    const std::size_t m = rows.empty() ? 0 : rows.front().value.size();
    for (std::size_t i = 0; i < d; ++i) {
        out += fmt::format(",x{}", i + 1);
    }
    out += ",d_Y,shell";
    for (std::size_t c = 0; c < m; ++c) {
        out += fmt::format(",value{}", c + 1);
    }
    out += ",hull_ok\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        out += fmt::format("{}", r);
        for (double v : row.x) {
            out += fmt::format(",{:.17g}", v);
        }
        out += fmt::format(",{:.17g},{}", row.distance, row.shell ? fmt::format("{}", *row.shell) : std::string());
        for (double v : row.value) {
            out += fmt::format(",{:.17g}", v);
        }
        out += row.hull_ok ? ",1\n" : ",0\n";
    }
    return out;
}

DugundjiReport dugundji_report(const DugundjiExtension& ext, const JetProvider& gamma, const Box& window,
                               int per_axis, const SeminormSpec& q, std::uint64_t seed)
{
    if (gamma.dim() != ext.dim() || window.dim() != ext.dim()) {
        throw PreconditionError("function, set and window dimensions differ");
    }
    DugundjiReport report;
    const std::size_t m = static_cast<std::size_t>(gamma.codim());
    std::vector<double> lo(m, std::numeric_limits<double>::infinity());
    std::vector<double> hi(m, -std::numeric_limits<double>::infinity());
    double set_sup = 0.0;
    auto absorb = [&](std::span<const double> y) {
        const VectorValue v = gamma.value(y);
        for (std::size_t c = 0; c < m; ++c) {
            lo[c] = std::min(lo[c], v[c]);
            hi[c] = std::max(hi[c], v[c]);
        }
        set_sup = std::max(set_sup, q(v));
    };

    std::vector<DugundjiQuery> queries;
    for (const auto& x : tensor_grid(window, per_axis)) {
        queries.push_back(ext.query(x));
    }
    for (const auto& p : ext.set().points) {
        bool inside = true;
        for (std::size_t i = 0; i < p.size(); ++i) {
            inside = inside && window.axes[i].lo <= p[i] && p[i] <= window.axes[i].hi;
        }
        if (inside) {
            queries.push_back(ext.query(p));
        }
    }

    report.min_weight = std::numeric_limits<double>::infinity();
    double grid_sup = 0.0;
    double on_set_sup = 0.0;
    for (const auto& query : queries) {
        DugundjiRow row;
        row.x = query.x;
        row.distance = query.distance;
        row.value = DugundjiExtension::combine(query, gamma);
        if (query.on_set) {
            absorb(query.x);
            const VectorValue g = gamma.value(query.x);
            double err = 0.0;
            for (std::size_t c = 0; c < m; ++c) {
                err = std::max(err, std::abs(row.value[c] - g[c]));
            }
            report.restriction_error = std::max(report.restriction_error, err);
            ++report.restriction_samples;
            on_set_sup = std::max(on_set_sup, q(row.value));
        } else {
            row.shell = query.shell;
            double sum = 0.0;
            for (const auto& t : query.terms) {
                sum += t.weight;
                report.min_weight = std::min(report.min_weight, t.weight);
                absorb(t.anchor.y);
            }
            report.max_weight_sum_error = std::max(report.max_weight_sum_error, std::abs(sum - 1.0));
        }
        grid_sup = std::max(grid_sup, q(row.value));
        report.rows.push_back(std::move(row));
    }
    if (!std::isfinite(report.min_weight)) {
        report.min_weight = 0.0;
    }
    for (auto& row : report.rows) {
        for (std::size_t c = 0; c < m; ++c) {
            const double slack = tol::hull_slack * std::max({1.0, std::abs(lo[c]), std::abs(hi[c])});
            if (row.value[c] < lo[c] - slack || row.value[c] > hi[c] + slack) {
                row.hull_ok = false;
            }
        }
        report.hull_ok = report.hull_ok && row.hull_ok;
    }
    report.sup_ratio = set_sup > 0.0 ? grid_sup / set_sup : (grid_sup == 0.0 ? 1.0 : std::numeric_limits<double>::infinity());
    report.sup_attained_on_set = report.restriction_samples > 0 && on_set_sup >= set_sup;

    for (const auto& [key, anchor] : ext.anchors()) {
        ++report.anchor_count;
        if (!(anchor.distance < std::ldexp(1.0, -key.n + 1))) {
            ++report.anchor_violations;
        }
    }

    // Seeded path approaching a point of Y from outside.
    Point center(window.axes.size());
    double width = 0.0;
    for (std::size_t i = 0; i < center.size(); ++i) {
        center[i] = 0.5 * (window.axes[i].lo + window.axes[i].hi);
        width = std::max(width, window.axes[i].hi - window.axes[i].lo);
    }
    report.continuity_target = nearest_point(ext.set(), center);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Point direction(center.size());
    double norm = 0.0;
    for (;;) {
        norm = 0.0;
        for (auto& v : direction) {
            v = normal(rng);
            norm += v * v;
        }
        norm = std::sqrt(norm);
        if (norm > 1e-3) {
            break;
        }
    }
    const VectorValue target = gamma.value(report.continuity_target);
    for (int k = 0; k < 24; ++k) {
        const double step = 0.25 * width * std::ldexp(1.0, -k);
        Point x = report.continuity_target;
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] += step * direction[i] / norm;
        }
        const VectorValue v = ext.evaluate(gamma, x);
        VectorValue diff(m);
        for (std::size_t c = 0; c < m; ++c) {
            diff[c] = v[c] - target[c];
        }
        report.continuity.push_back({step, q(diff)});
    }
    const std::size_t quarter = report.continuity.size() / 4;
    double head = 0.0;
    double tail = 0.0;
    for (std::size_t k = 0; k < quarter; ++k) {
        head = std::max(head, report.continuity[k].error);
        tail = std::max(tail, report.continuity[report.continuity.size() - 1 - k].error);
    }
    report.continuity_trend_ok =
        tail <= head && report.continuity.back().error <= report.continuity.front().error;
    return report;
}

} // namespace smoothing
