#include "harness_util.hpp"

#include "smoothing/errors.hpp"
#include "smoothing/expr.hpp"
#include "smoothing/smoothing.hpp"
#include "smoothing/tolerances.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace smoothing {

namespace detail {

std::vector<double> error_profile(const JetProvider& a, const JetProvider& b, std::span<const Point> grid, int order,
                                  const SeminormSpec& q)
{
    std::vector<double> out(static_cast<std::size_t>(order) + 1, 0.0);
    std::vector<double> diff(static_cast<std::size_t>(a.codim()));
    for (const auto& x : grid) {
        const Jet ja = a.jet(x, order);
        const Jet jb = b.jet(x, order);
        const auto& set = ja.set();
        for (int j = 0; j <= order; ++j) {
            for (std::size_t i = set.degree_begin(j); i < set.degree_end(j); ++i) {
                for (std::size_t c = 0; c < diff.size(); ++c) {
                    diff[c] = ja[i][c] - jb[i][c];
                }
                out[static_cast<std::size_t>(j)] = std::max(out[static_cast<std::size_t>(j)], q(diff));
            }
        }
    }
    return out;
}

std::vector<Point> random_points(const Box& box, std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<Point> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        Point p;
        for (const auto& iv : box.axes) {
            std::uniform_real_distribution<double> u(iv.lo, iv.hi);
            p.push_back(u(rng));
        }
        out.push_back(std::move(p));
    }
    return out;
}

double relative_gap(double a, double b)
{
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

std::uint64_t salt(std::uint64_t seed, std::uint64_t value)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(value)};
    std::uint64_t out = 0;
    std::array<std::uint32_t, 2> words{};
    seq.generate(words.begin(), words.end());
    out = (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
    return out;
}

SuiteResult finish(std::string name, bool pass, double violation, std::string detail, const Stopwatch& clock)
{
    return {std::move(name), pass, violation, std::move(detail), clock.seconds()};
}

std::vector<std::pair<std::string, ProviderPtr>> corpus_functions(int dim)
{
    std::vector<std::pair<std::string, ProviderPtr>> out;
    for (const auto& e : corpus()) {
        if (e.dim == dim) {
            out.emplace_back(e.text, corpus_provider(e));
        }
    }
    return out;
}

} // namespace detail

nlohmann::json summary_json(const std::vector<SuiteResult>& results)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : results) {
        out.push_back({{"suite", r.name}, {"pass", r.pass}, {"max_violation", r.max_violation}});
    }
    return out;
}

const std::vector<CorpusEntry>& corpus()
{
    static const std::vector<CorpusEntry> entries{
        {"x1^3 - 2*x1 + 1", 1},
        {"sin(x1)", 1},
        {"exp(x1)", 1},
        {"sin(x1); 2*sin(x1); -sin(x1)", 1},
        {"sin(x1); cos(x1); exp(x1)", 1},
        {"x1^2*x2 - x2^3", 2},
        {"sin(x1+2*x2)", 2},
        {"exp(x1)*cos(x2)", 2},
        {"sin(x1)*cos(x2); exp(x1*x2); x1^2 + x2", 2},
        {"exp(x1)*x2; -3*exp(x1)*x2; 0.5*exp(x1)*x2", 2},
    };
    return entries;
}

ProviderPtr corpus_provider(const CorpusEntry& entry)
{
    return make_expr_provider(entry.text, entry.dim);
}

bool strictly_decreasing(std::span<const double> errors, double floor)
{
    for (std::size_t i = 1; i < errors.size(); ++i) {
        if (errors[i] < floor && errors[i - 1] < floor) {
            continue;
        }
        if (!(errors[i] < errors[i - 1])) {
            return false;
        }
    }
    return true;
}

double fit_slope(std::span<const int> scales, std::span<const double> errors)
{
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < scales.size() && i < errors.size(); ++i) {
        if (errors[i] > 0.0) {
            pts.emplace_back(std::log(static_cast<double>(scales[i])), std::log(errors[i]));
        }
    }
    if (pts.size() < 2) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    double mx = 0.0;
    double my = 0.0;
    for (const auto& [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (const auto& [x, y] : pts) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    return sxy / sxx;
}

std::vector<double> ConvergenceTable::errors() const
{
    std::vector<double> out;
    for (const auto& r : rows) {
        out.push_back(r.error);
    }
    return out;
}

std::string ConvergenceTable::csv() const
{
    std::string out = "n";
    for (int j = 0; j <= order; ++j) {
        out += fmt::format(",err_C{}", j);
    }
    out += ",err,seconds\n";
    for (const auto& r : rows) {
        out += fmt::format("{}", r.n);
        for (double e : r.by_degree) {
            out += fmt::format(",{:.17g}", e);
        }
        out += fmt::format(",{:.17g},{:.3f}\n", r.error, r.seconds);
    }
    return out;
}

ConvergenceTable convergence_report(const JetProvider& gamma, const std::string& name, const ConvergenceConfig& config)
{
    if (config.k.dim() != gamma.dim()) {
        throw PreconditionError("compact K has the wrong dimension");
    }
    ConvergenceTable table;
    table.function = name;
    table.order = config.order;
    const auto grid = tensor_grid(config.k, config.per_axis);
    const BoxUnion window({config.k}, false);
    for (int n : config.scales) {
        detail::Stopwatch clock;
        const SmoothedFunction s = build_stilde(gamma, config.order, n, config.omega, window);
        ConvergenceRow row;
        row.n = n;
        row.by_degree = detail::error_profile(gamma, s, grid, config.order, config.q);
        row.error = *std::max_element(row.by_degree.begin(), row.by_degree.end());
        row.seconds = clock.seconds();
        table.rows.push_back(std::move(row));
    }
    const auto errors = table.errors();
    table.decreasing = strictly_decreasing(errors, tol::convergence_floor);
    table.slope = fit_slope(config.scales, errors);
    return table;
}

double BoundCertificate::worst_ratio() const
{
    double worst = 0.0;
    for (const auto& r : rows) {
        worst = std::max(worst, r.ratio);
    }
    return worst;
}

std::string BoundCertificate::csv() const
{
    std::string out = "function,smoothed,original,ratio,constant\n";
    for (const auto& r : rows) {
        out += fmt::format("\"{}\",{:.17g},{:.17g},{:.17g},{:.17g}\n", r.function, r.smoothed, r.original, r.ratio,
                           constant);
    }
    return out;
}

BoundCertificate bound_certificate(const std::vector<std::pair<std::string, ProviderPtr>>& functions, int order,
                                   const BoxUnion& omega, const Box& k, const Box& l, const SeminormSpec& q, int n,
                                   int per_axis)
{
    const int d = omega.dim();
    if (k.dim() != d || l.dim() != d) {
        throw PreconditionError("K, L and the domain must share a dimension");
    }
    for (std::size_t i = 0; i < k.axes.size(); ++i) {
        if (compare({k.axes[i].lo, -1, n}, ExactCoord::of(l.axes[i].lo)) < 0 ||
            compare({k.axes[i].hi, 1, n}, ExactCoord::of(l.axes[i].hi)) > 0) {
            throw PreconditionError(fmt::format("margin violated: K + [-1/{0},1/{0}]^d is not inside L on axis {1}", n, i));
        }
    }
    BoundCertificate cert;
    cert.dim = d;
    cert.order = order;
    cert.n = n;
    cert.h0 = partition_norm(d, order);
    cert.constant = smoothing_bound_constant(d, order, cert.h0.value);
    const auto grid_k = tensor_grid(k, per_axis);
    const auto grid_l = tensor_grid(l, per_axis);
    const BoxUnion window({k}, false);
    for (const auto& [name, gamma] : functions) {
        const SmoothedFunction s = build_stilde(*gamma, order, n, omega, window);
        BoundRow row;
        row.function = name;
        row.smoothed = seminorm_Cl(s, grid_k, order, q, SeminormFlavor::gateaux);
        row.original = seminorm_Cl(*gamma, grid_l, order, q, SeminormFlavor::gateaux);
        row.ratio = row.original > 0.0 ? row.smoothed / row.original
                                       : (row.smoothed == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
        cert.rows.push_back(std::move(row));
    }
    cert.pass = cert.worst_ratio() <= cert.constant;
    return cert;
}

std::vector<GrowthRow> constant_growth(int dim, int max_order)
{
    std::vector<GrowthRow> rows;
    for (int l = 0; l <= max_order; ++l) {
        GrowthRow row;
        row.order = l;
        row.power = l == 0 ? 1.0 : std::pow(2.0 * l, l);
        row.h0 = partition_norm(dim, l).value;
        row.constant = smoothing_bound_constant(dim, l, row.h0);
        row.recomputed = 1.0 + (l + 1) * std::ldexp(1.0, dim + 1) * row.power * row.h0;
        rows.push_back(row);
    }
    return rows;
}

std::string growth_csv(const std::vector<GrowthRow>& rows)
{
    std::string out = "l,(2l)^l,h0_norm,C,formula\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g}\n", r.order, r.power, r.h0, r.constant, r.recomputed);
    }
    return out;
}

} // namespace smoothing
