#include "harness_util.hpp"

#include "smoothing/errors.hpp"
#include "smoothing/expr.hpp"
#include "smoothing/smoothing.hpp"
#include "smoothing/tolerances.hpp"

#include <algorithm>
#include <cmath>

namespace smoothing::suites {

using detail::finish;
using detail::Stopwatch;

namespace {

// Random polynomial of total degree <= degree with m components, as expression text.
std::string random_polynomial(int dim, int degree, int codim, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto& set = MultiIndexSet::get(dim, degree);
    std::vector<std::string> components;
    for (int c = 0; c < codim; ++c) {
        std::string text;
        for (std::size_t i = 0; i < set.size(); ++i) {
            text += fmt::format("{}{:.17g}", i == 0 ? "" : " + ", u(rng));
            for (int axis = 0; axis < dim; ++axis) {
                if (set[i][axis] > 0) {
                    text += fmt::format("*x{}^{}", axis + 1, set[i][axis]);
                }
            }
        }
        components.push_back(std::move(text));
    }
    return fmt::format("{}", fmt::join(components, "; "));
}

Box grid_box(const BoxUnion& u)
{
    return u.bounding_box();
}

// Largest relative gap between two jets over every entry.
double jet_gap(const Jet& a, const Jet& b)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < a.set().size(); ++i) {
        for (std::size_t c = 0; c < static_cast<std::size_t>(a.codim()); ++c) {
            worst = std::max(worst, detail::relative_gap(a[i][c], b[i][c]));
        }
    }
    return worst;
}

} // namespace

SuiteResult polynomial_exactness(std::uint64_t seed)
{
    Stopwatch clock;
    std::mt19937_64 rng(detail::salt(seed, 20));
    const int n = 8;
    double worst = 0.0;
    int cases = 0;
    for (int d = 1; d <= 2; ++d) {
        const BoxUnion omega = detail::open_cube(d, -2.0, 2.0);
        // dist_inf(K, boundary) = 2/n
        const Box k = detail::cube_box(d, -2.0 + 2.0 / n, 2.0 - 2.0 / n);
        const auto grid = tensor_grid(k, d == 1 ? 201 : 21);
        for (int l = 0; l <= 2; ++l) {
            for (int trial = 0; trial < 3; ++trial) {
                const auto gamma = make_expr_provider(random_polynomial(d, l, trial == 2 ? 3 : 1, rng), d);
                const SmoothedFunction s = build_stilde(*gamma, l, n, omega, BoxUnion({k}, false));
                for (double e : detail::error_profile(*gamma, s, grid, l, SeminormSpec::coordinate_max())) {
                    worst = std::max(worst, e);
                }
                ++cases;
            }
        }
    }
    const double seconds = clock.seconds();
    const bool pass = worst <= tol::polynomial_exactness && seconds < tol::polynomial_runtime_s;
    return finish("polynomial exactness", pass, worst,
                  fmt::format("{} polynomials, d in {{1,2}}, l in {{0,1,2}}, n = {}; {:.2f} s", cases, n, seconds),
                  clock);
}

namespace {

ConvergenceConfig convergence_config(int dim)
{
    ConvergenceConfig config;
    config.omega = detail::open_cube(dim, -2.0, 2.0);
    config.k = detail::cube_box(dim, -1.0, 1.0);
    config.order = 1;
    config.per_axis = dim == 1 ? 401 : 41;
    return config;
}

} // namespace

SuiteResult convergence(std::uint64_t)
{
    Stopwatch clock;
    std::size_t failures = 0;
    double worst_slope = -std::numeric_limits<double>::infinity();
    for (const auto& entry : corpus()) {
        const auto table = convergence_report(*corpus_provider(entry), entry.text, convergence_config(entry.dim));
        failures += table.decreasing ? 0 : 1;
        if (std::isfinite(table.slope)) {
            worst_slope = std::max(worst_slope, table.slope);
        }
    }
    // Uniformity over the compact family sin(s x1), s in [1, 2].
    const ConvergenceConfig config = convergence_config(1);
    std::vector<double> family_max(config.scales.size(), 0.0);
    for (int i = 0; i <= 10; ++i) {
        const double s = 1.0 + 0.1 * i;
        const auto table =
            convergence_report(*make_expr_provider(fmt::format("sin({:.17g}*x1)", s), 1), "family", config);
        failures += table.decreasing ? 0 : 1;
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            family_max[r] = std::max(family_max[r], table.rows[r].error);
        }
    }
    failures += strictly_decreasing(family_max, tol::convergence_floor) ? 0 : 1;
    const double seconds = clock.seconds();
    const bool pass = failures == 0 && seconds < tol::convergence_runtime_s;
    return finish("convergence on compacts", pass, static_cast<double>(failures),
                  fmt::format("{} corpus tables + 11-member family; family sup errors [{:.3e}]; worst slope {:.3f} "
                              "(reported, target {}); {:.2f} s",
                              corpus().size(), fmt::join(family_max, ", "), worst_slope, tol::rate_slope, seconds),
                  clock);
}

SuiteResult bound(std::uint64_t)
{
    Stopwatch clock;
    struct Case {
        int dim;
        int order;
        int per_axis;
    };
    const std::vector<Case> cases{{1, 1, 201}, {1, 2, 201}, {2, 1, 21}};
    std::size_t violations = 0;
    double worst = 0.0;
    std::string text;
    for (const auto& c : cases) {
        const BoxUnion omega = detail::open_cube(c.dim, -3.0, 3.0);
        const auto cert = bound_certificate(detail::corpus_functions(c.dim), c.order, omega,
                                            detail::cube_box(c.dim, -1.0, 1.0), detail::cube_box(c.dim, -1.25, 1.25),
                                            SeminormSpec::coordinate_max(), 8, c.per_axis);
        for (const auto& r : cert.rows) {
            violations += r.ratio <= cert.constant ? 0 : 1;
        }
        worst = std::max(worst, cert.worst_ratio() / cert.constant);
        text += fmt::format("d={} l={}: ratio {:.4f} <= C {:.4f}; ", c.dim, c.order, cert.worst_ratio(), cert.constant);
    }
    for (int d = 1; d <= 2; ++d) {
        for (const auto& row : constant_growth(d, 3)) {
            violations += row.constant == row.recomputed ? 0 : 1;
        }
    }
    return finish("explicit smoothing bound", violations == 0, worst, text + "growth tables match the formula", clock);
}

SuiteResult stage_bound(std::uint64_t)
{
    Stopwatch clock;
    const BoxUnion omega = detail::open_cube(1, -2.0, 2.0);
    const Exhaustion ex = default_exhaustion(omega);
    const int order = 1;
    const double constant = smoothing_bound_constant(1, order, partition_norm(1, order).value);
    const SeminormSpec q = SeminormSpec::coordinate_max();
    double worst = 0.0;
    for (const auto& [name, gamma] : detail::corpus_functions(1)) {
        for (int j = 1; j < ex.depth(); ++j) {
            const SmoothedFunction s = build_sn(*gamma, order, ex, j, omega);
            const double lhs = seminorm_Cl(s, tensor_grid(grid_box(ex.compact(j)), 201), order, q,
                                           SeminormFlavor::gateaux);
            const double rhs = seminorm_Cl(*gamma, tensor_grid(grid_box(ex.compact(j + 1)), 201), order, q,
                                           SeminormFlavor::gateaux);
            worst = std::max(worst, lhs / rhs);
        }
    }
    return finish("staged smoothing bound", worst <= constant, worst,
                  fmt::format("||S_j gamma||_(K_j) / ||gamma||_(K_j+1) <= {:.4f} over the d=1 corpus", constant),
                  clock);
}

SuiteResult support(std::uint64_t)
{
    Stopwatch clock;
    std::size_t failures = 0;
    std::size_t checked = 0;
    const std::vector<BoxUnion> domains{
        detail::open_cube(1, -2.0, 2.0),
        BoxUnion({Box{{{0.0, 2.0}, {0.0, 1.0}}}, Box{{{0.0, 1.0}, {0.0, 2.0}}}}, true)};
    for (const auto& omega : domains) {
        const int d = omega.dim();
        const Exhaustion ex = default_exhaustion(omega);
        const auto gamma = make_expr_provider(d == 1 ? "sin(x1) + 2" : "exp(x1)*cos(x2) + x2", d);
        for (int j = 1; j < ex.depth(); ++j) {
            const auto cert = certify_support(build_sn(*gamma, 1, ex, j, omega), ex.compact(j + 1));
            failures += cert.ok ? 0 : 1;
            checked += cert.checked;
        }
        // A bump supported in the first box of K_i.
        for (int i = 1; i < ex.depth(); ++i) {
            const Box& b = ex.compact(i).boxes().front();
            Point center;
            std::vector<double> radius;
            for (const auto& iv : b.axes) {
                center.push_back(0.5 * (iv.lo + iv.hi));
                radius.push_back(0.25 * (iv.hi - iv.lo));
            }
            const BumpProvider bump(center, radius, {1.0, -2.0});
            for (int j = i; j < ex.depth(); ++j) {
                const auto cert = certify_support(build_sn(bump, 1, ex, j, omega), ex.compact(i + 1));
                failures += cert.ok ? 0 : 1;
                checked += cert.checked;
            }
        }
    }
    return finish("support certification", failures == 0, static_cast<double>(failures),
                  fmt::format("{} term cubes checked exactly", checked), clock);
}

SuiteResult tensor(std::uint64_t seed)
{
    Stopwatch clock;
    double worst = 0.0;
    std::size_t rank_failures = 0;
    std::string ranks;
    for (const auto& entry : corpus()) {
        const int d = entry.dim;
        const BoxUnion omega = detail::open_cube(d, -2.0, 2.0);
        const Exhaustion ex = default_exhaustion(omega, {2, 0.25});
        const auto gamma = corpus_provider(entry);
        const SmoothedFunction s = build_sn(*gamma, 1, ex, 1, omega);
        const TensorWitness w = tensor_witness(s);
        rank_failures += w.rank <= s.codim() ? 0 : 1;
        for (const auto& x : detail::random_points(detail::cube_box(d, -2.0, 2.0), 100, detail::salt(seed, 30))) {
            const VectorValue a = s.value(x);
            const VectorValue b = w.reconstruct(x);
            for (std::size_t c = 0; c < a.size(); ++c) {
                worst = std::max(worst, detail::relative_gap(a[c], b[c]));
            }
        }
        ranks += fmt::format("{}{}", ranks.empty() ? "" : ",", w.rank);
    }
    // Rank-one inputs must give rank one.
    rank_failures += tensor_witness(build_stilde(*corpus_provider(corpus()[3]), 1, 8, detail::open_cube(1, -2, 2),
                                                 detail::closed_cube(1, -1, 1)))
                                 .rank == 1
                         ? 0
                         : 1;
    const bool pass = worst <= tol::tensor_reconstruction && rank_failures == 0;
    return finish("tensor witness", pass, worst, fmt::format("ranks [{}], 100 points per function", ranks), clock);
}

SuiteResult smoothing_linearity(std::uint64_t seed)
{
    Stopwatch clock;
    double worst = 0.0;
    const double a = 1.75;
    const double b = -0.6;
    for (int d = 1; d <= 2; ++d) {
        const auto fns = detail::corpus_functions(d);
        const BoxUnion omega = detail::open_cube(d, -2.0, 2.0);
        const BoxUnion window = detail::closed_cube(d, -1.0, 1.0);
        for (std::size_t i = 0; i + 1 < fns.size(); ++i) {
            const auto& f = fns[i].second;
            const auto& g = fns[i + 1].second;
            if (f->codim() != g->codim()) {
                continue;
            }
            const LinearCombination mix({{a, f}, {b, g}});
            const SmoothedFunction sf = build_stilde(*f, 1, 8, omega, window);
            const SmoothedFunction sg = build_stilde(*g, 1, 8, omega, window);
            const SmoothedFunction smix = build_stilde(mix, 1, 8, omega, window);
            const SmoothedFunction combined = SmoothedFunction::combine(a, sf, b, sg);
            for (const auto& x : detail::random_points(detail::cube_box(d, -1.0, 1.0), 100, detail::salt(seed, 40))) {
                const Jet jm = smix.jet(x, 1);
                const Jet jf = sf.jet(x, 1);
                const Jet jg = sg.jet(x, 1);
                for (std::size_t k = 0; k < jm.set().size(); ++k) {
                    for (std::size_t c = 0; c < static_cast<std::size_t>(jm.codim()); ++c) {
                        worst = std::max(worst, detail::relative_gap(jm[k][c], a * jf[k][c] + b * jg[k][c]));
                    }
                }
                worst = std::max(worst, jet_gap(jm, combined.jet(x, 1)));
            }
        }
    }
    return finish("smoothing linearity", worst <= tol::linearity, worst,
                  "S(a f + b g) against a S(f) + b S(g) and the term-merged combination", clock);
}

SuiteResult evaluation(std::uint64_t seed)
{
    Stopwatch clock;
    double worst_direct = 0.0;
    double worst_fd = 0.0;
    std::size_t nonzero_outside = 0;
    const double h = tol::fd_step;
    for (const auto& entry : corpus()) {
        const int d = entry.dim;
        const BoxUnion omega = detail::open_cube(d, -2.0, 2.0);
        const SmoothedFunction s =
            build_stilde(*corpus_provider(entry), 2, 8, omega, detail::closed_cube(d, -1.0, 1.0));
        for (const auto& x : detail::random_points(detail::cube_box(d, -1.2, 1.2), 50, detail::salt(seed, 50))) {
            const Jet jet = s.jet(x, 1);
            const VectorValue direct = s.direct_value(x);
            for (std::size_t c = 0; c < direct.size(); ++c) {
                worst_direct = std::max(worst_direct, detail::relative_gap(direct[c], jet[0][c]));
            }
            for (int axis = 0; axis < d; ++axis) {
                Point plus = x;
                Point minus = x;
                plus[static_cast<std::size_t>(axis)] += h;
                minus[static_cast<std::size_t>(axis)] -= h;
                const VectorValue fp = s.value(plus);
                const VectorValue fm = s.value(minus);
                const auto exact = jet.at(MultiIndex::unit(d, axis));
                for (std::size_t c = 0; c < fp.size(); ++c) {
                    worst_fd = std::max(worst_fd, detail::relative_gap(exact[c], (fp[c] - fm[c]) / (2 * h)));
                }
            }
        }
        // Beyond every term cube (terms reach at most 1 + 2/8 from the origin).
        const Point far(static_cast<std::size_t>(d), 1.5);
        nonzero_outside += s.jet(far, 2).is_zero() ? 0 : 1;
    }
    const bool pass = worst_direct <= tol::direct_value && worst_fd <= tol::fd_relative && nonzero_outside == 0;
    return finish("smoothed function evaluation", pass, std::max(worst_direct, worst_fd),
                  fmt::format("direct formula gap {:.3g}, finite-difference gap {:.3g}", worst_direct, worst_fd),
                  clock);
}

SuiteResult stage_agreement(std::uint64_t)
{
    Stopwatch clock;
    double worst = 0.0;
    for (int d = 1; d <= 2; ++d) {
        const BoxUnion omega = detail::open_cube(d, -2.0, 2.0);
        const Exhaustion ex = default_exhaustion(omega, {3, 0.25});
        const auto gamma = detail::corpus_functions(d).back().second;
        for (int j = 1; j < ex.depth(); ++j) {
            const SmoothedFunction sn = build_sn(*gamma, 1, ex, j, omega);
            const SmoothedFunction st = build_stilde(*gamma, 1, ex.scale(j), omega, ex.compact(j));
            const auto grid = tensor_grid(grid_box(ex.compact(j)), d == 1 ? 100 : 10);
            for (const auto& x : grid) {
                worst = std::max(worst, jet_gap(sn.jet(x, 1), st.jet(x, 1)));
            }
        }
    }
    return finish("staged and global smoothing agree on K_j", worst <= tol::stage_agreement, worst,
                  "100 grid points per stage", clock);
}

SuiteResult family(std::uint64_t)
{
    Stopwatch clock;
    const auto gamma = make_expr_provider("sin(x1)", 1);
    const BoxUnion omega = detail::open_cube(1, -2.0, 2.0);
    const BoxUnion window = detail::closed_cube(1, -1.0, 1.0);
    const FamilySchedule schedule;
    const int stages = 5;
    std::vector<SmoothedFunction> h;
    for (int j = 1; j <= stages + 1; ++j) {
        h.push_back(build_stilde(*gamma, 1, schedule.scale(j), omega, window));
    }
    std::size_t failures = 0;
    for (int j = 1; j <= stages; ++j) {
        const auto& hj = h[static_cast<std::size_t>(j - 1)];
        failures += interpolated_family(*gamma, 1, omega, window, schedule.t(j), schedule).to_json() == hj.to_json()
                        ? 0
                        : 1;
    }
    // Collars: five points in each of the upper (rho = 1) and lower (rho = 0) collars.
    for (int j = 1; j < stages; ++j) {
        const double tj = schedule.t(j);
        const double tn = schedule.t(j + 1);
        for (int k = 0; k < 5; ++k) {
            const double s_upper = 1.0 - schedule.epsilon * (0.05 + 0.2 * k);
            const double s_lower = schedule.epsilon * (0.05 + 0.2 * k);
            const auto upper = interpolated_family(*gamma, 1, omega, window, tn + s_upper * (tj - tn), schedule);
            const auto lower = interpolated_family(*gamma, 1, omega, window, tn + s_lower * (tj - tn), schedule);
            failures += upper.to_json() == h[static_cast<std::size_t>(j - 1)].to_json() ? 0 : 1;
            failures += lower.to_json() == h[static_cast<std::size_t>(j)].to_json() ? 0 : 1;
        }
    }
    const auto grid = tensor_grid(detail::cube_box(1, -1.0, 1.0), 401);
    std::vector<double> errors;
    for (int j = 1; j <= stages; ++j) {
        const auto s = interpolated_family(*gamma, 1, omega, window, schedule.t(j), schedule);
        const auto e = detail::error_profile(*gamma, s, grid, 1, SeminormSpec::coordinate_max());
        errors.push_back(*std::max_element(e.begin(), e.end()));
    }
    const SmoothedFunction h32 = build_stilde(*gamma, 1, 32, omega, window);
    const auto e32 = detail::error_profile(*gamma, h32, grid, 1, SeminormSpec::coordinate_max());
    const double ref = *std::max_element(e32.begin(), e32.end());
    failures += errors.back() < ref ? 0 : 1;
    failures += strictly_decreasing(errors, tol::convergence_floor) ? 0 : 1;
    return finish("interpolated family", failures == 0, static_cast<double>(failures),
                  fmt::format("schedule errors [{:.3e}], n=32 reference {:.3e}", fmt::join(errors, ", "), ref), clock);
}

SuiteResult cube_smoothing(std::uint64_t seed)
{
    Stopwatch clock;
    std::mt19937_64 rng(detail::salt(seed, 60));
    double worst_poly = 0.0;
    for (int d = 1; d <= 2; ++d) {
        const auto grid = tensor_grid(detail::cube_box(d, 0.0, 1.0), d == 1 ? 101 : 11);
        for (int l = 1; l <= 2; ++l) {
            const auto gamma = make_expr_provider(random_polynomial(d, l, 1, rng), d);
            const SmoothedFunction s = smoothing::cube_smoothing(gamma, l, 16);
            for (double e : detail::error_profile(*gamma, s, grid, l, SeminormSpec::coordinate_max())) {
                worst_poly = std::max(worst_poly, e);
            }
        }
    }
    const auto gamma = make_expr_provider("exp(x1)", 1);
    const auto grid = tensor_grid(detail::cube_box(1, 0.0, 1.0), 201);
    std::vector<double> errors;
    for (int n : {4, 8, 16}) {
        const auto e = detail::error_profile(*gamma, smoothing::cube_smoothing(gamma, 1, n), grid, 1,
                                             SeminormSpec::coordinate_max());
        errors.push_back(*std::max_element(e.begin(), e.end()));
    }
    const bool pass = worst_poly <= tol::cube_polynomial && strictly_decreasing(errors, tol::convergence_floor);
    return finish("smoothing on the closed cube", pass, worst_poly,
                  fmt::format("polynomial error {:.3g}; exp(x1) errors [{:.3e}]", worst_poly, fmt::join(errors, ", ")),
                  clock);
}

} // namespace smoothing::suites
