#include "harness_util.hpp"

#include "smoothing/dugundji.hpp"
#include "smoothing/expr.hpp"
#include "smoothing/tolerances.hpp"

#include <algorithm>
#include <cmath>

namespace smoothing::suites {

using detail::finish;
using detail::Stopwatch;

namespace {

struct DugundjiCase {
    std::string label;
    ClosedSet y;
    std::string fn;
    Box window;
    int per_axis;
};

std::vector<DugundjiCase> dugundji_cases()
{
    std::vector<DugundjiCase> cases;
    {
        ClosedSet y;
        y.boxes = BoxUnion::closed_box({{0.0, 1.0}});
        cases.push_back({"Y=[0,1]", y, "x1", detail::cube_box(1, -2.0, 3.0), 201});
    }
    {
        ClosedSet y;
        y.points = {{0.0}};
        cases.push_back({"Y={0}", y, "sin(x1); exp(x1); 2", detail::cube_box(1, -1.5, 1.5), 101});
    }
    {
        ClosedSet y;
        y.points = {{0.0}, {2.0}, {-3.0}};
        cases.push_back({"Y={-3,0,2}", y, "x1^3 - 2*x1 + 1", detail::cube_box(1, -4.0, 4.0), 161});
    }
    {
        ClosedSet y;
        y.boxes = BoxUnion({Box{{{0.0, 2.0}, {0.0, 1.0}}}, Box{{{0.0, 1.0}, {0.0, 2.0}}}}, false);
        y.points = {{2.5, 2.5}};
        cases.push_back({"L-shape + point", y, "sin(x1)*cos(x2); exp(x1*x2); x1^2 + x2", detail::cube_box(2, -1.0, 3.0),
                         33});
    }
    return cases;
}

} // namespace

SuiteResult dugundji(std::uint64_t seed)
{
    Stopwatch clock;
    std::size_t failures = 0;
    double worst = 0.0;
    std::string text;
    for (const auto& c : dugundji_cases()) {
        const DugundjiExtension ext(c.y);
        const auto gamma = make_expr_provider(c.fn, c.window.dim());
        const auto report = dugundji_report(ext, *gamma, c.window, c.per_axis, SeminormSpec::coordinate_max(),
                                            detail::salt(seed, 130));
        const bool ok = report.restriction_error <= tol::restriction && report.sup_ratio <= 1.0 + tol::sup_ratio &&
                        report.hull_ok && report.max_weight_sum_error <= tol::weight_sum && report.min_weight >= 0.0 &&
                        report.anchor_violations == 0 && report.anchor_count > 0 && report.continuity_trend_ok;
        failures += ok ? 0 : 1;
        worst = std::max({worst, report.restriction_error, report.max_weight_sum_error,
                          std::max(0.0, report.sup_ratio - 1.0)});
        text += fmt::format("{}{}: {} anchors, weight sum err {:.2g}, sup ratio {:.17g}{}", text.empty() ? "" : "; ", c.label,
                            report.anchor_count, report.max_weight_sum_error, report.sup_ratio, ok ? "" : " FAILED");
    }
    // A single point: the extension is constant.
    {
        ClosedSet y;
        y.points = {{0.0}};
        const DugundjiExtension ext(y);
        const auto gamma = make_expr_provider("exp(x1) + x1", 1);
        const VectorValue at_zero = gamma->value(Point{0.0});
        for (const auto& x : detail::random_points(detail::cube_box(1, -5.0, 5.0), 100, detail::salt(seed, 131))) {
            failures += std::abs(ext.evaluate(*gamma, x)[0] - at_zero[0]) <= tol::weight_sum ? 0 : 1;
        }
    }
    // The identity on [0,1] extends into [0,1].
    {
        ClosedSet y;
        y.boxes = BoxUnion::closed_box({{0.0, 1.0}});
        const DugundjiExtension ext(y);
        const double v = ext.evaluate(*make_expr_provider("x1", 1), Point{2.0})[0];
        failures += v >= 0.0 && v <= 1.0 ? 0 : 1;
    }
    return finish("Dugundji extension properties", failures == 0, worst, text, clock);
}

SuiteResult dugundji_linearity(std::uint64_t seed)
{
    Stopwatch clock;
    double worst = 0.0;
    for (const auto& c : dugundji_cases()) {
        const auto ext = std::make_shared<const DugundjiExtension>(c.y);
        const int d = c.window.dim();
        const auto f = make_expr_provider(c.fn, d);
        const auto g = make_expr_provider(d == 1 ? "cos(3*x1)" : "x1*x2", d);
        const auto gv = std::make_shared<const RankOneProvider>(g, VectorValue(static_cast<std::size_t>(f->codim()), 1.0));
        const LinearCombination mix({{0.7, f}, {-2.5, gv}});
        for (const auto& x : detail::random_points(c.window, 100, detail::salt(seed, 140))) {
            const DugundjiQuery q = ext->query(x);
            const VectorValue a = DugundjiExtension::combine(q, mix);
            const VectorValue ef = DugundjiExtension::combine(q, *f);
            const VectorValue eg = DugundjiExtension::combine(q, *gv);
            for (std::size_t k = 0; k < a.size(); ++k) {
                worst = std::max(worst, detail::relative_gap(a[k], 0.7 * ef[k] - 2.5 * eg[k]));
            }
        }
    }
    return finish("Dugundji linearity", worst <= tol::extension_linearity, worst,
                  "E(a f + b g) = a E(f) + b E(g) at fixed anchors, 100 points per set", clock);
}

} // namespace smoothing::suites
