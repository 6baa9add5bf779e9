#include "doctest.h"

#include "smoothing/dugundji.hpp"
#include "smoothing/errors.hpp"
#include "smoothing/expr.hpp"

#include <cmath>
#include <thread>

using namespace smoothing;

namespace {

ClosedSet unit_interval()
{
    ClosedSet y;
    y.boxes = BoxUnion::closed_box({{0.0, 1.0}});
    return y;
}

} // namespace

TEST_CASE("a single point gives a constant extension")
{
    ClosedSet y;
    y.points = {{0.0}};
    const DugundjiExtension ext(y);
    const auto g = make_expr_provider("3 + x1");
    for (double x : {-5.0, -0.3, 0.0, 0.01, 7.0}) {
        CHECK(ext.evaluate(*g, Point{x})[0] == doctest::Approx(3.0).epsilon(1e-14));
    }
}

TEST_CASE("points of Y are returned unchanged")
{
    const DugundjiExtension ext(unit_interval());
    const auto g = make_expr_provider("x1^2");
    for (double x : {0.0, 0.3, 1.0}) {
        const DugundjiQuery q = ext.query(Point{x});
        CHECK(q.on_set);
        CHECK(ext.evaluate(*g, Point{x}) == g->value(Point{x}));
    }
}

TEST_CASE("values stay in the convex hull of gamma(Y)")
{
    const DugundjiExtension ext(unit_interval());
    const auto g = make_expr_provider("x1");
    for (double x : {-3.0, -0.2, 1.001, 2.0, 40.0}) {
        const double v = ext.evaluate(*g, Point{x})[0];
        CHECK(v >= -1e-15);
        CHECK(v <= 1.0 + 1e-15);
    }
}

TEST_CASE("weights")
{
    const DugundjiExtension ext(unit_interval());
    const DugundjiQuery q = ext.query(Point{1.3});
    CHECK(!q.on_set);
    CHECK(q.distance == doctest::Approx(0.3));
    double sum = 0.0;
    for (const auto& t : q.terms) {
        CHECK(t.weight > 0.0);
        sum += t.weight;
        // Anchor constraint: d(x(j), y(j)) < 2^{-n+1}.
        CHECK(t.anchor.distance < std::ldexp(1.0, -t.cell.n + 1));
        CHECK(unit_interval().contains(t.anchor.y));
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(DugundjiExtension::shell_weight(0.3, 100) == 0.0);
    CHECK(ext.cell_half_width(0) == doctest::Approx(1.0));
}

TEST_CASE("anchors are inserted once under concurrent queries")
{
    const DugundjiExtension ext(unit_interval());
    const auto g = make_expr_provider("sin(x1)");
    std::vector<std::vector<double>> results(4);
    std::vector<std::thread> workers;
    for (std::size_t t = 0; t < results.size(); ++t) {
        workers.emplace_back([&, t] {
            for (int i = 0; i < 200; ++i) {
                results[t].push_back(ext.evaluate(*g, Point{1.0 + 0.01 * (i + 1)})[0]);
            }
        });
    }
    for (auto& w : workers) {
        w.join();
    }
    for (std::size_t t = 1; t < results.size(); ++t) {
        CHECK(results[t] == results[0]);
    }
    const auto snapshot = ext.anchors();
    for (std::size_t i = 1; i < snapshot.size(); ++i) {
        CHECK(snapshot[i - 1].first < snapshot[i].first);
    }
    // A fresh extension queried sequentially resolves identical anchors.
    const DugundjiExtension serial(unit_interval());
    for (int i = 0; i < 200; ++i) {
        CHECK(serial.evaluate(*g, Point{1.0 + 0.01 * (i + 1)})[0] == results[0][static_cast<std::size_t>(i)]);
    }
}

TEST_CASE("clamped shells")
{
    DugundjiOptions opts;
    opts.n_min = -2;
    opts.n_max = 2;
    const DugundjiExtension ext(unit_interval(), opts);
    // Close to Y the finest shell still has valid anchors.
    const double v = ext.evaluate(*make_expr_provider("x1"), Point{1.01})[0];
    CHECK(ext.clamped_queries() == 1);
    CHECK(v == doctest::Approx(1.0).epsilon(0.5));
    // Far away no shell cell can hold an anchor within its diameter.
    CHECK_THROWS_AS(ext.query(Point{1000.0}), InvariantError);
}

TEST_CASE("provider rejects derivatives")
{
    auto ext = std::make_shared<const DugundjiExtension>(unit_interval());
    const DugundjiProvider p(ext, make_expr_provider("x1"));
    CHECK_NOTHROW(p.value(Point{2.0}));
    CHECK_THROWS_AS(p.jet(Point{2.0}, 1), PreconditionError);
}

TEST_CASE("report")
{
    const DugundjiExtension ext(unit_interval());
    const auto g = make_expr_provider("x1");
    const DugundjiReport r = dugundji_report(ext, *g, Box{{{-1.0, 2.0}}}, 31, SeminormSpec::coordinate_max(), 1);
    CHECK(r.rows.size() == 31);
    CHECK(r.restriction_error == 0.0);
    CHECK(r.hull_ok);
    CHECK(r.sup_ratio <= 1.0 + 1e-12);
    CHECK(r.anchor_violations == 0);
    CHECK(r.csv().rfind("query,x1,d_Y,shell,value1,hull_ok\n", 0) == 0);
}
