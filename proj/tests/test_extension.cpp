#include "doctest.h"

#include "smoothing/domains.hpp"
#include "smoothing/errors.hpp"
#include "smoothing/expr.hpp"
#include "smoothing/extension.hpp"

#include <cmath>

using namespace smoothing;

TEST_CASE("reflection weights")
{
    CHECK(AxisExtension(0).weights() == std::vector<double>{1.0});
    const auto w = AxisExtension(1).weights();
    CHECK(std::abs(w[0] - 3.0) <= 1e-12);
    CHECK(std::abs(w[1] + 2.0) <= 1e-12);
    for (int l = 0; l <= 4; ++l) {
        const AxisExtension ext(l);
        CHECK(ext.residual() <= 1e-9);
        // Direct substitution into sum_k a_k (-b_k)^i.
        for (int i = 0; i <= l; ++i) {
            double s = 0.0;
            for (std::size_t k = 0; k < ext.nodes().size(); ++k) {
                s += ext.weights()[k] * std::pow(-ext.nodes()[k], i);
            }
            CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
        }
        CHECK(ext.inner_reach() == doctest::Approx(1.0 / (4.0 * (l + 1))));
        CHECK(ext.outer_reach() == doctest::Approx(1.0 / (2.0 * (l + 1))));
    }
    CHECK_THROWS_AS(solve_axis_weights(1, std::vector<double>{1.0, 1.0}), PreconditionError);
    CHECK_THROWS_AS(solve_axis_weights(1, std::vector<double>{-1.0, 2.0}), PreconditionError);
    CHECK_THROWS_AS(solve_axis_weights(2, std::vector<double>{1.0, 2.0}), PreconditionError);
    const auto j = AxisExtension(1).to_json();
    CHECK(j["l"] == 1);
    CHECK(j["nodes"].size() == 2);
}

TEST_CASE("cutoff")
{
    const AxisExtension ext(2);
    CHECK(ext.cutoff(0.0) == 1.0);
    CHECK(ext.cutoff(ext.inner_reach()) == 1.0);
    CHECK(ext.cutoff(ext.outer_reach()) == 0.0);
    CHECK(ext.cutoff(1.0) == 0.0);
    const double mid = 0.5 * (ext.inner_reach() + ext.outer_reach());
    CHECK(ext.cutoff(mid) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("halfspace extension")
{
    SUBCASE("linear continuation inside the collar")
    {
        const auto e = extend_halfspace(make_expr_provider("x1"), 0, 1);
        CHECK(e->value(Point{-0.1})[0] == doctest::Approx(3 * 0.1 - 2 * 0.2));
        CHECK(e->value(Point{-0.1})[0] == doctest::Approx(-0.1));
    }
    SUBCASE("constants with l = 0")
    {
        const auto e = extend_halfspace(make_expr_provider("4.25"), 0, 0);
        CHECK(e->value(Point{-0.1})[0] == 4.25);
        CHECK(e->value(Point{-10.0})[0] == 0.0);
    }
    SUBCASE("exp: one-sided finite-difference derivatives agree")
    {
        const auto e = extend_halfspace(make_expr_provider("exp(x1)"), 0, 2);
        const double h = 1e-4;
        auto f = [&](double t) { return e->value(Point{t})[0]; };
        const double right = (-3 * f(0) + 4 * f(h) - f(2 * h)) / (2 * h);
        const double left = (3 * f(0) - 4 * f(-h) + f(-2 * h)) / (2 * h);
        CHECK(left == doctest::Approx(right).epsilon(1e-4));
        // Second derivatives: limit of the reflected jet from the left against the source jet.
        const Jet inside = e->jet(Point{0.0}, 2);
        const Jet outside = e->jet(Point{-1e-9}, 2);
        CHECK(outside[2][0] == doctest::Approx(inside[2][0]).epsilon(1e-6));
        CHECK(inside[2][0] == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("the source side is read only on the source")
    {
        const auto guarded = std::make_shared<GuardedProvider>(make_expr_provider("sin(x1)"), std::vector<double>{0.0},
                                                              std::vector<double>{10.0});
        const auto e = extend_halfspace(guarded, 0, 3);
        CHECK_NOTHROW(e->jet(Point{-0.05}, 3));
        CHECK_NOTHROW(e->jet(Point{-5.0}, 3));
    }
}

TEST_CASE("cube extension")
{
    const auto g = make_expr_provider("x1 + x2", 2);
    const auto e = extend_cube(g, 1);
    CHECK(e->value(Point{-0.05, 0.5})[0] == doctest::Approx(0.45));
    for (const auto& x : tensor_grid(Box{{{0.0, 1.0}, {0.0, 1.0}}}, 11)) {
        CHECK(e->value(x) == g->value(x));
    }
    CHECK(e->jet(Point{3.0, 0.5}, 1).is_zero());
    CHECK(cube_stages(e).size() == 2);
    CHECK_THROWS_AS(extend_cube(g, 1, {0, 0}), PreconditionError);
    const auto guarded = std::make_shared<GuardedProvider>(g, std::vector<double>{0.0, 0.0},
                                                          std::vector<double>{1.0, 1.0});
    CHECK_NOTHROW(extend_cube(guarded, 2)->jet(Point{-0.04, 1.03}, 2));
}

TEST_CASE("corner extension")
{
    const auto g = make_expr_provider("x1*x2 + 1", 2);
    const auto e = extend_corner(g, 2, 2);
    CHECK(e->value(Point{0.5, 0.25}) == g->value(Point{0.5, 0.25}));
    CHECK(e->value(Point{-0.02, -0.03})[0] == doctest::Approx(1.0 + 0.02 * 0.03));
    CHECK_THROWS_AS(extend_corner(g, 3, 1), PreconditionError);
}

TEST_CASE("componentwise lifting")
{
    const auto f = make_expr_provider("x1^2; sin(x1); 3", 1);
    const auto lifted = lift_componentwise([](ProviderPtr g) { return extend_cube(g, 2); }, f);
    CHECK(lifted->codim() == 3);
    for (double x : {0.0, 0.3, 1.0}) {
        CHECK(lifted->value(Point{x}) == f->value(Point{x}));
    }
}

TEST_CASE("projection extension")
{
    const auto g = make_expr_provider("sin(x1)*x2", 2);
    const ProjectionExtension e(g, {0.5});
    CHECK(e.dim() == 3);
    CHECK(e.value(Point{0.2, 0.3, 0.5}) == g->value(Point{0.2, 0.3}));
    CHECK(e.value(Point{0.2, 0.3, -7.0}) == g->value(Point{0.2, 0.3}));
    const Jet j = e.jet(Point{0.2, 0.3, 1.0}, 2);
    CHECK(j.at(MultiIndex{0, 0, 1})[0] == 0.0);
    CHECK(j.at(MultiIndex{1, 0, 1})[0] == 0.0);
    CHECK(j.at(MultiIndex{1, 1, 0})[0] == doctest::Approx(std::cos(0.2)));
}
