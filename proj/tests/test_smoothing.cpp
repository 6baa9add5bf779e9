#include "doctest.h"

#include "smoothing/errors.hpp"
#include "smoothing/expr.hpp"
#include "smoothing/smoothing.hpp"

#include <cmath>

using namespace smoothing;

namespace {

const BoxUnion& interval_domain()
{
    static const BoxUnion omega = BoxUnion::open_box({{-2.0, 2.0}});
    return omega;
}

} // namespace

TEST_CASE("constants are reproduced where the partition sums to one")
{
    const auto c = make_expr_provider("2.5; -1", 1);
    const SmoothedFunction s = build_stilde(*c, 0, 8, interval_domain(), BoxUnion::closed_box({{-1.75, 1.75}}));
    for (double x = -1.75; x <= 1.75; x += 0.01) {
        const VectorValue v = s.value(Point{x});
        CHECK(v[0] == doctest::Approx(2.5).epsilon(1e-14));
        CHECK(v[1] == doctest::Approx(-1.0).epsilon(1e-14));
    }
}

TEST_CASE("polynomials of degree <= l are reproduced")
{
    const auto p = make_expr_provider("1 - 2*x1 + 0.5*x1^2*x2 + x2^2", 2);
    const BoxUnion omega = BoxUnion::open_box({{-2.0, 2.0}, {-2.0, 2.0}});
    const SmoothedFunction s = build_stilde(*p, 3, 8, omega, BoxUnion::closed_box({{-1.0, 1.0}, {-1.0, 1.0}}));
    for (const auto& x : tensor_grid(Box{{{-1.0, 1.0}, {-1.0, 1.0}}}, 9)) {
        const Jet a = s.jet(x, 2);
        const Jet b = p->jet(x, 2);
        for (std::size_t i = 0; i < a.set().size(); ++i) {
            CHECK(a[i][0] == doctest::Approx(b[i][0]).epsilon(1e-10));
        }
    }
}

TEST_CASE("sin converges in C^1 on [-1, 1]")
{
    const auto f = make_expr_provider("sin(x1)");
    const auto grid = tensor_grid(Box{{{-1.0, 1.0}}}, 201);
    double prev = INFINITY;
    for (int n : {4, 8, 16, 32}) {
        const SmoothedFunction s = build_stilde(*f, 1, n, interval_domain(), BoxUnion::closed_box({{-1.0, 1.0}}));
        double err = 0.0;
        for (const auto& x : grid) {
            const Jet a = s.jet(x, 1);
            err = std::max({err, std::abs(a[0][0] - std::sin(x[0])), std::abs(a[1][0] - std::cos(x[0]))});
        }
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("term set matches the lattice enumeration")
{
    const auto f = make_expr_provider("sin(x1)");
    const BoxUnion window = BoxUnion::closed_box({{-1.0, 1.0}});
    const SmoothedFunction s = build_stilde(*f, 1, 8, interval_domain(), window);
    CHECK(s.terms().size() == lattice_sets(8, interval_domain(), &window).size());
    // Closed supports [z/8 - 1/8, z/8 + 1/8] meeting [-1, 1]: z = -9..9.
    CHECK(s.terms().size() == 19);
}

TEST_CASE("windows reaching the boundary are rejected unless partial sums are allowed")
{
    const auto f = make_expr_provider("x1");
    const BoxUnion window = BoxUnion::closed_box({{-2.0, 2.0}});
    CHECK_THROWS_AS(build_stilde(*f, 1, 8, interval_domain(), window), PreconditionError);
    CHECK_NOTHROW(build_stilde(*f, 1, 8, interval_domain(), window, {true}));
}

TEST_CASE("evaluation")
{
    const auto f = make_expr_provider("exp(x1)*cos(x2)", 2);
    const BoxUnion omega = BoxUnion::open_box({{-2.0, 2.0}, {-2.0, 2.0}});
    const SmoothedFunction s = build_stilde(*f, 2, 4, omega, BoxUnion::closed_box({{-1.0, 1.0}, {-1.0, 1.0}}));
    CHECK(s.jet(Point{1.9, 0.0}, 2).is_zero());
    const Point x{0.3, -0.45};
    CHECK(s.direct_value(x)[0] == doctest::Approx(s.value(x)[0]).epsilon(1e-14));
    const double h = 1e-5;
    const double fd = (s.value(Point{0.3, -0.45 + h})[0] - s.value(Point{0.3, -0.45 - h})[0]) / (2 * h);
    CHECK(s.jet(x, 1).at(MultiIndex{0, 1})[0] == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("JSON round trip")
{
    const auto f = make_expr_provider("sin(x1); x1^2", 1);
    const SmoothedFunction s = build_stilde(*f, 2, 4, interval_domain(), BoxUnion::closed_box({{-1.0, 1.0}}));
    const SmoothedFunction back = SmoothedFunction::from_json(s.to_json());
    CHECK(back.to_json() == s.to_json());
    for (double x : {-0.9, 0.0, 0.77}) {
        CHECK(back.value(Point{x}) == s.value(Point{x}));
    }
    CHECK_THROWS_AS(SmoothedFunction::from_json(nlohmann::json::parse(R"({"l": 1})")), ConfigError);
}

TEST_CASE("restriction to a box")
{
    const auto f = make_expr_provider("x1");
    const SmoothedFunction s =
        build_stilde(*f, 1, 4, interval_domain(), BoxUnion::closed_box({{-1.0, 1.0}})).restricted_to(Box{{{0.0, 1.0}}});
    CHECK_NOTHROW(s.value(Point{0.5}));
    CHECK_THROWS_AS(s.value(Point{-0.5}), DomainError);
}

TEST_CASE("staged smoothing")
{
    const BoxUnion omega = BoxUnion::open_box({{-2.0, 2.0}});
    const Exhaustion ex = default_exhaustion(omega, {3, 0.25});
    const auto f = make_expr_provider("cos(x1)");
    const SmoothedFunction s1 = build_sn(*f, 1, ex, 1, omega);
    CHECK(certify_support(s1, ex.compact(2)).ok);
    CHECK(!certify_support(s1, ex.compact(1)).ok);
    const SmoothedFunction ref = build_stilde(*f, 1, ex.scale(1), omega, ex.compact(1));
    for (const auto& x : tensor_grid(ex.compact(1).bounding_box(), 25)) {
        CHECK(s1.value(x)[0] == doctest::Approx(ref.value(x)[0]).epsilon(1e-12));
    }
    CHECK_THROWS_AS(build_sn(*f, 1, ex, ex.depth(), omega), PreconditionError);
    CHECK_THROWS_AS(build_sn(*f, 1, ex, 0, omega), PreconditionError);
}

TEST_CASE("tensor witness ranks")
{
    const BoxUnion window = BoxUnion::closed_box({{-1.0, 1.0}});
    const auto scalar = build_stilde(*make_expr_provider("exp(x1)"), 1, 4, interval_domain(), window);
    CHECK(tensor_witness(scalar).rank <= 1);
    const auto twin = build_stilde(*make_expr_provider("sin(x1); sin(x1)"), 1, 4, interval_domain(), window);
    const TensorWitness w = tensor_witness(twin);
    CHECK(w.rank == 1);
    const auto full = build_stilde(*make_expr_provider("sin(x1); cos(x1); exp(x1)"), 1, 4, interval_domain(), window);
    const TensorWitness wf = tensor_witness(full);
    CHECK(wf.rank == 3);
    for (double x : {-0.8, 0.1, 0.6}) {
        const VectorValue a = twin.value(Point{x});
        const VectorValue b = w.reconstruct(Point{x});
        CHECK(a[0] == doctest::Approx(b[0]).epsilon(1e-12));
        CHECK(a[1] == doctest::Approx(b[1]).epsilon(1e-12));
    }
    const auto zero = build_stilde(*make_expr_provider("0; 0"), 1, 4, interval_domain(), window);
    CHECK(tensor_witness(zero).rank == 0);
}

TEST_CASE("interpolated family")
{
    const FamilySchedule sched;
    CHECK(sched.t(1) == 1.0);
    CHECK(sched.t(3) == 0.25);
    CHECK(sched.scale(3) == 16);
    CHECK(sched.rho(0.1) == 0.0);
    CHECK(sched.rho(0.9) == 1.0);
    const auto pos = family_position(0.75);
    CHECK(pos.j == 1);
    CHECK(pos.s == doctest::Approx(0.5));
    CHECK_THROWS_AS(family_position(0.0), PreconditionError);
    CHECK_THROWS_AS(family_position(1.5), PreconditionError);

    const auto f = make_expr_provider("sin(x1)");
    const BoxUnion window = BoxUnion::closed_box({{-1.0, 1.0}});
    const auto h2 = build_stilde(*f, 1, 8, interval_domain(), window);
    CHECK(interpolated_family(*f, 1, interval_domain(), window, 0.5).to_json() == h2.to_json());
    // Lower collar of (t_3, t_2]: s <= epsilon gives H_3.
    const auto h3 = build_stilde(*f, 1, 16, interval_domain(), window);
    CHECK(interpolated_family(*f, 1, interval_domain(), window, 0.25 + 0.2 * 0.25).to_json() == h3.to_json());
    // Interior of the transition: a genuine blend of both scales.
    const auto mid = interpolated_family(*f, 1, interval_domain(), window, 0.25 + 0.5 * 0.25);
    CHECK(mid.scales() == std::vector<int>{8, 16});
}

TEST_CASE("smoothing on the closed cube")
{
    const auto p = make_expr_provider("1 + x1 - 2*x1*x2", 2);
    const SmoothedFunction s = cube_smoothing(p, 2, 16);
    for (const auto& x : tensor_grid(Box{{{0.0, 1.0}, {0.0, 1.0}}}, 7)) {
        CHECK(s.value(x)[0] == doctest::Approx(p->value(x)[0]).epsilon(1e-8));
    }
    CHECK_THROWS_AS(s.value(Point{1.1, 0.5}), DomainError);
}
