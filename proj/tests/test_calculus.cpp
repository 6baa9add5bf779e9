#include "doctest.h"

#include "smoothing/bump.hpp"
#include "smoothing/errors.hpp"
#include "smoothing/expr.hpp"
#include "smoothing/polynomial.hpp"
#include "smoothing/provider.hpp"
#include "smoothing/seminorm.hpp"

#include <cmath>
#include <numbers>

using namespace smoothing;

namespace {

std::vector<Point> line_grid(double lo, double hi, int count)
{
    std::vector<Point> out;
    for (int i = 0; i < count; ++i) {
        out.push_back({lo + (hi - lo) * i / (count - 1)});
    }
    return out;
}

// Brute-force polarization: beta(u_1..u_j) = 1/(2^j j!) sum_eps eps_1..eps_j p(sum eps_i u_i).
double brute_polarize(const PolynomialMap& p, const std::vector<Point>& args)
{
    const int j = static_cast<int>(args.size());
    const int d = p.dim();
    double sum = 0.0;
    for (int mask = 0; mask < (1 << j); ++mask) {
        Point y(static_cast<std::size_t>(d), 0.0);
        double sign = 1.0;
        for (int i = 0; i < j; ++i) {
            const double e = (mask >> i) & 1 ? -1.0 : 1.0;
            sign *= e;
            for (int k = 0; k < d; ++k) {
                y[static_cast<std::size_t>(k)] += e * args[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
            }
        }
        sum += sign * p(y)[0];
    }
    double fact = 1.0;
    for (int i = 2; i <= j; ++i) {
        fact *= i;
    }
    return sum / (std::ldexp(1.0, j) * fact);
}

} // namespace

TEST_CASE("multi-index sets are graded and closed under addition lookups")
{
    const auto& set = MultiIndexSet::get(2, 3);
    CHECK(set.size() == 10);
    CHECK(MultiIndexSet::count(3, 2) == 10);
    CHECK(set[0].order() == 0);
    for (int j = 0; j <= 3; ++j) {
        for (std::size_t i = set.degree_begin(j); i < set.degree_end(j); ++i) {
            CHECK(set[i].order() == j);
        }
    }
    const std::size_t a = set.index_of(MultiIndex{1, 0});
    const std::size_t b = set.index_of(MultiIndex{1, 1});
    CHECK(set[set.sum_index(a, b)] == MultiIndex({2, 1}));
    CHECK(set.sum_index(set.index_of(MultiIndex{2, 0}), b) == MultiIndexSet::npos);
    CHECK(MultiIndex({2, 1}).factorial() == 2.0);
    CHECK(MultiIndex::from_string("2,1", 2) == MultiIndex({2, 1}));
    CHECK(MultiIndex({3, 0, 1}).to_string() == "3,0,1");
    CHECK_THROWS_AS(check_dim_order(5, 1), PreconditionError);
}

TEST_CASE("series arithmetic")
{
    const auto& set = MultiIndexSet::get(1, 3);
    SUBCASE("exp of the zero series")
    {
        const Series e = exp(Series(set));
        CHECK(e[0] == 1.0);
        CHECK(e[1] == 0.0);
        CHECK(e[2] == 0.0);
        CHECK(e[3] == 0.0);
    }
    SUBCASE("(1 + t)(1 - t)")
    {
        const auto& set2 = MultiIndexSet::get(1, 2);
        const Series t = Series::variable(set2, 0, 0.0);
        const Series one = Series::constant(set2, 1.0);
        const Series p = (one + t) * (one - t);
        CHECK(p[0] == 1.0);
        CHECK(p[1] == 0.0);
        CHECK(p[2] == -1.0);
    }
    SUBCASE("quotient by a vanishing series")
    {
        CHECK_THROWS_AS(reciprocal(Series(set)), DomainError);
    }
    SUBCASE("bump profile against finite differences")
    {
        const Series g = bump_profile_series(0.5, 1);
        const double h = 1e-5;
        const double fd = (bump_profile(0.5 + h) - bump_profile(0.5 - h)) / (2 * h);
        CHECK(g[0] == doctest::Approx(std::exp(-4.0 / 3.0)).epsilon(1e-15));
        CHECK(g.derivative(1) == doctest::Approx(fd).epsilon(1e-8));
        CHECK(g.derivative(1) == doctest::Approx(std::exp(-4.0 / 3.0) * (-16.0 / 9.0)).epsilon(1e-13));
    }
    SUBCASE("multivariate product against the Leibniz rule")
    {
        const auto& s2 = MultiIndexSet::get(2, 2);
        const Series x = Series::variable(s2, 0, 0.5);
        const Series y = Series::variable(s2, 1, -1.0);
        const Series f = sin(x) * exp(y);
        // d^2/dx dy = cos(x) e^y
        CHECK(f.derivative(s2.index_of(MultiIndex{1, 1})) == doctest::Approx(std::cos(0.5) * std::exp(-1.0)));
        CHECK(f.derivative(s2.index_of(MultiIndex{2, 0})) == doctest::Approx(-std::sin(0.5) * std::exp(-1.0)));
    }
}

TEST_CASE("Taylor polynomials of jets")
{
    SUBCASE("t^2 at 1")
    {
        const auto p = taylor_polynomial(make_expr_provider("x1^2")->jet(Point{1.0}, 2), 2);
        CHECK(p.coefficient(p.set().index_of(MultiIndex{0}))[0] == 1.0);
        CHECK(p.coefficient(p.set().index_of(MultiIndex{1}))[0] == 2.0);
        CHECK(p.coefficient(p.set().index_of(MultiIndex{2}))[0] == 1.0);
    }
    SUBCASE("exp at 0")
    {
        const auto p = taylor_polynomial(make_expr_provider("exp(x1)")->jet(Point{0.0}, 2), 2);
        CHECK(p.coefficient(p.set().index_of(MultiIndex{0}))[0] == 1.0);
        CHECK(p.coefficient(p.set().index_of(MultiIndex{1}))[0] == 1.0);
        CHECK(p.coefficient(p.set().index_of(MultiIndex{2}))[0] == 0.5);
    }
    SUBCASE("x1 x2 at the origin")
    {
        const auto p = taylor_polynomial(make_expr_provider("x1*x2")->jet(Point{0.0, 0.0}, 2), 2);
        const auto& set = p.set();
        for (std::size_t i = 0; i < set.size(); ++i) {
            CHECK(p.coefficient(i)[0] == (set[i] == MultiIndex({1, 1}) ? 1.0 : 0.0));
        }
    }
    SUBCASE("order above the jet order")
    {
        CHECK_THROWS_AS(taylor_polynomial(make_expr_provider("x1")->jet(Point{0.0}, 1), 2), PreconditionError);
    }
}

TEST_CASE("polarization")
{
    SUBCASE("y^2 gives uv")
    {
        PolynomialMap p(1, 2, 1);
        p.coefficient(p.set().index_of(MultiIndex{2}))[0] = 1.0;
        const SymmetricForm beta = polarize(p, 2);
        const std::vector<Point> args{{0.7}, {-1.3}};
        CHECK(beta(args)[0] == doctest::Approx(0.7 * -1.3));
    }
    SUBCASE("zero polynomial")
    {
        const SymmetricForm beta = polarize(PolynomialMap(2, 3, 2), 3);
        const std::vector<Point> args{{1.0, 2.0}, {0.5, -1.0}, {3.0, 0.25}};
        for (double v : beta(args)) {
            CHECK(v == 0.0);
        }
    }
    SUBCASE("y1^2 y2 against the brute-force sum")
    {
        PolynomialMap p(2, 3, 1);
        p.coefficient(p.set().index_of(MultiIndex{2, 1}))[0] = 1.0;
        const SymmetricForm beta = polarize(p, 3);
        const std::vector<Point> basis{{1.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
        CHECK(beta(basis)[0] == doctest::Approx(1.0 / 3.0));
        CHECK(brute_polarize(p, basis) == doctest::Approx(1.0 / 3.0));
        const std::vector<Point> generic{{0.3, -0.8}, {1.1, 0.4}, {-0.5, 0.9}};
        CHECK(beta(generic)[0] == doctest::Approx(brute_polarize(p, generic)).epsilon(1e-12));
    }
    SUBCASE("inhomogeneous input is rejected")
    {
        PolynomialMap p(1, 2, 1);
        p.coefficient(p.set().index_of(MultiIndex{1}))[0] = 1.0;
        CHECK_THROWS_AS(polarize(p, 2), PreconditionError);
    }
}

TEST_CASE("homogeneous polynomial norms")
{
    const SeminormSpec abs = SeminormSpec::coordinate_max();
    SUBCASE("p(y) = y")
    {
        PolynomialMap p(1, 1, 1);
        p.coefficient(p.set().index_of(MultiIndex{1}))[0] = 1.0;
        CHECK(form_norm(p, abs) == 1.0);
    }
    SUBCASE("p(y) = y1 y2 against a dense grid")
    {
        PolynomialMap p(2, 2, 1);
        p.coefficient(p.set().index_of(MultiIndex{1, 1}))[0] = 1.0;
        double dense = 0.0;
        for (int i = 0; i <= 400; ++i) {
            for (int j = 0; j <= 400; ++j) {
                const double y1 = -1.0 + i / 200.0;
                const double y2 = -1.0 + j / 200.0;
                dense = std::max(dense, std::abs(y1 * y2));
            }
        }
        CHECK(form_norm(p, abs) == doctest::Approx(dense));
        CHECK(form_norm(p, abs) == doctest::Approx(1.0));
    }
    SUBCASE("polarization constant bound")
    {
        PolynomialMap p(2, 3, 1);
        p.coefficient(p.set().index_of(MultiIndex{2, 1}))[0] = 1.0;
        p.coefficient(p.set().index_of(MultiIndex{0, 3}))[0] = -0.5;
        const SymmetricForm beta = polarize(p, 3);
        const double np = form_norm(p, abs);
        const double nb = form_norm(beta, abs);
        CHECK(np <= nb + 1e-12);
        CHECK(nb <= polarization_constant(3) * np);
        CHECK(polarization_constant(3) == doctest::Approx(36.0));
    }
}

TEST_CASE("C^l seminorms on grids")
{
    const SeminormSpec q = SeminormSpec::coordinate_max();
    CHECK(seminorm_Cl(*make_expr_provider("sin(x1)"), line_grid(0.0, std::numbers::pi / 2, 101), 0, q) ==
          doctest::Approx(1.0));
    CHECK(seminorm_Cl(*make_expr_provider("x1^2"), line_grid(0.0, 1.0, 101), 1, q) == doctest::Approx(2.0));
    CHECK(seminorm_Cl(*make_expr_provider("x1; 2*x1"), line_grid(0.0, 1.0, 101), 0, q) == doctest::Approx(2.0));
    // In d = 1 both flavors coincide.
    const auto f = make_expr_provider("exp(x1)*sin(3*x1)");
    const auto grid = line_grid(-1.0, 1.0, 51);
    CHECK(seminorm_Cl(*f, grid, 2, q, SeminormFlavor::gateaux) ==
          doctest::Approx(seminorm_Cl(*f, grid, 2, q, SeminormFlavor::partial)));
}

TEST_CASE("seminorm specs")
{
    const std::vector<double> v{3.0, -4.0};
    CHECK(SeminormSpec::coordinate_max()(v) == 4.0);
    CHECK(SeminormSpec::euclidean()(v) == 5.0);
    CHECK(SeminormSpec::weighted_max({2.0, 0.5})(v) == 6.0);
    CHECK_THROWS_AS(SeminormSpec::weighted_max({1.0, 0.0}), PreconditionError);
}

TEST_CASE("provider combinators")
{
    const auto f = make_expr_provider("sin(x1); x1^2", 1);
    const ComponentProvider second(f, 1);
    CHECK(second.value(Point{3.0})[0] == 9.0);
    const RankOneProvider r1(std::make_shared<ComponentProvider>(f, 1), {2.0, -1.0});
    CHECK(r1.value(Point{3.0}) == VectorValue{18.0, -9.0});
    const GuardedProvider guarded(f, {0.0}, {1.0});
    CHECK_NOTHROW(guarded.value(Point{1.0}));
    CHECK_THROWS_AS(guarded.value(Point{1.5}), DomainError);
}
