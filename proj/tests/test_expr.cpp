#include "doctest.h"

#include "smoothing/errors.hpp"
#include "smoothing/expr.hpp"

#include <cmath>
#include <numbers>

using namespace smoothing;

TEST_CASE("parse tree shape")
{
    const ExprPtr e = parse_expression("sin(x1+2*x2)");
    REQUIRE(e->kind == ExprKind::sin);
    const ExprPtr& add = e->args.at(0);
    REQUIRE(add->kind == ExprKind::add);
    CHECK(add->args[0]->kind == ExprKind::variable);
    CHECK(add->args[0]->variable == 0);
    const ExprPtr& mul = add->args[1];
    REQUIRE(mul->kind == ExprKind::mul);
    CHECK(mul->args[0]->kind == ExprKind::number);
    CHECK(mul->args[0]->number == 2.0);
    CHECK(mul->args[1]->variable == 1);
    CHECK(structurally_equal(parse_expression(to_string(e)), e));
}

TEST_CASE("precedence and evaluation")
{
    const double none[1] = {0.0};
    CHECK(evaluate(*parse_expression("1+2*3"), none) == 7.0);
    CHECK(evaluate(*parse_expression("(2^3)^2"), none) == 64.0);
    CHECK_THROWS_AS(parse_expression("2^3^1"), ParseError);
    CHECK(evaluate(*parse_expression("-2^2"), none) == -4.0);
    CHECK(evaluate(*parse_expression("(1 - 4) / 2"), none) == -1.5);
    const double x[2] = {2.0, 3.0};
    CHECK(evaluate(*parse_expression("x1*x2 - x2"), x) == 3.0);
}

TEST_CASE("parse errors carry offsets")
{
    auto offset_of = [](std::string_view text) -> long {
        try {
            (void)parse_function(text);
        } catch (const ParseError& e) {
            return static_cast<long>(e.offset());
        }
        return -1;
    };
    CHECK(offset_of("x1/") == 3);
    CHECK(offset_of("foo(x1)") == 0);
    CHECK(offset_of("x5") == 0);
    CHECK(offset_of("(x1") == 3);
    CHECK(offset_of("x1 + + ") >= 0);
    CHECK(offset_of("x1^-1") >= 0);
    CHECK(offset_of("x1^1.5") >= 0);
}

TEST_CASE("vector functions")
{
    const ParsedFunction f = parse_function("sin(x1); x3");
    CHECK(f.components.size() == 2);
    CHECK(f.variables == 3);
    const auto p = make_expr_provider("1; 2", 2);
    CHECK(p->dim() == 2);
    CHECK(p->codim() == 2);
    CHECK(make_expr_provider("7")->dim() == 1);
}

TEST_CASE("jets")
{
    SUBCASE("sin(x1 + 2 x2) at the origin")
    {
        const Jet j = make_expr_provider("sin(x1+2*x2)", 2)->jet(Point{0.0, 0.0}, 2);
        CHECK(j.at(MultiIndex{0, 0})[0] == 0.0);
        CHECK(j.at(MultiIndex{1, 0})[0] == doctest::Approx(1.0));
        CHECK(j.at(MultiIndex{0, 1})[0] == doctest::Approx(2.0));
        CHECK(j.at(MultiIndex{2, 0})[0] == doctest::Approx(0.0));
        CHECK(j.at(MultiIndex{1, 1})[0] == doctest::Approx(0.0));
        CHECK(j.at(MultiIndex{0, 2})[0] == doctest::Approx(0.0));
    }
    SUBCASE("x1^2 at 3")
    {
        const Jet j = make_expr_provider("x1^2")->jet(Point{3.0}, 3);
        CHECK(j[0][0] == 9.0);
        CHECK(j[1][0] == 6.0);
        CHECK(j[2][0] == 2.0);
        CHECK(j[3][0] == 0.0);
    }
    SUBCASE("exp(x1) x2 at (1, 2)")
    {
        const double e = std::numbers::e;
        const Jet j = make_expr_provider("exp(x1)*x2", 2)->jet(Point{1.0, 2.0}, 1);
        CHECK(j.at(MultiIndex{0, 0})[0] == doctest::Approx(2 * e));
        CHECK(j.at(MultiIndex{1, 0})[0] == doctest::Approx(2 * e));
        CHECK(j.at(MultiIndex{0, 1})[0] == doctest::Approx(e));
    }
    SUBCASE("quotients")
    {
        const Jet j = make_expr_provider("1/x1")->jet(Point{2.0}, 2);
        CHECK(j[1][0] == doctest::Approx(-0.25));
        CHECK(j[2][0] == doctest::Approx(0.25));
    }
}

TEST_CASE("domain errors")
{
    const auto p = make_expr_provider("1/(x1 - 1)");
    CHECK_THROWS_AS(p->value(Point{1.0}), DomainError);
    CHECK_NOTHROW(p->value(Point{2.0}));
    CHECK_THROWS_AS(make_expr_provider("x2", 1), std::exception);
}
