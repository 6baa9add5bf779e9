#include "doctest.h"

#include "smoothing/bump.hpp"
#include "smoothing/errors.hpp"

#include <cmath>

using namespace smoothing;

TEST_CASE("bump jets")
{
    SUBCASE("center")
    {
        const Jet j = bump_jet(Point{0.0}, 1);
        CHECK(j[0][0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
        CHECK(j[1][0] == 0.0);
    }
    SUBCASE("boundary of the support")
    {
        CHECK(bump_jet(Point{1.0}, 4).is_zero());
        CHECK(bump_jet(Point{0.2, -1.0}, 3).is_zero());
    }
    SUBCASE("x = 1/2 against finite differences")
    {
        const Jet j = bump_jet(Point{0.5}, 1);
        const double h = 1e-5;
        const double fd = (bump_profile(0.5 + h) - bump_profile(0.5 - h)) / (2 * h);
        CHECK(j[0][0] == doctest::Approx(std::exp(-4.0 / 3.0)));
        CHECK(j[1][0] == doctest::Approx(fd).epsilon(1e-8));
    }
    SUBCASE("product structure")
    {
        const Jet j = bump_jet(Point{0.3, -0.4}, 2);
        CHECK(j[0][0] == doctest::Approx(bump_profile(0.3) * bump_profile(-0.4)));
    }
}

TEST_CASE("periodic partition of unity")
{
    SUBCASE("h_0(0) = 1 in one dimension")
    {
        const Jet j = partition_jet(std::vector<int>{0}, Point{0.0}, 1);
        CHECK(j[0][0] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(j[1][0] == doctest::Approx(0.0));
    }
    SUBCASE("translation identity")
    {
        for (double x : {-0.7, -0.2, 0.0, 0.45, 0.9}) {
            const Jet a = partition_jet(std::vector<int>{0}, Point{x}, 2);
            const Jet b = partition_jet(std::vector<int>{3}, Point{x + 3.0}, 2);
            for (std::size_t i = 0; i < 3; ++i) {
                CHECK(a[i][0] == doctest::Approx(b[i][0]).epsilon(1e-12));
            }
        }
    }
    SUBCASE("values sum to one and derivatives to zero")
    {
        for (const Point& y : {Point{0.37, -2.2}, Point{5.5, 5.5}, Point{-1.0, 0.25}}) {
            const PartitionTerms t = partition_series(y, 2);
            double sum = 0.0;
            double d1 = 0.0;
            for (const auto& s : t.values) {
                sum += s.value();
                d1 += s.derivative(1);
                CHECK(s.value() >= 0.0);
            }
            CHECK(std::abs(sum - 1.0) <= 1e-12);
            CHECK(std::abs(d1) <= 1e-9);
        }
    }
    SUBCASE("finite differences of h_z")
    {
        const std::vector<int> z{1, 0};
        const Point x{0.6, 0.3};
        const Jet j = partition_jet(z, x, 1);
        const double h = 1e-6;
        const double fd = (partition_jet(z, Point{0.6 + h, 0.3}, 0)[0][0] - partition_jet(z, Point{0.6 - h, 0.3}, 0)[0][0]) /
                          (2 * h);
        CHECK(j.at(MultiIndex{1, 0})[0] == doctest::Approx(fd).epsilon(1e-7));
    }
}

TEST_CASE("scaled partition")
{
    SUBCASE("scaled center")
    {
        const Jet j = scaled_partition_jet(2, std::vector<int>{0}, Point{0.0}, 1);
        CHECK(j[0][0] == doctest::Approx(1.0));
        CHECK(j[1][0] == doctest::Approx(0.0));
    }
    SUBCASE("chain rule")
    {
        const int n = 5;
        const double x = 0.137;
        const Jet scaled = scaled_partition_jet(n, std::vector<int>{1}, Point{x}, 1);
        const Jet plain = partition_jet(std::vector<int>{1}, Point{n * x}, 1);
        CHECK(scaled[1][0] == doctest::Approx(n * plain[1][0]).epsilon(1e-14));
    }
    SUBCASE("support")
    {
        for (double x : {0.25, 0.5, -0.25, 0.3, 1.0}) {
            CHECK(scaled_partition_jet(4, std::vector<int>{0}, Point{x}, 2).is_zero());
        }
        CHECK(!scaled_partition_jet(4, std::vector<int>{0}, Point{0.2}, 0).is_zero());
    }
    CHECK_THROWS_AS(scaled_partition_jet(0, std::vector<int>{0}, Point{0.0}, 0), PreconditionError);
}

TEST_CASE("smooth step")
{
    CHECK(smooth_step(-1.0) == 0.0);
    CHECK(smooth_step(0.0) == 0.0);
    CHECK(smooth_step(1.0) == 1.0);
    CHECK(smooth_step(0.5) == doctest::Approx(0.5).epsilon(1e-14));
    double prev = 0.0;
    for (int i = 1; i < 100; ++i) {
        const double v = smooth_step(i / 100.0);
        CHECK(v >= prev);
        CHECK(smooth_step(1.0 - i / 100.0) == doctest::Approx(1.0 - v).epsilon(1e-13));
        prev = v;
    }
    const Series s = smooth_step_series(0.3, 2);
    const double h = 1e-5;
    CHECK(s.derivative(1) == doctest::Approx((smooth_step(0.3 + h) - smooth_step(0.3 - h)) / (2 * h)).epsilon(1e-8));
}

TEST_CASE("bound constant")
{
    // Independent evaluation of 1 + (l+1) 2^(d+1) (2l)^l ||h0||.
    CHECK(smoothing_bound_constant(1, 0, 0.5) == 1.0 + 1 * 4 * 1 * 0.5);
    CHECK(smoothing_bound_constant(2, 2, 3.0) == 1.0 + 3 * 8 * 16 * 3.0);
    CHECK(smoothing_bound_constant(1, 3, 1.0) == 1.0 + 4 * 4 * 216.0);
    const PartitionNorm& h0 = partition_norm(1, 0);
    CHECK(h0.value == doctest::Approx(1.0));
    CHECK(h0.describe().find(kBumpDefinition) != std::string::npos);
    CHECK(partition_norm(1, 1).value > 1.0);
    CHECK(&partition_norm(1, 1) == &partition_norm(1, 1));
}

TEST_CASE("bump test functions")
{
    const BumpProvider b({0.5, 0.5}, {0.25, 0.1}, {1.0, 2.0});
    CHECK(b.jet(Point{0.8, 0.5}, 2).is_zero());
    CHECK(b.jet(Point{0.5, 0.6}, 2).is_zero());
    const VectorValue c = b.value(Point{0.5, 0.5});
    CHECK(c[0] == doctest::Approx(std::exp(-2.0)));
    CHECK(c[1] == doctest::Approx(2 * std::exp(-2.0)));
}
