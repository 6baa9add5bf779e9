#include "doctest.h"

#include "smoothing/expr.hpp"
#include "smoothing/harness.hpp"

#include <algorithm>
#include <sstream>

using namespace smoothing;

TEST_CASE("property suites pass and do not depend on the seed")
{
    const auto a = property_suites(0);
    const auto b = property_suites(1);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        INFO(a[i].name << ": " << a[i].detail);
        CHECK(a[i].pass);
        CHECK(a[i].name == b[i].name);
        CHECK(a[i].pass == b[i].pass);
    }
}

TEST_CASE("summary JSON")
{
    const std::vector<SuiteResult> r{{"alpha", true, 0.5, "ok", 0.1}, {"beta", false, 2.0, "bad", 0.2}};
    const auto j = summary_json(r);
    REQUIRE(j.size() == 2);
    CHECK(j[0]["suite"] == "alpha");
    CHECK(j[0]["pass"] == true);
    CHECK(j[1]["max_violation"] == 2.0);
}

TEST_CASE("convergence report")
{
    const auto f = make_expr_provider("sin(x1)");
    ConvergenceConfig cfg;
    const ConvergenceTable a = convergence_report(*f, "sin(x1)", cfg);
    CHECK(a.decreasing);
    CHECK(a.rows.size() == cfg.scales.size());
    std::istringstream lines(a.csv());
    std::string line;
    std::getline(lines, line);
    std::size_t i = 0;
    while (std::getline(lines, line)) {
        REQUIRE(i < cfg.scales.size());
        CHECK(std::stoi(line.substr(0, line.find(','))) == cfg.scales[i]);
        ++i;
    }
    CHECK(i == cfg.scales.size());

    // Byte-identical apart from the timing column.
    const ConvergenceTable b = convergence_report(*f, "sin(x1)", cfg);
    CHECK(a.errors() == b.errors());
}

TEST_CASE("helpers")
{
    const std::vector<double> down{1.0, 0.5, 0.25, 1e-14, 2e-14};
    CHECK(strictly_decreasing(down, 1e-12));
    CHECK(!strictly_decreasing(std::vector<double>{1.0, 1.5}, 1e-12));
    const std::vector<int> n{4, 8, 16};
    const std::vector<double> e{1.0, 0.25, 0.0625};
    CHECK(fit_slope(n, e) == doctest::Approx(-2.0));
}

TEST_CASE("growth table")
{
    const auto rows = constant_growth(1, 3);
    REQUIRE(rows.size() == 4);
    CHECK(rows[2].power == 16.0);
    for (const auto& r : rows) {
        CHECK(r.constant == r.recomputed);
    }
    CHECK(rows[3].constant > rows[2].constant);
}

TEST_CASE("perturbed reflection weights are detected")
{
    const SuiteResult r = suites::mutation();
    CHECK(r.pass);
}

TEST_CASE("acceptance criteria are numbered 1..11")
{
    const auto& c = acceptance_criteria();
    REQUIRE(c.size() == 11);
    for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(c[i].id == static_cast<int>(i) + 1);
    }
}
