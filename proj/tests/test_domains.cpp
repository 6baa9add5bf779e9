#include "doctest.h"

#include "smoothing/domains.hpp"
#include "smoothing/errors.hpp"
#include "smoothing/io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

using namespace smoothing;

namespace {

// Integer oracle for M_n of the open interval (a/n_a, b/n_b) scaled: |z| + 1 < r n.
std::vector<LatticePoint> symmetric_interval_oracle(int n, int half_width)
{
    std::vector<LatticePoint> out;
    for (int z = -half_width * n; z <= half_width * n; ++z) {
        if (std::abs(z) + 1 < half_width * n) {
            out.push_back({z});
        }
    }
    return out;
}

} // namespace

TEST_CASE("exact coordinate comparison")
{
    CHECK(compare(ExactCoord::ratio(1, 3), ExactCoord::of(1.0 / 3.0)) != 0);
    CHECK(compare({0.5, -1, 4}, ExactCoord::of(0.25)) == 0);
    CHECK(compare({0.1, 0, 1}, {0.0, 1, 10}) != 0);
    CHECK(compare(ExactCoord::ratio(7, 8), ExactCoord::of(0.875)) == 0);
    CHECK(compare(ExactCoord::of(std::numeric_limits<double>::infinity()), ExactCoord::ratio(1000000, 1)) > 0);
}

TEST_CASE("lattice membership")
{
    const BoxUnion omega = BoxUnion::open_box({{-1.0, 1.0}});
    CHECK(cube_in_domain(std::vector<int>{0}, 2, omega));
    CHECK(!cube_in_domain(std::vector<int>{1}, 2, omega));
    const BoxUnion whole = BoxUnion::whole_space(2);
    CHECK(cube_in_domain(std::vector<int>{1000, -77}, 3, whole));

    CHECK(lattice_sets(4, omega) == symmetric_interval_oracle(4, 1));
    CHECK(lattice_sets(4, omega).size() == 5);
    CHECK(lattice_sets(8, omega).size() == 13);
    CHECK(lattice_sets(8, omega) == symmetric_interval_oracle(8, 1));
    CHECK_THROWS_AS(lattice_sets(4, whole), PreconditionError);
}

TEST_CASE("windowed lattice sets")
{
    const BoxUnion omega = BoxUnion::open_box({{0.0, 1.0}, {0.0, 1.0}});
    auto phi = lattice_sets(8, omega, &omega);
    CHECK(!phi.empty());
    auto swapped = phi;
    for (auto& z : swapped) {
        std::swap(z[0], z[1]);
    }
    std::sort(swapped.begin(), swapped.end());
    CHECK(swapped == phi);

    // A small window away from the boundary: supports meeting [0.5, 0.5].
    const BoxUnion point = BoxUnion::closed_box({{0.5, 0.5 + 1e-9}, {0.5, 0.5 + 1e-9}});
    const auto near = lattice_sets(8, omega, &point);
    for (const auto& z : near) {
        CHECK(std::abs(z[0] / 8.0 - 0.5) < 1.0 / 8.0 + 1e-12);
    }
    CHECK(uncovered_lattice_points(8, omega, BoxUnion::closed_box({{0.0, 1.0}, {0.0, 1.0}})).size() > 0);
    CHECK(uncovered_lattice_points(8, omega, BoxUnion::closed_box({{0.25, 0.75}, {0.25, 0.75}})).empty());
}

TEST_CASE("exact cube containment in unions")
{
    const BoxUnion l_shape({Box{{{0.0, 2.0}, {0.0, 1.0}}}, Box{{{0.0, 1.0}, {0.0, 2.0}}}}, true);
    // (1, 1) lies in neither open box, so the cube [0.6, 1]^2 is not covered.
    CHECK(!cube_covered(ExactCube::lattice(std::vector<int>{4, 4}, 5), l_shape));
    CHECK(cube_covered(ExactCube::lattice(std::vector<int>{3, 3}, 5), l_shape));
    CHECK(cube_meets(ExactCube::lattice(std::vector<int>{5, 5}, 5), l_shape));
    CHECK(!cube_meets(ExactCube::lattice(std::vector<int>{7, 7}, 5), l_shape));
    // [1.8, 2.2] x [0.2, 0.6] needs both overlapping boxes.
    const BoxUnion strip({Box{{{0.0, 2.0}, {0.0, 1.0}}}, Box{{{1.0, 3.0}, {0.0, 1.0}}}}, true);
    CHECK(cube_covered(ExactCube::lattice(std::vector<int>{10, 2}, 5), strip));
    CHECK(!cube_covered(ExactCube::lattice(std::vector<int>{10, 2}, 5), BoxUnion::open_box({{0.0, 2.0}, {0.0, 1.0}})));
    // Touching only at a face: the closed cube meets, the open cube does not.
    const BoxUnion closed = BoxUnion::closed_box({{0.0, 1.0}});
    CHECK(cube_meets(ExactCube::lattice(std::vector<int>{3}, 2), closed));
    CHECK(!cube_meets(ExactCube::lattice(std::vector<int>{3}, 2), closed, true));
}

TEST_CASE("compact exhaustion")
{
    const BoxUnion omega = BoxUnion::open_box({{0.0, 1.0}});
    const Exhaustion ex = default_exhaustion(omega, {3, 0.25});
    CHECK(ex.compact(1).boxes()[0].axes[0].lo == 1.0 / 8);
    CHECK(ex.compact(1).boxes()[0].axes[0].hi == 7.0 / 8);
    CHECK(ex.compact(2).boxes()[0].axes[0].lo == 1.0 / 16);
    CHECK(ex.compact(2).boxes()[0].axes[0].hi == 15.0 / 16);
    for (int j = 1; j < ex.depth(); ++j) {
        CHECK(exhaustion_margin_holds(ex, j));
        CHECK(ex.scale(j) < ex.scale(j + 1));
        // Independent check: 2/m_j <= r_j - r_{j+1}.
        CHECK(2.0 / ex.scale(j) <= ex.radii[static_cast<std::size_t>(j - 1)] - ex.radii[static_cast<std::size_t>(j)]);
    }
    const Exhaustion sq = default_exhaustion(BoxUnion::open_box({{0.0, 1.0}, {0.0, 1.0}}));
    CHECK(sq.compact(1).total_volume() < sq.compact(2).total_volume());
    CHECK_THROWS_AS(default_exhaustion(BoxUnion::whole_space(1)), PreconditionError);
}

TEST_CASE("distances to closed sets")
{
    ClosedSet square;
    square.boxes = BoxUnion::closed_box({{0.0, 1.0}, {0.0, 1.0}});
    CHECK(distance_to_closed(square, Point{2.0, 0.0}) == 1.0);
    CHECK(distance_to_closed(square, Point{0.5, 0.5}) == 0.0);
    CHECK(square.contains(Point{1.0, 1.0}));

    ClosedSet mixed;
    mixed.boxes = BoxUnion::closed_box({{2.0, 3.0}});
    mixed.points = {{0.0}};
    CHECK(distance_to_closed(mixed, Point{1.2}) == doctest::Approx(0.8));
    CHECK(nearest_point(mixed, Point{1.2}) == Point{2.0});
    CHECK(nearest_point(mixed, Point{0.7}) == Point{0.0});
}

TEST_CASE("tensor grids")
{
    const auto g = tensor_grid(Box{{{0.0, 1.0}, {-1.0, 1.0}}}, 3);
    CHECK(g.size() == 9);
    CHECK(g.front() == Point{0.0, -1.0});
    CHECK(g[1] == Point{0.0, 0.0});
    CHECK(g.back() == Point{1.0, 1.0});
    CHECK(tensor_grid(Box{{{0.0, 1.0}}}, 1) == std::vector<Point>{{0.5}});
}

TEST_CASE("domain JSON")
{
    using nlohmann::json;
    const BoxUnion single = box_union_from_json(json::parse("[[0, 1], [null, 2]]"), true);
    CHECK(single.boxes().size() == 1);
    CHECK(std::isinf(single.boxes()[0].axes[1].lo));
    const BoxUnion two = box_union_from_json(json::parse(R"({"boxes": [[[0,2],[0,1]], [[0,1],[0,2]]]})"), true);
    CHECK(two.boxes().size() == 2);
    const BoxUnion back = box_union_from_json(box_union_to_json(two), true);
    CHECK(back.boxes().size() == 2);
    try {
        (void)box_union_from_json(json::parse("[[[0,1]], [[0,\"a\"]]]"), true);
        FAIL("expected a configuration error");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "domain[1][0][1]");
    }
    CHECK_THROWS_AS(box_union_from_json(json::parse("[[1, 0]]"), true), ConfigError);
    const ClosedSet y = closed_set_from_json(json::parse(R"({"points": [[0.5, 0.5]]})"));
    CHECK(y.points.size() == 1);
    CHECK(!y.boxes);
    CHECK(format_double(0.1) == "0.10000000000000001");
}
