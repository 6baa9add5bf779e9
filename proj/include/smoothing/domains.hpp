#pragma once

#include "smoothing/bump.hpp"
#include "smoothing/jet.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace smoothing {

/// A coordinate of the form base + num / den (den > 0) compared exactly.
/// Lattice cube faces z/n +- 1/n and inflated box faces lo - 2/m are of this form.
struct ExactCoord {
    double base = 0.0;
    std::int64_t num = 0;
    std::int64_t den = 1;

    static ExactCoord of(double v) { return {v, 0, 1}; }
    static ExactCoord ratio(std::int64_t num, std::int64_t den) { return {0.0, num, den}; }

    double approx() const noexcept { return base + static_cast<double>(num) / static_cast<double>(den); }
};

/// Exact sign of a - b (-1, 0, +1); infinite bases compare as usual.
int compare(const ExactCoord& a, const ExactCoord& b);

/// Closed or open per-axis interval; bounds may be +-infinity.
struct Interval {
    double lo;
    double hi;
};

/// Axis-aligned box with per-axis bounds.
struct Box {
    std::vector<Interval> axes;

    int dim() const noexcept { return static_cast<int>(axes.size()); }
    bool bounded() const noexcept;
    /// Product of side lengths (infinite if unbounded).
    double volume() const noexcept;
};

/// Finite union of axis-aligned boxes, either all open (a domain Omega) or
/// all closed (a compact K_n or a closed set Y). Membership is decided exactly.
class BoxUnion {
public:
    BoxUnion(std::vector<Box> boxes, bool open);

    static BoxUnion open_box(std::vector<Interval> axes) { return BoxUnion({Box{std::move(axes)}}, true); }
    static BoxUnion closed_box(std::vector<Interval> axes) { return BoxUnion({Box{std::move(axes)}}, false); }
    /// The open set R^d.
    static BoxUnion whole_space(int dim);

    int dim() const noexcept { return dim_; }
    bool open() const noexcept { return open_; }
    const std::vector<Box>& boxes() const noexcept { return boxes_; }
    bool empty() const noexcept { return boxes_.empty(); }
    bool bounded() const noexcept;

    bool contains(std::span<const double> x) const;

    /// Smallest box containing the union.
    Box bounding_box() const;

    /// Each box shrunk by r on every side (empty boxes dropped), as a closed union.
    BoxUnion shrunk_closed(double r) const;

    /// Sum of box volumes (overlaps counted twice; used only for monotonicity reports).
    double total_volume() const noexcept;

private:
    std::vector<Box> boxes_;
    bool open_;
    int dim_;
};

/// Closed set Y = (closed box union) together with a finite point cloud.
struct ClosedSet {
    std::optional<BoxUnion> boxes;
    std::vector<Point> points;

    int dim() const;
    bool empty() const noexcept;
    bool contains(std::span<const double> x) const;
};

/// Closed cube given by exact per-axis bounds [lo_i, hi_i].
struct ExactCube {
    std::vector<ExactCoord> lo;
    std::vector<ExactCoord> hi;

    /// z/n + [-r/n, r/n]^d.
    static ExactCube lattice(std::span<const int> z, std::int64_t n, std::int64_t r = 1);
};

/// Exact test: closed cube contained in the open union (mode = open) or in the
/// interior of the closed union (mode = closed), via an arrangement of the box faces.
bool cube_covered(const ExactCube& cube, const BoxUnion& set);

/// Exact test: the closed cube meets the set; with `open_cube` the open cube is used instead.
bool cube_meets(const ExactCube& cube, const BoxUnion& set, bool open_cube = false);

/// True iff z/n + [-1/n, 1/n]^d is contained in the open union Omega.
bool cube_in_domain(std::span<const int> z, int n, const BoxUnion& omega);

/// M_n, or Phi_n(U) = { z in M_n : supp h_{n,z} meets U } when a window U is given.
/// Throws PreconditionError when the enumeration would be unbounded.
std::vector<LatticePoint> lattice_sets(int n, const BoxUnion& omega, const BoxUnion* window = nullptr);

/// Lattice points whose open support z/n + (-1/n,1/n)^d meets the window but
/// which are not in M_n (their cube leaves Omega).
std::vector<LatticePoint> uncovered_lattice_points(int n, const BoxUnion& omega, const BoxUnion& window);

/// Compact exhaustion K_1 subset K_2 subset ... with scales m_1 < m_2 < ... such
/// that K_j + [-2/m_j, 2/m_j]^d lies in the interior of K_{j+1}.
struct Exhaustion {
    std::vector<BoxUnion> compacts;
    std::vector<int> scales;
    std::vector<double> radii;

    int depth() const noexcept { return static_cast<int>(compacts.size()); }
    /// 1-based stage access.
    const BoxUnion& compact(int j) const;
    int scale(int j) const;
};

/// Exact check of the margin invariant between stages j and j+1 (1-based).
bool exhaustion_margin_holds(const Exhaustion& ex, int j);

struct ExhaustionOptions {
    int depth = 4;
    /// Shrink radii r_j = r0 * 2^{-j}.
    double r0 = 0.25;
};

inline constexpr int kMaxExhaustionDepth = 12;

/// K_j = each box of Omega shrunk by r_j, with minimal admissible scales m_j.
Exhaustion default_exhaustion(const BoxUnion& omega, const ExhaustionOptions& options = {});

/// Euclidean distance from x to Y (exact per-axis clamping for boxes, min over points).
double distance_to_closed(const ClosedSet& y, std::span<const double> x);

/// A point of Y nearest to x.
Point nearest_point(const ClosedSet& y, std::span<const double> x);

/// Tensor grid with `per_axis` points per axis over a bounded box (endpoints included).
std::vector<Point> tensor_grid(const Box& box, int per_axis);

} // namespace smoothing
