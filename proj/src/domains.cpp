#include "smoothing/domains.hpp"

#include "smoothing/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace smoothing {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Rational = boost::multiprecision::cpp_rational;

Rational to_rational(const ExactCoord& c)
{
    return Rational(c.base) + Rational(c.num, c.den);
}

} // namespace

int compare(const ExactCoord& a, const ExactCoord& b)
{
    const bool ia = std::isinf(a.base);
    const bool ib = std::isinf(b.base);
    if (ia || ib) {
        const int sa = ia ? (a.base > 0 ? 1 : -1) : 0;
        const int sb = ib ? (b.base > 0 ? 1 : -1) : 0;
        return (sa > sb) - (sa < sb);
    }
    const long double fa = static_cast<long double>(a.num) / static_cast<long double>(a.den);
    const long double fb = static_cast<long double>(b.num) / static_cast<long double>(b.den);
    const long double diff =
        (static_cast<long double>(a.base) - static_cast<long double>(b.base)) + (fa - fb);
    const long double scale = std::abs(static_cast<long double>(a.base)) +
                              std::abs(static_cast<long double>(b.base)) + std::abs(fa) + std::abs(fb);
    if (std::abs(diff) > 1e-15L * scale + 1e-300L) {
        return diff > 0 ? 1 : -1;
    }
    const Rational d = to_rational(a) - to_rational(b);
    return d > 0 ? 1 : (d < 0 ? -1 : 0);
}

bool Box::bounded() const noexcept
{
    return std::all_of(axes.begin(), axes.end(),
                       [](const Interval& i) { return std::isfinite(i.lo) && std::isfinite(i.hi); });
}

double Box::volume() const noexcept
{
    double v = 1.0;
    for (const auto& i : axes) {
        v *= std::max(i.hi - i.lo, 0.0);
    }
    return v;
}

BoxUnion::BoxUnion(std::vector<Box> boxes, bool open) : boxes_(std::move(boxes)), open_(open), dim_(0)
{
    if (boxes_.empty()) {
        throw PreconditionError("box union needs at least one box");
    }
    dim_ = boxes_.front().dim();
    check_dim_order(dim_, 0);
    for (const auto& b : boxes_) {
        if (b.dim() != dim_) {
            throw PreconditionError("box union mixes dimensions");
        }
        for (const auto& i : b.axes) {
            if (std::isnan(i.lo) || std::isnan(i.hi) || !(i.lo < i.hi)) {
                throw PreconditionError(fmt::format("box bounds must satisfy lo < hi, got [{}, {}]", i.lo, i.hi));
            }
        }
    }
}

BoxUnion BoxUnion::whole_space(int dim)
{
    return BoxUnion({Box{std::vector<Interval>(static_cast<std::size_t>(dim), Interval{-kInf, kInf})}}, true);
}

bool BoxUnion::bounded() const noexcept
{
    return std::all_of(boxes_.begin(), boxes_.end(), [](const Box& b) { return b.bounded(); });
}

bool BoxUnion::contains(std::span<const double> x) const
{
    for (const auto& b : boxes_) {
        bool inside = true;
        for (std::size_t i = 0; i < b.axes.size() && inside; ++i) {
            inside = open_ ? (b.axes[i].lo < x[i] && x[i] < b.axes[i].hi)
                           : (b.axes[i].lo <= x[i] && x[i] <= b.axes[i].hi);
        }
        if (inside) {
            return true;
        }
    }
    return false;
}

Box BoxUnion::bounding_box() const
{
    Box out{std::vector<Interval>(static_cast<std::size_t>(dim_), Interval{kInf, -kInf})};
    for (const auto& b : boxes_) {
        for (std::size_t i = 0; i < b.axes.size(); ++i) {
            out.axes[i].lo = std::min(out.axes[i].lo, b.axes[i].lo);
            out.axes[i].hi = std::max(out.axes[i].hi, b.axes[i].hi);
        }
    }
    return out;
}

BoxUnion BoxUnion::shrunk_closed(double r) const
{
    std::vector<Box> out;
    for (const auto& b : boxes_) {
        Box s = b;
        bool nonempty = true;
        for (auto& i : s.axes) {
            i.lo += r;
            i.hi -= r;
            nonempty = nonempty && i.lo < i.hi;
        }
        if (nonempty) {
            out.push_back(std::move(s));
        }
    }
    if (out.empty()) {
        throw PreconditionError(fmt::format("shrinking by {} leaves no box; use a smaller radius", r));
    }
    return BoxUnion(std::move(out), false);
}

double BoxUnion::total_volume() const noexcept
{
    double v = 0.0;
    for (const auto& b : boxes_) {
        v += b.volume();
    }
    return v;
}

int ClosedSet::dim() const
{
    if (boxes) {
        return boxes->dim();
    }
    if (!points.empty()) {
        return static_cast<int>(points.front().size());
    }
    throw PreconditionError("closed set is empty");
}

bool ClosedSet::empty() const noexcept
{
    return !boxes && points.empty();
}

bool ClosedSet::contains(std::span<const double> x) const
{
    if (boxes && boxes->contains(x)) {
        return true;
    }
    return std::any_of(points.begin(), points.end(),
                       [&](const Point& p) { return std::equal(p.begin(), p.end(), x.begin(), x.end()); });
}

ExactCube ExactCube::lattice(std::span<const int> z, std::int64_t n, std::int64_t r)
{
    ExactCube c;
    for (int zi : z) {
        c.lo.push_back(ExactCoord::ratio(zi - r, n));
        c.hi.push_back(ExactCoord::ratio(zi + r, n));
    }
    return c;
}

namespace {

struct Atom {
    bool point;
    ExactCoord a;
    ExactCoord b;
};

std::vector<Atom> axis_atoms(const ExactCoord& lo, const ExactCoord& hi, const BoxUnion& set, std::size_t axis)
{
    std::vector<ExactCoord> cuts{lo, hi};
    for (const auto& box : set.boxes()) {
        for (double bound : {box.axes[axis].lo, box.axes[axis].hi}) {
            if (std::isfinite(bound)) {
                const ExactCoord c = ExactCoord::of(bound);
                if (compare(lo, c) < 0 && compare(c, hi) < 0) {
                    cuts.push_back(c);
                }
            }
        }
    }
    std::sort(cuts.begin(), cuts.end(), [](const ExactCoord& x, const ExactCoord& y) { return compare(x, y) < 0; });
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](const ExactCoord& x, const ExactCoord& y) { return compare(x, y) == 0; }),
               cuts.end());
    std::vector<Atom> atoms;
    for (std::size_t k = 0; k < cuts.size(); ++k) {
        atoms.push_back({true, cuts[k], cuts[k]});
        if (k + 1 < cuts.size()) {
            atoms.push_back({false, cuts[k], cuts[k + 1]});
        }
    }
    return atoms;
}

} // namespace

bool cube_covered(const ExactCube& cube, const BoxUnion& set)
{
    const auto d = static_cast<std::size_t>(set.dim());
    if (cube.lo.size() != d || cube.hi.size() != d) {
        throw PreconditionError("cube and set dimensions differ");
    }
    const std::size_t nb = set.boxes().size();
    std::vector<std::vector<Atom>> atoms(d);
    // ok[axis][atom][box * 2 + side]: box admits the atom on this axis; side 0/1 selects the
    // germ direction (-/+) for point atoms in closed mode.
    std::vector<std::vector<std::vector<char>>> ok(d);
    for (std::size_t axis = 0; axis < d; ++axis) {
        atoms[axis] = axis_atoms(cube.lo[axis], cube.hi[axis], set, axis);
        for (const Atom& atom : atoms[axis]) {
            std::vector<char> row(nb * 2, 0);
            for (std::size_t b = 0; b < nb; ++b) {
                const auto& iv = set.boxes()[b].axes[axis];
                const ExactCoord lo = ExactCoord::of(iv.lo);
                const ExactCoord hi = ExactCoord::of(iv.hi);
                if (!atom.point) {
                    const bool in = compare(lo, atom.a) <= 0 && compare(atom.b, hi) <= 0;
                    row[2 * b] = row[2 * b + 1] = in;
                } else if (set.open()) {
                    const bool in = compare(lo, atom.a) < 0 && compare(atom.a, hi) < 0;
                    row[2 * b] = row[2 * b + 1] = in;
                } else {
                    row[2 * b] = compare(lo, atom.a) < 0 && compare(atom.a, hi) <= 0;
                    row[2 * b + 1] = compare(lo, atom.a) <= 0 && compare(atom.a, hi) < 0;
                }
            }
            ok[axis].push_back(std::move(row));
        }
    }

    std::vector<std::size_t> pick(d, 0);
    for (;;) {
        // Point axes need every germ direction; interval atoms do not depend on it.
        std::vector<std::size_t> point_axes;
        for (std::size_t axis = 0; axis < d; ++axis) {
            if (atoms[axis][pick[axis]].point && !set.open()) {
                point_axes.push_back(axis);
            }
        }
        for (unsigned signs = 0; signs < (1u << point_axes.size()); ++signs) {
            std::vector<int> side(d, 0);
            for (std::size_t k = 0; k < point_axes.size(); ++k) {
                side[point_axes[k]] = (signs >> k) & 1u;
            }
            bool covered = false;
            for (std::size_t b = 0; b < nb && !covered; ++b) {
                bool all = true;
                for (std::size_t axis = 0; axis < d && all; ++axis) {
                    all = ok[axis][pick[axis]][2 * b + static_cast<std::size_t>(side[axis])] != 0;
                }
                covered = all;
            }
            if (!covered) {
                return false;
            }
        }
        std::size_t axis = 0;
        while (axis < d && ++pick[axis] == atoms[axis].size()) {
            pick[axis] = 0;
            ++axis;
        }
        if (axis == d) {
            return true;
        }
    }
}

bool cube_meets(const ExactCube& cube, const BoxUnion& set, bool open_cube)
{
    const bool strict = open_cube || set.open();
    for (const auto& box : set.boxes()) {
        bool meets = true;
        for (std::size_t axis = 0; axis < box.axes.size() && meets; ++axis) {
            const ExactCoord lo = ExactCoord::of(box.axes[axis].lo);
            const ExactCoord hi = ExactCoord::of(box.axes[axis].hi);
            const int c1 = compare(cube.lo[axis], hi);
            const int c2 = compare(lo, cube.hi[axis]);
            meets = strict ? (c1 < 0 && c2 < 0) : (c1 <= 0 && c2 <= 0);
        }
        if (meets) {
            return true;
        }
    }
    return false;
}

bool cube_in_domain(std::span<const int> z, int n, const BoxUnion& omega)
{
    if (n < 1) {
        throw PreconditionError("lattice scale must be >= 1");
    }
    if (!omega.open()) {
        throw PreconditionError("cube_in_domain expects an open domain");
    }
    return cube_covered(ExactCube::lattice(z, n), omega);
}

namespace {

// Inclusive lattice ranges covering all cubes z/n + [-1/n,1/n]^d that can meet `box`.
std::vector<std::pair<int, int>> lattice_range(const Box& box, int n)
{
    std::vector<std::pair<int, int>> r;
    for (const auto& iv : box.axes) {
        const double lo = std::floor(iv.lo * n) - 1.0;
        const double hi = std::ceil(iv.hi * n) + 1.0;
        if (!(std::abs(lo) < 1e9 && std::abs(hi) < 1e9)) {
            throw PreconditionError("lattice enumeration range is unbounded or too large");
        }
        r.emplace_back(static_cast<int>(lo), static_cast<int>(hi));
    }
    return r;
}

template <class Visit>
void for_each_lattice_point(const std::vector<std::pair<int, int>>& range, Visit&& visit)
{
    double total = 1.0;
    for (const auto& [lo, hi] : range) {
        if (hi < lo) {
            return;
        }
        total *= static_cast<double>(hi - lo + 1);
    }
    if (total > 5e7) {
        throw PreconditionError(fmt::format("lattice enumeration of {:g} points exceeds the limit", total));
    }
    LatticePoint z;
    for (const auto& r : range) {
        z.push_back(r.first);
    }
    const std::size_t d = range.size();
    for (;;) {
        visit(z);
        std::size_t axis = d;
        while (axis > 0) {
            --axis;
            if (++z[axis] <= range[axis].second) {
                break;
            }
            z[axis] = range[axis].first;
            if (axis == 0) {
                return;
            }
        }
    }
}

Box window_box(int n, const BoxUnion& omega, const BoxUnion* window)
{
    if (window != nullptr) {
        if (window->dim() != omega.dim()) {
            throw PreconditionError("window and domain dimensions differ");
        }
        Box b = window->bounding_box();
        if (!b.bounded()) {
            throw PreconditionError("lattice window must be bounded");
        }
        if (omega.bounded()) {
            const Box o = omega.bounding_box();
            for (std::size_t i = 0; i < b.axes.size(); ++i) {
                b.axes[i].lo = std::max(b.axes[i].lo, o.axes[i].lo);
                b.axes[i].hi = std::min(b.axes[i].hi, o.axes[i].hi);
            }
        }
        return b;
    }
    if (!omega.bounded()) {
        throw PreconditionError(fmt::format("M_{} of an unbounded domain needs a bounded window", n));
    }
    return omega.bounding_box();
}

} // namespace

std::vector<LatticePoint> lattice_sets(int n, const BoxUnion& omega, const BoxUnion* window)
{
    if (n < 1) {
        throw PreconditionError("lattice scale must be >= 1");
    }
    std::vector<LatticePoint> out;
    const Box range_box = window_box(n, omega, window);
    for (const auto& iv : range_box.axes) {
        if (!(iv.lo <= iv.hi)) {
            return out;
        }
    }
    for_each_lattice_point(lattice_range(range_box, n), [&](const LatticePoint& z) {
        if (window != nullptr && !cube_meets(ExactCube::lattice(z, n), *window)) {
            return;
        }
        if (cube_in_domain(z, n, omega)) {
            out.push_back(z);
        }
    });
    return out;
}

std::vector<LatticePoint> uncovered_lattice_points(int n, const BoxUnion& omega, const BoxUnion& window)
{
    std::vector<LatticePoint> out;
    const Box b = window.bounding_box();
    if (!b.bounded()) {
        throw PreconditionError("window must be bounded");
    }
    for_each_lattice_point(lattice_range(b, n), [&](const LatticePoint& z) {
        if (cube_meets(ExactCube::lattice(z, n), window, true) && !cube_in_domain(z, n, omega)) {
            out.push_back(z);
        }
    });
    return out;
}

const BoxUnion& Exhaustion::compact(int j) const
{
    if (j < 1 || j > depth()) {
        throw PreconditionError(fmt::format("exhaustion stage {} outside [1, {}]", j, depth()));
    }
    return compacts[static_cast<std::size_t>(j - 1)];
}

int Exhaustion::scale(int j) const
{
    if (j < 1 || j > static_cast<int>(scales.size())) {
        throw PreconditionError(fmt::format("exhaustion scale {} outside [1, {}]", j, scales.size()));
    }
    return scales[static_cast<std::size_t>(j - 1)];
}

namespace {

bool margin_holds(const BoxUnion& inner, const BoxUnion& outer, std::int64_t m)
{
    for (const auto& box : inner.boxes()) {
        ExactCube cube;
        for (const auto& iv : box.axes) {
            cube.lo.push_back({iv.lo, -2, m});
            cube.hi.push_back({iv.hi, 2, m});
        }
        if (!cube_covered(cube, outer)) {
            return false;
        }
    }
    return true;
}

int minimal_scale(const BoxUnion& inner, const BoxUnion& outer, int lower)
{
    if (margin_holds(inner, outer, lower)) {
        return lower;
    }
    std::int64_t bad = lower;
    std::int64_t good = static_cast<std::int64_t>(lower) * 2;
    while (!margin_holds(inner, outer, good)) {
        bad = good;
        good *= 2;
        if (good > (std::int64_t{1} << 30)) {
            throw PreconditionError("no admissible exhaustion scale below 2^30; compacts are not nested with margin");
        }
    }
    while (good - bad > 1) {
        const std::int64_t mid = bad + (good - bad) / 2;
        (margin_holds(inner, outer, mid) ? good : bad) = mid;
    }
    return static_cast<int>(good);
}

} // namespace

bool exhaustion_margin_holds(const Exhaustion& ex, int j)
{
    return margin_holds(ex.compact(j), ex.compact(j + 1), ex.scale(j));
}

Exhaustion default_exhaustion(const BoxUnion& omega, const ExhaustionOptions& options)
{
    if (!omega.open()) {
        throw PreconditionError("exhaustion domain must be open");
    }
    if (!omega.bounded()) {
        throw PreconditionError("default exhaustion needs a bounded domain");
    }
    if (options.depth < 1 || options.depth > kMaxExhaustionDepth) {
        throw PreconditionError(fmt::format("exhaustion depth must lie in [1, {}]", kMaxExhaustionDepth));
    }
    if (!(options.r0 > 0.0)) {
        throw PreconditionError("exhaustion radius r0 must be positive");
    }
    Exhaustion ex;
    std::vector<BoxUnion> all;
    for (int j = 1; j <= options.depth + 1; ++j) {
        const double r = std::ldexp(options.r0, -j);
        try {
            all.push_back(omega.shrunk_closed(r));
        } catch (const PreconditionError&) {
            throw PreconditionError(fmt::format(
                "K_1 is empty: the domain is thinner than 2*r_1 = {}; choose a smaller depth-0 radius r0", 2 * r));
        }
        if (j <= options.depth) {
            ex.radii.push_back(r);
        }
    }
    int previous = 0;
    for (int j = 1; j <= options.depth; ++j) {
        const int m = minimal_scale(all[static_cast<std::size_t>(j - 1)], all[static_cast<std::size_t>(j)], previous + 1);
        ex.scales.push_back(m);
        previous = m;
    }
    all.pop_back();
    ex.compacts = std::move(all);
    return ex;
}

namespace {

double box_distance_sq(const Box& box, std::span<const double> x, Point* nearest)
{
    double s = 0.0;
    for (std::size_t i = 0; i < box.axes.size(); ++i) {
        const double c = std::clamp(x[i], box.axes[i].lo, box.axes[i].hi);
        if (nearest != nullptr) {
            (*nearest)[i] = c;
        }
        s += (x[i] - c) * (x[i] - c);
    }
    return s;
}

} // namespace

double distance_to_closed(const ClosedSet& y, std::span<const double> x)
{
    if (y.empty()) {
        throw PreconditionError("distance to an empty set");
    }
    double best = kInf;
    if (y.boxes) {
        for (const auto& b : y.boxes->boxes()) {
            best = std::min(best, box_distance_sq(b, x, nullptr));
        }
    }
    for (const auto& p : y.points) {
        double s = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            s += (x[i] - p[i]) * (x[i] - p[i]);
        }
        best = std::min(best, s);
    }
    return std::sqrt(best);
}

Point nearest_point(const ClosedSet& y, std::span<const double> x)
{
    if (y.empty()) {
        throw PreconditionError("nearest point of an empty set");
    }
    double best = kInf;
    Point out(x.size());
    Point candidate(x.size());
    if (y.boxes) {
        for (const auto& b : y.boxes->boxes()) {
            const double s = box_distance_sq(b, x, &candidate);
            if (s < best) {
                best = s;
                out = candidate;
            }
        }
    }
    for (const auto& p : y.points) {
        double s = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            s += (x[i] - p[i]) * (x[i] - p[i]);
        }
        if (s < best) {
            best = s;
            out = p;
        }
    }
    return out;
}

std::vector<Point> tensor_grid(const Box& box, int per_axis)
{
    if (!box.bounded()) {
        throw PreconditionError("grid box must be bounded");
    }
    if (per_axis < 1) {
        throw PreconditionError("grid needs at least one point per axis");
    }
    const std::size_t d = box.axes.size();
    std::vector<Point> out;
    std::vector<int> counter(d, 0);
    for (;;) {
        Point x(d);
        for (std::size_t i = 0; i < d; ++i) {
            const auto& iv = box.axes[i];
            x[i] = per_axis == 1 ? 0.5 * (iv.lo + iv.hi)
                                 : (counter[i] == per_axis - 1 ? iv.hi
                                                               : iv.lo + (iv.hi - iv.lo) * counter[i] / (per_axis - 1));
        }
        out.push_back(std::move(x));
        std::size_t axis = d;
        bool done = true;
        while (axis > 0) {
            --axis;
            if (++counter[axis] < per_axis) {
                done = false;
                break;
            }
            counter[axis] = 0;
        }
        if (done) {
            return out;
        }
    }
}

} // namespace smoothing
