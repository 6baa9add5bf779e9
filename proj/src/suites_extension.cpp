#include "harness_util.hpp"

#include "smoothing/dugundji.hpp"
#include "smoothing/errors.hpp"
#include "smoothing/expr.hpp"
#include "smoothing/tolerances.hpp"

#include <algorithm>
#include <cmath>

namespace smoothing::suites {

using detail::finish;
using detail::Stopwatch;

namespace {

double value_gap(const JetProvider& a, const JetProvider& b, std::span<const Point> points)
{
    double worst = 0.0;
    for (const auto& x : points) {
        const VectorValue va = a.value(x);
        const VectorValue vb = b.value(x);
        for (std::size_t c = 0; c < va.size(); ++c) {
            worst = std::max(worst, detail::relative_gap(va[c], vb[c]));
        }
    }
    return worst;
}

double jet_gap(const Jet& a, const Jet& b)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < a.set().size(); ++i) {
        for (std::size_t c = 0; c < static_cast<std::size_t>(a.codim()); ++c) {
            worst = std::max(worst, detail::relative_gap(a[i][c], b[i][c]));
        }
    }
    return worst;
}

ScalarOperator cube_operator(int order)
{
    return [order](ProviderPtr g) { return extend_cube(std::move(g), order); };
}

} // namespace

SuiteResult extension_right_inverse(std::uint64_t seed)
{
    Stopwatch clock;
    const int order = 2;
    double worst = 0.0;
    std::string text;
    for (const auto& entry : corpus()) {
        const int d = entry.dim;
        const auto gamma = corpus_provider(entry);
        const auto source = tensor_grid(detail::cube_box(d, 0.0, 1.0), d == 1 ? 101 : 21);
        const ProviderPtr half = lift_componentwise([&](ProviderPtr g) { return extend_halfspace(g, 0, order); }, gamma);
        const ProviderPtr corner = lift_componentwise([&](ProviderPtr g) { return extend_corner(g, d, order); }, gamma);
        const ProviderPtr cube = lift_componentwise(cube_operator(order), gamma);
        worst = std::max({worst, value_gap(*half, *gamma, source), value_gap(*corner, *gamma, source),
                          value_gap(*cube, *gamma, source)});

        ClosedSet y;
        y.boxes = detail::closed_cube(d, 0.0, 1.0);
        const auto ext = std::make_shared<const DugundjiExtension>(y);
        worst = std::max(worst, value_gap(DugundjiProvider(ext, gamma), *gamma, source));

        const ProjectionExtension projection(gamma, {0.3});
        for (const auto& x : source) {
            Point lifted = x;
            lifted.push_back(0.3);
            const VectorValue a = projection.value(lifted);
            const VectorValue b = gamma->value(x);
            for (std::size_t c = 0; c < a.size(); ++c) {
                worst = std::max(worst, detail::relative_gap(a[c], b[c]));
            }
        }
    }
    // Right inverse off the grid as well: random source points.
    for (int d = 1; d <= 2; ++d) {
        const auto gamma = detail::corpus_functions(d).front().second;
        const auto pts = detail::random_points(detail::cube_box(d, 0.0, 1.0), 100, detail::salt(seed, 70));
        worst = std::max(worst, value_gap(*extend_cube(gamma, 3), *gamma, pts));
    }
    return finish("extension right inverse", worst <= tol::restriction, worst,
                  "halfspace, corner, cube, Dugundji and projection operators on source grids", clock);
}

SuiteResult cross_face(const AxisExtension& extension, int order)
{
    Stopwatch clock;
    double exact_gap = 0.0;
    double offset_gap = 0.0;
    std::size_t faces = 0;
    const double h = tol::cross_face_offset;
    for (const auto& entry : corpus()) {
        const int d = entry.dim;
        const auto gamma = corpus_provider(entry);
        for (int c = 0; c < gamma->codim(); ++c) {
            const ProviderPtr scalar = std::make_shared<const ComponentProvider>(gamma, c);
            std::vector<std::shared_ptr<const AxisStage>> stages = cube_stages(extend_cube_with(scalar, extension));
            stages.push_back(std::make_shared<const AxisStage>(scalar, d - 1, FaceSet{}, extension));
            ProviderPtr corner = scalar;
            for (int axis = 0; axis < d; ++axis) {
                auto stage = std::make_shared<const AxisStage>(corner, axis, FaceSet{}, extension);
                stages.push_back(stage);
                corner = stage;
            }
            for (const auto& stage : stages) {
                const int a = stage->axis();
                const auto others = tensor_grid(detail::cube_box(d, -0.1, 1.1), d == 1 ? 1 : 5);
                const auto on_cube = tensor_grid(detail::cube_box(d, 0.0, 1.0), d == 1 ? 1 : 5);
                for (int side = 0; side < 2; ++side) {
                    const bool lower = side == 0;
                    if (lower ? !stage->faces().lower : !stage->faces().upper) {
                        continue;
                    }
                    const double face = lower ? stage->faces().lower_at : stage->faces().upper_at;
                    const double outward = lower ? -1.0 : 1.0;
                    const auto branch = lower ? AxisStage::Branch::lower_reflection
                                              : AxisStage::Branch::upper_reflection;
                    for (Point x : others) {
                        x[static_cast<std::size_t>(a)] = face;
                        exact_gap = std::max(exact_gap,
                                             jet_gap(stage->branch_jet(x, order, AxisStage::Branch::source),
                                                     stage->branch_jet(x, order, branch)));
                        ++faces;
                    }
                    // Paired queries straddle the face on the cube itself, where order l+1
                    // derivatives of earlier stages stay moderate.
                    for (Point x : on_cube) {
                        x[static_cast<std::size_t>(a)] = face;
                        Point in = x;
                        Point out = x;
                        in[static_cast<std::size_t>(a)] -= outward * h;
                        out[static_cast<std::size_t>(a)] += outward * h;
                        offset_gap = std::max(offset_gap, jet_gap(stage->jet(in, order), stage->jet(out, order)));
                    }
                }
            }
        }
    }
    const double worst = std::max(exact_gap, offset_gap);
    return finish("cross-face smoothness", worst <= tol::cross_face_relative, worst,
                  fmt::format("{} face points, order {}: one-sided jets at the face {:.3g}, across +-{:g} {:.3g}", faces,
                              order, exact_gap, h, offset_gap),
                  clock);
}

SuiteResult cross_face_corpus(std::uint64_t)
{
    Stopwatch clock;
    std::vector<SuiteResult> parts;
    for (int l = 0; l <= 3; ++l) {
        parts.push_back(cross_face(AxisExtension(l), l));
    }
    bool pass = true;
    double worst = 0.0;
    for (const auto& p : parts) {
        pass = pass && p.pass;
        worst = std::max(worst, p.max_violation);
    }
    return finish("cross-face smoothness, l = 0..3", pass, worst, parts.back().detail, clock);
}

SuiteResult vandermonde()
{
    Stopwatch clock;
    double worst_residual = 0.0;
    double worst_oracle = 0.0;
    for (int l = 0; l <= kMaxOrder; ++l) {
        const AxisExtension ext(l);
        worst_residual = std::max(worst_residual, ext.residual());
        // Lagrange form: a_k = prod_{j != k} (1 + b_j) / (b_j - b_k).
        const auto& b = ext.nodes();
        for (std::size_t k = 0; k < b.size(); ++k) {
            double a = 1.0;
            for (std::size_t j = 0; j < b.size(); ++j) {
                if (j != k) {
                    a *= (1.0 + b[j]) / (b[j] - b[k]);
                }
            }
            worst_oracle = std::max(worst_oracle, detail::relative_gap(a, ext.weights()[k]));
        }
    }
    const auto w1 = AxisExtension(1).weights();
    const double linear_gap = std::abs(w1[0] - 3.0) + std::abs(w1[1] + 2.0);
    const double even_gap = std::abs(AxisExtension(0).weights()[0] - 1.0);
    bool rejects_duplicates = false;
    try {
        (void)solve_axis_weights(1, std::vector<double>{1.0, 1.0});
    } catch (const PreconditionError&) {
        rejects_duplicates = true;
    }
    const bool pass = worst_residual <= tol::vandermonde_residual && worst_oracle <= tol::vandermonde_residual &&
                      linear_gap <= tol::hestenes_l1 && even_gap <= tol::hestenes_l1 && rejects_duplicates;
    return finish("reflection weights", pass, std::max({worst_residual, worst_oracle, linear_gap}),
                  fmt::format("max residual {:.3g} for l <= {}, Lagrange oracle gap {:.3g}, l=1 weights ({:.17g}, "
                              "{:.17g})",
                              worst_residual, kMaxOrder, worst_oracle, w1[0], w1[1]),
                  clock);
}

namespace {

// max over the corpus of ||E gamma||_{C^l, window} / ||gamma||_{C^l, [0,1]^d} on the given sample sets.
double operator_constant(int order, const std::vector<std::vector<Point>>& outer,
                         const std::vector<std::vector<Point>>& inner)
{
    double worst = 0.0;
    for (const auto& entry : corpus()) {
        const auto gamma = corpus_provider(entry);
        const auto ext = lift_componentwise(cube_operator(order), gamma);
        const std::size_t d = static_cast<std::size_t>(entry.dim - 1);
        const double top = seminorm_Cl(*ext, outer[d], order, SeminormSpec::coordinate_max());
        const double bottom = seminorm_Cl(*gamma, inner[d], order, SeminormSpec::coordinate_max());
        worst = std::max(worst, top / bottom);
    }
    return worst;
}

} // namespace

SuiteResult extension_bound(std::uint64_t seed)
{
    Stopwatch clock;
    const int order = 2;
    std::vector<std::vector<Point>> outer_a;
    std::vector<std::vector<Point>> inner_a;
    std::vector<std::vector<Point>> outer_b;
    std::vector<std::vector<Point>> inner_b;
    for (int d = 1; d <= 2; ++d) {
        const int per_axis = d == 1 ? 2001 : 81;
        const std::size_t count = d == 1 ? 2001 : 6561;
        outer_a.push_back(tensor_grid(detail::cube_box(d, -0.5, 1.5), per_axis));
        inner_a.push_back(tensor_grid(detail::cube_box(d, 0.0, 1.0), per_axis));
        outer_b.push_back(detail::random_points(detail::cube_box(d, -0.5, 1.5), count, detail::salt(seed, 80 + d)));
        inner_b.push_back(detail::random_points(detail::cube_box(d, 0.0, 1.0), count, detail::salt(seed, 90 + d)));
    }
    const double ca = operator_constant(order, outer_a, inner_a);
    const double cb = operator_constant(order, outer_b, inner_b);
    const double spread = std::abs(ca - cb) / std::max(ca, cb);
    const bool pass = std::isfinite(ca) && std::isfinite(cb) && spread <= tol::constant_stability;
    return finish("extension operator constant", pass, spread,
                  fmt::format("C_O = {:.6g} on tensor grids, {:.6g} on seeded samples (spread {:.3f})", ca, cb, spread),
                  clock);
}

SuiteResult axis_order(std::uint64_t seed)
{
    Stopwatch clock;
    double interior = 0.0;
    double exterior = 0.0;
    for (const auto& entry : corpus()) {
        if (entry.dim != 2) {
            continue;
        }
        const auto gamma = corpus_provider(entry);
        const auto forward = lift_componentwise([](ProviderPtr g) { return extend_cube(g, 2, {0, 1}); }, gamma);
        const auto backward = lift_componentwise([](ProviderPtr g) { return extend_cube(g, 2, {1, 0}); }, gamma);
        const auto inside = detail::random_points(detail::cube_box(2, 0.0, 1.0), 100, detail::salt(seed, 100));
        const auto outside = detail::random_points(detail::cube_box(2, -0.2, 1.2), 100, detail::salt(seed, 101));
        interior = std::max(interior, value_gap(*forward, *backward, inside));
        exterior = std::max(exterior, value_gap(*forward, *backward, outside));
    }
    return finish("axis-order independence inside the cube", interior <= tol::axis_order, interior,
                  fmt::format("interior gap {:.3g}; gap on [-0.2,1.2]^2 (reported only) {:.3g}", interior, exterior),
                  clock);
}

SuiteResult projection(std::uint64_t seed)
{
    Stopwatch clock;
    const int order = 2;
    double restriction = 0.0;
    double transverse = 0.0;
    double seminorm_gap = 0.0;
    for (const auto& entry : corpus()) {
        const int d1 = entry.dim;
        const auto gamma = corpus_provider(entry);
        const std::vector<double> slice(static_cast<std::size_t>(3 - d1), 0.25);
        const ProjectionExtension e(gamma, slice);
        const int d = e.dim();
        for (const auto& x : detail::random_points(detail::cube_box(d, -1.0, 1.0), 50, detail::salt(seed, 110))) {
            const Jet jet = e.jet(x, order);
            const auto& set = jet.set();
            for (std::size_t i = 0; i < set.size(); ++i) {
                bool along_y = false;
                for (int axis = d1; axis < d; ++axis) {
                    along_y = along_y || set[i][axis] > 0;
                }
                if (along_y) {
                    for (double v : jet[i]) {
                        transverse = std::max(transverse, std::abs(v));
                    }
                }
            }
            Point on_slice(x.begin(), x.begin() + d1);
            const VectorValue g = gamma->value(on_slice);
            on_slice.insert(on_slice.end(), slice.begin(), slice.end());
            const VectorValue v = e.value(on_slice);
            for (std::size_t c = 0; c < g.size(); ++c) {
                restriction = std::max(restriction, std::abs(g[c] - v[c]));
            }
        }
        const Box k = detail::cube_box(d1, -1.0, 1.0);
        Box product = k;
        for (int axis = d1; axis < d; ++axis) {
            product.axes.push_back({-2.0, 2.0});
        }
        const double lhs = seminorm_Cl(e, tensor_grid(product, 11), order, SeminormSpec::euclidean());
        const double rhs = seminorm_Cl(*gamma, tensor_grid(k, 11), order, SeminormSpec::euclidean());
        seminorm_gap = std::max(seminorm_gap, detail::relative_gap(lhs, rhs));
    }
    const double worst = std::max({restriction, transverse, seminorm_gap});
    return finish("projection extension", worst <= tol::projection_seminorm, worst,
                  fmt::format("restriction {:.3g}, transverse derivatives {:.3g}, seminorm gap {:.3g}", restriction,
                              transverse, seminorm_gap),
                  clock);
}

SuiteResult lift(std::uint64_t seed)
{
    Stopwatch clock;
    const int order = 2;
    double worst = 0.0;
    std::size_t mismatches = 0;
    for (int d = 1; d <= 2; ++d) {
        const auto pts = detail::random_points(detail::cube_box(d, -0.3, 1.3), 100, detail::salt(seed, 120 + d));
        const auto fns = detail::corpus_functions(d);
        const auto scalar = fns.front().second;
        const VectorValue v{2.0, -0.5, 1.25};

        // m = 1 goes straight to the scalar operator.
        const auto direct = extend_cube(scalar, order);
        const auto lifted = lift_componentwise(cube_operator(order), scalar);
        for (const auto& x : pts) {
            mismatches += direct->value(x) == lifted->value(x) ? 0 : 1;
        }

        // Rank-one input v * gamma.
        const auto rank_one = lift_componentwise(cube_operator(order),
                                                 std::make_shared<const RankOneProvider>(scalar, v));
        for (const auto& x : pts) {
            const VectorValue a = rank_one->value(x);
            const double s = direct->value(x)[0];
            for (std::size_t c = 0; c < v.size(); ++c) {
                worst = std::max(worst, detail::relative_gap(a[c], v[c] * s));
            }
        }

        // Linearity of the lifted operator.
        for (std::size_t i = 0; i + 1 < fns.size(); ++i) {
            if (fns[i].second->codim() != fns[i + 1].second->codim()) {
                continue;
            }
            const auto mix = std::make_shared<const LinearCombination>(
                std::vector<std::pair<double, ProviderPtr>>{{1.5, fns[i].second}, {-0.75, fns[i + 1].second}});
            const auto em = lift_componentwise(cube_operator(order), mix);
            const auto ef = lift_componentwise(cube_operator(order), fns[i].second);
            const auto eg = lift_componentwise(cube_operator(order), fns[i + 1].second);
            for (const auto& x : pts) {
                const VectorValue a = em->value(x);
                const VectorValue f = ef->value(x);
                const VectorValue g = eg->value(x);
                for (std::size_t c = 0; c < a.size(); ++c) {
                    worst = std::max(worst, detail::relative_gap(a[c], 1.5 * f[c] - 0.75 * g[c]));
                }
            }
        }
    }
    const bool pass = worst <= tol::extension_linearity && mismatches == 0;
    return finish("componentwise lifting", pass, worst,
                  fmt::format("rank-one and linearity gap {:.3g}, m=1 mismatches {}", worst, mismatches), clock);
}

SuiteResult mutation()
{
    Stopwatch clock;
    const AxisExtension good(2);
    std::vector<double> weights = good.weights();
    weights[0] += tol::mutation_size;
    const SuiteResult broken = cross_face(good.with_weights(weights), 2);
    return finish("weight mutation is detected", !broken.pass, broken.max_violation,
                  fmt::format("cross-face suite with a_0 + {:g}: {}", tol::mutation_size,
                              broken.pass ? "PASS (fault missed)" : "FAIL (fault detected)"),
                  clock);
}

} // namespace smoothing::suites
