#include "smoothing/extension.hpp"

#include "smoothing/bump.hpp"
#include "smoothing/errors.hpp"

#include <Eigen/Dense>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace smoothing {

std::vector<double> solve_axis_weights(int order, std::span<const double> nodes)
{
    check_dim_order(1, order);
    const auto size = static_cast<std::size_t>(order) + 1;
    if (nodes.size() != size) {
        throw PreconditionError(fmt::format("order {} needs {} nodes, got {}", order, size, nodes.size()));
    }
    for (double b : nodes) {
        if (!std::isfinite(b) || !(b > 0.0)) {
            throw PreconditionError(fmt::format("reflection nodes must be positive and finite, got {}", b));
        }
    }
    std::vector<double> sorted(nodes.begin(), nodes.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 1; k < sorted.size(); ++k) {
        if (sorted[k] - sorted[k - 1] <= 1e-8 * sorted[k]) {
            throw PreconditionError(fmt::format("reflection nodes {} and {} are not distinct", sorted[k - 1], sorted[k]));
        }
    }
    const auto n = static_cast<Eigen::Index>(size);
    Eigen::MatrixXd v(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        double p = 1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            v(i, k) = p;
            p *= -nodes[static_cast<std::size_t>(k)];
        }
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(v);
    if (lu.rcond() < 1e-13) {
        throw PreconditionError(fmt::format("reflection system is near-singular (rcond {:.3g})", lu.rcond()));
    }
    const Eigen::VectorXd a = lu.solve(Eigen::VectorXd::Ones(n));
    return {a.data(), a.data() + n};
}

AxisExtension::AxisExtension(int order) : AxisExtension(order, [order] {
    std::vector<double> b(static_cast<std::size_t>(std::max(order, 0)) + 1);
    std::iota(b.begin(), b.end(), 1.0);
    return b;
}())
{
}

AxisExtension::AxisExtension(int order, std::vector<double> nodes)
    : order_(order), nodes_(std::move(nodes)), weights_(solve_axis_weights(order, nodes_))
{
    const double reach = *std::max_element(nodes_.begin(), nodes_.end());
    s1_ = 1.0 / (4.0 * reach);
    s2_ = 1.0 / (2.0 * reach);
}

double AxisExtension::residual() const
{
    double worst = 0.0;
    for (int i = 0; i <= order_; ++i) {
        double sum = 0.0;
        for (std::size_t k = 0; k < nodes_.size(); ++k) {
            sum += weights_[k] * std::pow(-nodes_[k], i);
        }
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst;
}

double AxisExtension::cutoff(double s) const
{
    return 1.0 - smooth_step((s - s1_) / (s2_ - s1_));
}

Series AxisExtension::cutoff_series(double s, int order) const
{
    Series g = smooth_step_series((s - s1_) / (s2_ - s1_), order).scaled_argument(1.0 / (s2_ - s1_));
    g *= -1.0;
    g[0] += 1.0;
    return g;
}

AxisExtension AxisExtension::with_weights(std::vector<double> weights) const
{
    if (weights.size() != weights_.size()) {
        throw PreconditionError("replacement weights have the wrong length");
    }
    AxisExtension copy = *this;
    copy.weights_ = std::move(weights);
    return copy;
}

nlohmann::json AxisExtension::to_json() const
{
    return {{"l", order_}, {"nodes", nodes_}, {"weights", weights_}, {"cutoff_reach", {s1_, s2_}}};
}

AxisStage::AxisStage(ProviderPtr inner, int axis, FaceSet faces, AxisExtension extension)
    : inner_(std::move(inner)), axis_(axis), faces_(faces), extension_(std::move(extension))
{
    if (!inner_) {
        throw PreconditionError("axis extension needs a source function");
    }
    if (axis_ < 0 || axis_ >= inner_->dim()) {
        throw PreconditionError(fmt::format("axis {} out of range for dimension {}", axis_, inner_->dim()));
    }
    if (!faces_.lower && !faces_.upper) {
        throw PreconditionError("axis extension needs at least one face");
    }
    if (faces_.lower && faces_.upper && !(faces_.lower_at < faces_.upper_at)) {
        throw PreconditionError("lower face must lie below the upper face");
    }
    if (faces_.lower && faces_.upper && extension_.outer_reach() > 0.5 * (faces_.upper_at - faces_.lower_at)) {
        throw PreconditionError("cutoff reach exceeds half the source width; reflected points would leave the source");
    }
}

Jet AxisStage::jet(std::span<const double> x, int order) const
{
    const double t = x[static_cast<std::size_t>(axis_)];
    if (faces_.lower && t < faces_.lower_at) {
        return reflected(x, order, faces_.lower_at);
    }
    if (faces_.upper && t > faces_.upper_at) {
        return reflected(x, order, faces_.upper_at);
    }
    return inner_->jet(x, order);
}

Jet AxisStage::branch_jet(std::span<const double> x, int order, Branch branch) const
{
    switch (branch) {
    case Branch::automatic:
        return jet(x, order);
    case Branch::source:
        return inner_->jet(x, order);
    case Branch::lower_reflection:
        if (!faces_.lower) {
            throw PreconditionError("stage has no lower face");
        }
        return reflected(x, order, faces_.lower_at);
    case Branch::upper_reflection:
        if (!faces_.upper) {
            throw PreconditionError("stage has no upper face");
        }
        return reflected(x, order, faces_.upper_at);
    }
    throw PreconditionError("unknown branch");
}

Jet AxisStage::reflected(std::span<const double> x, int order, double face) const
{
    const auto a = static_cast<std::size_t>(axis_);
    const double t = x[a];
    // Distance to the face grows away from the source: s = c - t below a lower face, t - c above an upper one.
    const bool below = faces_.lower && face == faces_.lower_at;
    const double sigma = below ? -1.0 : 1.0;
    const double s = sigma * (t - face);
    Point base(x.begin(), x.end());
    const int m = codim();
    if (s >= extension_.outer_reach()) {
        return Jet(base, order, m);
    }
    const auto& set = MultiIndexSet::get(dim(), order);
    const Series chi = Series::embed_axis(extension_.cutoff_series(s, order).scaled_argument(sigma), set, axis_);
    std::vector<Series> sum(static_cast<std::size_t>(m), Series(set));
    Point xk = base;
    for (std::size_t k = 0; k < extension_.nodes().size(); ++k) {
        const double b = extension_.nodes()[k];
        xk[a] = face - b * (t - face);
        const Jet jk = inner_->jet(xk, order);
        for (int c = 0; c < m; ++c) {
            sum[static_cast<std::size_t>(c)].add_scaled(jk.series(c).scaled_axis(axis_, -b), extension_.weights()[k]);
        }
    }
    for (auto& s_c : sum) {
        s_c = chi * s_c;
    }
    return Jet::from_series(std::move(base), sum);
}

std::shared_ptr<const AxisStage> extend_halfspace(ProviderPtr gamma, int axis, int order)
{
    return std::make_shared<const AxisStage>(std::move(gamma), axis, FaceSet{true, 0.0, false, 1.0},
                                             AxisExtension(order));
}

ProviderPtr extend_corner(ProviderPtr gamma, int corners, int order)
{
    if (!gamma || corners < 1 || corners > gamma->dim()) {
        throw PreconditionError("corner extension needs 1 <= M <= d");
    }
    const AxisExtension ext(order);
    ProviderPtr current = std::move(gamma);
    for (int axis = 0; axis < corners; ++axis) {
        current = std::make_shared<const AxisStage>(current, axis, FaceSet{true, 0.0, false, 1.0}, ext);
    }
    return current;
}

ProviderPtr extend_cube_with(ProviderPtr gamma, const AxisExtension& extension, std::vector<int> axis_order)
{
    if (!gamma) {
        throw PreconditionError("cube extension needs a source function");
    }
    const int d = gamma->dim();
    if (axis_order.empty()) {
        axis_order.resize(static_cast<std::size_t>(d));
        std::iota(axis_order.begin(), axis_order.end(), 0);
    }
    std::vector<int> check = axis_order;
    std::sort(check.begin(), check.end());
    for (int i = 0; i < d; ++i) {
        if (check.size() != static_cast<std::size_t>(d) || check[static_cast<std::size_t>(i)] != i) {
            throw PreconditionError("axis order must be a permutation of 0..d-1");
        }
    }
    ProviderPtr current = std::move(gamma);
    for (int axis : axis_order) {
        current = std::make_shared<const AxisStage>(current, axis, FaceSet{true, 0.0, true, 1.0}, extension);
    }
    return current;
}

ProviderPtr extend_cube(ProviderPtr gamma, int order, std::vector<int> axis_order)
{
    return extend_cube_with(std::move(gamma), AxisExtension(order), std::move(axis_order));
}

std::vector<std::shared_ptr<const AxisStage>> cube_stages(const ProviderPtr& extended)
{
    std::vector<std::shared_ptr<const AxisStage>> stages;
    auto stage = std::dynamic_pointer_cast<const AxisStage>(extended);
    while (stage) {
        stages.push_back(stage);
        stage = std::dynamic_pointer_cast<const AxisStage>(stage->inner());
    }
    std::reverse(stages.begin(), stages.end());
    return stages;
}

ProviderPtr lift_componentwise(const ScalarOperator& op, const ProviderPtr& gamma)
{
    if (!gamma) {
        throw PreconditionError("lift needs a source function");
    }
    if (gamma->codim() == 1) {
        return op(gamma);
    }
    std::vector<ProviderPtr> parts;
    for (int c = 0; c < gamma->codim(); ++c) {
        parts.push_back(op(std::make_shared<const ComponentProvider>(gamma, c)));
    }
    return std::make_shared<const StackProvider>(std::move(parts));
}

ProjectionExtension::ProjectionExtension(ProviderPtr gamma, std::vector<double> slice)
    : inner_(std::move(gamma)), slice_(std::move(slice))
{
    if (!inner_ || slice_.empty()) {
        throw PreconditionError("projection extension needs a source function and at least one slice coordinate");
    }
    require_finite(slice_, "slice coordinates");
    check_dim_order(dim(), 0);
}

Jet ProjectionExtension::jet(std::span<const double> x, int order) const
{
    const int d1 = inner_->dim();
    if (static_cast<int>(x.size()) != dim()) {
        throw PreconditionError("query point has the wrong dimension");
    }
    const Jet inner = inner_->jet(x.first(static_cast<std::size_t>(d1)), order);
    Jet out(Point(x.begin(), x.end()), order, codim());
    const auto& set = out.set();
    for (std::size_t i = 0; i < set.size(); ++i) {
        const MultiIndex& alpha = set[i];
        MultiIndex head(d1);
        bool tangential = true;
        for (int k = 0; k < alpha.dim(); ++k) {
            if (k < d1) {
                head.set(k, alpha[k]);
            } else if (alpha[k] != 0) {
                tangential = false;
            }
        }
        if (tangential) {
            const auto src = inner.at(head);
            std::copy(src.begin(), src.end(), out[i].begin());
        }
    }
    return out;
}

} // namespace smoothing
