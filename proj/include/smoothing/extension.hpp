#pragma once

#include "smoothing/provider.hpp"

#include "json.hpp"

#include <functional>
#include <vector>

namespace smoothing {

/// Finite-order reflection across a face: nodes b_0 < ... < b_l, weights a_k with
/// sum_k a_k (-b_k)^i = 1 for i = 0..l, and a cutoff chi in the distance s to the face
/// with chi = 1 on [0, s1] and chi = 0 on [s2, inf), s1 = 1/(4 b_l), s2 = 1/(2 b_l).
class AxisExtension {
public:
    /// Default nodes b_k = k + 1.
    explicit AxisExtension(int order);
    AxisExtension(int order, std::vector<double> nodes);

    int order() const noexcept { return order_; }
    const std::vector<double>& nodes() const noexcept { return nodes_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    double inner_reach() const noexcept { return s1_; }
    double outer_reach() const noexcept { return s2_; }

    /// max_i |sum_k a_k (-b_k)^i - 1|.
    double residual() const;

    double cutoff(double s) const;
    /// Univariate series of chi at distance s.
    Series cutoff_series(double s, int order) const;

    /// Same nodes with weights replaced (used to inject faults into verification runs).
    AxisExtension with_weights(std::vector<double> weights) const;

    nlohmann::json to_json() const;

private:
    int order_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    double s1_;
    double s2_;
};

/// Solves sum_k a_k (-b_k)^i = 1, i = 0..l. Throws PreconditionError for
/// non-positive, duplicate, or numerically indistinct nodes.
std::vector<double> solve_axis_weights(int order, std::span<const double> nodes);

/// Which faces of an axis are extended. The source occupies x_axis >= lower
/// (if lower is used) and x_axis <= upper (if upper is used).
struct FaceSet {
    bool lower = true;
    double lower_at = 0.0;
    bool upper = false;
    double upper_at = 1.0;
};

/// Extension of `inner` across one or two faces orthogonal to `axis`.
/// On the source side (face included) jets are the inner jets; across a face
/// E(x) = chi(s) sum_k a_k inner(x with x_axis -> c - b_k (x_axis - c)), s = |x_axis - c|.
class AxisStage final : public JetProvider {
public:
    enum class Branch { automatic, source, lower_reflection, upper_reflection };

    AxisStage(ProviderPtr inner, int axis, FaceSet faces, AxisExtension extension);

    int dim() const override { return inner_->dim(); }
    int codim() const override { return inner_->codim(); }
    Jet jet(std::span<const double> x, int order) const override;

    /// Jet of one branch regardless of which side x lies on; the reflection branch
    /// evaluated on the face gives the one-sided jet from outside the source.
    Jet branch_jet(std::span<const double> x, int order, Branch branch) const;

    int axis() const noexcept { return axis_; }
    const FaceSet& faces() const noexcept { return faces_; }
    const AxisExtension& extension() const noexcept { return extension_; }
    const ProviderPtr& inner() const noexcept { return inner_; }

private:
    Jet reflected(std::span<const double> x, int order, double face) const;

    ProviderPtr inner_;
    int axis_;
    FaceSet faces_;
    AxisExtension extension_;
};

/// Extension from [0, inf) x R^{d-1} (source on x_axis >= 0).
std::shared_ptr<const AxisStage> extend_halfspace(ProviderPtr gamma, int axis, int order);

/// Extension from the corner [0, inf)^M x R^{d-M}: lower faces on axes 0..M-1, applied in order.
ProviderPtr extend_corner(ProviderPtr gamma, int corners, int order);

/// Extension from [0,1]^d to R^d: both faces of every axis, axes processed in `axis_order`
/// (default 0..d-1).
ProviderPtr extend_cube(ProviderPtr gamma, int order, std::vector<int> axis_order = {});

/// Same as extend_cube with a custom AxisExtension on every axis.
ProviderPtr extend_cube_with(ProviderPtr gamma, const AxisExtension& extension, std::vector<int> axis_order = {});

/// The stages of a cube extension in application order (innermost first).
std::vector<std::shared_ptr<const AxisStage>> cube_stages(const ProviderPtr& extended);

using ScalarOperator = std::function<ProviderPtr(ProviderPtr)>;

/// Applies a scalar operator to each component of gamma and stacks the results.
ProviderPtr lift_componentwise(const ScalarOperator& op, const ProviderPtr& gamma);

/// E(gamma)(x, y) = gamma(x) on R^{d1} x R^{d2}: the retraction onto the slice R^{d1} x {c}.
class ProjectionExtension final : public JetProvider {
public:
    ProjectionExtension(ProviderPtr gamma, std::vector<double> slice);

    int dim() const override { return inner_->dim() + static_cast<int>(slice_.size()); }
    int codim() const override { return inner_->codim(); }
    Jet jet(std::span<const double> x, int order) const override;

    const std::vector<double>& slice() const noexcept { return slice_; }

private:
    ProviderPtr inner_;
    std::vector<double> slice_;
};

} // namespace smoothing
