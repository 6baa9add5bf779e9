#pragma once

#include "smoothing/jet.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace smoothing {

class JetProvider;

/// A continuous seminorm q on F = R^m.
class SeminormSpec {
public:
    enum class Kind { coordinate_max, euclidean, weighted_max };

    static SeminormSpec coordinate_max();
    static SeminormSpec euclidean();
    /// max_i w_i |v_i| with strictly positive weights.
    static SeminormSpec weighted_max(std::vector<double> weights);

    Kind kind() const noexcept { return kind_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    std::string name() const;

    double operator()(std::span<const double> v) const;

private:
    SeminormSpec(Kind kind, std::vector<double> weights) : kind_(kind), weights_(std::move(weights)) {}

    Kind kind_;
    std::vector<double> weights_;
};

/// Which per-point quantity enters the C^l seminorm.
enum class SeminormFlavor {
    /// max over |alpha| = j of q(d^alpha gamma(x)).
    partial,
    /// sup over the max-norm unit ball of q(delta^j_x gamma(y)), the j-th Gateaux differential.
    gateaux,
};

/// Evaluates sup_{||y||_inf <= 1} q(p(y)) for homogeneous polynomials given by
/// jet data, by sampling a deterministic grid on the boundary of [-1,1]^d.
/// For j == 1 the grid contains every vertex, where the supremum is attained.
class HomogeneousNormSampler {
public:
    HomogeneousNormSampler(int dim, int max_degree, int grid_per_axis = 21);

    int dim() const noexcept { return dim_; }
    std::size_t sample_count() const noexcept { return samples_.size(); }

    /// ||delta^j_x gamma||_q from the derivatives d^alpha gamma(x), |alpha| = j.
    double gateaux_norm(const Jet& jet, int j, const SeminormSpec& q) const;

private:
    int dim_;
    int max_degree_;
    std::vector<Point> samples_;
    // monomials_[s * set.size() + i] = samples_[s]^alpha_i
    std::vector<double> monomials_;
};

/// Per-degree values m_j = max over grid of the flavor's quantity, j = 0..order.
struct ClSeminormProfile {
    std::vector<double> by_degree;
    double total() const;
};

/// Seminorm data of one jet at one point, j = 0..order.
std::vector<double> jet_seminorm_by_degree(const Jet& jet, int order, const SeminormSpec& q, SeminormFlavor flavor,
                                           const HomogeneousNormSampler* sampler = nullptr);

/// ||gamma||_{C^l,K,q} estimated as the maximum over the grid points of K
/// (a lower estimate of the supremum that converges under refinement).
ClSeminormProfile seminorm_profile(const JetProvider& provider, std::span<const Point> grid, int order,
                                   const SeminormSpec& q, SeminormFlavor flavor = SeminormFlavor::partial);

double seminorm_Cl(const JetProvider& provider, std::span<const Point> grid, int order, const SeminormSpec& q,
                   SeminormFlavor flavor = SeminormFlavor::partial);

} // namespace smoothing
