#pragma once

#include "smoothing/jet.hpp"
#include "smoothing/provider.hpp"
#include "smoothing/series.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace smoothing {

using LatticePoint = std::vector<int>;

/// Human-readable definition of the shipped bump, printed next to every constant derived from it.
inline constexpr const char* kBumpDefinition =
    "xi(x) = prod_i g(x_i), g(t) = exp(-1/(1-t^2)) for |t| < 1, g(t) = 0 otherwise";

/// g(t) = exp(-1/(1-t^2)) on (-1,1), zero elsewhere.
double bump_profile(double t);
/// Univariate Taylor series of g at t, truncated at `order` (zero series for |t| >= 1).
Series bump_profile_series(double t, int order);

/// Jet of xi(x) = prod_i g(x_i); the zero jet outside (-1,1)^d.
Jet bump_jet(std::span<const double> x, int order);

/// h_w series for every lattice point w whose support z + (-1,1)^d contains y,
/// sharing one denominator sum_w xi(y - w).
struct PartitionTerms {
    std::vector<LatticePoint> points;
    std::vector<Series> values;
};

/// Throws InvariantError if the denominator is not strictly positive.
PartitionTerms partition_series(std::span<const double> y, int order);

/// Jet of h_z(x) = xi(x - z) / sum_w xi(x - w).
Jet partition_jet(std::span<const int> z, std::span<const double> x, int order);

/// Jet of h_{n,z}(x) = h_z(n x); derivatives of order j carry the factor n^j.
Jet scaled_partition_jet(int n, std::span<const int> z, std::span<const double> x, int order);

/// G(u) = int_0^u g(2v-1) dv / int_0^1 g(2v-1) dv: smooth, monotone, 0 on (-inf,0], 1 on [1,inf).
double smooth_step(double u);
/// Univariate series of G at u, truncated at `order`.
Series smooth_step_series(double u, int order);

/// Sampled ||h_0||_{C^l} = max_{j <= l} sup_x ||delta^j_x h_0|| (Gateaux norms over the max-norm ball).
struct PartitionNorm {
    int dim = 0;
    int order = 0;
    double value = 0.0;
    std::vector<double> by_degree;
    double step = 0.0;
    std::uint64_t seed = 0;
    std::size_t points = 0;
    int direction_grid = 0;

    std::string describe() const;
};

/// Uncached computation on a seeded shifted grid of [0,1]^d with the given step
/// (h_0 is invariant under coordinate reflections, so [0,1]^d covers its support).
PartitionNorm compute_partition_norm(int dim, int order, double step, std::uint64_t seed);

/// Default grid step for a dimension: 1e-3 for d = 1, coarser above.
double default_partition_norm_step(int dim);

/// Cached write-once value with the default step.
const PartitionNorm& partition_norm(int dim, int order, std::uint64_t seed = 0);

/// C = 1 + (l+1) 2^{d+1} (2l)^l ||h_0||_{C^l}, with 0^0 = 1.
double smoothing_bound_constant(int dim, int order, double h0_norm);

/// gamma(x) = v * prod_i g((x_i - c_i) / r_i): a smooth test function supported
/// exactly in the closed box c + [-r, r] whose jets vanish identically outside it.
class BumpProvider final : public JetProvider {
public:
    BumpProvider(Point center, std::vector<double> radius, VectorValue direction);

    int dim() const override { return static_cast<int>(center_.size()); }
    int codim() const override { return static_cast<int>(direction_.size()); }
    Jet jet(std::span<const double> x, int order) const override;

private:
    Point center_;
    std::vector<double> radius_;
    VectorValue direction_;
};

} // namespace smoothing
