#pragma once

#include "smoothing/bump.hpp"
#include "smoothing/domains.hpp"
#include "smoothing/polynomial.hpp"
#include "smoothing/provider.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace smoothing {

/// One bump term h_{n,z}(x) * poly(x - z/n).
struct SmoothedTerm {
    LatticePoint z;
    int n = 1;
    PolynomialMap poly;
};

/// Closed form x -> sum_terms h_{n,z}(x) poly_z(x - z/n). Immutable once built;
/// jets are exact derivatives of the closed form (zero off the union of term cubes).
class SmoothedFunction final : public JetProvider {
public:
    /// Terms are sorted by (n, z); terms sharing (n, z) are merged.
    SmoothedFunction(int dim, int codim, int order, std::vector<SmoothedTerm> terms);

    int dim() const override { return dim_; }
    int codim() const override { return codim_; }
    /// Polynomial degree l of the terms.
    int order() const noexcept { return order_; }
    const std::vector<SmoothedTerm>& terms() const noexcept { return terms_; }
    std::vector<int> scales() const;

    Jet jet(std::span<const double> x, int order) const override;

    /// sum_terms h_{n,z}(x) poly_z(x - z/n) evaluated term by term through partition_jet.
    VectorValue direct_value(std::span<const double> x) const;

    /// Copy that throws DomainError for queries outside the closed box.
    SmoothedFunction restricted_to(Box box) const;
    const std::optional<Box>& restriction() const noexcept { return restriction_; }

    /// a*f + b*g, merging terms with equal (n, z); terms with weight 0 are dropped.
    static SmoothedFunction combine(double a, const SmoothedFunction& f, double b, const SmoothedFunction& g);

    nlohmann::json to_json() const;
    static SmoothedFunction from_json(const nlohmann::json& j);

private:
    int dim_;
    int codim_;
    int order_;
    std::vector<SmoothedTerm> terms_;
    // scale -> (lattice point -> term position)
    std::map<int, std::map<LatticePoint, std::size_t>> index_;
    std::optional<Box> restriction_;
};

struct StildeOptions {
    /// Without this flag, lattice points whose open support meets the window
    /// but whose cube leaves Omega are an error; with it they are skipped.
    bool allow_partial = false;
};

/// S~_n(gamma) restricted to the terms z in Phi_n(window); exact at every x in the window.
SmoothedFunction build_stilde(const JetProvider& gamma, int order, int n, const BoxUnion& omega,
                              const BoxUnion& window, const StildeOptions& options = {});

/// S_j(gamma) = sum over Phi_j = { z in M_{m_j} : supp h_{m_j,z} meets K_j }. Needs j < depth.
SmoothedFunction build_sn(const JetProvider& gamma, int order, const Exhaustion& exhaustion, int j,
                          const BoxUnion& omega);

/// Result of an exact set-inclusion check of term cubes against the interior of a closed union.
struct SupportCertificate {
    bool ok = true;
    std::size_t checked = 0;
    /// Terms whose polynomial is identically zero contribute nothing and are skipped.
    std::size_t skipped_zero = 0;
    std::vector<LatticePoint> failures;
};

SupportCertificate certify_support(const SmoothedFunction& s, const BoxUnion& closed_set);

/// S = sum_i v_i phi_i with r <= m from a rank factorization of the coefficient matrix.
struct TensorWitness {
    int rank = 0;
    std::vector<VectorValue> vectors;
    std::vector<SmoothedFunction> functions;

    VectorValue reconstruct(std::span<const double> x) const;
};

TensorWitness tensor_witness(const SmoothedFunction& s, double relative_threshold = 1e-12);

/// t_j = 2^{1-j}, n_j = base_scale * 2^{j-1}, collar rho(s) = G((s - eps) / (1 - 2 eps)).
struct FamilySchedule {
    int base_scale = 4;
    double epsilon = 0.25;
    int max_stage = 10;

    double t(int j) const;
    int scale(int j) const;
    double rho(double s) const;
};

/// Position of t on the schedule: t_{j+1} < t <= t_j, s = (t - t_{j+1}) / (t_j - t_{j+1}).
struct FamilyPosition {
    int j = 1;
    double s = 1.0;
    double rho = 1.0;
};

FamilyPosition family_position(double t, const FamilySchedule& schedule = {});

/// S_t = H_{j+1} + rho(s) (H_j - H_{j+1}), H_j = build_stilde at scale n_j.
SmoothedFunction interpolated_family(const JetProvider& gamma, int order, const BoxUnion& omega,
                                     const BoxUnion& window, double t, const FamilySchedule& schedule = {});

/// Smoothing on the closed cube: restrict(build_stilde(extend_cube(gamma), n, R^d, [-1,2]^d)).
SmoothedFunction cube_smoothing(const ProviderPtr& gamma, int order, int n);

} // namespace smoothing
