#pragma once

// Every numeric threshold used by the verification harness. Checks refer to
// these names; nothing is inlined at the call sites.

namespace smoothing::tol {

// Polynomial reproduction by the smoothing operator (C^l seminorm of the error).
inline constexpr double polynomial_exactness = 1e-10;
inline constexpr double polynomial_runtime_s = 5.0;
// Polynomial reproduction on the closed cube (extension followed by smoothing).
inline constexpr double cube_polynomial = 1e-8;

// Convergence tables: errors below this floor count as converged when checking monotonicity.
inline constexpr double convergence_floor = 1e-10;
inline constexpr double convergence_runtime_s = 30.0;
// Reported only: expected empirical slope of log error against log n.
inline constexpr double rate_slope = -0.8;

// Term-by-term evaluation against the partition-series evaluation.
inline constexpr double direct_value = 1e-14;
inline constexpr double fd_relative = 1e-6;
inline constexpr double fd_step = 1e-5;
inline constexpr double linearity = 1e-10;
inline constexpr double stage_agreement = 1e-12;
inline constexpr double tensor_reconstruction = 1e-10;

// Extension operators.
inline constexpr double restriction = 1e-12;
inline constexpr double cross_face_relative = 1e-4;
// Offset of the paired one-sided queries across a face.
inline constexpr double cross_face_offset = 1e-7;
inline constexpr double vandermonde_residual = 1e-9;
inline constexpr double hestenes_l1 = 1e-12;
inline constexpr double extension_linearity = 1e-12;
inline constexpr double axis_order = 1e-10;
inline constexpr double constant_stability = 0.10;
inline constexpr double projection_seminorm = 1e-12;
inline constexpr double mutation_size = 1e-3;

// Dugundji extension.
inline constexpr double weight_sum = 1e-12;
inline constexpr double sup_ratio = 1e-12;
inline constexpr double hull_slack = 1e-12;

// Partition of unity.
inline constexpr double partition_sum = 1e-12;
inline constexpr double partition_derivative = 1e-9;

// Multivariate calculus.
inline constexpr double polarization = 1e-9;
inline constexpr double jet_fd_relative = 1e-5;
inline constexpr double seminorm_axiom = 1e-12;

// Whole property run.
inline constexpr double selftest_runtime_s = 120.0;

} // namespace smoothing::tol
