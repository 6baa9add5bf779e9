#pragma once

#include "smoothing/bump.hpp"
#include "smoothing/domains.hpp"
#include "smoothing/extension.hpp"
#include "smoothing/provider.hpp"
#include "smoothing/seminorm.hpp"

#include "json.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace smoothing {

/// Outcome of one check. max_violation is the worst observed value of the
/// checked quantity (an error, a ratio, a count); detail is a one-line summary.
struct SuiteResult {
    std::string name;
    bool pass = false;
    double max_violation = 0.0;
    std::string detail;
    double seconds = 0.0;
};

/// [{"suite", "pass", "max_violation"}, ...]
nlohmann::json summary_json(const std::vector<SuiteResult>& results);

/// Test functions used by every corpus-wide check.
struct CorpusEntry {
    std::string text;
    int dim;
};

const std::vector<CorpusEntry>& corpus();
ProviderPtr corpus_provider(const CorpusEntry& entry);

/// True if each entry is below its predecessor, treating entries below `floor` as converged.
bool strictly_decreasing(std::span<const double> errors, double floor);

/// Least-squares slope of log(error) against log(n); NaN when fewer than two positive errors.
double fit_slope(std::span<const int> scales, std::span<const double> errors);

struct ConvergenceRow {
    int n = 0;
    std::vector<double> by_degree;
    double error = 0.0;
    double seconds = 0.0;
};

struct ConvergenceTable {
    std::string function;
    int order = 0;
    std::vector<ConvergenceRow> rows;
    bool decreasing = false;
    double slope = 0.0;

    std::vector<double> errors() const;
    /// n, err_C0 .. err_Cl, err, seconds
    std::string csv() const;
};

struct ConvergenceConfig {
    int order = 1;
    BoxUnion omega = BoxUnion::open_box({{-2.0, 2.0}});
    Box k{{{-1.0, 1.0}}};
    SeminormSpec q = SeminormSpec::coordinate_max();
    std::vector<int> scales{4, 8, 16, 32};
    int per_axis = 41;
};

/// Rows (n, ||gamma - S~_n gamma||_{C^j,K,q} for j = 0..l) with the partial-derivative seminorm.
ConvergenceTable convergence_report(const JetProvider& gamma, const std::string& name, const ConvergenceConfig& config);

struct BoundRow {
    std::string function;
    double smoothed = 0.0;
    double original = 0.0;
    double ratio = 0.0;
};

struct BoundCertificate {
    int dim = 0;
    int order = 0;
    int n = 0;
    PartitionNorm h0;
    double constant = 0.0;
    std::vector<BoundRow> rows;
    bool pass = false;

    double worst_ratio() const;
    /// function, smoothed, original, ratio, constant
    std::string csv() const;
};

/// ||S~_n gamma||_{C^l,K,q} <= C ||gamma||_{C^l,L,q} with the Gateaux seminorm on both
/// sides; requires K + [-1/n, 1/n]^d inside L.
BoundCertificate bound_certificate(const std::vector<std::pair<std::string, ProviderPtr>>& functions, int order,
                                   const BoxUnion& omega, const Box& k, const Box& l, const SeminormSpec& q, int n,
                                   int per_axis);

struct GrowthRow {
    int order = 0;
    double power = 0.0;
    double h0 = 0.0;
    double constant = 0.0;
    double recomputed = 0.0;
};

/// C(l) for l = 0..max_order, with (2l)^l and the independently recomputed formula value.
std::vector<GrowthRow> constant_growth(int dim, int max_order);
std::string growth_csv(const std::vector<GrowthRow>& rows);

namespace suites {

SuiteResult seminorm_axioms(std::uint64_t seed);
SuiteResult polarization_roundtrip(std::uint64_t seed);
SuiteResult diagonal_norm_bound(std::uint64_t seed);
SuiteResult jet_arithmetic(std::uint64_t seed);
SuiteResult taylor_value(std::uint64_t seed);
SuiteResult expression_roundtrip();
SuiteResult expression_jets(std::uint64_t seed);

SuiteResult partition_identities(std::uint64_t seed);
SuiteResult exhaustion_margins();

SuiteResult polynomial_exactness(std::uint64_t seed);
SuiteResult convergence(std::uint64_t seed);
SuiteResult bound(std::uint64_t seed);
SuiteResult stage_bound(std::uint64_t seed);
SuiteResult support(std::uint64_t seed);
SuiteResult tensor(std::uint64_t seed);
SuiteResult smoothing_linearity(std::uint64_t seed);
SuiteResult evaluation(std::uint64_t seed);
SuiteResult stage_agreement(std::uint64_t seed);
SuiteResult family(std::uint64_t seed);
SuiteResult cube_smoothing(std::uint64_t seed);

SuiteResult extension_right_inverse(std::uint64_t seed);
/// One-sided jets across every face of the cube, corner and halfspace extensions of the corpus.
SuiteResult cross_face(const AxisExtension& extension, int order);
SuiteResult cross_face_corpus(std::uint64_t seed);
SuiteResult vandermonde();
SuiteResult extension_bound(std::uint64_t seed);
SuiteResult axis_order(std::uint64_t seed);
SuiteResult projection(std::uint64_t seed);
SuiteResult lift(std::uint64_t seed);
/// Passes when a 1e-3 perturbation of one weight makes cross_face fail.
SuiteResult mutation();

SuiteResult dugundji(std::uint64_t seed);
SuiteResult dugundji_linearity(std::uint64_t seed);

} // namespace suites

/// Every property suite with fixed seeds derived from `seed`.
std::vector<SuiteResult> property_suites(std::uint64_t seed = 0);

/// One entry per acceptance criterion (1..11).
struct Criterion {
    int id;
    std::string name;
    std::function<SuiteResult(std::uint64_t)> run;
};

const std::vector<Criterion>& acceptance_criteria();

} // namespace smoothing
