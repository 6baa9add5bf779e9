#include "harness_util.hpp"

#include "smoothing/tolerances.hpp"

#include <algorithm>

namespace smoothing {

std::vector<SuiteResult> property_suites(std::uint64_t seed)
{
    using namespace suites;
    std::vector<std::function<SuiteResult()>> runs{
        [&] { return seminorm_axioms(seed); },
        [&] { return polarization_roundtrip(seed); },
        [&] { return diagonal_norm_bound(seed); },
        [&] { return jet_arithmetic(seed); },
        [&] { return taylor_value(seed); },
        [] { return expression_roundtrip(); },
        [&] { return expression_jets(seed); },
        [&] { return partition_identities(seed); },
        [] { return exhaustion_margins(); },
        [&] { return polynomial_exactness(seed); },
        [&] { return convergence(seed); },
        [&] { return bound(seed); },
        [&] { return stage_bound(seed); },
        [&] { return support(seed); },
        [&] { return tensor(seed); },
        [&] { return smoothing_linearity(seed); },
        [&] { return evaluation(seed); },
        [&] { return stage_agreement(seed); },
        [&] { return family(seed); },
        [&] { return cube_smoothing(seed); },
        [&] { return extension_right_inverse(seed); },
        [&] { return cross_face_corpus(seed); },
        [] { return vandermonde(); },
        [&] { return extension_bound(seed); },
        [&] { return axis_order(seed); },
        [&] { return projection(seed); },
        [&] { return lift(seed); },
        [] { return mutation(); },
        [&] { return dugundji(seed); },
        [&] { return dugundji_linearity(seed); },
    };
    std::vector<SuiteResult> out;
    for (const auto& run : runs) {
        detail::Stopwatch clock;
        try {
            out.push_back(run());
        } catch (const std::exception& e) {
            out.push_back(detail::finish("suite aborted", false, 0.0, e.what(), clock));
        }
    }
    return out;
}

namespace {

SuiteResult both(SuiteResult a, const SuiteResult& b, std::string name)
{
    a.name = std::move(name);
    a.pass = a.pass && b.pass;
    a.max_violation = std::max(a.max_violation, b.max_violation);
    a.detail = a.detail + " | " + b.detail;
    a.seconds += b.seconds;
    return a;
}

} // namespace

const std::vector<Criterion>& acceptance_criteria()
{
    static const std::vector<Criterion> criteria{
        {1, "polynomial exactness", [](std::uint64_t s) { return suites::polynomial_exactness(s); }},
        {2, "convergence", [](std::uint64_t s) { return suites::convergence(s); }},
        {3, "explicit bound", [](std::uint64_t s) { return suites::bound(s); }},
        {4, "support certification", [](std::uint64_t s) { return suites::support(s); }},
        {5, "tensor witness", [](std::uint64_t s) { return suites::tensor(s); }},
        {6, "extension right inverse and smoothness",
         [](std::uint64_t s) {
             return both(suites::extension_right_inverse(s), suites::cross_face_corpus(s),
                         "extension right inverse and smoothness");
         }},
        {7, "reflection weights", [](std::uint64_t) { return suites::vandermonde(); }},
        {8, "Dugundji properties", [](std::uint64_t s) { return suites::dugundji(s); }},
        {9, "interpolated family", [](std::uint64_t s) { return suites::family(s); }},
        {10, "partition identities", [](std::uint64_t s) { return suites::partition_identities(s); }},
        {11, "full selftest wall time",
         [](std::uint64_t s) {
             detail::Stopwatch clock;
             const auto results = property_suites(s);
             const double seconds = clock.seconds();
             const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.pass; });
             return detail::finish("full selftest wall time", failed == 0 && seconds < tol::selftest_runtime_s,
                                   seconds,
                                   fmt::format("{} suites, {} failed, {:.2f} s (limit {} s)", results.size(), failed,
                                               seconds, tol::selftest_runtime_s),
                                   clock);
         }},
    };
    return criteria;
}

} // namespace smoothing
