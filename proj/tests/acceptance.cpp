// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.
#include "smoothing/harness.hpp"

#include <fmt/core.h>

#include <exception>

int main()
{
    using namespace smoothing;
    int failures = 0;
    for (const Criterion& c : acceptance_criteria()) {
        SuiteResult r;
        try {
            r = c.run(0);
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = fmt::format("exception: {}", e.what());
        }
        fmt::print("CRITERION {:>2} {} {}: {} ({:.2f} s)\n", c.id, r.pass ? "PASS" : "FAIL", c.name, r.detail,
                   r.seconds);
        failures += r.pass ? 0 : 1;
    }
    fmt::print("{} of {} criteria passed\n", acceptance_criteria().size() - failures, acceptance_criteria().size());
    return failures == 0 ? 0 : 1;
}
