#pragma once

// Helpers shared by the harness translation units.

#include "smoothing/harness.hpp"
#include "smoothing/seminorm.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <chrono>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace smoothing::detail {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

/// Each coordinate of the box is [lo, hi].
inline Box cube_box(int dim, double lo, double hi)
{
    return Box{std::vector<Interval>(static_cast<std::size_t>(dim), Interval{lo, hi})};
}

inline BoxUnion open_cube(int dim, double lo, double hi)
{
    return BoxUnion({cube_box(dim, lo, hi)}, true);
}

inline BoxUnion closed_cube(int dim, double lo, double hi)
{
    return BoxUnion({cube_box(dim, lo, hi)}, false);
}

/// Per-degree max over the grid of q(d^alpha a - d^alpha b), |alpha| = j.
std::vector<double> error_profile(const JetProvider& a, const JetProvider& b, std::span<const Point> grid, int order,
                                  const SeminormSpec& q);

/// Uniform points of a bounded box from a seeded generator.
std::vector<Point> random_points(const Box& box, std::size_t count, std::uint64_t seed);

/// |a - b| / max(1, |a|, |b|).
double relative_gap(double a, double b);

/// Mixes a base seed with a suite-specific salt.
std::uint64_t salt(std::uint64_t seed, std::uint64_t value);

SuiteResult finish(std::string name, bool pass, double violation, std::string detail, const Stopwatch& clock);

/// Scalar corpus functions of a dimension (first component of vector entries is not used).
std::vector<std::pair<std::string, ProviderPtr>> corpus_functions(int dim);

} // namespace smoothing::detail
