#pragma once

#include "smoothing/domains.hpp"
#include "smoothing/provider.hpp"
#include "smoothing/seminorm.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace smoothing {

struct DugundjiOptions {
    /// Shell indices are clamped to [n_min, n_max]; queries outside the dyadic range
    /// use the nearest in-range shell and are counted as clamped.
    int n_min = -30;
    int n_max = 30;
    /// Refinement levels of the deterministic anchor search inside a cell.
    int anchor_refinements = 6;
};

/// A cover cell of shell n: the open cube c a + (-a, a)^d with a = 2^{-n} / sqrt(d)
/// (diameter of the closure exactly 2^{-n+1}).
struct CellKey {
    int n = 0;
    std::vector<std::int64_t> c;

    friend bool operator<(const CellKey& a, const CellKey& b)
    {
        return a.n != b.n ? a.n < b.n : a.c < b.c;
    }
    friend bool operator==(const CellKey& a, const CellKey& b) { return a.n == b.n && a.c == b.c; }
};

/// Anchor pair of a cell: x(j) in the cell and in W_n, y(j) in Y with d(x(j), y(j)) < 2^{-n+1}.
struct Anchor {
    Point x;
    Point y;
    double distance = 0.0;
    /// True when the refined search found no point of the cell inside W_n and
    /// the query point was used instead.
    bool fallback = false;
};

struct DugundjiContribution {
    CellKey cell;
    double weight = 0.0;
    Anchor anchor;
};

/// Everything about a query that does not depend on gamma.
struct DugundjiQuery {
    Point x;
    bool on_set = false;
    double distance = 0.0;
    /// Shell with the largest shell weight (meaningless when on_set).
    int shell = 0;
    bool clamped = false;
    std::vector<DugundjiContribution> terms;
};

/// Simplified Dugundji extension from a closed set Y of R^d with dyadic shells
/// W_n = { x : d_Y(x) in (2^{-n-1}, 2^{-n+1}) }, lattice covers per shell and
/// a lazily filled anchor cache with insert-once semantics.
class DugundjiExtension {
public:
    explicit DugundjiExtension(ClosedSet y, DugundjiOptions options = {});

    int dim() const noexcept { return dim_; }
    const ClosedSet& set() const noexcept { return y_; }
    const DugundjiOptions& options() const noexcept { return options_; }

    /// Shell weight g(L - n) with L = -log2 d_Y(x).
    static double shell_weight(double distance, int n);
    /// Side half-length a of the cells of shell n.
    double cell_half_width(int n) const;

    DugundjiQuery query(std::span<const double> x) const;

    VectorValue evaluate(const JetProvider& gamma, std::span<const double> x) const;
    static VectorValue combine(const DugundjiQuery& q, const JetProvider& gamma);

    /// Snapshot of every anchor resolved so far.
    std::vector<std::pair<CellKey, Anchor>> anchors() const;
    std::size_t clamped_queries() const;

private:
    const Anchor& anchor(const CellKey& key, std::span<const double> query) const;
    Anchor resolve(const CellKey& key, std::span<const double> query) const;
    bool in_shell(std::span<const double> p, int n) const;

    ClosedSet y_;
    DugundjiOptions options_;
    int dim_;
    mutable std::mutex mutex_;
    mutable std::map<CellKey, Anchor> cache_;
    mutable std::size_t clamped_ = 0;
};

/// Value-only provider for E(gamma); jets of order > 0 are rejected (E(gamma) is merely continuous).
class DugundjiProvider final : public JetProvider {
public:
    DugundjiProvider(std::shared_ptr<const DugundjiExtension> extension, ProviderPtr gamma);

    int dim() const override { return extension_->dim(); }
    int codim() const override { return gamma_->codim(); }
    Jet jet(std::span<const double> x, int order) const override;

private:
    std::shared_ptr<const DugundjiExtension> extension_;
    ProviderPtr gamma_;
};

struct DugundjiRow {
    Point x;
    double distance = 0.0;
    std::optional<int> shell;
    VectorValue value;
    bool hull_ok = true;
};

struct ContinuityRow {
    double step = 0.0;
    double error = 0.0;
};

struct DugundjiReport {
    std::vector<DugundjiRow> rows;
    /// max |E(gamma) - gamma| over grid points in Y and set points inside the window.
    double restriction_error = 0.0;
    std::size_t restriction_samples = 0;
    double sup_ratio = 0.0;
    bool sup_attained_on_set = false;
    bool hull_ok = true;
    double max_weight_sum_error = 0.0;
    double min_weight = 0.0;
    std::size_t anchor_count = 0;
    std::size_t anchor_violations = 0;
    Point continuity_target;
    std::vector<ContinuityRow> continuity;
    bool continuity_trend_ok = true;

    std::string csv() const;
};

DugundjiReport dugundji_report(const DugundjiExtension& ext, const JetProvider& gamma, const Box& window,
                               int per_axis, const SeminormSpec& q, std::uint64_t seed = 0);

} // namespace smoothing
