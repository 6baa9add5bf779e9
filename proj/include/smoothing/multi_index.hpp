#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace smoothing {

/// Largest supported dimension of the domain R^d.
inline constexpr int kMaxDim = 4;
/// Largest supported derivative / polynomial order.
inline constexpr int kMaxOrder = 6;

/// A multi-index alpha = (alpha_1, ..., alpha_d) of non-negative integers.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(int dim);
    MultiIndex(std::initializer_list<int> entries);
    explicit MultiIndex(std::span<const int> entries);

    int dim() const noexcept { return dim_; }
    int operator[](int i) const noexcept { return entries_[static_cast<std::size_t>(i)]; }
    void set(int i, int value);

    /// |alpha| = sum of the entries.
    int order() const noexcept;
    /// alpha! = product of entry factorials.
    double factorial() const noexcept;
    /// y^alpha = product of y_i^alpha_i.
    double power(std::span<const double> y) const noexcept;

    /// Componentwise alpha <= beta.
    bool dominated_by(const MultiIndex& other) const noexcept;
    MultiIndex operator+(const MultiIndex& other) const;
    MultiIndex operator-(const MultiIndex& other) const;

    /// Unit multi-index e_axis.
    static MultiIndex unit(int dim, int axis);

    /// "a1,a2,...": the key format used in JSON artifacts.
    std::string to_string() const;
    static MultiIndex from_string(const std::string& text, int dim);

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) noexcept
    {
        return a.dim_ == b.dim_ && a.entries_ == b.entries_;
    }

private:
    std::array<std::uint8_t, kMaxDim> entries_{};
    int dim_ = 0;
};

/// All multi-indices alpha in d variables with |alpha| <= k, in graded order
/// (by |alpha|, then lexicographically descending), with O(1) lookup and a
/// precomputed addition table. Instances are shared and immutable.
class MultiIndexSet {
public:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    /// Shared instance for (dim, order); thread-safe.
    static const MultiIndexSet& get(int dim, int order);

    int dim() const noexcept { return dim_; }
    int order() const noexcept { return order_; }
    std::size_t size() const noexcept { return indices_.size(); }

    const MultiIndex& operator[](std::size_t i) const noexcept { return indices_[i]; }
    const std::vector<MultiIndex>& indices() const noexcept { return indices_; }

    /// Position of alpha, or npos if |alpha| > order.
    std::size_t index_of(const MultiIndex& alpha) const noexcept;

    /// Position of indices()[i] + indices()[j], or npos if the sum exceeds the order.
    std::size_t sum_index(std::size_t i, std::size_t j) const noexcept
    {
        return sum_table_[i * indices_.size() + j];
    }

    /// Positions [begin, end) of the multi-indices with |alpha| == degree.
    std::size_t degree_begin(int degree) const noexcept { return degree_offsets_[static_cast<std::size_t>(degree)]; }
    std::size_t degree_end(int degree) const noexcept { return degree_offsets_[static_cast<std::size_t>(degree) + 1]; }

    /// Cached alpha! for every position.
    double factorial(std::size_t i) const noexcept { return factorials_[i]; }

    /// Number of multi-indices with |alpha| <= order in dim variables.
    static std::size_t count(int dim, int order);

private:
    MultiIndexSet(int dim, int order);

    std::size_t encode(const MultiIndex& alpha) const noexcept;

    int dim_;
    int order_;
    std::vector<MultiIndex> indices_;
    std::vector<std::size_t> lookup_;
    std::vector<std::size_t> sum_table_;
    std::vector<std::size_t> degree_offsets_;
    std::vector<double> factorials_;
};

/// Binomial coefficient n choose k as a double (exact for the small orders used here).
double binomial(int n, int k) noexcept;

/// Throws PreconditionError unless 1 <= dim <= kMaxDim and 0 <= order <= kMaxOrder.
void check_dim_order(int dim, int order);

} // namespace smoothing
