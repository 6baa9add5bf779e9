#include "smoothing/multi_index.hpp"

#include "smoothing/errors.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace smoothing {

MultiIndex::MultiIndex(int dim) : dim_(dim)
{
    if (dim < 0 || dim > kMaxDim) {
        throw PreconditionError("multi-index dimension " + std::to_string(dim) + " outside [0, " +
                                std::to_string(kMaxDim) + "]");
    }
}

MultiIndex::MultiIndex(std::initializer_list<int> entries)
    : MultiIndex(std::span<const int>(entries.begin(), entries.size()))
{
}

MultiIndex::MultiIndex(std::span<const int> entries) : MultiIndex(static_cast<int>(entries.size()))
{
    for (int i = 0; i < dim_; ++i) {
        set(i, entries[static_cast<std::size_t>(i)]);
    }
}

void MultiIndex::set(int i, int value)
{
    if (value < 0 || value > 255) {
        throw PreconditionError("multi-index entry out of range: " + std::to_string(value));
    }
    entries_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(value);
}

int MultiIndex::order() const noexcept
{
    int total = 0;
    for (int i = 0; i < dim_; ++i) {
        total += entries_[static_cast<std::size_t>(i)];
    }
    return total;
}

double MultiIndex::factorial() const noexcept
{
    double f = 1.0;
    for (int i = 0; i < dim_; ++i) {
        for (int k = 2; k <= entries_[static_cast<std::size_t>(i)]; ++k) {
            f *= k;
        }
    }
    return f;
}

double MultiIndex::power(std::span<const double> y) const noexcept
{
    double p = 1.0;
    for (int i = 0; i < dim_; ++i) {
        for (int k = 0; k < entries_[static_cast<std::size_t>(i)]; ++k) {
            p *= y[static_cast<std::size_t>(i)];
        }
    }
    return p;
}

bool MultiIndex::dominated_by(const MultiIndex& other) const noexcept
{
    for (int i = 0; i < dim_; ++i) {
        if (entries_[static_cast<std::size_t>(i)] > other.entries_[static_cast<std::size_t>(i)]) {
            return false;
        }
    }
    return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const
{
    MultiIndex out(dim_);
    for (int i = 0; i < dim_; ++i) {
        out.set(i, (*this)[i] + other[i]);
    }
    return out;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const
{
    MultiIndex out(dim_);
    for (int i = 0; i < dim_; ++i) {
        out.set(i, (*this)[i] - other[i]);
    }
    return out;
}

MultiIndex MultiIndex::unit(int dim, int axis)
{
    MultiIndex out(dim);
    out.set(axis, 1);
    return out;
}

std::string MultiIndex::to_string() const
{
    std::string s;
    for (int i = 0; i < dim_; ++i) {
        if (i > 0) {
            s += ',';
        }
        s += std::to_string((*this)[i]);
    }
    return s;
}

MultiIndex MultiIndex::from_string(const std::string& text, int dim)
{
    MultiIndex out(dim);
    std::istringstream in(text);
    std::string part;
    int i = 0;
    while (std::getline(in, part, ',')) {
        if (i >= dim) {
            throw PreconditionError("multi-index '" + text + "' has more than " + std::to_string(dim) + " entries");
        }
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(part, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != part.size() || part.empty()) {
            throw PreconditionError("malformed multi-index '" + text + "'");
        }
        out.set(i++, value);
    }
    if (i != dim) {
        throw PreconditionError("multi-index '" + text + "' must have " + std::to_string(dim) + " entries");
    }
    return out;
}

std::size_t MultiIndexSet::count(int dim, int order)
{
    return static_cast<std::size_t>(binomial(dim + order, dim));
}

const MultiIndexSet& MultiIndexSet::get(int dim, int order)
{
    check_dim_order(dim, order);
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<const MultiIndexSet>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{dim, order}];
    if (!slot) {
        slot.reset(new MultiIndexSet(dim, order));
    }
    return *slot;
}

std::size_t MultiIndexSet::encode(const MultiIndex& alpha) const noexcept
{
    std::size_t code = 0;
    for (int i = 0; i < dim_; ++i) {
        code = code * static_cast<std::size_t>(order_ + 1) + static_cast<std::size_t>(alpha[i]);
    }
    return code;
}

MultiIndexSet::MultiIndexSet(int dim, int order) : dim_(dim), order_(order)
{
    degree_offsets_.push_back(0);
    for (int degree = 0; degree <= order; ++degree) {
        // Lexicographically descending enumeration of all alpha with |alpha| == degree.
        std::vector<int> current(static_cast<std::size_t>(dim), 0);
        auto emit = [&](auto&& self, int axis, int remaining) -> void {
            if (axis == dim - 1) {
                current[static_cast<std::size_t>(axis)] = remaining;
                indices_.emplace_back(std::span<const int>(current));
                return;
            }
            for (int v = remaining; v >= 0; --v) {
                current[static_cast<std::size_t>(axis)] = v;
                self(self, axis + 1, remaining - v);
            }
        };
        emit(emit, 0, degree);
        degree_offsets_.push_back(indices_.size());
    }

    std::size_t dense = 1;
    for (int i = 0; i < dim; ++i) {
        dense *= static_cast<std::size_t>(order + 1);
    }
    lookup_.assign(dense, npos);
    for (std::size_t i = 0; i < indices_.size(); ++i) {
        lookup_[encode(indices_[i])] = i;
        factorials_.push_back(indices_[i].factorial());
    }

    const std::size_t n = indices_.size();
    sum_table_.assign(n * n, npos);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (indices_[i].order() + indices_[j].order() <= order) {
                sum_table_[i * n + j] = index_of(indices_[i] + indices_[j]);
            }
        }
    }
}

std::size_t MultiIndexSet::index_of(const MultiIndex& alpha) const noexcept
{
    if (alpha.dim() != dim_ || alpha.order() > order_) {
        return npos;
    }
    return lookup_[encode(alpha)];
}

double binomial(int n, int k) noexcept
{
    if (k < 0 || k > n) {
        return 0.0;
    }
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

void check_dim_order(int dim, int order)
{
    if (dim < 1 || dim > kMaxDim) {
        throw PreconditionError("dimension " + std::to_string(dim) + " outside [1, " + std::to_string(kMaxDim) + "]");
    }
    if (order < 0 || order > kMaxOrder) {
        throw PreconditionError("order " + std::to_string(order) + " outside [0, " + std::to_string(kMaxOrder) + "]");
    }
}

} // namespace smoothing
