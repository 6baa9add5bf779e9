#include "smoothing/jet.hpp"

#include "smoothing/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace smoothing {

void require_finite(std::span<const double> values, const char* what)
{
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw PreconditionError(std::string(what) + " contains a non-finite entry");
        }
    }
}

Jet::Jet(Point basepoint, int order, int codim)
    : basepoint_(std::move(basepoint)),
      set_(&MultiIndexSet::get(static_cast<int>(basepoint_.size()), order)),
      codim_(codim)
{
    if (codim < 1) {
        throw PreconditionError("jet codimension must be at least 1");
    }
    table_.assign(set_->size() * static_cast<std::size_t>(codim), 0.0);
}

Jet Jet::from_series(Point basepoint, std::span<const Series> components)
{
    if (components.empty()) {
        throw PreconditionError("jet needs at least one component");
    }
    const auto& set = components.front().set();
    Jet jet(std::move(basepoint), set.order(), static_cast<int>(components.size()));
    if (jet.set_ != &set) {
        throw PreconditionError("series dimension does not match the jet basepoint");
    }
    for (std::size_t c = 0; c < components.size(); ++c) {
        if (&components[c].set() != &set) {
            throw PreconditionError("jet components with different truncation orders");
        }
        for (std::size_t i = 0; i < set.size(); ++i) {
            jet[i][c] = components[c].derivative(i);
        }
    }
    return jet;
}

std::span<const double> Jet::at(const MultiIndex& alpha) const
{
    const std::size_t i = set_->index_of(alpha);
    if (i == MultiIndexSet::npos) {
        throw PreconditionError("multi-index " + alpha.to_string() + " not in jet of order " + std::to_string(order()));
    }
    return (*this)[i];
}

Series Jet::series(int component) const
{
    Series s(*set_);
    for (std::size_t i = 0; i < set_->size(); ++i) {
        s[i] = (*this)[i][static_cast<std::size_t>(component)] / set_->factorial(i);
    }
    return s;
}

Jet Jet::truncated(int order) const
{
    if (order > this->order()) {
        throw PreconditionError("jet of order " + std::to_string(this->order()) + " cannot supply order " +
                                std::to_string(order));
    }
    Jet out(basepoint_, order, codim_);
    std::copy_n(table_.begin(), out.table_.size(), out.table_.begin());
    return out;
}

bool Jet::is_zero() const noexcept
{
    return std::all_of(table_.begin(), table_.end(), [](double v) { return v == 0.0; });
}

} // namespace smoothing
