#include "smoothing/provider.hpp"

#include "smoothing/errors.hpp"

#include <string>

namespace smoothing {

LinearCombination::LinearCombination(std::vector<std::pair<double, ProviderPtr>> terms) : terms_(std::move(terms))
{
    if (terms_.empty()) {
        throw PreconditionError("linear combination needs at least one term");
    }
    dim_ = terms_.front().second->dim();
    codim_ = terms_.front().second->codim();
    for (const auto& [w, p] : terms_) {
        if (p->dim() != dim_ || p->codim() != codim_) {
            throw PreconditionError("linear combination of providers with different shapes");
        }
    }
}

Jet LinearCombination::jet(std::span<const double> x, int order) const
{
    Jet out(Point(x.begin(), x.end()), order, codim_);
    for (const auto& [w, p] : terms_) {
        const Jet j = p->jet(x, order);
        for (std::size_t i = 0; i < out.set().size(); ++i) {
            for (int c = 0; c < codim_; ++c) {
                out[i][static_cast<std::size_t>(c)] += w * j[i][static_cast<std::size_t>(c)];
            }
        }
    }
    return out;
}

ComponentProvider::ComponentProvider(ProviderPtr inner, int index) : inner_(std::move(inner)), index_(index)
{
    if (index < 0 || index >= inner_->codim()) {
        throw PreconditionError("component index " + std::to_string(index) + " out of range");
    }
}

Jet ComponentProvider::jet(std::span<const double> x, int order) const
{
    const Jet full = inner_->jet(x, order);
    Jet out(full.basepoint(), order, 1);
    for (std::size_t i = 0; i < out.set().size(); ++i) {
        out[i][0] = full[i][static_cast<std::size_t>(index_)];
    }
    return out;
}

StackProvider::StackProvider(std::vector<ProviderPtr> components) : components_(std::move(components))
{
    if (components_.empty()) {
        throw PreconditionError("stack needs at least one component");
    }
    dim_ = components_.front()->dim();
    for (const auto& c : components_) {
        if (c->dim() != dim_ || c->codim() != 1) {
            throw PreconditionError("stack components must be scalar providers of equal dimension");
        }
    }
}

Jet StackProvider::jet(std::span<const double> x, int order) const
{
    Jet out(Point(x.begin(), x.end()), order, codim());
    for (std::size_t c = 0; c < components_.size(); ++c) {
        const Jet j = components_[c]->jet(x, order);
        for (std::size_t i = 0; i < out.set().size(); ++i) {
            out[i][c] = j[i][0];
        }
    }
    return out;
}

RankOneProvider::RankOneProvider(ProviderPtr scalar, VectorValue direction)
    : scalar_(std::move(scalar)), direction_(std::move(direction))
{
    if (scalar_->codim() != 1 || direction_.empty()) {
        throw PreconditionError("rank-one provider needs a scalar provider and a non-empty direction");
    }
    require_finite(direction_, "rank-one direction");
}

Jet RankOneProvider::jet(std::span<const double> x, int order) const
{
    const Jet s = scalar_->jet(x, order);
    Jet out(s.basepoint(), order, codim());
    for (std::size_t i = 0; i < out.set().size(); ++i) {
        for (std::size_t c = 0; c < direction_.size(); ++c) {
            out[i][c] = s[i][0] * direction_[c];
        }
    }
    return out;
}

GuardedProvider::GuardedProvider(ProviderPtr inner, std::vector<double> lo, std::vector<double> hi)
    : inner_(std::move(inner)), lo_(std::move(lo)), hi_(std::move(hi))
{
    if (static_cast<int>(lo_.size()) != inner_->dim() || static_cast<int>(hi_.size()) != inner_->dim()) {
        throw PreconditionError("guard bounds do not match the provider dimension");
    }
}

Jet GuardedProvider::jet(std::span<const double> x, int order) const
{
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] >= lo_[i] && x[i] <= hi_[i])) {
            throw DomainError("source queried outside its domain on axis " + std::to_string(i + 1) + " at " +
                              std::to_string(x[i]));
        }
    }
    return inner_->jet(x, order);
}

} // namespace smoothing
