#pragma once

#include "smoothing/jet.hpp"

#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace smoothing {

/// A C^l map gamma: R^d (or a subset) -> R^m that can report its jets.
///
/// Implementations must be pure: jet() may be called concurrently and must
/// return jets whose order and basepoint match the request.
class JetProvider {
public:
    virtual ~JetProvider() = default;

    virtual int dim() const = 0;
    virtual int codim() const = 0;
    virtual Jet jet(std::span<const double> x, int order) const = 0;

    virtual VectorValue value(std::span<const double> x) const { return jet(x, 0).value(); }
};

using ProviderPtr = std::shared_ptr<const JetProvider>;

/// Wraps a callable (x, order) -> Jet.
class FunctionProvider final : public JetProvider {
public:
    using Callback = std::function<Jet(std::span<const double>, int)>;

    FunctionProvider(int dim, int codim, Callback callback)
        : dim_(dim), codim_(codim), callback_(std::move(callback))
    {
    }

    int dim() const override { return dim_; }
    int codim() const override { return codim_; }
    Jet jet(std::span<const double> x, int order) const override { return callback_(x, order); }

private:
    int dim_;
    int codim_;
    Callback callback_;
};

/// sum_i w_i * gamma_i for providers of equal dimension and codimension.
class LinearCombination final : public JetProvider {
public:
    explicit LinearCombination(std::vector<std::pair<double, ProviderPtr>> terms);

    int dim() const override { return dim_; }
    int codim() const override { return codim_; }
    Jet jet(std::span<const double> x, int order) const override;

private:
    std::vector<std::pair<double, ProviderPtr>> terms_;
    int dim_;
    int codim_;
};

/// Component `index` of a vector-valued provider, as a scalar provider.
class ComponentProvider final : public JetProvider {
public:
    ComponentProvider(ProviderPtr inner, int index);

    int dim() const override { return inner_->dim(); }
    int codim() const override { return 1; }
    Jet jet(std::span<const double> x, int order) const override;

private:
    ProviderPtr inner_;
    int index_;
};

/// Stacks scalar providers into one vector-valued provider.
class StackProvider final : public JetProvider {
public:
    explicit StackProvider(std::vector<ProviderPtr> components);

    int dim() const override { return dim_; }
    int codim() const override { return static_cast<int>(components_.size()); }
    Jet jet(std::span<const double> x, int order) const override;

private:
    std::vector<ProviderPtr> components_;
    int dim_;
};

/// gamma * v for a scalar provider gamma and a fixed vector v (rank-one input).
class RankOneProvider final : public JetProvider {
public:
    RankOneProvider(ProviderPtr scalar, VectorValue direction);

    int dim() const override { return scalar_->dim(); }
    int codim() const override { return static_cast<int>(direction_.size()); }
    Jet jet(std::span<const double> x, int order) const override;

private:
    ProviderPtr scalar_;
    VectorValue direction_;
};

/// Forwards to `inner` but throws DomainError when queried outside the closed
/// box [lo, hi] (per axis). Used to prove that an operator only reads its source set.
class GuardedProvider final : public JetProvider {
public:
    GuardedProvider(ProviderPtr inner, std::vector<double> lo, std::vector<double> hi);

    int dim() const override { return inner_->dim(); }
    int codim() const override { return inner_->codim(); }
    Jet jet(std::span<const double> x, int order) const override;

private:
    ProviderPtr inner_;
    std::vector<double> lo_;
    std::vector<double> hi_;
};

} // namespace smoothing
