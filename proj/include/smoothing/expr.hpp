#pragma once

#include "smoothing/provider.hpp"
#include "smoothing/series.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace smoothing {

enum class ExprKind { number, variable, add, sub, mul, div, pow, neg, sin, cos, exp };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Node of an expression tree. Literals are non-negative; a leading minus is a neg node.
struct Expr {
    ExprKind kind = ExprKind::number;
    double number = 0.0;
    /// 0-based variable index (x1 -> 0).
    int variable = 0;
    int exponent = 0;
    std::vector<ExprPtr> args;
    /// Byte range [begin, end) of the node in the source text.
    std::size_t begin = 0;
    std::size_t end = 0;
};

/// A parsed vector function: one expression per component, separated by ';'.
struct ParsedFunction {
    std::string source;
    std::vector<ExprPtr> components;
    /// Largest variable index used plus one (0 for constants).
    int variables = 0;
};

/// Grammar (whitespace ignored):
///   function := expr (';' expr)*
///   expr     := term (('+' | '-') term)*
///   term     := unary (('*' | '/') unary)*
///   unary    := '-' unary | power
///   power    := primary ('^' integer)?
///   primary  := number | 'x1'..'x4' | ('sin' | 'cos' | 'exp') '(' expr ')' | '(' expr ')'
/// Throws ParseError with the byte offset of the offending token.
ParsedFunction parse_function(std::string_view text);
ExprPtr parse_expression(std::string_view text);

/// Canonical fully parenthesized text; parsing it yields a structurally equal tree.
std::string to_string(const ExprPtr& e);
std::string to_string(const ParsedFunction& f);

bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

/// Truncated Taylor series of e around the point whose coordinate series are `vars`.
/// Throws DomainError naming the subexpression on division by zero.
Series evaluate_series(const Expr& e, std::span<const Series> vars, std::string_view source = {});

double evaluate(const Expr& e, std::span<const double> x, std::string_view source = {});

/// Jet provider for a parsed function on R^d (d defaults to the number of variables used, at least 1).
class ExprProvider final : public JetProvider {
public:
    explicit ExprProvider(ParsedFunction f, int dim = 0);

    int dim() const override { return dim_; }
    int codim() const override { return static_cast<int>(f_.components.size()); }
    Jet jet(std::span<const double> x, int order) const override;
    VectorValue value(std::span<const double> x) const override;

    const ParsedFunction& function() const noexcept { return f_; }

private:
    ParsedFunction f_;
    int dim_;
};

/// Parses `text` and wraps it; `dim` as in ExprProvider.
std::shared_ptr<const ExprProvider> make_expr_provider(std::string_view text, int dim = 0);

} // namespace smoothing
