#include "smoothing/expr.hpp"

#include "smoothing/errors.hpp"

#include <fmt/format.h>

#include <cctype>
#include <charconv>
#include <cmath>

namespace smoothing {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ParsedFunction function()
    {
        ParsedFunction f;
        f.source = std::string(text_);
        for (;;) {
            f.components.push_back(expr());
            skip();
            if (pos_ == text_.size()) {
                break;
            }
            if (text_[pos_] != ';') {
                throw ParseError(fmt::format("unexpected '{}'", text_[pos_]), pos_);
            }
            ++pos_;
        }
        f.variables = max_variable_;
        return f;
    }

    ExprPtr single()
    {
        ExprPtr e = expr();
        skip();
        if (pos_ != text_.size()) {
            throw ParseError(fmt::format("unexpected '{}'", text_[pos_]), pos_);
        }
        return e;
    }

    int max_variable() const noexcept { return max_variable_; }

private:
    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    static ExprPtr node(ExprKind kind, std::vector<ExprPtr> args, std::size_t begin, std::size_t end)
    {
        auto e = std::make_shared<Expr>();
        e->kind = kind;
        e->args = std::move(args);
        e->begin = begin;
        e->end = end;
        return e;
    }

    ExprPtr expr()
    {
        skip();
        const std::size_t begin = pos_;
        ExprPtr lhs = term();
        for (;;) {
            if (accept('+')) {
                ExprPtr rhs = term();
                lhs = node(ExprKind::add, {lhs, rhs}, begin, pos_);
            } else if (accept('-')) {
                ExprPtr rhs = term();
                lhs = node(ExprKind::sub, {lhs, rhs}, begin, pos_);
            } else {
                return lhs;
            }
        }
    }

    ExprPtr term()
    {
        skip();
        const std::size_t begin = pos_;
        ExprPtr lhs = unary();
        for (;;) {
            if (accept('*')) {
                ExprPtr rhs = unary();
                lhs = node(ExprKind::mul, {lhs, rhs}, begin, pos_);
            } else if (accept('/')) {
                ExprPtr rhs = unary();
                lhs = node(ExprKind::div, {lhs, rhs}, begin, pos_);
            } else {
                return lhs;
            }
        }
    }

    ExprPtr unary()
    {
        skip();
        const std::size_t begin = pos_;
        if (accept('-')) {
            ExprPtr inner = unary();
            return node(ExprKind::neg, {inner}, begin, pos_);
        }
        return power();
    }

    ExprPtr power()
    {
        skip();
        const std::size_t begin = pos_;
        ExprPtr base = primary();
        if (!accept('^')) {
            return base;
        }
        skip();
        const std::size_t at = pos_;
        int k = 0;
        const auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), k);
        if (ec != std::errc() || k < 0 || (ptr < text_.data() + text_.size() && (*ptr == '.' || *ptr == 'e'))) {
            throw ParseError("exponent must be a non-negative integer literal", at);
        }
        if (k > 64) {
            throw ParseError("exponent larger than 64", at);
        }
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        auto e = std::make_shared<Expr>();
        e->kind = ExprKind::pow;
        e->exponent = k;
        e->args = {base};
        e->begin = begin;
        e->end = pos_;
        return e;
    }

    ExprPtr primary()
    {
        skip();
        const std::size_t begin = pos_;
        if (pos_ >= text_.size()) {
            throw ParseError("expected an operand", pos_);
        }
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr inner = expr();
            if (!accept(')')) {
                throw ParseError("expected ')'", pos_);
            }
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number(begin);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = pos_;
            while (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) {
                ++end;
            }
            const std::string_view ident = text_.substr(pos_, end - pos_);
            if (ident.size() >= 2 && ident[0] == 'x' &&
                ident.find_first_not_of("0123456789", 1) == std::string_view::npos) {
                int index = 0;
                std::from_chars(ident.data() + 1, ident.data() + ident.size(), index);
                if (index < 1 || index > kMaxDim || ident[1] == '0') {
                    throw ParseError(fmt::format("variable '{}' outside x1..x{}", ident, kMaxDim), begin);
                }
                pos_ = end;
                auto e = std::make_shared<Expr>();
                e->kind = ExprKind::variable;
                e->variable = index - 1;
                e->begin = begin;
                e->end = end;
                max_variable_ = std::max(max_variable_, index);
                return e;
            }
            ExprKind kind;
            if (ident == "sin") {
                kind = ExprKind::sin;
            } else if (ident == "cos") {
                kind = ExprKind::cos;
            } else if (ident == "exp") {
                kind = ExprKind::exp;
            } else {
                throw ParseError(fmt::format("unknown identifier '{}'", ident), begin);
            }
            pos_ = end;
            if (!accept('(')) {
                throw ParseError(fmt::format("expected '(' after '{}'", ident), pos_);
            }
            ExprPtr arg = expr();
            if (!accept(')')) {
                throw ParseError("expected ')'", pos_);
            }
            return node(kind, {arg}, begin, pos_);
        }
        throw ParseError(fmt::format("unexpected '{}'", c), pos_);
    }

    ExprPtr number(std::size_t begin)
    {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v,
                                               std::chars_format::general);
        if (ec != std::errc() || !std::isfinite(v)) {
            throw ParseError("malformed number", begin);
        }
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        auto e = std::make_shared<Expr>();
        e->kind = ExprKind::number;
        e->number = v;
        e->begin = begin;
        e->end = pos_;
        return e;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int max_variable_ = 0;
};

std::string_view source_of(const Expr& e, std::string_view source)
{
    if (e.end <= source.size() && e.begin < e.end) {
        return source.substr(e.begin, e.end - e.begin);
    }
    return "<expression>";
}

} // namespace

ParsedFunction parse_function(std::string_view text)
{
    return Parser(text).function();
}

ExprPtr parse_expression(std::string_view text)
{
    return Parser(text).single();
}

std::string to_string(const ExprPtr& e)
{
    switch (e->kind) {
    case ExprKind::number:
        return fmt::format("{:.17g}", e->number);
    case ExprKind::variable:
        return fmt::format("x{}", e->variable + 1);
    case ExprKind::add:
        return fmt::format("({} + {})", to_string(e->args[0]), to_string(e->args[1]));
    case ExprKind::sub:
        return fmt::format("({} - {})", to_string(e->args[0]), to_string(e->args[1]));
    case ExprKind::mul:
        return fmt::format("({} * {})", to_string(e->args[0]), to_string(e->args[1]));
    case ExprKind::div:
        return fmt::format("({} / {})", to_string(e->args[0]), to_string(e->args[1]));
    case ExprKind::pow:
        return fmt::format("({})^{}", to_string(e->args[0]), e->exponent);
    case ExprKind::neg:
        return fmt::format("(-{})", to_string(e->args[0]));
    case ExprKind::sin:
        return fmt::format("sin({})", to_string(e->args[0]));
    case ExprKind::cos:
        return fmt::format("cos({})", to_string(e->args[0]));
    case ExprKind::exp:
        return fmt::format("exp({})", to_string(e->args[0]));
    }
    return {};
}

std::string to_string(const ParsedFunction& f)
{
    std::string out;
    for (std::size_t i = 0; i < f.components.size(); ++i) {
        out += (i ? "; " : "") + to_string(f.components[i]);
    }
    return out;
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b)
{
    if (a->kind != b->kind || a->args.size() != b->args.size()) {
        return false;
    }
    if (a->kind == ExprKind::number && a->number != b->number) {
        return false;
    }
    if (a->kind == ExprKind::variable && a->variable != b->variable) {
        return false;
    }
    if (a->kind == ExprKind::pow && a->exponent != b->exponent) {
        return false;
    }
    for (std::size_t i = 0; i < a->args.size(); ++i) {
        if (!structurally_equal(a->args[i], b->args[i])) {
            return false;
        }
    }
    return true;
}

Series evaluate_series(const Expr& e, std::span<const Series> vars, std::string_view source)
{
    const MultiIndexSet& set = vars.front().set();
    switch (e.kind) {
    case ExprKind::number:
        return Series::constant(set, e.number);
    case ExprKind::variable:
        if (e.variable >= static_cast<int>(vars.size())) {
            throw PreconditionError(fmt::format("variable x{} used in a {}-dimensional evaluation", e.variable + 1,
                                                vars.size()));
        }
        return vars[static_cast<std::size_t>(e.variable)];
    case ExprKind::add:
        return evaluate_series(*e.args[0], vars, source) + evaluate_series(*e.args[1], vars, source);
    case ExprKind::sub:
        return evaluate_series(*e.args[0], vars, source) - evaluate_series(*e.args[1], vars, source);
    case ExprKind::mul:
        return evaluate_series(*e.args[0], vars, source) * evaluate_series(*e.args[1], vars, source);
    case ExprKind::div: {
        const Series num = evaluate_series(*e.args[0], vars, source);
        const Series den = evaluate_series(*e.args[1], vars, source);
        if (den.value() == 0.0) {
            throw DomainError(fmt::format("division by zero: '{}' vanishes at the evaluation point",
                                          source_of(*e.args[1], source)));
        }
        return num / den;
    }
    case ExprKind::pow:
        return pow(evaluate_series(*e.args[0], vars, source), e.exponent);
    case ExprKind::neg:
        return -evaluate_series(*e.args[0], vars, source);
    case ExprKind::sin:
        return sin(evaluate_series(*e.args[0], vars, source));
    case ExprKind::cos:
        return cos(evaluate_series(*e.args[0], vars, source));
    case ExprKind::exp:
        return exp(evaluate_series(*e.args[0], vars, source));
    }
    throw InvariantError("unknown expression node");
}

double evaluate(const Expr& e, std::span<const double> x, std::string_view source)
{
    switch (e.kind) {
    case ExprKind::number:
        return e.number;
    case ExprKind::variable:
        if (e.variable >= static_cast<int>(x.size())) {
            throw PreconditionError(fmt::format("variable x{} used in a {}-dimensional evaluation", e.variable + 1,
                                                x.size()));
        }
        return x[static_cast<std::size_t>(e.variable)];
    case ExprKind::add:
        return evaluate(*e.args[0], x, source) + evaluate(*e.args[1], x, source);
    case ExprKind::sub:
        return evaluate(*e.args[0], x, source) - evaluate(*e.args[1], x, source);
    case ExprKind::mul:
        return evaluate(*e.args[0], x, source) * evaluate(*e.args[1], x, source);
    case ExprKind::div: {
        const double num = evaluate(*e.args[0], x, source);
        const double den = evaluate(*e.args[1], x, source);
        if (den == 0.0) {
            throw DomainError(fmt::format("division by zero: '{}' vanishes at the evaluation point",
                                          source_of(*e.args[1], source)));
        }
        return num / den;
    }
    case ExprKind::pow: {
        const double b = evaluate(*e.args[0], x, source);
        double r = 1.0;
        for (int k = 0; k < e.exponent; ++k) {
            r *= b;
        }
        return r;
    }
    case ExprKind::neg:
        return -evaluate(*e.args[0], x, source);
    case ExprKind::sin:
        return std::sin(evaluate(*e.args[0], x, source));
    case ExprKind::cos:
        return std::cos(evaluate(*e.args[0], x, source));
    case ExprKind::exp:
        return std::exp(evaluate(*e.args[0], x, source));
    }
    throw InvariantError("unknown expression node");
}

ExprProvider::ExprProvider(ParsedFunction f, int dim) : f_(std::move(f)), dim_(dim)
{
    if (f_.components.empty()) {
        throw PreconditionError("function has no components");
    }
    if (dim_ == 0) {
        dim_ = std::max(f_.variables, 1);
    }
    check_dim_order(dim_, 0);
    if (f_.variables > dim_) {
        throw PreconditionError(
            fmt::format("'{}' uses x{} but the domain has dimension {}", f_.source, f_.variables, dim_));
    }
}

Jet ExprProvider::jet(std::span<const double> x, int order) const
{
    if (static_cast<int>(x.size()) != dim_) {
        throw PreconditionError("query point has the wrong dimension");
    }
    require_finite(x, "query point");
    const auto& set = MultiIndexSet::get(dim_, order);
    std::vector<Series> vars;
    for (int i = 0; i < dim_; ++i) {
        vars.push_back(Series::variable(set, i, x[static_cast<std::size_t>(i)]));
    }
    std::vector<Series> comps;
    for (const auto& c : f_.components) {
        comps.push_back(evaluate_series(*c, vars, f_.source));
    }
    return Jet::from_series(Point(x.begin(), x.end()), comps);
}

VectorValue ExprProvider::value(std::span<const double> x) const
{
    if (static_cast<int>(x.size()) != dim_) {
        throw PreconditionError("query point has the wrong dimension");
    }
    VectorValue out;
    for (const auto& c : f_.components) {
        out.push_back(evaluate(*c, x, f_.source));
    }
    return out;
}

std::shared_ptr<const ExprProvider> make_expr_provider(std::string_view text, int dim)
{
    return std::make_shared<const ExprProvider>(parse_function(text), dim);
}

} // namespace smoothing
