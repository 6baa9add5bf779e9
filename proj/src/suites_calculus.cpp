#include "harness_util.hpp"

#include "smoothing/errors.hpp"
#include "smoothing/expr.hpp"
#include "smoothing/polynomial.hpp"
#include "smoothing/tolerances.hpp"

#include <algorithm>
#include <cmath>

namespace smoothing::suites {

using detail::finish;
using detail::Stopwatch;

SuiteResult seminorm_axioms(std::uint64_t seed)
{
    Stopwatch clock;
    std::mt19937_64 rng(detail::salt(seed, 1));
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::uniform_real_distribution<double> w(0.1, 4.0);
    const std::vector<SeminormSpec> specs{SeminormSpec::coordinate_max(), SeminormSpec::euclidean(),
                                          SeminormSpec::weighted_max({w(rng), w(rng), w(rng)})};
    double worst = 0.0;
    for (const auto& q : specs) {
        for (int trial = 0; trial < 500; ++trial) {
            VectorValue a(3);
            VectorValue b(3);
            for (std::size_t i = 0; i < 3; ++i) {
                a[i] = u(rng);
                b[i] = u(rng);
            }
            const double lambda = u(rng);
            VectorValue sum(3);
            VectorValue scaled(3);
            for (std::size_t i = 0; i < 3; ++i) {
                sum[i] = a[i] + b[i];
                scaled[i] = lambda * a[i];
            }
            const double scale = 1.0 + q(a) + q(b);
            worst = std::max(worst, std::max(0.0, -q(a)));
            worst = std::max(worst, std::abs(q(scaled) - std::abs(lambda) * q(a)) / scale);
            worst = std::max(worst, std::max(0.0, q(sum) - q(a) - q(b)) / scale);
        }
    }
    return finish("seminorm axioms", worst <= tol::seminorm_axiom, worst,
                  "non-negativity, homogeneity, triangle inequality on 500 random pairs per seminorm", clock);
}

namespace {

SymmetricForm random_form(int dim, int arity, int codim, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SymmetricForm beta(dim, arity, codim);
    const auto& set = MultiIndexSet::get(dim, arity);
    for (std::size_t i = set.degree_begin(arity); i < set.degree_end(arity); ++i) {
        for (double& v : beta.entry(set[i])) {
            v = u(rng);
        }
    }
    return beta;
}

} // namespace

SuiteResult polarization_roundtrip(std::uint64_t seed)
{
    Stopwatch clock;
    std::mt19937_64 rng(detail::salt(seed, 2));
    double worst = 0.0;
    for (int d = 1; d <= 3; ++d) {
        for (int j = 1; j <= 4; ++j) {
            for (int trial = 0; trial < 5; ++trial) {
                const SymmetricForm beta = random_form(d, j, 2, rng);
                const SymmetricForm back = polarize(beta.diagonal_polynomial(), j);
                const auto& set = MultiIndexSet::get(d, j);
                for (std::size_t i = set.degree_begin(j); i < set.degree_end(j); ++i) {
                    const auto a = beta.entry(set[i]);
                    const auto b = back.entry(set[i]);
                    for (std::size_t c = 0; c < a.size(); ++c) {
                        worst = std::max(worst, std::abs(a[c] - b[c]));
                    }
                }
            }
        }
    }
    return finish("polarization round trip", worst <= tol::polarization, worst,
                  "polarize(beta-bar) = beta for random symmetric forms, j <= 4, d <= 3", clock);
}

SuiteResult diagonal_norm_bound(std::uint64_t seed)
{
    Stopwatch clock;
    std::mt19937_64 rng(detail::salt(seed, 3));
    const SeminormSpec q = SeminormSpec::euclidean();
    const SampleScheme scheme{11, 0, 0};
    double worst_shrink = 0.0;
    double worst_ratio = 0.0;
    int count = 0;
    for (int d = 1; d <= 3; ++d) {
        for (int j = 1; j <= 4; ++j) {
            for (int trial = 0; trial < 3; ++trial) {
                const SymmetricForm beta = random_form(d, j, 2, rng);
                const double diag = diagonal_norm(beta, q, scheme);
                const double full = form_norm(beta, q, scheme);
                const double poly = form_norm(beta.diagonal_polynomial(), q, scheme);
                worst_shrink = std::max(worst_shrink, diag - full);
                if (poly > 0.0) {
                    worst_ratio = std::max(worst_ratio, full / (polarization_constant(j) * poly));
                }
                ++count;
            }
        }
    }
    const bool pass = worst_shrink <= 0.0 && worst_ratio <= 1.0;
    return finish("diagonal and polarization norm bounds", pass, std::max(worst_shrink, worst_ratio),
                  fmt::format("{} forms: max(diag - full) = {:.3g}, max ||beta|| / ((2j)^j/j! ||p||) = {:.4f}", count,
                              worst_shrink, worst_ratio),
                  clock);
}

namespace {

// Fourth-order central differences of direct evaluation for derivative orders 1..3.
double central_difference(const Expr& e, double t, int k)
{
    auto f = [&](double s) {
        const double x[1] = {s};
        return evaluate(e, x);
    };
    switch (k) {
    case 1: {
        const double h = 1e-3;
        return (f(t - 2 * h) - 8 * f(t - h) + 8 * f(t + h) - f(t + 2 * h)) / (12 * h);
    }
    case 2: {
        const double h = 1e-3;
        return (-f(t + 2 * h) + 16 * f(t + h) - 30 * f(t) + 16 * f(t - h) - f(t - 2 * h)) / (12 * h * h);
    }
    default: {
        const double h = 2e-3;
        return (-f(t + 3 * h) + 8 * f(t + 2 * h) - 13 * f(t + h) + 13 * f(t - h) - 8 * f(t - 2 * h) + f(t - 3 * h)) /
               (8 * h * h * h);
    }
    }
}

} // namespace

SuiteResult jet_arithmetic(std::uint64_t seed)
{
    Stopwatch clock;
    const std::vector<std::string> texts{"exp(sin(x1))/(1 + x1^2)", "cos(x1)^3 - x1*exp(-x1)", "sin(exp(x1/3))*x1",
                                         "1/(2 + cos(3*x1))"};
    std::mt19937_64 rng(detail::salt(seed, 4));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto& set = MultiIndexSet::get(1, 3);
    double worst = 0.0;
    for (const auto& text : texts) {
        const ExprPtr e = parse_expression(text);
        for (int trial = 0; trial < 50; ++trial) {
            const double t = u(rng);
            const Series vars[1] = {Series::variable(set, 0, t)};
            const Series s = evaluate_series(*e, vars);
            for (int k = 1; k <= 3; ++k) {
                worst = std::max(worst, detail::relative_gap(s.derivative(static_cast<std::size_t>(k)),
                                                             central_difference(*e, t, k)));
            }
        }
    }
    return finish("jet arithmetic vs finite differences", worst <= tol::jet_fd_relative, worst,
                  "orders 1..3 of composite expressions at 50 seeded points each", clock);
}

SuiteResult taylor_value(std::uint64_t seed)
{
    Stopwatch clock;
    std::size_t mismatches = 0;
    std::size_t checked = 0;
    for (const auto& entry : corpus()) {
        const auto gamma = corpus_provider(entry);
        for (const auto& x : detail::random_points(detail::cube_box(entry.dim, -1.0, 1.0), 20, detail::salt(seed, 5))) {
            for (int l = 0; l <= 3; ++l) {
                const Jet jet = gamma->jet(x, l);
                const Point zero(x.size(), 0.0);
                const VectorValue p0 = taylor_polynomial(jet, l)(zero);
                const VectorValue v = jet.value();
                mismatches += p0 == v ? 0 : 1;
                ++checked;
            }
        }
    }
    return finish("Taylor polynomial at 0 reproduces the value", mismatches == 0, static_cast<double>(mismatches),
                  fmt::format("{} jets compared bitwise", checked), clock);
}

SuiteResult expression_roundtrip()
{
    Stopwatch clock;
    std::vector<std::string> texts;
    for (const auto& e : corpus()) {
        texts.push_back(e.text);
    }
    texts.insert(texts.end(), {"-x1^2", "2*-x1", "1+2*3", "((x1))/(x2 - 3)", "exp(-(x1+x2)^2)*1.5e-3"});
    std::size_t failures = 0;
    for (const auto& text : texts) {
        const ParsedFunction a = parse_function(text);
        const ParsedFunction b = parse_function(to_string(a));
        bool same = a.components.size() == b.components.size();
        for (std::size_t i = 0; same && i < a.components.size(); ++i) {
            same = structurally_equal(a.components[i], b.components[i]);
        }
        failures += same ? 0 : 1;
    }
    std::size_t offset_failures = 0;
    try {
        (void)parse_expression("x1/");
        ++offset_failures;
    } catch (const ParseError& e) {
        offset_failures += e.offset() == 3 ? 0 : 1;
    }
    const double x[1] = {0.0};
    offset_failures += evaluate(*parse_expression("1+2*3"), x) == 7.0 ? 0 : 1;
    const std::size_t total = failures + offset_failures;
    return finish("expression print/parse round trip", total == 0, static_cast<double>(total),
                  fmt::format("{} expressions; precedence and error offsets checked", texts.size()), clock);
}

SuiteResult expression_jets(std::uint64_t seed)
{
    Stopwatch clock;
    double worst = 0.0;
    const double h = tol::fd_step;
    for (const auto& entry : corpus()) {
        const auto gamma = corpus_provider(entry);
        for (const auto& x : detail::random_points(detail::cube_box(entry.dim, -1.0, 1.0), 200, detail::salt(seed, 6))) {
            const Jet jet = gamma->jet(x, 1);
            for (int axis = 0; axis < entry.dim; ++axis) {
                Point plus = x;
                Point minus = x;
                plus[static_cast<std::size_t>(axis)] += h;
                minus[static_cast<std::size_t>(axis)] -= h;
                const VectorValue fp = gamma->value(plus);
                const VectorValue fm = gamma->value(minus);
                const auto exact = jet.at(MultiIndex::unit(entry.dim, axis));
                for (std::size_t c = 0; c < fp.size(); ++c) {
                    worst = std::max(worst, detail::relative_gap(exact[c], (fp[c] - fm[c]) / (2 * h)));
                }
            }
        }
    }
    return finish("expression jets vs finite differences", worst <= tol::fd_relative, worst,
                  "first derivatives of the corpus at 200 seeded points per expression", clock);
}

SuiteResult partition_identities(std::uint64_t seed)
{
    Stopwatch clock;
    double worst_sum = 0.0;
    double worst_derivative = 0.0;
    double min_value = 0.0;
    for (int d = 1; d <= 3; ++d) {
        const int order = d == 1 ? 4 : (d == 2 ? 3 : 2);
        for (const auto& y : detail::random_points(detail::cube_box(d, -5.0, 5.0), 1000, detail::salt(seed, 7 + d))) {
            const PartitionTerms terms = partition_series(y, order);
            const auto& set = MultiIndexSet::get(d, order);
            std::vector<double> sums(set.size(), 0.0);
            for (const auto& s : terms.values) {
                min_value = std::min(min_value, s.value());
                for (std::size_t i = 0; i < set.size(); ++i) {
                    sums[i] += s.derivative(i);
                }
            }
            worst_sum = std::max(worst_sum, std::abs(sums[0] - 1.0));
            for (std::size_t i = 1; i < set.size(); ++i) {
                worst_derivative = std::max(worst_derivative, std::abs(sums[i]));
            }
        }
    }
    const bool pass = worst_sum <= tol::partition_sum && worst_derivative <= tol::partition_derivative && min_value >= 0.0;
    return finish("partition of unity identities", pass, std::max(worst_sum, worst_derivative),
                  fmt::format("1000 points per d = 1..3: max |sum h - 1| = {:.3g}, max |sum d^a h| = {:.3g}",
                              worst_sum, worst_derivative),
                  clock);
}

SuiteResult exhaustion_margins()
{
    Stopwatch clock;
    std::vector<BoxUnion> domains{detail::open_cube(1, -2.0, 2.0), detail::open_cube(2, -2.0, 2.0),
                                  BoxUnion({Box{{{0.0, 2.0}, {0.0, 1.0}}}, Box{{{0.0, 1.0}, {0.0, 2.0}}}}, true)};
    std::size_t failures = 0;
    std::string detail_text;
    for (const auto& omega : domains) {
        const Exhaustion ex = default_exhaustion(omega, {4, 0.25});
        for (int j = 1; j < ex.depth(); ++j) {
            failures += exhaustion_margin_holds(ex, j) ? 0 : 1;
            failures += ex.scale(j) < ex.scale(j + 1) ? 0 : 1;
        }
        detail_text += fmt::format("{}d scales [{}] ", omega.dim(), fmt::join(ex.scales, ","));
    }
    return finish("exhaustion margins", failures == 0, static_cast<double>(failures), detail_text, clock);
}

} // namespace smoothing::suites
