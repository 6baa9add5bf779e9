#include "smoothing/smoothing.hpp"

#include "smoothing/errors.hpp"
#include "smoothing/extension.hpp"

#include <Eigen/Dense>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <cmath>

namespace smoothing {

namespace {

bool poly_less(const SmoothedTerm& a, const SmoothedTerm& b)
{
    return a.n != b.n ? a.n < b.n : a.z < b.z;
}

Point lattice_center(const LatticePoint& z, int n)
{
    Point x(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        x[i] = static_cast<double>(z[i]) / static_cast<double>(n);
    }
    return x;
}

bool inside_box(const Box& box, std::span<const double> x)
{
    for (std::size_t i = 0; i < box.axes.size(); ++i) {
        if (!(box.axes[i].lo <= x[i] && x[i] <= box.axes[i].hi)) {
            return false;
        }
    }
    return true;
}

} // namespace

SmoothedFunction::SmoothedFunction(int dim, int codim, int order, std::vector<SmoothedTerm> terms)
    : dim_(dim), codim_(codim), order_(order)
{
    check_dim_order(dim, order);
    if (codim < 1) {
        throw PreconditionError("target dimension must be >= 1");
    }
    std::sort(terms.begin(), terms.end(), poly_less);
    for (auto& t : terms) {
        if (static_cast<int>(t.z.size()) != dim || t.n < 1 || t.poly.dim() != dim || t.poly.codim() != codim ||
            t.poly.degree() != order) {
            throw PreconditionError("smoothed term does not match the function's dimensions");
        }
        if (!terms_.empty() && terms_.back().n == t.n && terms_.back().z == t.z) {
            terms_.back().poly.add_scaled(t.poly, 1.0);
        } else {
            terms_.push_back(std::move(t));
        }
    }
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        index_[terms_[i].n].emplace(terms_[i].z, i);
    }
}

std::vector<int> SmoothedFunction::scales() const
{
    std::vector<int> out;
    for (const auto& [n, _] : index_) {
        out.push_back(n);
    }
    return out;
}

Jet SmoothedFunction::jet(std::span<const double> x, int order) const
{
    if (static_cast<int>(x.size()) != dim_) {
        throw PreconditionError("query point has the wrong dimension");
    }
    require_finite(x, "query point");
    check_dim_order(dim_, order);
    if (restriction_ && !inside_box(*restriction_, x)) {
        throw DomainError(fmt::format("query ({}) lies outside the restricted domain", fmt::join(x, ", ")));
    }
    const auto& set = MultiIndexSet::get(dim_, order);
    std::vector<Series> acc(static_cast<std::size_t>(codim_), Series(set));
    Point y(x.size());
    Point u(x.size());
    for (const auto& [n, lookup] : index_) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            y[i] = n * x[i];
        }
        const PartitionTerms part = partition_series(y, order);
        for (std::size_t p = 0; p < part.points.size(); ++p) {
            const auto it = lookup.find(part.points[p]);
            if (it == lookup.end()) {
                continue;
            }
            const SmoothedTerm& term = terms_[it->second];
            for (std::size_t i = 0; i < x.size(); ++i) {
                u[i] = x[i] - static_cast<double>(term.z[i]) / static_cast<double>(n);
            }
            const Series h = part.values[p].scaled_argument(n);
            const auto local = term.poly.shifted_series(u, order);
            for (std::size_t c = 0; c < acc.size(); ++c) {
                acc[c] += h * local[c];
            }
        }
    }
    return Jet::from_series(Point(x.begin(), x.end()), acc);
}

VectorValue SmoothedFunction::direct_value(std::span<const double> x) const
{
    VectorValue out(static_cast<std::size_t>(codim_), 0.0);
    Point y(x.size());
    Point u(x.size());
    for (const auto& term : terms_) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            y[i] = term.n * x[i];
            u[i] = x[i] - static_cast<double>(term.z[i]) / static_cast<double>(term.n);
        }
        const double h = partition_jet(term.z, y, 0).value()[0];
        if (h == 0.0) {
            continue;
        }
        const VectorValue p = term.poly(u);
        for (std::size_t c = 0; c < out.size(); ++c) {
            out[c] += h * p[c];
        }
    }
    return out;
}

SmoothedFunction SmoothedFunction::restricted_to(Box box) const
{
    if (box.dim() != dim_) {
        throw PreconditionError("restriction box has the wrong dimension");
    }
    SmoothedFunction copy = *this;
    copy.restriction_ = std::move(box);
    return copy;
}

SmoothedFunction SmoothedFunction::combine(double a, const SmoothedFunction& f, double b, const SmoothedFunction& g)
{
    if (f.dim_ != g.dim_ || f.codim_ != g.codim_ || f.order_ != g.order_) {
        throw PreconditionError("cannot combine smoothed functions of different shapes");
    }
    std::vector<SmoothedTerm> terms;
    for (const auto& [w, src] : {std::pair{a, &f}, std::pair{b, &g}}) {
        if (w == 0.0) {
            continue;
        }
        for (const auto& t : src->terms_) {
            SmoothedTerm copy = t;
            if (w != 1.0) {
                copy.poly *= w;
            }
            terms.push_back(std::move(copy));
        }
    }
    return SmoothedFunction(f.dim_, f.codim_, f.order_, std::move(terms));
}

nlohmann::json SmoothedFunction::to_json() const
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : terms_) {
        nlohmann::json coeffs = nlohmann::json::object();
        const auto& set = t.poly.set();
        for (std::size_t i = 0; i < set.size(); ++i) {
            const auto c = t.poly.coefficient(i);
            if (std::any_of(c.begin(), c.end(), [](double v) { return v != 0.0; })) {
                coeffs[set[i].to_string()] = std::vector<double>(c.begin(), c.end());
            }
        }
        terms.push_back({{"z", t.z}, {"n", t.n}, {"coeffs", std::move(coeffs)}});
    }
    nlohmann::json out = {{"l", order_}, {"m", codim_}, {"d", dim_}, {"terms", std::move(terms)}};
    if (restriction_) {
        nlohmann::json box = nlohmann::json::array();
        for (const auto& iv : restriction_->axes) {
            box.push_back({iv.lo, iv.hi});
        }
        out["restriction"] = std::move(box);
    }
    return out;
}

SmoothedFunction SmoothedFunction::from_json(const nlohmann::json& j)
{
    try {
        const int order = j.at("l").get<int>();
        const int codim = j.at("m").get<int>();
        const int dim = j.at("d").get<int>();
        check_dim_order(dim, order);
        std::vector<SmoothedTerm> terms;
        for (const auto& t : j.at("terms")) {
            SmoothedTerm term{t.at("z").get<LatticePoint>(), t.at("n").get<int>(), PolynomialMap(dim, order, codim)};
            for (const auto& [key, value] : t.at("coeffs").items()) {
                const auto alpha = MultiIndex::from_string(key, dim);
                const auto v = value.get<std::vector<double>>();
                const std::size_t i = term.poly.set().index_of(alpha);
                if (i == MultiIndexSet::npos || static_cast<int>(v.size()) != codim) {
                    throw ConfigError("terms.coeffs." + key, "multi-index or vector size out of range");
                }
                std::copy(v.begin(), v.end(), term.poly.coefficient(i).begin());
            }
            terms.push_back(std::move(term));
        }
        SmoothedFunction out(dim, codim, order, std::move(terms));
        if (j.contains("restriction")) {
            Box box;
            for (const auto& iv : j.at("restriction")) {
                box.axes.push_back({iv.at(0).get<double>(), iv.at(1).get<double>()});
            }
            out = out.restricted_to(std::move(box));
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("smoothed function", e.what());
    }
}

namespace {

std::string describe_points(const std::vector<LatticePoint>& points, int n)
{
    std::string out;
    const std::size_t shown = std::min<std::size_t>(points.size(), 8);
    for (std::size_t i = 0; i < shown; ++i) {
        out += fmt::format("{}({})/{} + [-1/{},1/{}]^d", i ? "; " : "", fmt::join(points[i], ","), n, n, n);
    }
    if (points.size() > shown) {
        out += fmt::format("; ... ({} in total)", points.size());
    }
    return out;
}

std::vector<SmoothedTerm> taylor_terms(const JetProvider& gamma, int order, int n,
                                       const std::vector<LatticePoint>& points)
{
    std::vector<SmoothedTerm> terms;
    terms.reserve(points.size());
    for (const auto& z : points) {
        const Jet jet = gamma.jet(lattice_center(z, n), order);
        terms.push_back({z, n, taylor_polynomial(jet, order)});
    }
    return terms;
}

void check_shapes(const JetProvider& gamma, int order, const BoxUnion& omega, const BoxUnion& window)
{
    check_dim_order(gamma.dim(), order);
    if (omega.dim() != gamma.dim() || window.dim() != gamma.dim()) {
        throw PreconditionError("function, domain and window dimensions differ");
    }
    if (!omega.open()) {
        throw PreconditionError("the domain must be an open box union");
    }
}

} // namespace

SmoothedFunction build_stilde(const JetProvider& gamma, int order, int n, const BoxUnion& omega,
                              const BoxUnion& window, const StildeOptions& options)
{
    check_shapes(gamma, order, omega, window);
    if (n < 1) {
        throw PreconditionError("scale n must be >= 1");
    }
    if (!window.bounded()) {
        throw PreconditionError("evaluation window must be bounded");
    }
    if (!options.allow_partial) {
        const auto missing = uncovered_lattice_points(n, omega, window);
        if (!missing.empty()) {
            throw PreconditionError(fmt::format("window escapes the lattice coverage of the domain at scale {}: "
                                                "missing cubes {}",
                                                n, describe_points(missing, n)));
        }
    }
    const auto points = lattice_sets(n, omega, &window);
    return SmoothedFunction(gamma.dim(), gamma.codim(), order, taylor_terms(gamma, order, n, points));
}

SmoothedFunction build_sn(const JetProvider& gamma, int order, const Exhaustion& exhaustion, int j,
                          const BoxUnion& omega)
{
    if (j < 1 || j >= exhaustion.depth()) {
        throw PreconditionError(
            fmt::format("stage {} is beyond the exhaustion depth {} (stage j needs K_(j+1))", j, exhaustion.depth()));
    }
    const BoxUnion& k = exhaustion.compact(j);
    check_shapes(gamma, order, omega, k);
    if (!exhaustion_margin_holds(exhaustion, j)) {
        throw PreconditionError(fmt::format("exhaustion margin fails at stage {}", j));
    }
    const int n = exhaustion.scale(j);
    const auto points = lattice_sets(n, omega, &k);
    SmoothedFunction s(gamma.dim(), gamma.codim(), order, taylor_terms(gamma, order, n, points));
    // Certify against every term, zero or not: the construction itself must respect the margin.
    for (const auto& t : s.terms()) {
        if (!cube_covered(ExactCube::lattice(t.z, n), exhaustion.compact(j + 1))) {
            throw InvariantError(fmt::format("term cube of ({}) at scale {} leaves the interior of K_{}",
                                             fmt::join(t.z, ","), n, j + 1));
        }
    }
    return s;
}

SupportCertificate certify_support(const SmoothedFunction& s, const BoxUnion& closed_set)
{
    if (closed_set.open()) {
        throw PreconditionError("support certification expects a closed box union");
    }
    SupportCertificate cert;
    for (const auto& t : s.terms()) {
        if (t.poly.is_zero()) {
            ++cert.skipped_zero;
            continue;
        }
        ++cert.checked;
        if (!cube_covered(ExactCube::lattice(t.z, t.n), closed_set)) {
            cert.ok = false;
            cert.failures.push_back(t.z);
        }
    }
    return cert;
}

VectorValue TensorWitness::reconstruct(std::span<const double> x) const
{
    if (vectors.empty()) {
        return {};
    }
    VectorValue out(vectors.front().size(), 0.0);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        const double phi = functions[i].value(x)[0];
        for (std::size_t c = 0; c < out.size(); ++c) {
            out[c] += vectors[i][c] * phi;
        }
    }
    return out;
}

TensorWitness tensor_witness(const SmoothedFunction& s, double relative_threshold)
{
    const int m = s.codim();
    const auto& set = MultiIndexSet::get(s.dim(), s.order());
    const auto cols = static_cast<Eigen::Index>(s.terms().size() * set.size());
    Eigen::MatrixXd a(m, cols);
    Eigen::Index col = 0;
    for (const auto& t : s.terms()) {
        for (std::size_t i = 0; i < set.size(); ++i, ++col) {
            const auto c = t.poly.coefficient(i);
            for (int k = 0; k < m; ++k) {
                a(k, col) = c[static_cast<std::size_t>(k)];
            }
        }
    }
    TensorWitness w;
    if (cols == 0) {
        return w;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    qr.setThreshold(relative_threshold);
    w.rank = static_cast<int>(qr.rank());
    if (w.rank == 0) {
        return w;
    }
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m, w.rank);
    const Eigen::MatrixXd coeffs = q.transpose() * a;
    for (int r = 0; r < w.rank; ++r) {
        w.vectors.emplace_back(q.col(r).data(), q.col(r).data() + m);
        std::vector<SmoothedTerm> terms;
        col = 0;
        for (const auto& t : s.terms()) {
            PolynomialMap p(s.dim(), s.order(), 1);
            for (std::size_t i = 0; i < set.size(); ++i, ++col) {
                p.coefficient(i)[0] = coeffs(r, col);
            }
            terms.push_back({t.z, t.n, std::move(p)});
        }
        w.functions.emplace_back(s.dim(), 1, s.order(), std::move(terms));
    }
    return w;
}

double FamilySchedule::t(int j) const
{
    return std::ldexp(1.0, 1 - j);
}

int FamilySchedule::scale(int j) const
{
    return base_scale << (j - 1);
}

double FamilySchedule::rho(double s) const
{
    if (s <= epsilon) {
        return 0.0;
    }
    if (s >= 1.0 - epsilon) {
        return 1.0;
    }
    return smooth_step((s - epsilon) / (1.0 - 2.0 * epsilon));
}

FamilyPosition family_position(double t, const FamilySchedule& schedule)
{
    if (!(t > 0.0)) {
        throw PreconditionError("t must be positive; S_0 is the identity and is handled by the caller");
    }
    if (t > 1.0) {
        throw PreconditionError("t must not exceed t_1 = 1");
    }
    FamilyPosition pos;
    while (!(t > schedule.t(pos.j + 1))) {
        if (++pos.j >= schedule.max_stage) {
            throw PreconditionError(fmt::format("t = {} lies beyond the last scheduled stage {}", t, schedule.max_stage));
        }
    }
    const double hi = schedule.t(pos.j);
    const double lo = schedule.t(pos.j + 1);
    pos.s = (t - lo) / (hi - lo);
    pos.rho = schedule.rho(pos.s);
    return pos;
}

SmoothedFunction interpolated_family(const JetProvider& gamma, int order, const BoxUnion& omega,
                                     const BoxUnion& window, double t, const FamilySchedule& schedule)
{
    const FamilyPosition pos = family_position(t, schedule);
    if (pos.rho == 1.0) {
        return build_stilde(gamma, order, schedule.scale(pos.j), omega, window);
    }
    SmoothedFunction next = build_stilde(gamma, order, schedule.scale(pos.j + 1), omega, window);
    if (pos.rho == 0.0) {
        return next;
    }
    const SmoothedFunction current = build_stilde(gamma, order, schedule.scale(pos.j), omega, window);
    return SmoothedFunction::combine(pos.rho, current, 1.0 - pos.rho, next);
}

SmoothedFunction cube_smoothing(const ProviderPtr& gamma, int order, int n)
{
    const int d = gamma->dim();
    const ProviderPtr extended = extend_cube(gamma, order);
    const BoxUnion window = BoxUnion::closed_box(std::vector<Interval>(static_cast<std::size_t>(d), Interval{-1.0, 2.0}));
    const SmoothedFunction s = build_stilde(*extended, order, n, BoxUnion::whole_space(d), window);
    return s.restricted_to(Box{std::vector<Interval>(static_cast<std::size_t>(d), Interval{0.0, 1.0})});
}

} // namespace smoothing
