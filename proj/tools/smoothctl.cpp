// smoothctl: command-line front end for the smoothing, extension and Dugundji operators.
//
// Exit codes: 0 ok, 1 a check failed, 2 usage or configuration error.

#include "smoothing/dugundji.hpp"
#include "smoothing/errors.hpp"
#include "smoothing/expr.hpp"
#include "smoothing/extension.hpp"
#include "smoothing/harness.hpp"
#include "smoothing/io.hpp"
#include "smoothing/smoothing.hpp"
#include "smoothing/tolerances.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace smoothing;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

void write_output(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("--out", fmt::format("cannot write '{}'", path));
    }
    out << text;
}

std::string grid_csv(const JetProvider& f, const Box& box, int per_axis)
{
    std::string out;
    for (int i = 0; i < f.dim(); ++i) {
        out += fmt::format("{}x{}", i == 0 ? "" : ",", i + 1);
    }
    for (int c = 0; c < f.codim(); ++c) {
        out += fmt::format(",value{}", c + 1);
    }
    out += '\n';
    for (const auto& x : tensor_grid(box, per_axis)) {
        out += fmt::format("{:.17g}", fmt::join(x, ","));
        for (double v : f.value(x)) {
            out += fmt::format(",{:.17g}", v);
        }
        out += '\n';
    }
    return out;
}

Box single_box(const BoxUnion& u, const std::string& field)
{
    if (!u.bounded()) {
        throw ConfigError(field, "window must be bounded");
    }
    return u.bounding_box();
}

ProviderPtr function_from_flag(const std::string& text, int dim)
{
    return make_expr_provider(text, dim);
}

std::vector<int> parse_int_list(const std::string& text, const std::string& field)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size() || v < 1) {
                throw std::invalid_argument(item);
            }
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError(field, fmt::format("'{}' is not a positive integer", item));
        }
    }
    if (out.empty()) {
        throw ConfigError(field, "empty list");
    }
    return out;
}

// ---- smooth ----------------------------------------------------------------

struct SmoothArgs {
    std::string fn;
    std::string domain;
    std::string window;
    int order = 1;
    int scale = 8;
    bool allow_partial = false;
    std::string out;
    std::string grid_csv;
    int grid_points = 21;
};

int run_smooth(const SmoothArgs& a)
{
    const BoxUnion omega = box_union_from_json(load_json_file(a.domain), true, "domain");
    const BoxUnion window = box_union_from_json(load_json_file(a.window), false, "window");
    if (window.dim() != omega.dim()) {
        throw ConfigError("window", "dimension differs from the domain");
    }
    const auto gamma = function_from_flag(a.fn, omega.dim());
    const SmoothedFunction s = build_stilde(*gamma, a.order, a.scale, omega, window, {a.allow_partial});
    nlohmann::json artifact = s.to_json();
    artifact["fn"] = a.fn;
    artifact["phi_size"] = s.terms().size();
    write_output(a.out, artifact.dump(1) + "\n");
    if (!a.grid_csv.empty()) {
        write_output(a.grid_csv, grid_csv(s, single_box(window, "window"), a.grid_points));
    }
    return kOk;
}

// ---- extend ----------------------------------------------------------------

struct ExtendArgs {
    std::string fn;
    std::vector<std::string> source{"cube"};
    int order = 2;
    int dim = 0;
    std::string window;
    int grid_points = 41;
    std::string out;
    std::string diagnostics;
};

int run_extend(const ExtendArgs& a)
{
    const auto gamma = make_expr_provider(a.fn, a.dim);
    const int d = gamma->dim();
    const std::string& kind = a.source.front();
    int corners = 0;
    ScalarOperator op;
    if (kind == "halfspace") {
        if (a.source.size() != 1) {
            throw ConfigError("--source", "halfspace takes no argument");
        }
        op = [&](ProviderPtr g) -> ProviderPtr { return extend_halfspace(std::move(g), 0, a.order); };
    } else if (kind == "corner") {
        if (a.source.size() != 2) {
            throw ConfigError("--source", "corner needs the number of constrained axes M");
        }
        corners = parse_int_list(a.source[1], "--source")[0];
        if (corners > d) {
            throw ConfigError("--source", fmt::format("corner M = {} exceeds the dimension {}", corners, d));
        }
        op = [&](ProviderPtr g) { return extend_corner(std::move(g), corners, a.order); };
    } else if (kind == "cube") {
        if (a.source.size() != 1) {
            throw ConfigError("--source", "cube takes no argument");
        }
        op = [&](ProviderPtr g) { return extend_cube(std::move(g), a.order); };
    } else {
        throw ConfigError("--source", fmt::format("unknown source '{}' (halfspace, corner M, cube)", kind));
    }
    const ProviderPtr extended = lift_componentwise(op, gamma);
    const Box window = a.window.empty() ? Box{std::vector<Interval>(static_cast<std::size_t>(d), Interval{-0.5, 1.5})}
                                        : single_box(box_union_from_json(load_json_file(a.window), false, "window"),
                                                     "window");
    if (window.dim() != d) {
        throw ConfigError("window", "dimension differs from the function");
    }
    write_output(a.out, grid_csv(*extended, window, a.grid_points));

    // Restriction error on the unit cube and one-sided jets across every extended face.
    double restriction = 0.0;
    for (const auto& x : tensor_grid(Box{std::vector<Interval>(static_cast<std::size_t>(d), Interval{0.0, 1.0})}, 11)) {
        const VectorValue e = extended->value(x);
        const VectorValue g = gamma->value(x);
        for (std::size_t c = 0; c < e.size(); ++c) {
            restriction = std::max(restriction, std::abs(e[c] - g[c]));
        }
    }
    double face_gap = 0.0;
    std::size_t face_points = 0;
    for (int c = 0; c < gamma->codim(); ++c) {
        const auto stages = cube_stages(op(std::make_shared<const ComponentProvider>(gamma, c)));
        for (const auto& stage : stages) {
            for (int side = 0; side < 2; ++side) {
                const bool lower = side == 0;
                if (lower ? !stage->faces().lower : !stage->faces().upper) {
                    continue;
                }
                const double face = lower ? stage->faces().lower_at : stage->faces().upper_at;
                for (Point x : tensor_grid(Box{std::vector<Interval>(static_cast<std::size_t>(d), Interval{0.0, 1.0})},
                                           d == 1 ? 1 : 5)) {
                    x[static_cast<std::size_t>(stage->axis())] = face;
                    const Jet src = stage->branch_jet(x, a.order, AxisStage::Branch::source);
                    const Jet ref = stage->branch_jet(x, a.order,
                                                      lower ? AxisStage::Branch::lower_reflection
                                                            : AxisStage::Branch::upper_reflection);
                    for (std::size_t i = 0; i < src.set().size(); ++i) {
                        const double u = src[i][0];
                        const double v = ref[i][0];
                        face_gap = std::max(face_gap, std::abs(u - v) / std::max({1.0, std::abs(u), std::abs(v)}));
                    }
                    ++face_points;
                }
            }
        }
    }
    const bool ok = restriction <= tol::restriction && face_gap <= tol::cross_face_relative;
    const nlohmann::json diag{{"source", fmt::format("{}", fmt::join(a.source, " "))},
                              {"order", a.order},
                              {"operator", AxisExtension(a.order).to_json()},
                              {"restriction_error", restriction},
                              {"face_points", face_points},
                              {"cross_face_relative_gap", face_gap},
                              {"pass", ok}};
    if (a.diagnostics.empty()) {
        std::cerr << diag.dump() << '\n';
    } else {
        write_output(a.diagnostics, diag.dump(1) + "\n");
    }
    return ok ? kOk : kCheckFailed;
}

// ---- dugundji --------------------------------------------------------------

struct DugundjiArgs {
    std::string fn;
    std::string set;
    std::string window;
    int grid_points = 41;
    std::uint64_t seed = 0;
    std::string out;
    std::string report;
};

int run_dugundji(const DugundjiArgs& a)
{
    const ClosedSet y = closed_set_from_json(load_json_file(a.set), "set");
    const Box window = single_box(box_union_from_json(load_json_file(a.window), false, "window"), "window");
    if (window.dim() != y.dim()) {
        throw ConfigError("window", "dimension differs from the set");
    }
    const auto gamma = make_expr_provider(a.fn, y.dim());
    const DugundjiExtension ext(y);
    const auto rep = dugundji_report(ext, *gamma, window, a.grid_points, SeminormSpec::coordinate_max(), a.seed);
    write_output(a.out, rep.csv());
    nlohmann::json cont = nlohmann::json::array();
    for (const auto& r : rep.continuity) {
        cont.push_back({{"step", r.step}, {"error", r.error}});
    }
    const bool ok = rep.restriction_error <= tol::restriction && rep.sup_ratio <= 1.0 + tol::sup_ratio && rep.hull_ok &&
                    rep.max_weight_sum_error <= tol::weight_sum && rep.anchor_violations == 0;
    const nlohmann::json summary{{"restriction_error", rep.restriction_error},
                                 {"restriction_samples", rep.restriction_samples},
                                 {"sup_ratio", rep.sup_ratio},
                                 {"sup_attained_on_set", rep.sup_attained_on_set},
                                 {"hull_ok", rep.hull_ok},
                                 {"max_weight_sum_error", rep.max_weight_sum_error},
                                 {"min_weight", rep.min_weight},
                                 {"anchors", rep.anchor_count},
                                 {"anchor_violations", rep.anchor_violations},
                                 {"clamped_queries", ext.clamped_queries()},
                                 {"continuity_target", rep.continuity_target},
                                 {"continuity", cont},
                                 {"continuity_trend_ok", rep.continuity_trend_ok},
                                 {"pass", ok}};
    if (a.report.empty()) {
        std::cerr << summary.dump() << '\n';
    } else {
        write_output(a.report, summary.dump(1) + "\n");
    }
    return ok ? kOk : kCheckFailed;
}

// ---- report ----------------------------------------------------------------

struct ReportArgs {
    std::string kind;
    std::vector<std::string> fns;
    int dim = 1;
    int order = 1;
    std::string scales = "4,8,16,32";
    int scale = 8;
    std::string domain;
    double k_lo = -1.0;
    double k_hi = 1.0;
    double margin = 0.25;
    int grid_points = 0;
    std::string seminorm = "max";
    std::string out;
};

SeminormSpec seminorm_from_flag(const std::string& name)
{
    if (name == "max") {
        return SeminormSpec::coordinate_max();
    }
    if (name == "euclidean") {
        return SeminormSpec::euclidean();
    }
    throw ConfigError("--seminorm", fmt::format("unknown seminorm '{}' (max, euclidean)", name));
}

int run_report(const ReportArgs& a)
{
    const int d = a.dim;
    std::vector<std::pair<std::string, ProviderPtr>> fns;
    if (a.fns.empty()) {
        for (const auto& e : corpus()) {
            if (e.dim == d) {
                fns.emplace_back(e.text, corpus_provider(e));
            }
        }
    } else {
        for (const auto& text : a.fns) {
            fns.emplace_back(text, make_expr_provider(text, d));
        }
    }
    const Box k{std::vector<Interval>(static_cast<std::size_t>(d), Interval{a.k_lo, a.k_hi})};
    const BoxUnion omega = a.domain.empty()
                               ? BoxUnion::open_box(std::vector<Interval>(static_cast<std::size_t>(d), {-2.0, 2.0}))
                               : box_union_from_json(load_json_file(a.domain), true, "domain");
    if (omega.dim() != d) {
        throw ConfigError("domain", "dimension differs from --dim");
    }
    const SeminormSpec q = seminorm_from_flag(a.seminorm);
    const int per_axis = a.grid_points > 0 ? a.grid_points : (d == 1 ? 401 : 41);

    if (a.kind == "convergence" || a.kind == "rate") {
        ConvergenceConfig config;
        config.order = a.order;
        config.omega = omega;
        config.k = k;
        config.q = q;
        config.scales = parse_int_list(a.scales, "--scales");
        config.per_axis = per_axis;
        std::string out;
        if (a.kind == "rate") {
            out = "function,slope,target\n";
        }
        bool ok = true;
        for (const auto& [name, gamma] : fns) {
            const auto table = convergence_report(*gamma, name, config);
            ok = ok && table.decreasing;
            if (a.kind == "rate") {
                out += fmt::format("\"{}\",{:.17g},{:.17g}\n", name, table.slope, tol::rate_slope);
            } else {
                // One table per function; the first column is the n-list.
                out += table.csv();
            }
        }
        write_output(a.out, out);
        return a.kind == "rate" || ok ? kOk : kCheckFailed;
    }
    if (a.kind == "bound") {
        const Box l{std::vector<Interval>(static_cast<std::size_t>(d), Interval{a.k_lo - a.margin, a.k_hi + a.margin})};
        const auto cert = bound_certificate(fns, a.order, omega, k, l, q, a.scale, a.dim == 1 ? per_axis : 21);
        std::cerr << fmt::format("C = {:.17g} from {}\n", cert.constant, cert.h0.describe());
        write_output(a.out, cert.csv());
        return cert.pass ? kOk : kCheckFailed;
    }
    if (a.kind == "growth") {
        write_output(a.out, growth_csv(constant_growth(d, a.order)));
        return kOk;
    }
    throw ConfigError("--kind", fmt::format("unknown report '{}' (convergence, bound, rate, growth)", a.kind));
}

// ---- selftest --------------------------------------------------------------

int run_selftest(std::uint64_t seed, const std::string& json_path)
{
    const auto results = property_suites(seed);
    bool ok = true;
    for (const auto& r : results) {
        ok = ok && r.pass;
        fmt::print("{} {} (max violation {:.3g}, {:.2f} s): {}\n", r.pass ? "PASS" : "FAIL", r.name, r.max_violation,
                   r.seconds, r.detail);
    }
    if (!json_path.empty()) {
        write_output(json_path, summary_json(results).dump(1) + "\n");
    }
    return ok ? kOk : kCheckFailed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Smoothing operators, extensions and verification reports"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    SmoothArgs sa;
    auto* smooth = app.add_subcommand("smooth", "Build S~_n(gamma) on a window and write it as JSON");
    smooth->add_option("--fn", sa.fn, "Function, e.g. \"sin(x1); x1*x2\"")->required();
    smooth->add_option("--domain", sa.domain, "JSON file with the open domain (box union)")->required();
    smooth->add_option("--window", sa.window, "JSON file with the closed evaluation window")->required();
    smooth->add_option("--order", sa.order, "Taylor order l")->capture_default_str()->check(CLI::Range(0, kMaxOrder));
    smooth->add_option("--scale", sa.scale, "Lattice scale n")->capture_default_str()->check(CLI::PositiveNumber);
    smooth->add_flag("--allow-partial", sa.allow_partial, "Skip lattice cubes that leave the domain instead of failing");
    smooth->add_option("--out", sa.out, "Output JSON file (default stdout)");
    smooth->add_option("--grid-csv", sa.grid_csv, "Also write values on a tensor grid over the window");
    smooth->add_option("--grid-points", sa.grid_points, "Grid points per axis")->capture_default_str()->check(
        CLI::PositiveNumber);

    ExtendArgs ea;
    auto* extend = app.add_subcommand("extend", "Extend gamma across halfspace, corner or cube faces");
    extend->add_option("--fn", ea.fn, "Function on the source set")->required();
    extend->add_option("--source", ea.source, "halfspace | corner M | cube")->expected(1, 2)->capture_default_str();
    extend->add_option("--order", ea.order, "Matched derivative order l")->capture_default_str()->check(
        CLI::Range(0, kMaxOrder));
    extend->add_option("--dim", ea.dim, "Dimension (default: largest variable index)")->check(CLI::Range(1, kMaxDim));
    extend->add_option("--window", ea.window, "JSON file with the ambient grid window (default [-0.5,1.5]^d)");
    extend->add_option("--grid-points", ea.grid_points, "Grid points per axis")->capture_default_str()->check(
        CLI::PositiveNumber);
    extend->add_option("--out", ea.out, "Output CSV file (default stdout)");
    extend->add_option("--diagnostics", ea.diagnostics, "Write boundary diagnostics JSON here (default stderr)");

    DugundjiArgs da;
    auto* dug = app.add_subcommand("dugundji", "Evaluate the Dugundji extension on a grid");
    dug->add_option("--fn", da.fn, "Function on the closed set")->required();
    dug->add_option("--set", da.set, "JSON file: box union and/or {\"points\": [...]}")->required();
    dug->add_option("--window", da.window, "JSON file with the grid window")->required();
    dug->add_option("--grid-points", da.grid_points, "Grid points per axis")->capture_default_str()->check(
        CLI::PositiveNumber);
    dug->add_option("--seed", da.seed, "Seed of the continuity path")->capture_default_str();
    dug->add_option("--out", da.out, "Output CSV file (default stdout)");
    dug->add_option("--report", da.report, "Write the hull/ratio report JSON here (default stderr)");

    ReportArgs ra;
    auto* report = app.add_subcommand("report", "Convergence, bound, rate or constant-growth tables as CSV");
    report->add_option("--kind", ra.kind, "convergence | bound | rate | growth")->required();
    report->add_option("--fn", ra.fns, "Function (repeatable; default: the built-in corpus of --dim)");
    report->add_option("--dim", ra.dim, "Dimension")->capture_default_str()->check(CLI::Range(1, kMaxDim));
    report->add_option("--order", ra.order, "Order l (growth: largest l)")->capture_default_str()->check(
        CLI::Range(0, kMaxOrder));
    report->add_option("--scales", ra.scales, "Comma-separated n-list for convergence and rate")->capture_default_str();
    report->add_option("--scale", ra.scale, "Scale n for the bound certificate")->capture_default_str()->check(
        CLI::PositiveNumber);
    report->add_option("--domain", ra.domain, "JSON file with the open domain (default (-2,2)^d)");
    report->add_option("--k-lo", ra.k_lo, "Lower corner of the cube K")->capture_default_str();
    report->add_option("--k-hi", ra.k_hi, "Upper corner of the cube K")->capture_default_str();
    report->add_option("--margin", ra.margin, "L = K inflated by this margin (bound)")->capture_default_str();
    report->add_option("--grid-points", ra.grid_points, "Grid points per axis (default 401 for d=1, 41 otherwise)");
    report->add_option("--seminorm", ra.seminorm, "max | euclidean")->capture_default_str();
    report->add_option("--out", ra.out, "Output CSV file (default stdout)");

    std::uint64_t seed = 0;
    std::string json_path;
    auto* selftest = app.add_subcommand("selftest", "Run every property suite; exit code reflects the result");
    selftest->add_option("--seed", seed, "Base seed")->capture_default_str();
    selftest->add_option("--json", json_path, "Write the JSON summary here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*smooth) {
            return run_smooth(sa);
        }
        if (*extend) {
            return run_extend(ea);
        }
        if (*dug) {
            return run_dugundji(da);
        }
        if (*report) {
            return run_report(ra);
        }
        return run_selftest(seed, json_path);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "expression error: " << e.what() << '\n';
        return kUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kCheckFailed;
    }
}
