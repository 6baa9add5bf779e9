#include "smoothing/io.hpp"

#include "smoothing/errors.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <limits>

namespace smoothing {

namespace {

double bound_from_json(const nlohmann::json& v, double infinite, const std::string& field)
{
    if (v.is_null()) {
        return infinite;
    }
    if (!v.is_number()) {
        throw ConfigError(field, "expected a number or null");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        throw ConfigError(field, "bounds must be finite numbers (use null for infinity)");
    }
    return x;
}

Box box_from_json(const nlohmann::json& j, const std::string& field)
{
    if (!j.is_array() || j.empty()) {
        throw ConfigError(field, "a box is a non-empty list of [lo, hi] pairs");
    }
    Box box;
    constexpr double inf = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string path = fmt::format("{}[{}]", field, i);
        const auto& pair = j[i];
        if (!pair.is_array() || pair.size() != 2) {
            throw ConfigError(path, "expected [lo, hi]");
        }
        const double lo = bound_from_json(pair[0], -inf, path + "[0]");
        const double hi = bound_from_json(pair[1], inf, path + "[1]");
        if (!(lo < hi)) {
            throw ConfigError(path, fmt::format("lo = {} must be below hi = {}", lo, hi));
        }
        box.axes.push_back({lo, hi});
    }
    return box;
}

bool looks_like_single_box(const nlohmann::json& j)
{
    return j.is_array() && !j.empty() && j[0].is_array() && !j[0].empty() &&
           (j[0][0].is_number() || j[0][0].is_null());
}

} // namespace

BoxUnion box_union_from_json(const nlohmann::json& j, bool open, const std::string& field)
{
    if (j.is_object()) {
        if (!j.contains("boxes")) {
            throw ConfigError(field, "missing key \"boxes\"");
        }
        return box_union_from_json(j.at("boxes"), open, field + ".boxes");
    }
    std::vector<Box> boxes;
    if (looks_like_single_box(j)) {
        boxes.push_back(box_from_json(j, field));
    } else if (j.is_array() && !j.empty()) {
        for (std::size_t b = 0; b < j.size(); ++b) {
            boxes.push_back(box_from_json(j[b], fmt::format("{}[{}]", field, b)));
        }
    } else {
        throw ConfigError(field, "expected a box or a non-empty list of boxes");
    }
    const int dim = boxes.front().dim();
    for (std::size_t b = 0; b < boxes.size(); ++b) {
        if (boxes[b].dim() != dim) {
            throw ConfigError(fmt::format("{}[{}]", field, b), "all boxes must have the same dimension");
        }
    }
    if (dim > kMaxDim) {
        throw ConfigError(field, fmt::format("dimension {} exceeds the supported maximum {}", dim, kMaxDim));
    }
    return BoxUnion(std::move(boxes), open);
}

nlohmann::json box_union_to_json(const BoxUnion& u)
{
    nlohmann::json boxes = nlohmann::json::array();
    for (const auto& b : u.boxes()) {
        nlohmann::json box = nlohmann::json::array();
        for (const auto& iv : b.axes) {
            box.push_back({std::isfinite(iv.lo) ? nlohmann::json(iv.lo) : nlohmann::json(nullptr),
                           std::isfinite(iv.hi) ? nlohmann::json(iv.hi) : nlohmann::json(nullptr)});
        }
        boxes.push_back(std::move(box));
    }
    return {{"boxes", std::move(boxes)}, {"open", u.open()}};
}

ClosedSet closed_set_from_json(const nlohmann::json& j, const std::string& field)
{
    ClosedSet set;
    if (!j.is_object()) {
        set.boxes = box_union_from_json(j, false, field);
        return set;
    }
    if (j.contains("boxes")) {
        set.boxes = box_union_from_json(j.at("boxes"), false, field + ".boxes");
    }
    if (j.contains("points")) {
        const auto& pts = j.at("points");
        if (!pts.is_array()) {
            throw ConfigError(field + ".points", "expected a list of points");
        }
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const std::string path = fmt::format("{}.points[{}]", field, i);
            if (!pts[i].is_array() || pts[i].empty()) {
                throw ConfigError(path, "a point is a non-empty list of numbers");
            }
            Point p;
            for (const auto& v : pts[i]) {
                if (!v.is_number() || !std::isfinite(v.get<double>())) {
                    throw ConfigError(path, "coordinates must be finite numbers");
                }
                p.push_back(v.get<double>());
            }
            set.points.push_back(std::move(p));
        }
    }
    if (set.empty()) {
        throw ConfigError(field, "closed set needs \"boxes\" or \"points\"");
    }
    const int dim = set.dim();
    for (std::size_t i = 0; i < set.points.size(); ++i) {
        if (static_cast<int>(set.points[i].size()) != dim) {
            throw ConfigError(fmt::format("{}.points[{}]", field, i), "dimension differs from the rest of the set");
        }
    }
    return set;
}

nlohmann::json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path, "cannot open file");
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path, fmt::format("invalid JSON: {}", e.what()));
    }
}

std::string format_double(double v)
{
    return fmt::format("{:.17g}", v);
}

} // namespace smoothing
