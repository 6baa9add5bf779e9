#pragma once

#include "smoothing/domains.hpp"

#include "json.hpp"

#include <string>

namespace smoothing {

/// Box unions in JSON: a single box is a list of [lo, hi] pairs (null for an
/// infinite bound), a union is a list of such boxes, and either may be wrapped
/// as {"boxes": ...}. Errors carry the path of the offending field.
BoxUnion box_union_from_json(const nlohmann::json& j, bool open, const std::string& field = "domain");
nlohmann::json box_union_to_json(const BoxUnion& u);

/// A closed set: a box union as above, or {"boxes": ..., "points": [[...], ...]} with either key optional.
ClosedSet closed_set_from_json(const nlohmann::json& j, const std::string& field = "set");

/// Reads and parses a JSON file; failures become ConfigError with the path as field.
nlohmann::json load_json_file(const std::string& path);

/// Formats a double with 17 significant digits.
std::string format_double(double v);

} // namespace smoothing
