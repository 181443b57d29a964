#pragma once

#include <json.hpp>

#include <string>

#include "htree/boundary.hpp"
#include "htree/tree_function.hpp"

namespace htree {

// {"q": int, "depth": int, "values": [[re, im], ...]} in lexicographic
// cylinder order.
nlohmann::json cylinder_to_json(const CylinderFunction& f);
CylinderFunction cylinder_from_json(const nlohmann::json& j);

// {"q": int, "entries": [{"v": "digits", "re": float, "im": float}, ...]}.
// Vertices absent from the entries are zero; the radius is the longest word.
nlohmann::json tree_function_to_json(const TreeFunction& f);
TreeFunction tree_function_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// CSV number format: 17 significant digits, '.' decimal separator.
std::string format_real(double x);

}  // namespace htree
