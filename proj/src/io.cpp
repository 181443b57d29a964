#include "htree/io.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>

#include "htree/errors.hpp"

namespace htree {

using nlohmann::json;

namespace {

TreeParams params_from(const json& j) {
  if (!j.contains("q") || !j["q"].is_number_integer())
    throw DomainError("JSON input needs an integer field \"q\"");
  return TreeParams(j["q"].get<int>());
}

}  // namespace

json cylinder_to_json(const CylinderFunction& f) {
  json values = json::array();
  for (Eigen::Index i = 0; i < f.size(); ++i)
    values.push_back({f[i].real(), f[i].imag()});
  return {{"q", f.tree().q}, {"depth", f.depth()}, {"values", std::move(values)}};
}

CylinderFunction cylinder_from_json(const json& j) {
  const TreeParams tree = params_from(j);
  if (!j.contains("depth") || !j.contains("values"))
    throw DomainError("cylinder function JSON needs \"depth\" and \"values\"");
  const int depth = j["depth"].get<int>();
  if (depth < 0) throw DomainError("cylinder depth must be >= 0");
  const auto& values = j["values"];
  CylinderFunction f(tree, depth);
  if (static_cast<Eigen::Index>(values.size()) != f.size())
    throw DomainError("cylinder function JSON has the wrong number of values");
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const auto& v = values[static_cast<std::size_t>(i)];
    if (!v.is_array() || v.size() != 2)
      throw DomainError("each cylinder value must be a [re, im] pair");
    f.values()[i] = {v[0].get<double>(), v[1].get<double>()};
  }
  return f;
}

json tree_function_to_json(const TreeFunction& f) {
  json entries = json::array();
  const auto vertices = ball(f.tree(), f.radius());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Complex v = f.values()[static_cast<Eigen::Index>(i)];
    entries.push_back({{"v", vertices[i].to_string()}, {"re", v.real()}, {"im", v.imag()}});
  }
  return {{"q", f.tree().q}, {"entries", std::move(entries)}};
}

TreeFunction tree_function_from_json(const json& j) {
  const TreeParams tree = params_from(j);
  if (!j.contains("entries") || !j["entries"].is_array())
    throw DomainError("tree function JSON needs an \"entries\" array");
  int radius = 0;
  std::vector<std::pair<Vertex, Complex>> parsed;
  for (const auto& e : j["entries"]) {
    Vertex v = Vertex::from_string(e.at("v").get<std::string>());
    validate(tree, v);
    radius = std::max(radius, v.length());
    parsed.emplace_back(std::move(v), Complex(e.value("re", 0.0), e.value("im", 0.0)));
  }
  TreeFunction f(tree, radius);
  for (const auto& [v, value] : parsed) f.at(v) = value;
  return f;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError("malformed JSON in " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path);
  out << text;
}

std::string format_real(double x) { return fmt::format("{:.17g}", x); }

}  // namespace htree
