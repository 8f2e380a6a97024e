#include "ohmgraph/graph_io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>

#include "ohmgraph/error.hpp"

namespace ohmgraph {

namespace {

const nlohmann::json& require(const nlohmann::json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(ErrorCode::ParseError, std::string("missing key '") + key + "'");
  }
  return obj.at(key);
}

}  // namespace

Tolerance tolerance_from_env() {
  Tolerance tol;
  if (const char* raw = std::getenv("OHMGRAPH_TOL")) {
    char* end = nullptr;
    const double value = std::strtod(raw, &end);
    if (end != raw && *end == '\0' && value > 0.0) {
      tol.relative = value;
    }
  }
  return tol;
}

WeightedGraph graph_from_json(const nlohmann::json& doc) {
  const auto& vertices = require(doc, "vertices");
  const auto& edges = require(doc, "edges");
  if (!vertices.is_array() || !edges.is_array()) {
    throw Error(ErrorCode::ParseError, "'vertices' and 'edges' must be arrays");
  }
  std::vector<std::string> names;
  for (const auto& v : vertices) {
    if (!v.is_string()) {
      throw Error(ErrorCode::ParseError, "vertex names must be strings");
    }
    names.push_back(v.get<std::string>());
  }
  // Resolve endpoints against a temporary edge-free graph so duplicate names surface first.
  const WeightedGraph vertex_only(names, {});
  std::vector<Edge> parsed;
  for (const auto& e : edges) {
    const auto& id = require(e, "id");
    const auto& u = require(e, "u");
    const auto& v = require(e, "v");
    const auto& length = require(e, "length");
    if (!id.is_string() || !u.is_string() || !v.is_string()) {
      throw Error(ErrorCode::ParseError, "edge 'id', 'u' and 'v' must be strings");
    }
    if (!length.is_number()) {
      throw Error(ErrorCode::ParseError, "edge '" + id.get<std::string>() + "' has a non-numeric length");
    }
    parsed.push_back({id.get<std::string>(), vertex_only.vertex_index(u.get<std::string>()),
                      vertex_only.vertex_index(v.get<std::string>()), length.get<double>()});
  }
  return WeightedGraph(std::move(names), std::move(parsed));
}

WeightedGraph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::ParseError, "cannot open '" + path.string() + "'");
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + ex.what());
  }
  return graph_from_json(doc);
}

nlohmann::json graph_to_json(const WeightedGraph& graph) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : graph.edges()) {
    edges.push_back({{"id", e.id}, {"u", graph.vertex_name(e.u)}, {"v", graph.vertex_name(e.v)}, {"length", e.length}});
  }
  return {{"vertices", graph.vertex_names()}, {"edges", edges}};
}

Point parse_point(const WeightedGraph& graph, const std::string& text) {
  if (auto v = graph.find_vertex(text)) {
    return *v;
  }
  const auto at = text.rfind('@');
  if (at == std::string::npos) {
    throw Error(ErrorCode::UnknownVertex, "'" + text + "'");
  }
  const EdgeIndex e = graph.edge_index(text.substr(0, at));
  double offset = 0.0;
  const char* first = text.data() + at + 1;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, offset);
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::ParseError, "bad offset in point '" + text + "'");
  }
  if (offset < 0.0 || offset > graph.length(e)) {
    throw Error(ErrorCode::OffsetOutOfRange, "point '" + text + "'");
  }
  return PointOnEdge{e, offset};
}

}  // namespace ohmgraph
