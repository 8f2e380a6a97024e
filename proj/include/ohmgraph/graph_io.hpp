#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "ohmgraph/graph.hpp"

namespace ohmgraph {

/// Parses {"vertices": [...], "edges": [{"id","u","v","length"}, ...]}.
/// Throws Error(ParseError) on malformed input and Error(DuplicateId /
/// UnknownVertex) on bad references. Electrical invariants are not checked.
WeightedGraph graph_from_json(const nlohmann::json& doc);
WeightedGraph read_graph_file(const std::filesystem::path& path);

nlohmann::json graph_to_json(const WeightedGraph& graph);

/// Parses "V" (a vertex) or "edgeId@offset" (a point on an edge).
Point parse_point(const WeightedGraph& graph, const std::string& text);

}  // namespace ohmgraph
