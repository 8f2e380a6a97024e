#include "ohmgraph/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <unordered_set>

#include "ohmgraph/error.hpp"

namespace ohmgraph {

namespace {

std::string unique_name(const std::unordered_set<std::string>& taken, const std::string& base) {
  if (!taken.contains(base)) {
    return base;
  }
  for (int k = 2;; ++k) {
    std::string candidate = base + "#" + std::to_string(k);
    if (!taken.contains(candidate)) {
      return candidate;
    }
  }
}

std::string shortest_decimal(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

std::unordered_set<std::string> all_names(const WeightedGraph& g) {
  std::unordered_set<std::string> taken(g.vertex_names().begin(), g.vertex_names().end());
  for (const auto& e : g.edges()) {
    taken.insert(e.id);
  }
  return taken;
}

void check_edge(const WeightedGraph& g, EdgeIndex e) {
  if (e >= g.edge_count()) {
    throw Error(ErrorCode::UnknownEdge, "edge index " + std::to_string(e));
  }
}

void check_vertex(const WeightedGraph& g, VertexIndex v) {
  if (v >= g.vertex_count()) {
    throw Error(ErrorCode::UnknownVertex, "vertex index " + std::to_string(v));
  }
}

// BFS from root visiting incidences in edge order. parent_edge[root] is unset.
struct BfsTree {
  std::vector<VertexIndex> order;
  std::vector<std::optional<EdgeIndex>> parent_edge;
  std::vector<VertexIndex> parent;
  std::vector<bool> seen;
};

BfsTree bfs(const WeightedGraph& g, VertexIndex root) {
  BfsTree t;
  const std::size_t n = g.vertex_count();
  t.parent_edge.assign(n, std::nullopt);
  t.parent.assign(n, root);
  t.seen.assign(n, false);
  std::queue<VertexIndex> frontier;
  frontier.push(root);
  t.seen[root] = true;
  while (!frontier.empty()) {
    const VertexIndex v = frontier.front();
    frontier.pop();
    t.order.push_back(v);
    for (const auto& inc : g.incident(v)) {
      if (!t.seen[inc.other]) {
        t.seen[inc.other] = true;
        t.parent[inc.other] = v;
        t.parent_edge[inc.other] = inc.edge;
        frontier.push(inc.other);
      }
    }
  }
  return t;
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::NonpositiveLength: return "NonpositiveLength";
    case ErrorCode::TooFewVertices: return "TooFewVertices";
    case ErrorCode::OffsetOutOfRange: return "OffsetOutOfRange";
    case ErrorCode::UnknownEdge: return "UnknownEdge";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::BrokenPath: return "BrokenPath";
    case ErrorCode::MassNotZero: return "MassNotZero";
    case ErrorCode::SingularReducedLaplacian: return "SingularReducedLaplacian";
    case ErrorCode::TooManyTrees: return "TooManyTrees";
    case ErrorCode::RatioMismatch: return "RatioMismatch";
    case ErrorCode::DegeneratePivot: return "DegeneratePivot";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

// --- WeightedGraph ----------------------------------------------------------

WeightedGraph::WeightedGraph(std::vector<std::string> vertex_names, std::vector<Edge> edges)
    : names_(std::move(vertex_names)), edges_(std::move(edges)) {
  std::unordered_set<std::string> seen;
  for (const auto& name : names_) {
    if (!seen.insert(name).second) {
      throw Error(ErrorCode::DuplicateId, "vertex '" + name + "'");
    }
  }
  std::unordered_set<std::string> edge_ids;
  adjacency_.resize(names_.size());
  for (EdgeIndex e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    if (!edge_ids.insert(edge.id).second) {
      throw Error(ErrorCode::DuplicateId, "edge '" + edge.id + "'");
    }
    if (edge.u >= names_.size() || edge.v >= names_.size()) {
      throw Error(ErrorCode::UnknownVertex, "endpoint of edge '" + edge.id + "'");
    }
    adjacency_[edge.u].push_back({e, edge.v});
    if (edge.u != edge.v) {
      adjacency_[edge.v].push_back({e, edge.u});
    }
  }
}

std::optional<VertexIndex> WeightedGraph::find_vertex(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) {
    return std::nullopt;
  }
  return static_cast<VertexIndex>(it - names_.begin());
}

std::optional<EdgeIndex> WeightedGraph::find_edge(std::string_view id) const {
  auto it = std::find_if(edges_.begin(), edges_.end(), [&](const Edge& e) { return e.id == id; });
  if (it == edges_.end()) {
    return std::nullopt;
  }
  return static_cast<EdgeIndex>(it - edges_.begin());
}

VertexIndex WeightedGraph::vertex_index(std::string_view name) const {
  if (auto v = find_vertex(name)) {
    return *v;
  }
  throw Error(ErrorCode::UnknownVertex, "'" + std::string(name) + "'");
}

EdgeIndex WeightedGraph::edge_index(std::string_view id) const {
  if (auto e = find_edge(id)) {
    return *e;
  }
  throw Error(ErrorCode::UnknownEdge, "'" + std::string(id) + "'");
}

bool WeightedGraph::is_connected() const {
  if (names_.empty()) {
    return false;
  }
  const auto tree = bfs(*this, 0);
  return tree.order.size() == names_.size();
}

void validate(const WeightedGraph& graph) {
  if (graph.vertex_count() < 2 || graph.edge_count() < 1) {
    throw Error(ErrorCode::TooFewVertices, "need at least 2 vertices and 1 edge, have " +
                                               std::to_string(graph.vertex_count()) + " and " +
                                               std::to_string(graph.edge_count()));
  }
  for (const auto& e : graph.edges()) {
    if (e.u == e.v) {
      throw Error(ErrorCode::SelfLoop, "edge '" + e.id + "'");
    }
    if (!std::isfinite(e.length) || e.length < kMinEdgeLength) {
      throw Error(ErrorCode::NonpositiveLength, "edge '" + e.id + "' has length " + shortest_decimal(e.length));
    }
  }
  if (!graph.is_connected()) {
    throw Error(ErrorCode::Disconnected, "graph has more than one component");
  }
}

// --- Orientation ------------------------------------------------------------

Orientation Orientation::standard(const WeightedGraph& graph) {
  return Orientation(graph, std::vector<bool>(graph.edge_count(), false));
}

Orientation::Orientation(const WeightedGraph& graph, const std::vector<bool>& reversed) {
  if (reversed.size() != graph.edge_count()) {
    throw Error(ErrorCode::InvalidArgument, "orientation size does not match edge count");
  }
  for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
    const Edge& edge = graph.edge(e);
    tail_.push_back(reversed[e] ? edge.v : edge.u);
    head_.push_back(reversed[e] ? edge.u : edge.v);
    sign_.push_back(reversed[e] ? -1 : 1);
  }
}

Orientation Orientation::reversed(EdgeIndex e) const {
  Orientation o = *this;
  std::swap(o.tail_.at(e), o.head_.at(e));
  o.sign_[e] = -o.sign_[e];
  return o;
}

// --- chains and divisors ----------------------------------------------------

OneChain OneChain::unit(std::size_t edge_count, EdgeIndex e, double coefficient) {
  OneChain c(edge_count);
  c[e] = coefficient;
  return c;
}

OneChain OneChain::reoriented(const Orientation& from, const Orientation& to) const {
  OneChain out = *this;
  for (EdgeIndex e = 0; e < size(); ++e) {
    out[e] *= from.sign(e) * to.sign(e);
  }
  return out;
}

ZeroDivisor ZeroDivisor::zero(std::size_t vertex_count) {
  return ZeroDivisor(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(vertex_count)));
}

ZeroDivisor ZeroDivisor::from_masses(Eigen::VectorXd masses, const Tolerance& tol) {
  const double total = masses.sum();
  const double scale = masses.cwiseAbs().sum();
  if (!std::isfinite(total) || std::abs(total) > tol.absolute + tol.relative * scale) {
    throw Error(ErrorCode::MassNotZero, "total mass " + shortest_decimal(total));
  }
  return ZeroDivisor(std::move(masses));
}

ZeroDivisor ZeroDivisor::dipole(std::size_t vertex_count, VertexIndex plus, VertexIndex minus) {
  if (plus >= vertex_count || minus >= vertex_count) {
    throw Error(ErrorCode::UnknownVertex, "dipole endpoint out of range");
  }
  Eigen::VectorXd a = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(vertex_count));
  a(static_cast<Eigen::Index>(plus)) += 1.0;
  a(static_cast<Eigen::Index>(minus)) -= 1.0;
  return ZeroDivisor(std::move(a));
}

// --- refinement -------------------------------------------------------------

Subdivision subdivide(const WeightedGraph& graph, const PointOnEdge& point) {
  check_edge(graph, point.edge);
  const Edge& target = graph.edge(point.edge);
  const double rest = target.length - point.offset;
  if (!(point.offset >= kMinEdgeLength) || !(rest >= kMinEdgeLength)) {
    throw Error(ErrorCode::OffsetOutOfRange, "offset " + shortest_decimal(point.offset) + " on edge '" +
                                                 target.id + "' of length " + shortest_decimal(target.length));
  }
  auto taken = all_names(graph);
  std::vector<std::string> names = graph.vertex_names();
  const std::string vname = unique_name(taken, target.id + "@" + shortest_decimal(point.offset));
  taken.insert(vname);
  names.push_back(vname);
  const VertexIndex w = names.size() - 1;

  std::vector<Edge> edges;
  edges.reserve(graph.edge_count() + 1);
  for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
    if (e != point.edge) {
      edges.push_back(graph.edge(e));
      continue;
    }
    const std::string first = unique_name(taken, target.id + ".a");
    taken.insert(first);
    const std::string second = unique_name(taken, target.id + ".b");
    taken.insert(second);
    edges.push_back({first, target.u, w, point.offset});
    edges.push_back({second, w, target.v, rest});
  }
  return {WeightedGraph(std::move(names), std::move(edges)), w};
}

RefinedModel refine(const WeightedGraph& graph, std::span<const Point> points) {
  RefinedModel model{graph, std::vector<VertexIndex>(points.size()), {}};
  model.original_edge.resize(graph.edge_count());
  for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
    model.original_edge[e] = e;
  }

  // edge -> (offset -> indices of requested points at that offset)
  std::map<EdgeIndex, std::map<double, std::vector<std::size_t>>, std::greater<>> interior;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (const auto* v = std::get_if<VertexIndex>(&points[i])) {
      check_vertex(graph, *v);
      model.points[i] = *v;
      continue;
    }
    const auto& p = std::get<PointOnEdge>(points[i]);
    check_edge(graph, p.edge);
    const Edge& edge = graph.edge(p.edge);
    if (!(p.offset >= 0.0) || !(p.offset <= edge.length)) {
      throw Error(ErrorCode::OffsetOutOfRange, "offset " + shortest_decimal(p.offset) + " on edge '" + edge.id +
                                                   "' of length " + shortest_decimal(edge.length));
    }
    if (p.offset < kMinEdgeLength) {
      model.points[i] = edge.u;
    } else if (edge.length - p.offset < kMinEdgeLength) {
      model.points[i] = edge.v;
    } else {
      interior[p.edge][p.offset].push_back(i);
    }
  }

  // Descending edge order keeps lower edge indices stable while splitting.
  for (const auto& [edge, offsets] : interior) {
    EdgeIndex current = edge;
    double consumed = 0.0;
    for (const auto& [offset, requests] : offsets) {
      if (offset - consumed < kMinEdgeLength) {
        // Numerically the same point as the previous split.
        for (std::size_t i : requests) {
          model.points[i] = model.graph.vertex_count() - 1;
        }
        continue;
      }
      if (model.graph.edge(current).length - (offset - consumed) < kMinEdgeLength) {
        for (std::size_t i : requests) {
          model.points[i] = model.graph.edge(current).v;
        }
        continue;
      }
      auto split = subdivide(model.graph, {current, offset - consumed});
      model.graph = std::move(split.graph);
      model.original_edge.insert(model.original_edge.begin() + static_cast<std::ptrdiff_t>(current) + 1,
                                 model.original_edge[current]);
      for (std::size_t i : requests) {
        model.points[i] = split.vertex;
      }
      current += 1;
      consumed = offset;
    }
  }
  return model;
}

// --- contraction ------------------------------------------------------------

Contraction contract_edge(const WeightedGraph& graph, EdgeIndex e) {
  check_edge(graph, e);
  const Edge& target = graph.edge(e);
  const VertexIndex keep = std::min(target.u, target.v);
  const VertexIndex drop = std::max(target.u, target.v);

  Contraction out;
  out.contracted_edge = e;
  out.vertex_map.resize(graph.vertex_count());
  auto taken = all_names(graph);
  std::vector<std::string> names;
  for (VertexIndex v = 0; v < graph.vertex_count(); ++v) {
    if (v == drop) {
      continue;
    }
    out.vertex_map[v] = names.size();
    names.push_back(graph.vertex_name(v));
  }
  out.vertex_map[drop] = out.vertex_map[keep];
  out.merged_vertex = out.vertex_map[keep];
  if (target.u != target.v) {
    names[out.merged_vertex] = unique_name(taken, "p_" + target.id);
    taken.insert(names[out.merged_vertex]);
  }

  std::vector<Edge> edges;
  out.edge_image.resize(graph.edge_count());
  for (EdgeIndex f = 0; f < graph.edge_count(); ++f) {
    if (f == e) {
      continue;
    }
    const Edge& edge = graph.edge(f);
    const VertexIndex u = out.vertex_map[edge.u];
    const VertexIndex v = out.vertex_map[edge.v];
    if (u != v || edge.u == edge.v) {
      out.edge_image[f] = {edges.size()};
      edges.push_back({edge.id, u, v, edge.length});
      continue;
    }
    // Parallel to e: split at the midpoint so the image is a 2-cycle, not a loop.
    const std::string mid = unique_name(taken, edge.id + "@mid");
    taken.insert(mid);
    names.push_back(mid);
    const VertexIndex w = names.size() - 1;
    const std::string first = unique_name(taken, edge.id + ".a");
    taken.insert(first);
    const std::string second = unique_name(taken, edge.id + ".b");
    taken.insert(second);
    out.edge_image[f] = {edges.size(), edges.size() + 1};
    edges.push_back({first, u, w, edge.length / 2});
    edges.push_back({second, w, v, edge.length / 2});
  }

  if (names.size() < 2 || edges.empty()) {
    throw Error(ErrorCode::TooFewVertices, "contracting '" + target.id + "' collapses the graph to a point");
  }
  out.graph = WeightedGraph(std::move(names), std::move(edges));
  validate(out.graph);
  return out;
}

// --- boundaries and paths ---------------------------------------------------

ZeroDivisor boundary(const WeightedGraph& graph, const Orientation& orientation, const OneChain& chain) {
  if (chain.size() != graph.edge_count() || orientation.size() != graph.edge_count()) {
    throw Error(ErrorCode::InvalidArgument, "chain size does not match edge count");
  }
  Eigen::VectorXd a = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(graph.vertex_count()));
  for (EdgeIndex e = 0; e < chain.size(); ++e) {
    a(static_cast<Eigen::Index>(orientation.head(e))) += chain[e];
    a(static_cast<Eigen::Index>(orientation.tail(e))) -= chain[e];
  }
  return ZeroDivisor::from_masses(std::move(a));
}

OneChain chain_of_path(const WeightedGraph& graph, const Orientation& orientation, const PathSpec& path) {
  if (path.vertices.empty() || path.vertices.size() != path.edges.size() + 1) {
    throw Error(ErrorCode::BrokenPath, "a path needs k+1 vertices for k edges");
  }
  for (VertexIndex v : path.vertices) {
    check_vertex(graph, v);
  }
  OneChain chain(graph.edge_count());
  for (std::size_t i = 0; i < path.edges.size(); ++i) {
    const EdgeIndex e = path.edges[i];
    check_edge(graph, e);
    const VertexIndex from = path.vertices[i];
    const VertexIndex to = path.vertices[i + 1];
    if (orientation.tail(e) == from && orientation.head(e) == to) {
      chain[e] += 1.0;
    } else if (orientation.head(e) == from && orientation.tail(e) == to) {
      chain[e] -= 1.0;
    } else {
      throw Error(ErrorCode::BrokenPath, "edge '" + graph.edge(e).id + "' does not join '" +
                                             graph.vertex_name(from) + "' and '" + graph.vertex_name(to) + "'");
    }
  }
  return chain;
}

PathSpec shortest_hop_path(const WeightedGraph& graph, VertexIndex from, VertexIndex to) {
  check_vertex(graph, from);
  check_vertex(graph, to);
  const auto tree = bfs(graph, from);
  if (!tree.seen[to]) {
    throw Error(ErrorCode::Disconnected, "no path from '" + graph.vertex_name(from) + "' to '" +
                                             graph.vertex_name(to) + "'");
  }
  PathSpec path;
  for (VertexIndex v = to; v != from; v = tree.parent[v]) {
    path.vertices.push_back(v);
    path.edges.push_back(*tree.parent_edge[v]);
  }
  path.vertices.push_back(from);
  std::reverse(path.vertices.begin(), path.vertices.end());
  std::reverse(path.edges.begin(), path.edges.end());
  return path;
}

OneChain chain_for_divisor(const WeightedGraph& graph, const Orientation& orientation, const ZeroDivisor& nu,
                           VertexIndex q) {
  check_vertex(graph, q);
  if (nu.size() != graph.vertex_count()) {
    throw Error(ErrorCode::InvalidArgument, "divisor size does not match vertex count");
  }
  const auto tree = bfs(graph, q);
  if (tree.order.size() != graph.vertex_count()) {
    throw Error(ErrorCode::Disconnected, "graph has more than one component");
  }
  // Summing a_v times the tree path q -> v puts the subtree mass of v on v's parent edge.
  std::vector<double> subtree(graph.vertex_count(), 0.0);
  for (VertexIndex v = 0; v < graph.vertex_count(); ++v) {
    subtree[v] = nu[v];
  }
  OneChain chain(graph.edge_count());
  for (auto it = tree.order.rbegin(); it != tree.order.rend(); ++it) {
    const VertexIndex v = *it;
    if (v == q) {
      continue;
    }
    const EdgeIndex pe = *tree.parent_edge[v];
    const VertexIndex p = tree.parent[v];
    chain[pe] += (orientation.tail(pe) == p) ? subtree[v] : -subtree[v];
    subtree[p] += subtree[v];
  }
  return chain;
}

}  // namespace ohmgraph
