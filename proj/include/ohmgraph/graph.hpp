#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "ohmgraph/tolerance.hpp"

namespace ohmgraph {

using VertexIndex = std::size_t;
using EdgeIndex = std::size_t;

/// Smallest admissible edge length. Shorter edges should be contracted instead.
inline constexpr double kMinEdgeLength = 1e-12;

/// An edge segment between u and v. Its length is the resistance in ohms.
struct Edge {
  std::string id;
  VertexIndex u = 0;
  VertexIndex v = 0;
  double length = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
  EdgeIndex edge;
  VertexIndex other;
};

/// Finite multigraph with positive edge lengths. Vertex and edge order are
/// the insertion order and define the labeling used by every matrix.
///
/// The constructor checks only referential integrity (unique ids, endpoints in
/// range). The electrical invariants are checked by validate().
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(std::vector<std::string> vertex_names, std::vector<Edge> edges);

  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<std::string>& vertex_names() const { return names_; }
  const std::string& vertex_name(VertexIndex v) const { return names_.at(v); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeIndex e) const { return edges_.at(e); }
  double length(EdgeIndex e) const { return edges_.at(e).length; }

  const std::vector<Incidence>& incident(VertexIndex v) const { return adjacency_.at(v); }

  std::optional<VertexIndex> find_vertex(std::string_view name) const;
  std::optional<EdgeIndex> find_edge(std::string_view id) const;
  /// Throws UnknownVertex.
  VertexIndex vertex_index(std::string_view name) const;
  /// Throws UnknownEdge.
  EdgeIndex edge_index(std::string_view id) const;

  bool is_connected() const;

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.names_ == b.names_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
};

/// Throws Error on the first violated invariant: TooFewVertices, SelfLoop,
/// NonpositiveLength or Disconnected.
void validate(const WeightedGraph& graph);

/// Choice of head e+ and tail e- for every edge.
class Orientation {
 public:
  /// Tail = first listed endpoint, head = second.
  static Orientation standard(const WeightedGraph& graph);
  /// reversed[e] swaps the endpoints of edge e relative to the standard choice.
  Orientation(const WeightedGraph& graph, const std::vector<bool>& reversed);

  std::size_t size() const { return tail_.size(); }
  VertexIndex tail(EdgeIndex e) const { return tail_.at(e); }
  VertexIndex head(EdgeIndex e) const { return head_.at(e); }
  /// +1 if e agrees with the standard orientation, -1 otherwise.
  int sign(EdgeIndex e) const { return sign_.at(e); }

  Orientation reversed(EdgeIndex e) const;

 private:
  Orientation() = default;
  std::vector<VertexIndex> tail_;
  std::vector<VertexIndex> head_;
  std::vector<int> sign_;
};

/// Real 1-chain in the basis of oriented edges. Reversing an edge negates its coefficient.
class OneChain {
 public:
  explicit OneChain(std::size_t edge_count) : c_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(edge_count))) {}
  explicit OneChain(Eigen::VectorXd coefficients) : c_(std::move(coefficients)) {}

  static OneChain unit(std::size_t edge_count, EdgeIndex e, double coefficient = 1.0);

  std::size_t size() const { return static_cast<std::size_t>(c_.size()); }
  double operator[](EdgeIndex e) const { return c_(static_cast<Eigen::Index>(e)); }
  double& operator[](EdgeIndex e) { return c_(static_cast<Eigen::Index>(e)); }
  const Eigen::VectorXd& coefficients() const { return c_; }

  /// Same chain expressed in another orientation's basis.
  OneChain reoriented(const Orientation& from, const Orientation& to) const;

  OneChain& operator+=(const OneChain& o) { c_ += o.c_; return *this; }
  OneChain& operator-=(const OneChain& o) { c_ -= o.c_; return *this; }
  friend OneChain operator+(OneChain a, const OneChain& b) { return a += b; }
  friend OneChain operator-(OneChain a, const OneChain& b) { return a -= b; }
  friend OneChain operator*(double s, OneChain a) { a.c_ *= s; return a; }

 private:
  Eigen::VectorXd c_;
};

/// Discrete measure on the vertices with total mass zero.
class ZeroDivisor {
 public:
  static ZeroDivisor zero(std::size_t vertex_count);
  /// Throws MassNotZero when |sum| exceeds the tolerance relative to sum |a_v|.
  static ZeroDivisor from_masses(Eigen::VectorXd masses, const Tolerance& tol = {});
  /// delta_plus - delta_minus.
  static ZeroDivisor dipole(std::size_t vertex_count, VertexIndex plus, VertexIndex minus);

  std::size_t size() const { return static_cast<std::size_t>(a_.size()); }
  double operator[](VertexIndex v) const { return a_(static_cast<Eigen::Index>(v)); }
  const Eigen::VectorXd& masses() const { return a_; }
  bool is_zero() const { return a_.isZero(0.0); }

  friend ZeroDivisor operator+(ZeroDivisor a, const ZeroDivisor& b) { a.a_ += b.a_; return a; }
  friend ZeroDivisor operator-(ZeroDivisor a, const ZeroDivisor& b) { a.a_ -= b.a_; return a; }
  friend ZeroDivisor operator*(double s, ZeroDivisor a) { a.a_ *= s; return a; }

 private:
  explicit ZeroDivisor(Eigen::VectorXd a) : a_(std::move(a)) {}
  Eigen::VectorXd a_;
};

/// A point in the interior or on the boundary of an edge segment. The offset
/// is measured from the edge's first listed endpoint (its tail under the
/// standard orientation).
struct PointOnEdge {
  EdgeIndex edge = 0;
  double offset = 0.0;
};

/// A point of the metric graph: either a vertex of the model or a point on an edge.
using Point = std::variant<VertexIndex, PointOnEdge>;

/// Alternating vertex/edge sequence v0, e0, v1, ..., v_k. Each edge must join
/// v_i and v_{i+1}; the direction of traversal is read off the vertices.
struct PathSpec {
  std::vector<VertexIndex> vertices;
  std::vector<EdgeIndex> edges;
};

struct Subdivision {
  WeightedGraph graph;
  VertexIndex vertex;
};

/// Splits an edge at an interior point. The two halves take the edge's place
/// in the edge order (first half touches the first endpoint); the new vertex
/// is appended. Throws OffsetOutOfRange unless 0 < offset < length.
Subdivision subdivide(const WeightedGraph& graph, const PointOnEdge& point);

/// A finer model containing every requested point as a vertex.
struct RefinedModel {
  WeightedGraph graph;
  std::vector<VertexIndex> points;  // vertex of each requested point, in input order
  std::vector<EdgeIndex> original_edge;  // refined edge -> edge it came from
};

/// Subdivides at every edge point; pre-existing vertices keep their indices.
RefinedModel refine(const WeightedGraph& graph, std::span<const Point> points);

/// G/e. Vertex map sends both endpoints of e to the merged vertex. Each
/// surviving edge maps to a chain in the contracted graph: a single edge with
/// coefficient +1, or, for edges parallel to e, the sum of its two halves
/// (such edges are split at their midpoint so that no loop appears).
struct Contraction {
  WeightedGraph graph;
  EdgeIndex contracted_edge = 0;
  VertexIndex merged_vertex = 0;
  std::vector<VertexIndex> vertex_map;
  std::vector<std::vector<EdgeIndex>> edge_image;  // empty for the contracted edge
};

/// Throws UnknownEdge, or TooFewVertices when the result collapses to a point.
Contraction contract_edge(const WeightedGraph& graph, EdgeIndex e);

/// Boundary map: e -> delta(e+) - delta(e-), extended linearly.
ZeroDivisor boundary(const WeightedGraph& graph, const Orientation& orientation, const OneChain& chain);

/// Throws BrokenPath if consecutive entries do not match.
OneChain chain_of_path(const WeightedGraph& graph, const Orientation& orientation, const PathSpec& path);

/// Fewest-edges path from `from` to `to` (ties broken by edge order).
PathSpec shortest_hop_path(const WeightedGraph& graph, VertexIndex from, VertexIndex to);

/// A chain with boundary nu, built from shortest-hop paths out of q.
OneChain chain_for_divisor(const WeightedGraph& graph, const Orientation& orientation,
                           const ZeroDivisor& nu, VertexIndex q);

}  // namespace ohmgraph
