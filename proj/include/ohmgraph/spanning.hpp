#pragma once

#include <cstddef>
#include <vector>

#include "ohmgraph/graph.hpp"
#include "ohmgraph/projections.hpp"
#include "ohmgraph/tolerance.hpp"

namespace ohmgraph {

// Exact, exponential-time reference constructions over the set of spanning
// trees. Used to cross-check the cross-ratio route; not meant for large graphs.

inline constexpr std::size_t kDefaultTreeCap = 1'000'000;

struct SpanningTree {
  std::vector<EdgeIndex> edges;  // sorted
  double weight = 1.0;    // product of lengths of edges not in the tree
  double coweight = 1.0;  // product of 1/length over tree edges

  bool contains(EdgeIndex e) const;
};

struct TreeEnsemble {
  std::vector<SpanningTree> trees;  // sorted lexicographically by edge set
  double total_weight = 0.0;
  double total_coweight = 0.0;
};

/// Deletion/contraction search. Parallel edges give distinct trees. Throws
/// TooManyTrees when the tree count exceeds `cap`; for large graphs this is
/// decided up front from the matrix-tree count.
TreeEnsemble enumerate_spanning_trees(const WeightedGraph& graph, std::size_t cap = kDefaultTreeCap);

/// Tree found by breadth-first search from vertex 0.
SpanningTree bfs_spanning_tree(const WeightedGraph& graph);

/// For e not in T: the chain of the unique circuit in T + e, traversed in the
/// direction of e (so its coefficient on e is +1). Zero for e in T.
OneChain fundamental_circuit_chain(const WeightedGraph& graph, const Orientation& orientation,
                                   const SpanningTree& tree, EdgeIndex e);

/// For e in T: the chain of the cut separating the two components of T - e.
/// Edges crossing from e's tail side to its head side get +1, the others -1.
/// Zero for e not in T.
OneChain fundamental_cocircuit_chain(const WeightedGraph& graph, const Orientation& orientation,
                                     const SpanningTree& tree, EdgeIndex e);

/// Kirchhoff's tree averages: cycle = sum_T w(T)/w(G) M_T and
/// cocycle = (sum_T w'(T)/w'(G) N_T)^T.
ProjectionPair kirchhoff_projection_matrices(const WeightedGraph& graph, const Orientation& orientation,
                                             const TreeEnsemble& ensemble);
ProjectionPair kirchhoff_projection_matrices(const WeightedGraph& graph, const Orientation& orientation,
                                             std::size_t cap = kDefaultTreeCap);

struct MatrixTreeCheck {
  double enumerated_coweight = 0.0;  // w'(G) by enumeration
  double reduced_determinant = 0.0;  // det(Q_q)
};

MatrixTreeCheck matrix_tree_check(const WeightedGraph& graph, VertexIndex q = 0, std::size_t cap = kDefaultTreeCap);

/// w(T)/w(G), after checking it against w'(T)/w'(G). Throws RatioMismatch if
/// the two disagree beyond the tolerance.
double tree_probability(const TreeEnsemble& ensemble, const SpanningTree& tree, const Tolerance& tol = {});

/// Pr{e not in T} for each edge under the weighted tree measure.
Eigen::VectorXd exclusion_probabilities(const WeightedGraph& graph, const TreeEnsemble& ensemble);

}  // namespace ohmgraph
