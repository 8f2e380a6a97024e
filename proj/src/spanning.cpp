#include "ohmgraph/spanning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include <Eigen/Cholesky>

#include "ohmgraph/error.hpp"
#include "ohmgraph/laplacian.hpp"

namespace ohmgraph {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Natural log of the number of spanning trees, counting parallel edges separately.
double log_tree_count(const WeightedGraph& graph) {
  const auto n = static_cast<Eigen::Index>(graph.vertex_count());
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : graph.edges()) {
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    q(u, v) -= 1.0;
    q(v, u) -= 1.0;
    q(u, u) += 1.0;
    q(v, v) += 1.0;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(q.bottomRightCorner(n - 1, n - 1));
  const Eigen::VectorXd d = llt.matrixL().toDenseMatrix().diagonal();
  return 2.0 * d.array().log().sum();
}

class TreeSearch {
 public:
  TreeSearch(const WeightedGraph& graph, std::size_t cap)
      : graph_(graph), cap_(cap), excluded_(graph.edge_count(), false) {}

  std::vector<SpanningTree> run() {
    search(0, DisjointSets(graph_.vertex_count()));
    return std::move(found_);
  }

 private:
  void search(EdgeIndex i, DisjointSets sets) {
    if (chosen_.size() + 1 == graph_.vertex_count()) {
      record();
      return;
    }
    if (i == graph_.edge_count()) {
      return;
    }
    const Edge& edge = graph_.edge(i);
    if (sets.find(edge.u) != sets.find(edge.v)) {
      DisjointSets with = sets;
      with.unite(edge.u, edge.v);
      chosen_.push_back(i);
      search(i + 1, std::move(with));
      chosen_.pop_back();
    }
    excluded_[i] = true;
    if (still_connected()) {
      search(i + 1, std::move(sets));
    }
    excluded_[i] = false;
  }

  bool still_connected() const {
    DisjointSets sets(graph_.vertex_count());
    std::size_t components = graph_.vertex_count();
    for (EdgeIndex e = 0; e < graph_.edge_count() && components > 1; ++e) {
      if (!excluded_[e] && sets.unite(graph_.edge(e).u, graph_.edge(e).v)) {
        --components;
      }
    }
    return components == 1;
  }

  void record() {
    if (found_.size() >= cap_) {
      throw Error(ErrorCode::TooManyTrees, "more than " + std::to_string(cap_) + " spanning trees");
    }
    SpanningTree tree;
    tree.edges = chosen_;
    std::size_t next = 0;
    for (EdgeIndex e = 0; e < graph_.edge_count(); ++e) {
      if (next < chosen_.size() && chosen_[next] == e) {
        tree.coweight /= graph_.length(e);
        ++next;
      } else {
        tree.weight *= graph_.length(e);
      }
    }
    found_.push_back(std::move(tree));
  }

  const WeightedGraph& graph_;
  std::size_t cap_;
  std::vector<bool> excluded_;
  std::vector<EdgeIndex> chosen_;
  std::vector<SpanningTree> found_;
};

// Vertices reachable from `root` using tree edges other than `skip`, with the
// edge used to reach each one.
struct TreeWalk {
  std::vector<bool> reached;
  std::vector<VertexIndex> parent;
  std::vector<EdgeIndex> parent_edge;
};

TreeWalk walk_tree(const WeightedGraph& graph, const SpanningTree& tree, VertexIndex root,
                   std::optional<EdgeIndex> skip) {
  TreeWalk w{std::vector<bool>(graph.vertex_count(), false), std::vector<VertexIndex>(graph.vertex_count(), root),
             std::vector<EdgeIndex>(graph.vertex_count(), 0)};
  std::queue<VertexIndex> frontier;
  frontier.push(root);
  w.reached[root] = true;
  while (!frontier.empty()) {
    const VertexIndex v = frontier.front();
    frontier.pop();
    for (const auto& inc : graph.incident(v)) {
      if (w.reached[inc.other] || (skip && *skip == inc.edge) || !tree.contains(inc.edge)) {
        continue;
      }
      w.reached[inc.other] = true;
      w.parent[inc.other] = v;
      w.parent_edge[inc.other] = inc.edge;
      frontier.push(inc.other);
    }
  }
  return w;
}

void check_tree(const WeightedGraph& graph, const SpanningTree& tree, EdgeIndex e) {
  if (e >= graph.edge_count()) {
    throw Error(ErrorCode::UnknownEdge, "edge index " + std::to_string(e));
  }
  if (tree.edges.size() + 1 != graph.vertex_count()) {
    throw Error(ErrorCode::InvalidArgument, "tree does not have n - 1 edges");
  }
}

}  // namespace

bool SpanningTree::contains(EdgeIndex e) const { return std::binary_search(edges.begin(), edges.end(), e); }

TreeEnsemble enumerate_spanning_trees(const WeightedGraph& graph, std::size_t cap) {
  validate(graph);
  // Refuse before searching when the matrix-tree count already exceeds the cap.
  if (log_tree_count(graph) > std::log(static_cast<double>(cap)) + 1e-9) {
    throw Error(ErrorCode::TooManyTrees, "about exp(" + std::to_string(log_tree_count(graph)) +
                                             ") spanning trees exceed the cap of " + std::to_string(cap));
  }
  TreeEnsemble out;
  out.trees = TreeSearch(graph, cap).run();
  std::sort(out.trees.begin(), out.trees.end(),
            [](const SpanningTree& a, const SpanningTree& b) { return a.edges < b.edges; });
  for (const auto& t : out.trees) {
    out.total_weight += t.weight;
    out.total_coweight += t.coweight;
  }
  return out;
}

SpanningTree bfs_spanning_tree(const WeightedGraph& graph) {
  validate(graph);
  SpanningTree all;
  all.edges.resize(graph.edge_count());
  std::iota(all.edges.begin(), all.edges.end(), 0);
  const auto walk = walk_tree(graph, all, 0, std::nullopt);
  SpanningTree tree;
  for (VertexIndex v = 1; v < graph.vertex_count(); ++v) {
    tree.edges.push_back(walk.parent_edge[v]);
  }
  std::sort(tree.edges.begin(), tree.edges.end());
  for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
    if (tree.contains(e)) {
      tree.coweight /= graph.length(e);
    } else {
      tree.weight *= graph.length(e);
    }
  }
  return tree;
}

OneChain fundamental_circuit_chain(const WeightedGraph& graph, const Orientation& orientation,
                                   const SpanningTree& tree, EdgeIndex e) {
  check_tree(graph, tree, e);
  OneChain chain(graph.edge_count());
  if (tree.contains(e)) {
    return chain;
  }
  // Go along e from tail to head, then back to the tail through the tree.
  chain[e] = 1.0;
  const VertexIndex start = orientation.head(e);
  const VertexIndex goal = orientation.tail(e);
  const auto walk = walk_tree(graph, tree, goal, std::nullopt);
  for (VertexIndex v = start; v != goal; v = walk.parent[v]) {
    const EdgeIndex f = walk.parent_edge[v];
    // Traversal v -> parent(v).
    chain[f] += (orientation.tail(f) == v) ? 1.0 : -1.0;
  }
  return chain;
}

OneChain fundamental_cocircuit_chain(const WeightedGraph& graph, const Orientation& orientation,
                                     const SpanningTree& tree, EdgeIndex e) {
  check_tree(graph, tree, e);
  OneChain chain(graph.edge_count());
  if (!tree.contains(e)) {
    return chain;
  }
  const auto tail_side = walk_tree(graph, tree, orientation.tail(e), e).reached;
  for (EdgeIndex f = 0; f < graph.edge_count(); ++f) {
    const bool from_tail_side = tail_side[orientation.tail(f)];
    const bool to_tail_side = tail_side[orientation.head(f)];
    if (from_tail_side != to_tail_side) {
      chain[f] = from_tail_side ? 1.0 : -1.0;
    }
  }
  return chain;
}

ProjectionPair kirchhoff_projection_matrices(const WeightedGraph& graph, const Orientation& orientation,
                                             const TreeEnsemble& ensemble) {
  const auto m = static_cast<Eigen::Index>(graph.edge_count());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(m, m);
  Eigen::MatrixXd p_prime = Eigen::MatrixXd::Zero(m, m);
  for (const auto& tree : ensemble.trees) {
    const double w = tree.weight / ensemble.total_weight;
    const double w_prime = tree.coweight / ensemble.total_coweight;
    for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
      const auto col = static_cast<Eigen::Index>(e);
      if (tree.contains(e)) {
        p_prime.col(col) += w_prime * fundamental_cocircuit_chain(graph, orientation, tree, e).coefficients();
      } else {
        p.col(col) += w * fundamental_circuit_chain(graph, orientation, tree, e).coefficients();
      }
    }
  }
  return {p, p_prime.transpose()};
}

ProjectionPair kirchhoff_projection_matrices(const WeightedGraph& graph, const Orientation& orientation,
                                             std::size_t cap) {
  return kirchhoff_projection_matrices(graph, orientation, enumerate_spanning_trees(graph, cap));
}

MatrixTreeCheck matrix_tree_check(const WeightedGraph& graph, VertexIndex q, std::size_t cap) {
  return {enumerate_spanning_trees(graph, cap).total_coweight, reduced_determinant(graph, q)};
}

double tree_probability(const TreeEnsemble& ensemble, const SpanningTree& tree, const Tolerance& tol) {
  const double by_weight = tree.weight / ensemble.total_weight;
  const double by_coweight = tree.coweight / ensemble.total_coweight;
  if (!tol.close(by_weight, by_coweight)) {
    throw Error(ErrorCode::RatioMismatch, "w(T)/w(G) = " + std::to_string(by_weight) +
                                              " but w'(T)/w'(G) = " + std::to_string(by_coweight));
  }
  return by_weight;
}

Eigen::VectorXd exclusion_probabilities(const WeightedGraph& graph, const TreeEnsemble& ensemble) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(graph.edge_count()));
  for (const auto& tree : ensemble.trees) {
    const double p = tree.weight / ensemble.total_weight;
    for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
      if (!tree.contains(e)) out(static_cast<Eigen::Index>(e)) += p;
    }
  }
  return out;
}

}  // namespace ohmgraph
