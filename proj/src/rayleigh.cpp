#include "ohmgraph/rayleigh.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "ohmgraph/error.hpp"
#include "ohmgraph/laplacian.hpp"

namespace ohmgraph {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

void check_edge(const WeightedGraph& graph, EdgeIndex e) {
  if (e >= graph.edge_count()) {
    throw Error(ErrorCode::UnknownEdge, "edge index " + std::to_string(e));
  }
}

// Refines the model with the query points while keeping e intact.
struct ContractedQuery {
  RefinedModel model;
  EdgeIndex edge;
};

ContractedQuery refine_around(const WeightedGraph& graph, EdgeIndex e, std::span<const Point> points) {
  check_edge(graph, e);
  for (const auto& p : points) {
    if (const auto* on_edge = std::get_if<PointOnEdge>(&p); on_edge && on_edge->edge == e &&
                                                            on_edge->offset >= kMinEdgeLength &&
                                                            graph.length(e) - on_edge->offset >= kMinEdgeLength) {
      throw Error(ErrorCode::InvalidArgument, "query point lies inside the contracted edge '" + graph.edge(e).id + "'");
    }
  }
  ContractedQuery out{refine(graph, points), 0};
  const auto it = std::find(out.model.original_edge.begin(), out.model.original_edge.end(), e);
  out.edge = static_cast<EdgeIndex>(it - out.model.original_edge.begin());
  return out;
}

class Counter {
 public:
  explicit Counter(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

// --- vertex-level updates ---------------------------------------------------

RayleighKernel::RayleighKernel(const WeightedGraph& graph, EdgeIndex e)
    : edge_(e),
      tail_((check_edge(graph, e), graph.edge(e).u)),
      head_(graph.edge(e).v),
      kernel_(graph),
      pivot_(kernel_.resistance(tail_, head_)) {
  if (!(pivot_ >= kMinPivot)) {
    throw Error(ErrorCode::DegeneratePivot, "r(e-, e+) = " + std::to_string(pivot_) + " on edge '" +
                                                graph.edge(e).id + "'; rebuild the contracted graph instead");
  }
}

double RayleighKernel::energy(const ZeroDivisor& a, const ZeroDivisor& b) const {
  const auto dipole = ZeroDivisor::dipole(kernel_.vertex_count(), head_, tail_);
  return kernel_.energy(a, b) - kernel_.energy(a, dipole) * kernel_.energy(dipole, b) / pivot_;
}

double RayleighKernel::cross_ratio(VertexIndex x, VertexIndex y, VertexIndex z, VertexIndex w) const {
  return kernel_.cross_ratio(x, y, z, w) -
         kernel_.cross_ratio(x, y, tail_, head_) * kernel_.cross_ratio(z, w, tail_, head_) / pivot_;
}

double RayleighKernel::j(VertexIndex z, VertexIndex x, VertexIndex y) const {
  return kernel_.j(z, x, y) - kernel_.cross_ratio(x, z, tail_, head_) * kernel_.cross_ratio(y, z, tail_, head_) / pivot_;
}

double RayleighKernel::resistance(VertexIndex x, VertexIndex y) const {
  const double xi = kernel_.cross_ratio(x, y, tail_, head_);
  return kernel_.resistance(x, y) - xi * xi / pivot_;
}

double contracted_energy_pairing(const WeightedGraph& graph, EdgeIndex e, const ZeroDivisor& a,
                                 const ZeroDivisor& b) {
  return RayleighKernel(graph, e).energy(a, b);
}

double contracted_cross_ratio(const WeightedGraph& graph, EdgeIndex e, const Point& x, const Point& y, const Point& z,
                              const Point& w) {
  const std::array<Point, 4> pts{x, y, z, w};
  const auto q = refine_around(graph, e, pts);
  const auto& v = q.model.points;
  return RayleighKernel(q.model.graph, q.edge).cross_ratio(v[0], v[1], v[2], v[3]);
}

double contracted_j(const WeightedGraph& graph, EdgeIndex e, const Point& z, const Point& x, const Point& y) {
  const std::array<Point, 3> pts{z, x, y};
  const auto q = refine_around(graph, e, pts);
  const auto& v = q.model.points;
  return RayleighKernel(q.model.graph, q.edge).j(v[0], v[1], v[2]);
}

double contracted_resistance(const WeightedGraph& graph, EdgeIndex e, const Point& x, const Point& y) {
  const std::array<Point, 2> pts{x, y};
  const auto q = refine_around(graph, e, pts);
  const auto& v = q.model.points;
  return RayleighKernel(q.model.graph, q.edge).resistance(v[0], v[1]);
}

// --- matrix update ----------------------------------------------------------

ContractionUpdate update_xi(const WeightedGraph& graph, const Eigen::MatrixXd& xi, EdgeIndex e) {
  check_edge(graph, e);
  const Index m = idx(graph.edge_count());
  if (xi.rows() != m || xi.cols() != m) {
    throw Error(ErrorCode::InvalidArgument, "Xi has the wrong shape");
  }
  const Index k = idx(e);
  ContractionUpdate out;
  out.contracted_edge = e;
  out.pivot_resistance = xi(k, k);
  if (!(out.pivot_resistance >= kMinPivot)) {
    throw Error(ErrorCode::DegeneratePivot, "r(e-, e+) = " + std::to_string(out.pivot_resistance) + " on edge '" +
                                                graph.edge(e).id + "'; rebuild the contracted graph instead");
  }
  out.correction = xi.col(k);
  out.xi = xi - out.correction * out.correction.transpose() / out.pivot_resistance;
  out.xi = 0.5 * (out.xi + out.xi.transpose()).eval();
  out.xi.row(k).setZero();
  out.xi.col(k).setZero();
  out.s = edge_gram(graph).inverse() * out.xi;
  return out;
}

ContractionUpdate contracted_xi_matrix(const WeightedGraph& graph, const Orientation& orientation, EdgeIndex e) {
  return update_xi(graph, xi_matrix(graph, orientation), e);
}

Eigen::MatrixXd pullback_xi(const WeightedGraph& original, const Orientation& orientation,
                            const Contraction& contraction) {
  const Eigen::MatrixXd xc = xi_matrix(contraction.graph, Orientation::standard(contraction.graph));
  const Index m = idx(original.edge_count());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
  for (EdgeIndex f = 0; f < original.edge_count(); ++f) {
    for (EdgeIndex g = 0; g < original.edge_count(); ++g) {
      double sum = 0.0;
      for (EdgeIndex a : contraction.edge_image[f]) {
        for (EdgeIndex b : contraction.edge_image[g]) {
          sum += xc(idx(a), idx(b));
        }
      }
      out(idx(f), idx(g)) = orientation.sign(f) * orientation.sign(g) * sum;
    }
  }
  return out;
}

// --- sequences --------------------------------------------------------------

std::vector<ContractionStep> contraction_sequence(const WeightedGraph& graph, std::span<const EdgeIndex> edges,
                                                  std::span<const ContractionQuery> queries) {
  validate(graph);
  const auto orientation = Orientation::standard(graph);
  auto path = [&](VertexIndex from, VertexIndex to) {
    return chain_of_path(graph, orientation, shortest_hop_path(graph, from, to)).coefficients();
  };

  // Each query is a pairing g1^T Xi g2 of chains in the original graph.
  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> chains;
  for (const auto& q : queries) {
    const auto& v = q.vertices;
    const std::size_t arity = q.kind == ContractionQuery::Kind::CrossRatio ? 4 : (q.kind == ContractionQuery::Kind::J ? 3 : 2);
    if (v.size() != arity) {
      throw Error(ErrorCode::InvalidArgument, "query expects " + std::to_string(arity) + " vertices");
    }
    for (VertexIndex x : v) {
      if (x >= graph.vertex_count()) throw Error(ErrorCode::UnknownVertex, "vertex index " + std::to_string(x));
    }
    switch (q.kind) {
      case ContractionQuery::Kind::Resistance: chains.emplace_back(path(v[1], v[0]), path(v[1], v[0])); break;
      case ContractionQuery::Kind::CrossRatio: chains.emplace_back(path(v[1], v[0]), path(v[3], v[2])); break;
      case ContractionQuery::Kind::J: chains.emplace_back(path(v[0], v[1]), path(v[0], v[2])); break;
    }
  }

  Eigen::MatrixXd xi = xi_matrix(graph, orientation);
  auto answer = [&](ContractionStep& step, const std::vector<double>* previous) {
    for (std::size_t i = 0; i < chains.size(); ++i) {
      step.answers.push_back(chains[i].first.dot(xi * chains[i].second));
      step.corrections.push_back(previous ? (*previous)[i] - step.answers.back() : 0.0);
    }
  };

  std::vector<ContractionStep> steps(1);
  answer(steps.front(), nullptr);

  Counter merged(graph.vertex_count());
  std::vector<bool> contracted(graph.edge_count(), false);
  std::size_t contracted_count = 0;
  for (EdgeIndex e : edges) {
    check_edge(graph, e);
    const Edge& edge = graph.edge(e);
    if (contracted[e] || merged.find(edge.u) == merged.find(edge.v)) {
      throw Error(ErrorCode::DegeneratePivot, "endpoints of '" + edge.id + "' are already identified");
    }
    if (contracted_count + 1 == graph.edge_count()) {
      throw Error(ErrorCode::TooFewVertices, "contracting '" + edge.id + "' collapses the graph to a point");
    }
    auto update = update_xi(graph, xi, e);
    xi = std::move(update.xi);
    merged.unite(edge.u, edge.v);
    contracted[e] = true;
    ++contracted_count;

    ContractionStep step;
    step.edge = e;
    step.pivot_resistance = update.pivot_resistance;
    answer(step, &steps.back().answers);
    steps.push_back(std::move(step));
  }
  return steps;
}

}  // namespace ohmgraph
