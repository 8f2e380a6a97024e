#include "ohmgraph/projections.hpp"

#include "ohmgraph/error.hpp"
#include "ohmgraph/laplacian.hpp"
#include "ohmgraph/potentials.hpp"

namespace ohmgraph {

namespace {

OneChain path_chain(const WeightedGraph& graph, const Orientation& orientation, VertexIndex from, VertexIndex to) {
  return chain_of_path(graph, orientation, shortest_hop_path(graph, from, to));
}

void check_chain(const WeightedGraph& graph, const OneChain& c) {
  if (c.size() != graph.edge_count()) {
    throw Error(ErrorCode::InvalidArgument, "chain size does not match edge count");
  }
}

}  // namespace

ProjectionPair projections_from_xi(const WeightedGraph& graph, const Eigen::MatrixXd& xi) {
  const auto m = static_cast<Eigen::Index>(graph.edge_count());
  if (xi.rows() != m || xi.cols() != m) {
    throw Error(ErrorCode::InvalidArgument, "Xi has the wrong shape");
  }
  ProjectionPair out;
  out.cocycle = edge_gram(graph).inverse() * xi;
  out.cycle = Eigen::MatrixXd::Identity(m, m) - out.cocycle;
  return out;
}

ProjectionPair projection_matrices(const WeightedGraph& graph, const Orientation& orientation) {
  return projections_from_xi(graph, xi_matrix(graph, orientation));
}

double foster_coefficient(const WeightedGraph& graph, EdgeIndex e) {
  if (e >= graph.edge_count()) {
    throw Error(ErrorCode::UnknownEdge, "edge index " + std::to_string(e));
  }
  const Edge& edge = graph.edge(e);
  return 1.0 - PotentialKernel(graph).resistance(edge.u, edge.v) / edge.length;
}

double chain_inner_product(const WeightedGraph& graph, const OneChain& a, const OneChain& b) {
  check_chain(graph, a);
  check_chain(graph, b);
  double sum = 0.0;
  for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
    sum += graph.length(e) * a[e] * b[e];
  }
  return sum;
}

KirchhoffSolution solve_kirchhoff(const WeightedGraph& graph, const Orientation& orientation, const OneChain& source,
                                  VertexIndex ground) {
  check_chain(graph, source);
  const auto projections = projection_matrices(graph, orientation);
  KirchhoffSolution out{OneChain(projections.cocycle * source.coefficients()), {}, {}, ground};
  out.voltage = edge_gram(graph) * out.current.coefficients();
  out.potential = solve_dirichlet(graph, boundary(graph, orientation, source), ground);
  return out;
}

double energy_via_projection(const WeightedGraph& graph, const ProjectionPair& projections, const OneChain& g1,
                             const OneChain& g2) {
  check_chain(graph, g1);
  check_chain(graph, g2);
  return chain_inner_product(graph, g1, OneChain(projections.cocycle * g2.coefficients()));
}

double energy_via_projection(const WeightedGraph& graph, const Orientation& orientation, const OneChain& g1,
                             const OneChain& g2) {
  return energy_via_projection(graph, projection_matrices(graph, orientation), g1, g2);
}

double resistance_via_thomson(const WeightedGraph& graph, const Orientation& orientation, VertexIndex x,
                              VertexIndex y) {
  if (x == y) {
    throw Error(ErrorCode::InvalidArgument, "Thomson resistance needs two distinct vertices");
  }
  const auto projections = projection_matrices(graph, orientation);
  const OneChain projected(projections.cocycle * path_chain(graph, orientation, y, x).coefficients());
  return chain_inner_product(graph, projected, projected);
}

double cross_ratio_via_projection(const WeightedGraph& graph, const ProjectionPair& projections,
                                  const Orientation& orientation, VertexIndex x, VertexIndex y, VertexIndex z,
                                  VertexIndex w) {
  return energy_via_projection(graph, projections, path_chain(graph, orientation, y, x),
                               path_chain(graph, orientation, w, z));
}

double j_via_projection(const WeightedGraph& graph, const ProjectionPair& projections, const Orientation& orientation,
                        VertexIndex z, VertexIndex x, VertexIndex y) {
  return energy_via_projection(graph, projections, path_chain(graph, orientation, z, x),
                               path_chain(graph, orientation, z, y));
}

}  // namespace ohmgraph
