#pragma once

#include <Eigen/Core>

#include "ohmgraph/graph.hpp"

namespace ohmgraph {

/// Matrices, in the basis of oriented edges, of the orthogonal projections of
/// 1-chains onto the cycle space H1 (cycle) and onto its orthogonal
/// complement (cocycle), orthogonality taken w.r.t. [e_i, e_j] = delta_ij l(e_i).
struct ProjectionPair {
  Eigen::MatrixXd cycle;
  Eigen::MatrixXd cocycle;
};

/// cocycle = D^-1 Xi, cycle = I - D^-1 Xi.
ProjectionPair projection_matrices(const WeightedGraph& graph, const Orientation& orientation);
ProjectionPair projections_from_xi(const WeightedGraph& graph, const Eigen::MatrixXd& xi);

/// 1 - r(e-, e+) / l(e).
double foster_coefficient(const WeightedGraph& graph, EdgeIndex e);

/// [a, b] = sum_e l(e) a_e b_e.
double chain_inner_product(const WeightedGraph& graph, const OneChain& a, const OneChain& b);

/// Solution of the Kirchhoff problem for an external source chain c.
struct KirchhoffSolution {
  OneChain current;         // i = pi'(c), amperes per oriented edge
  Eigen::VectorXd voltage;  // v(e) = l(e) i(e) = psi(e+) - psi(e-), volts
  Eigen::VectorXd potential;  // psi with Laplacian(psi) = boundary(c), psi(ground) = 0
  VertexIndex ground = 0;
};

KirchhoffSolution solve_kirchhoff(const WeightedGraph& graph, const Orientation& orientation, const OneChain& source,
                                  VertexIndex ground);

/// [g1, pi'(g2)], which equals the energy pairing of the boundaries.
double energy_via_projection(const WeightedGraph& graph, const ProjectionPair& projections, const OneChain& g1,
                             const OneChain& g2);
double energy_via_projection(const WeightedGraph& graph, const Orientation& orientation, const OneChain& g1,
                             const OneChain& g2);

/// r(x, y) as the squared norm of pi' applied to a path chain from y to x.
double resistance_via_thomson(const WeightedGraph& graph, const Orientation& orientation, VertexIndex x,
                              VertexIndex y);

/// xi(x, y, z, w) = [gamma_yx, pi'(gamma_wz)] with shortest-hop paths.
double cross_ratio_via_projection(const WeightedGraph& graph, const ProjectionPair& projections,
                                  const Orientation& orientation, VertexIndex x, VertexIndex y, VertexIndex z,
                                  VertexIndex w);

/// j_z(x, y) = [gamma_zx, pi'(gamma_zy)].
double j_via_projection(const WeightedGraph& graph, const ProjectionPair& projections, const Orientation& orientation,
                        VertexIndex z, VertexIndex x, VertexIndex y);

}  // namespace ohmgraph
