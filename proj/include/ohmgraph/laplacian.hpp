#pragma once

#include <optional>

#include <Eigen/Core>

#include "ohmgraph/graph.hpp"

namespace ohmgraph {

/// Q: symmetric, zero row sums, q_ij = -sum of 1/length over edges {v_i, v_j}.
Eigen::MatrixXd laplacian_matrix(const WeightedGraph& graph);

/// B (n x m): +1 at the head of each edge, -1 at its tail.
Eigen::MatrixXd incidence_matrix(const WeightedGraph& graph, const Orientation& orientation);

/// D: diagonal of edge lengths in edge order. Also the Gram matrix of the
/// length-weighted inner product on 1-chains.
Eigen::DiagonalMatrix<double, Eigen::Dynamic> edge_gram(const WeightedGraph& graph);

/// Q with row and column q removed.
Eigen::MatrixXd reduced_laplacian(const Eigen::MatrixXd& laplacian, VertexIndex q);

/// det(Q_q), by Cholesky.
double reduced_determinant(const WeightedGraph& graph, VertexIndex q);

/// Reduced Laplacians with a condition estimate above this are flagged.
inline constexpr double kIllConditioned = 1e12;

/// A matrix L with Q L Q = Q.
struct GeneralizedInverse {
  enum class Kind { Grounded, Pseudo };

  Kind kind = Kind::Grounded;
  std::optional<VertexIndex> ground;
  Eigen::MatrixXd matrix;
  /// Estimated 1-norm condition number of the factored Q_q.
  double condition_estimate = 1.0;

  bool ill_conditioned() const { return condition_estimate > kIllConditioned; }
};

/// L_q: inverse of Q_q padded with a zero row and column at q. Its entries are
/// the potential kernel j_q(p, v).
GeneralizedInverse grounded_inverse(const WeightedGraph& graph, VertexIndex q);

/// (1/n) * sum over q of L_q.
///
/// This is a generalized inverse but not literally the Moore-Penrose inverse:
/// it equals Q+ + (trace(Q+)/n) * J with J the all-ones matrix. Both give
/// the same pairing on mass-zero divisors.
GeneralizedInverse pseudo_inverse(const WeightedGraph& graph);

/// psi with Q psi = nu and psi(q) = 0.
Eigen::VectorXd solve_dirichlet(const WeightedGraph& graph, const ZeroDivisor& nu, VertexIndex q);

}  // namespace ohmgraph
