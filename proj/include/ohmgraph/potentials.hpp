#pragma once

#include <Eigen/Core>

#include "ohmgraph/graph.hpp"
#include "ohmgraph/laplacian.hpp"

namespace ohmgraph {

/// Vertex-level potential theory from a single factorization of the Laplacian.
///
/// Every quantity below is a pairing of mass-zero divisors, so any generalized
/// inverse L works:
///   j_q(x, y)        = <d_x - d_q, d_y - d_q>
///   r(x, y)          = <d_x - d_y, d_x - d_y>
///   xi(x, y, z, w)   = <d_x - d_y, d_z - d_w>
/// with <a, b> = a^T L b.
class PotentialKernel {
 public:
  explicit PotentialKernel(const WeightedGraph& graph, VertexIndex ground = 0);
  PotentialKernel(const WeightedGraph& graph, GeneralizedInverse inverse);

  std::size_t vertex_count() const { return static_cast<std::size_t>(l_.matrix.rows()); }
  const GeneralizedInverse& inverse() const { return l_; }

  double j(VertexIndex q, VertexIndex x, VertexIndex y) const;
  double resistance(VertexIndex x, VertexIndex y) const;
  double gromov_product(VertexIndex x, VertexIndex y, VertexIndex z) const;
  /// Computed as j_q(x,z) + j_q(y,w) - j_q(x,w) - j_q(y,z) with q the kernel's ground.
  double cross_ratio(VertexIndex x, VertexIndex y, VertexIndex z, VertexIndex w) const;
  double cross_ratio_grounded_at(VertexIndex q, VertexIndex x, VertexIndex y, VertexIndex z, VertexIndex w) const;
  /// Throws InvalidArgument on size mismatch.
  double energy(const ZeroDivisor& a, const ZeroDivisor& b) const;

  /// All-pairs effective resistance.
  Eigen::MatrixXd resistance_matrix() const;
  /// Xi = B^T L B, symmetric, indexed by edge order.
  Eigen::MatrixXd xi(const WeightedGraph& graph, const Orientation& orientation) const;

 private:
  double entry(VertexIndex a, VertexIndex b) const { return l_.matrix(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)); }

  GeneralizedInverse l_;
};

// Point-level queries. Points on edges are resolved by refining the model
// once with all query points, so the answers do not depend on the model.

double j_function(const WeightedGraph& graph, const Point& q, const Point& x, const Point& y);
double effective_resistance(const WeightedGraph& graph, const Point& x, const Point& y);
/// (x|y)_z = (r(x,z) + r(y,z) - r(x,y)) / 2.
double gromov_product(const WeightedGraph& graph, const Point& x, const Point& y, const Point& z);
/// Base-point free; the sign flips with the order within either pair.
double cross_ratio(const WeightedGraph& graph, const Point& x, const Point& y, const Point& z, const Point& w);

/// Xi(e, f) = xi(e-, e+, f-, f+). Depends on the orientation through the sign
/// of each row and column.
Eigen::MatrixXd xi_matrix(const WeightedGraph& graph, const Orientation& orientation);

double energy_pairing(const WeightedGraph& graph, const ZeroDivisor& a, const ZeroDivisor& b);

/// psi_1^T Q psi_2 on vertex functions.
double dirichlet_pairing(const WeightedGraph& graph, const Eigen::VectorXd& psi1, const Eigen::VectorXd& psi2);

}  // namespace ohmgraph
