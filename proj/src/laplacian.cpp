#include "ohmgraph/laplacian.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Cholesky>

#include "ohmgraph/error.hpp"

namespace ohmgraph {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

Eigen::LLT<Eigen::MatrixXd> factor_reduced(const WeightedGraph& graph, VertexIndex q) {
  if (q >= graph.vertex_count()) {
    throw Error(ErrorCode::UnknownVertex, "ground index " + std::to_string(q));
  }
  Eigen::LLT<Eigen::MatrixXd> llt(reduced_laplacian(laplacian_matrix(graph), q));
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::SingularReducedLaplacian, "reduced Laplacian is not positive definite");
  }
  return llt;
}

// Maps a vertex index to its row in Q_q.
Index reduced_row(VertexIndex v, VertexIndex q) { return idx(v < q ? v : v - 1); }

}  // namespace

Eigen::MatrixXd laplacian_matrix(const WeightedGraph& graph) {
  const Index n = idx(graph.vertex_count());
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : graph.edges()) {
    const double c = 1.0 / e.length;
    q(idx(e.u), idx(e.v)) -= c;
    q(idx(e.v), idx(e.u)) -= c;
    q(idx(e.u), idx(e.u)) += c;
    q(idx(e.v), idx(e.v)) += c;
  }
  return q;
}

Eigen::MatrixXd incidence_matrix(const WeightedGraph& graph, const Orientation& orientation) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(idx(graph.vertex_count()), idx(graph.edge_count()));
  for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
    b(idx(orientation.head(e)), idx(e)) = 1.0;
    b(idx(orientation.tail(e)), idx(e)) = -1.0;
  }
  return b;
}

Eigen::DiagonalMatrix<double, Eigen::Dynamic> edge_gram(const WeightedGraph& graph) {
  Eigen::VectorXd d(idx(graph.edge_count()));
  for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
    d(idx(e)) = graph.length(e);
  }
  return Eigen::DiagonalMatrix<double, Eigen::Dynamic>(d);
}

Eigen::MatrixXd reduced_laplacian(const Eigen::MatrixXd& laplacian, VertexIndex q) {
  const Index n = laplacian.rows();
  const Index k = idx(q);
  Eigen::MatrixXd r(n - 1, n - 1);
  for (Index i = 0, ri = 0; i < n; ++i) {
    if (i == k) continue;
    for (Index j = 0, rj = 0; j < n; ++j) {
      if (j == k) continue;
      r(ri, rj++) = laplacian(i, j);
    }
    ++ri;
  }
  return r;
}

double reduced_determinant(const WeightedGraph& graph, VertexIndex q) {
  const auto llt = factor_reduced(graph, q);
  const Eigen::VectorXd diag = llt.matrixL().toDenseMatrix().diagonal();
  double det = 1.0;
  for (Index i = 0; i < diag.size(); ++i) {
    det *= diag(i) * diag(i);
  }
  return det;
}

GeneralizedInverse grounded_inverse(const WeightedGraph& graph, VertexIndex q) {
  const auto llt = factor_reduced(graph, q);
  const Index n = idx(graph.vertex_count());
  const Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(n - 1, n - 1));

  GeneralizedInverse out;
  out.kind = GeneralizedInverse::Kind::Grounded;
  out.ground = q;
  out.matrix = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    if (i == idx(q)) continue;
    for (Index j = 0; j < n; ++j) {
      if (j == idx(q)) continue;
      out.matrix(i, j) = inv(reduced_row(static_cast<VertexIndex>(i), q), reduced_row(static_cast<VertexIndex>(j), q));
    }
  }
  // Symmetric by construction up to rounding; keep it exactly symmetric.
  out.matrix = 0.5 * (out.matrix + out.matrix.transpose()).eval();
  const double rcond = llt.rcond();
  out.condition_estimate = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  return out;
}

GeneralizedInverse pseudo_inverse(const WeightedGraph& graph) {
  // L_q(x, y) = L_0(x, y) - L_0(x, q) - L_0(q, y) + L_0(q, q) for every ground q,
  // so the average over q only needs one factorization.
  const GeneralizedInverse base = grounded_inverse(graph, 0);
  const Eigen::MatrixXd& l0 = base.matrix;
  const Eigen::VectorXd row_mean = l0.rowwise().mean();
  const Eigen::RowVectorXd col_mean = l0.colwise().mean();
  const double diag_mean = l0.diagonal().mean();

  GeneralizedInverse out;
  out.kind = GeneralizedInverse::Kind::Pseudo;
  out.matrix = l0;
  out.matrix.colwise() -= row_mean;
  out.matrix.rowwise() -= col_mean;
  out.matrix.array() += diag_mean;
  out.matrix = 0.5 * (out.matrix + out.matrix.transpose()).eval();
  out.condition_estimate = base.condition_estimate;
  return out;
}

Eigen::VectorXd solve_dirichlet(const WeightedGraph& graph, const ZeroDivisor& nu, VertexIndex q) {
  if (nu.size() != graph.vertex_count()) {
    throw Error(ErrorCode::InvalidArgument, "divisor size does not match vertex count");
  }
  const auto llt = factor_reduced(graph, q);
  const Index n = idx(graph.vertex_count());
  Eigen::VectorXd rhs(n - 1);
  for (VertexIndex v = 0; v < graph.vertex_count(); ++v) {
    if (v != q) rhs(reduced_row(v, q)) = nu[v];
  }
  const Eigen::VectorXd x = llt.solve(rhs);
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(n);
  for (VertexIndex v = 0; v < graph.vertex_count(); ++v) {
    if (v != q) psi(idx(v)) = x(reduced_row(v, q));
  }
  return psi;
}

}  // namespace ohmgraph
