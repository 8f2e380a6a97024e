#include "ohmgraph/potentials.hpp"

#include <array>

#include "ohmgraph/error.hpp"

namespace ohmgraph {

namespace {

using Index = Eigen::Index;

template <std::size_t N>
std::array<VertexIndex, N> resolve(const RefinedModel& model) {
  std::array<VertexIndex, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = model.points[i];
  }
  return out;
}

}  // namespace

PotentialKernel::PotentialKernel(const WeightedGraph& graph, VertexIndex ground)
    : l_(grounded_inverse(graph, ground)) {}

PotentialKernel::PotentialKernel(const WeightedGraph& graph, GeneralizedInverse inverse) : l_(std::move(inverse)) {
  if (static_cast<std::size_t>(l_.matrix.rows()) != graph.vertex_count() ||
      l_.matrix.rows() != l_.matrix.cols()) {
    throw Error(ErrorCode::InvalidArgument, "generalized inverse has the wrong shape");
  }
}

double PotentialKernel::j(VertexIndex q, VertexIndex x, VertexIndex y) const {
  if (l_.ground && *l_.ground == q) {
    return entry(x, y);
  }
  return entry(x, y) - entry(x, q) - entry(q, y) + entry(q, q);
}

double PotentialKernel::resistance(VertexIndex x, VertexIndex y) const {
  if (x == y) {
    return 0.0;
  }
  return entry(x, x) + entry(y, y) - entry(x, y) - entry(y, x);
}

double PotentialKernel::gromov_product(VertexIndex x, VertexIndex y, VertexIndex z) const {
  return 0.5 * (resistance(x, z) + resistance(y, z) - resistance(x, y));
}

double PotentialKernel::cross_ratio(VertexIndex x, VertexIndex y, VertexIndex z, VertexIndex w) const {
  return cross_ratio_grounded_at(l_.ground.value_or(0), x, y, z, w);
}

double PotentialKernel::cross_ratio_grounded_at(VertexIndex q, VertexIndex x, VertexIndex y, VertexIndex z,
                                                VertexIndex w) const {
  return j(q, x, z) + j(q, y, w) - j(q, x, w) - j(q, y, z);
}

double PotentialKernel::energy(const ZeroDivisor& a, const ZeroDivisor& b) const {
  if (a.size() != vertex_count() || b.size() != vertex_count()) {
    throw Error(ErrorCode::InvalidArgument, "divisor size does not match vertex count");
  }
  return a.masses().dot(l_.matrix * b.masses());
}

Eigen::MatrixXd PotentialKernel::resistance_matrix() const {
  const Index n = l_.matrix.rows();
  Eigen::MatrixXd r(n, n);
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      r(x, y) = resistance(static_cast<VertexIndex>(x), static_cast<VertexIndex>(y));
    }
  }
  return r;
}

Eigen::MatrixXd PotentialKernel::xi(const WeightedGraph& graph, const Orientation& orientation) const {
  const Index m = static_cast<Index>(graph.edge_count());
  const Index n = l_.matrix.rows();
  // Columns of L B: column f is L(:, f+) - L(:, f-).
  Eigen::MatrixXd lb(n, m);
  for (Index f = 0; f < m; ++f) {
    lb.col(f) = l_.matrix.col(static_cast<Index>(orientation.head(static_cast<EdgeIndex>(f)))) -
                l_.matrix.col(static_cast<Index>(orientation.tail(static_cast<EdgeIndex>(f))));
  }
  Eigen::MatrixXd out(m, m);
  for (Index e = 0; e < m; ++e) {
    const Index head = static_cast<Index>(orientation.head(static_cast<EdgeIndex>(e)));
    const Index tail = static_cast<Index>(orientation.tail(static_cast<EdgeIndex>(e)));
    for (Index f = e; f < m; ++f) {
      out(e, f) = lb(head, f) - lb(tail, f);
      out(f, e) = out(e, f);
    }
  }
  return out;
}

double j_function(const WeightedGraph& graph, const Point& q, const Point& x, const Point& y) {
  const std::array<Point, 3> pts{q, x, y};
  const auto model = refine(graph, pts);
  const auto [vq, vx, vy] = resolve<3>(model);
  return PotentialKernel(model.graph, vq).j(vq, vx, vy);
}

double effective_resistance(const WeightedGraph& graph, const Point& x, const Point& y) {
  const std::array<Point, 2> pts{x, y};
  const auto model = refine(graph, pts);
  const auto [vx, vy] = resolve<2>(model);
  if (vx == vy) {
    return 0.0;
  }
  // r(x, y) = j_y(x, x)
  return PotentialKernel(model.graph, vy).j(vy, vx, vx);
}

double gromov_product(const WeightedGraph& graph, const Point& x, const Point& y, const Point& z) {
  const std::array<Point, 3> pts{x, y, z};
  const auto model = refine(graph, pts);
  const auto [vx, vy, vz] = resolve<3>(model);
  return PotentialKernel(model.graph).gromov_product(vx, vy, vz);
}

double cross_ratio(const WeightedGraph& graph, const Point& x, const Point& y, const Point& z, const Point& w) {
  const std::array<Point, 4> pts{x, y, z, w};
  const auto model = refine(graph, pts);
  const auto [vx, vy, vz, vw] = resolve<4>(model);
  return PotentialKernel(model.graph, 0).cross_ratio(vx, vy, vz, vw);
}

Eigen::MatrixXd xi_matrix(const WeightedGraph& graph, const Orientation& orientation) {
  return PotentialKernel(graph).xi(graph, orientation);
}

double energy_pairing(const WeightedGraph& graph, const ZeroDivisor& a, const ZeroDivisor& b) {
  return PotentialKernel(graph).energy(a, b);
}

double dirichlet_pairing(const WeightedGraph& graph, const Eigen::VectorXd& psi1, const Eigen::VectorXd& psi2) {
  const auto n = static_cast<Index>(graph.vertex_count());
  if (psi1.size() != n || psi2.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "vertex function size does not match vertex count");
  }
  return psi1.dot(laplacian_matrix(graph) * psi2);
}

}  // namespace ohmgraph
