#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "ohmgraph/graph.hpp"
#include "ohmgraph/potentials.hpp"

namespace ohmgraph {

// Exact updates of electrical quantities when an edge e is short-circuited
// (contracted to a point), computed from the uncontracted graph alone. Every
// update subtracts a product of two pairings against the dipole
// delta(e+) - delta(e-), divided by r(e-, e+).

/// Pivots below this are treated as an already shorted edge.
inline constexpr double kMinPivot = 1e-12;

/// Vertex-level Rayleigh updates for one edge, sharing one factorization.
class RayleighKernel {
 public:
  /// Throws UnknownEdge, or DegeneratePivot if r(e-, e+) < kMinPivot.
  RayleighKernel(const WeightedGraph& graph, EdgeIndex e);

  EdgeIndex edge() const { return edge_; }
  double pivot_resistance() const { return pivot_; }
  const PotentialKernel& kernel() const { return kernel_; }

  double energy(const ZeroDivisor& a, const ZeroDivisor& b) const;
  double cross_ratio(VertexIndex x, VertexIndex y, VertexIndex z, VertexIndex w) const;
  double j(VertexIndex z, VertexIndex x, VertexIndex y) const;
  double resistance(VertexIndex x, VertexIndex y) const;

 private:
  EdgeIndex edge_;
  VertexIndex tail_;
  VertexIndex head_;
  PotentialKernel kernel_;
  double pivot_;
};

double contracted_energy_pairing(const WeightedGraph& graph, EdgeIndex e, const ZeroDivisor& a, const ZeroDivisor& b);

// Points may be vertices or edge points; points strictly inside e are rejected
// with InvalidArgument because e must remain an edge of the model.
double contracted_cross_ratio(const WeightedGraph& graph, EdgeIndex e, const Point& x, const Point& y, const Point& z,
                              const Point& w);
double contracted_j(const WeightedGraph& graph, EdgeIndex e, const Point& z, const Point& x, const Point& y);
double contracted_resistance(const WeightedGraph& graph, EdgeIndex e, const Point& x, const Point& y);

/// Rank-1 update of the cross-ratio matrix.
///
/// xi is the updated Xi (symmetric, still indexed by the original edges) and
/// s = D^-1 xi is the matrix of the cocycle projection of G/e pulled back
/// along the inclusion of chains. Row and column e of xi vanish.
struct ContractionUpdate {
  EdgeIndex contracted_edge = 0;
  double pivot_resistance = 0.0;
  Eigen::VectorXd correction;  // Xi [e]
  Eigen::MatrixXd xi;
  Eigen::MatrixXd s;
};

ContractionUpdate contracted_xi_matrix(const WeightedGraph& graph, const Orientation& orientation, EdgeIndex e);

/// The same update applied to an arbitrary current Xi (for sequences).
/// Throws DegeneratePivot if Xi(e, e) < kMinPivot.
ContractionUpdate update_xi(const WeightedGraph& graph, const Eigen::MatrixXd& xi, EdgeIndex e);

/// Xi of G/e expressed on the original edges: entry (f, g) pairs the images of
/// f and g in the contracted model. Row and column of the contracted edge are zero.
Eigen::MatrixXd pullback_xi(const WeightedGraph& original, const Orientation& orientation,
                            const Contraction& contraction);

struct ContractionQuery {
  enum class Kind { Resistance, CrossRatio, J };
  Kind kind = Kind::Resistance;
  /// Resistance: {x, y}; CrossRatio: {x, y, z, w}; J: {z, x, y}.
  std::vector<VertexIndex> vertices;
};

struct ContractionStep {
  std::optional<EdgeIndex> edge;  // empty for the initial state
  double pivot_resistance = 0.0;
  std::vector<double> answers;
  std::vector<double> corrections;  // previous answer minus this one
};

/// Contracts the edges in order by repeated rank-1 updates and answers every
/// query after each step. The first step reports the uncontracted values.
/// Throws TooFewVertices if every edge gets contracted and DegeneratePivot if
/// an edge's endpoints were already identified.
std::vector<ContractionStep> contraction_sequence(const WeightedGraph& graph, std::span<const EdgeIndex> edges,
                                                  std::span<const ContractionQuery> queries);

}  // namespace ohmgraph
