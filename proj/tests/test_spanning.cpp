#include <doctest.h>

#include "fixtures.hpp"
#include "ohmgraph/error.hpp"
#include "ohmgraph/laplacian.hpp"
#include "ohmgraph/potentials.hpp"
#include "ohmgraph/projections.hpp"
#include "ohmgraph/spanning.hpp"
#include "ohmgraph/verify.hpp"

using namespace ohmgraph;

TEST_CASE("bridge has eight spanning trees") {
  const auto g = fixtures::bridge();
  const auto t = enumerate_spanning_trees(g);
  REQUIRE(t.trees.size() == 8);
  CHECK(t.trees.front().edges == std::vector<EdgeIndex>{0, 1, 2});
  CHECK(t.total_coweight == doctest::Approx(1.5).epsilon(1e-15));
  // trees avoiding e5 drop one side (weight 2*1), trees with e5 drop two sides (2*2)
  CHECK(t.total_weight == doctest::Approx(4 * 2.0 + 4 * 4.0).epsilon(1e-15));
  for (const auto& tree : t.trees) CHECK(tree.edges.size() == 3);
}

TEST_CASE("parallel pair: Pr{e not in T} is the Foster coefficient") {
  const auto g = fixtures::parallel_pair();
  const auto t = enumerate_spanning_trees(g);
  REQUIRE(t.trees.size() == 2);
  const Eigen::VectorXd p = exclusion_probabilities(g, t);
  CHECK(p(0) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(p(1) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(tree_probability(t, t.trees[0]) == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("matrix-tree theorem on fixtures") {
  for (const auto& g : {fixtures::bridge(), fixtures::tripod(), fixtures::c3(), fixtures::parallel_pair()}) {
    for (VertexIndex q = 0; q < g.vertex_count(); ++q) {
      const auto c = matrix_tree_check(g, q);
      CHECK(c.enumerated_coweight == doctest::Approx(c.reduced_determinant).epsilon(1e-12));
    }
  }
}

TEST_CASE("fundamental circuits and cocircuits") {
  const auto g = fixtures::bridge();
  const auto o = Orientation::standard(g);
  const auto t = enumerate_spanning_trees(g);
  const Eigen::MatrixXd b = incidence_matrix(g, o);
  for (const auto& tree : t.trees) {
    for (EdgeIndex e = 0; e < 5; ++e) {
      const auto circuit = fundamental_circuit_chain(g, o, tree, e);
      const auto cocircuit = fundamental_cocircuit_chain(g, o, tree, e);
      if (tree.contains(e)) {
        CHECK(circuit.coefficients().isZero(0.0));
        CHECK(cocircuit[e] == 1.0);
        for (EdgeIndex f : tree.edges) CHECK(cocircuit[f] == (f == e ? 1.0 : 0.0));
      } else {
        CHECK(cocircuit.coefficients().isZero(0.0));
        CHECK(circuit[e] == 1.0);
        CHECK((b * circuit.coefficients()).isZero(0.0));
      }
    }
  }
}

TEST_CASE("cut orientation follows the tail side") {
  // path A -e1-> B -e2-> C plus chord A -e3-> C
  const WeightedGraph g({"A", "B", "C"}, {{"e1", 0, 1, 1.0}, {"e2", 1, 2, 1.0}, {"e3", 0, 2, 1.0}});
  const auto o = Orientation::standard(g);
  const SpanningTree tree{{0, 1}, 1.0, 1.0};
  const auto cut = fundamental_cocircuit_chain(g, o, tree, 0);  // {A} | {B, C}
  CHECK(cut[0] == 1.0);
  CHECK(cut[2] == 1.0);
  const auto cut2 = fundamental_cocircuit_chain(g, o.reversed(2), tree, 0);
  CHECK(cut2[2] == -1.0);
  const auto circuit = fundamental_circuit_chain(g, o, tree, 2);  // A->C back via B
  CHECK(circuit.coefficients() == Eigen::Vector3d(-1.0, -1.0, 1.0));
}

TEST_CASE("Kirchhoff's tree averages equal the cross-ratio projections on the bridge") {
  const auto g = fixtures::bridge();
  const auto o = Orientation::standard(g).reversed(3);
  const auto k = kirchhoff_projection_matrices(g, o);
  const auto x = projection_matrices(g, o);
  CHECK((k.cycle - x.cycle).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((k.cocycle - x.cocycle).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("the oracle refuses large graphs") {
  std::mt19937_64 rng(3);
  const auto big = random_graph(rng, 40, 120);
  CHECK_THROWS_AS(enumerate_spanning_trees(big, 1000), Error);
  try {
    enumerate_spanning_trees(big);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooManyTrees);
  }
  CHECK_THROWS_AS(enumerate_spanning_trees(fixtures::bridge(), 7), Error);
}

TEST_CASE("tree ratios agree") {
  const auto g = fixtures::bridge();
  auto t = enumerate_spanning_trees(g);
  double total = 0.0;
  for (const auto& tree : t.trees) total += tree_probability(t, tree);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
  t.trees[0].weight *= 2.0;
  CHECK_THROWS_AS(tree_probability(t, t.trees[0]), Error);
}
