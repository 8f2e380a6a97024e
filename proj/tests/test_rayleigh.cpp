#include <doctest.h>

#include <algorithm>
#include <array>

#include "fixtures.hpp"
#include "ohmgraph/error.hpp"
#include "ohmgraph/potentials.hpp"
#include "ohmgraph/rayleigh.hpp"

using namespace ohmgraph;

namespace {
Point v(VertexIndex i) { return Point{i}; }
}  // namespace

TEST_CASE("contracting the diagonal of the bridge") {
  const auto g = fixtures::bridge();
  // A and C are already symmetric about the diagonal, so nothing changes for them.
  CHECK(contracted_resistance(g, 4, v(0), v(2)) == doctest::Approx(2.0).epsilon(1e-13));
  // A is two parallel 2-ohm edges away from the merged vertex
  CHECK(contracted_resistance(g, 4, v(0), v(3)) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(contracted_resistance(g, 4, v(1), v(3)) == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
}

TEST_CASE("contracting a side of the bridge") {
  const auto g = fixtures::bridge();
  // D = A: B joins the merged vertex by 2 || 1 = 2/3; B-C is 2 || (2/3 + 2) = 8/7
  CHECK(contracted_resistance(g, 0, v(1), v(2)) == doctest::Approx(8.0 / 7.0).epsilon(1e-13));
  const auto c = contract_edge(g, 0);
  const PotentialKernel rebuilt(c.graph);
  for (VertexIndex x = 0; x < 4; ++x) {
    for (VertexIndex y = 0; y < 4; ++y) {
      CHECK(contracted_resistance(g, 0, v(x), v(y)) ==
            doctest::Approx(rebuilt.resistance(c.vertex_map[x], c.vertex_map[y])).scale(1.0).epsilon(1e-13));
      CHECK(contracted_j(g, 0, v(2), v(x), v(y)) ==
            doctest::Approx(rebuilt.j(c.vertex_map[2], c.vertex_map[x], c.vertex_map[y])).scale(1.0).epsilon(1e-13));
      CHECK(contracted_cross_ratio(g, 0, v(x), v(y), v(1), v(2)) ==
            doctest::Approx(rebuilt.cross_ratio(c.vertex_map[x], c.vertex_map[y], 1, 2)).scale(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("contraction with points on other edges") {
  const auto g = fixtures::bridge();
  const Point a{PointOnEdge{2, 0.5}}, b{PointOnEdge{1, 1.5}};
  const double updated = contracted_resistance(g, 4, a, b);
  // rebuild: refine first, then contract the diagonal
  const std::array<Point, 2> pts{a, b};
  const auto m = refine(g, pts);
  const auto e = static_cast<EdgeIndex>(std::find(m.original_edge.begin(), m.original_edge.end(), 4) -
                                        m.original_edge.begin());
  CHECK(e == 6);
  const auto c = contract_edge(m.graph, e);
  CHECK(updated ==
        doctest::Approx(PotentialKernel(c.graph).resistance(c.vertex_map[m.points[0]], c.vertex_map[m.points[1]]))
            .epsilon(1e-12));
  CHECK_THROWS_AS(contracted_resistance(g, 4, Point{PointOnEdge{4, 0.5}}, v(0)), Error);
}

TEST_CASE("energy update and monotonicity") {
  const auto g = fixtures::bridge();
  const PotentialKernel before(g);
  Eigen::VectorXd a(4);
  a << 1.0, -0.25, -0.5, -0.25;
  const auto nu = ZeroDivisor::from_masses(a);
  for (EdgeIndex e = 0; e < 5; ++e) {
    const auto c = contract_edge(g, e);
    Eigen::VectorXd pushed = Eigen::VectorXd::Zero(3);
    for (VertexIndex x = 0; x < 4; ++x) pushed(static_cast<Eigen::Index>(c.vertex_map[x])) += a(static_cast<Eigen::Index>(x));
    const auto p = ZeroDivisor::from_masses(pushed);
    const double after = contracted_energy_pairing(g, e, nu, nu);
    CHECK(after == doctest::Approx(PotentialKernel(c.graph).energy(p, p)).epsilon(1e-13));
    CHECK(after <= before.energy(nu, nu) + 1e-12);
  }
}

TEST_CASE("xi update matches the rebuilt graph") {
  const auto g = fixtures::bridge();
  const auto o = Orientation::standard(g).reversed(1);
  for (EdgeIndex e = 0; e < 5; ++e) {
    const auto u = contracted_xi_matrix(g, o, e);
    CHECK(u.pivot_resistance == doctest::Approx(effective_resistance(g, v(o.tail(e)), v(o.head(e)))).epsilon(1e-14));
    CHECK((u.xi - pullback_xi(g, o, contract_edge(g, e))).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(u.xi.row(static_cast<Eigen::Index>(e)).isZero(0.0));
    CHECK(u.s.trace() == doctest::Approx(2.0).epsilon(1e-13));  // n - 1 of the contracted graph
  }
}

TEST_CASE("xi update through a parallel edge") {
  const WeightedGraph g({"A", "B", "C"}, {{"e1", 0, 1, 2.0}, {"e2", 0, 1, 3.0}, {"e3", 1, 2, 1.0}, {"e4", 2, 0, 4.0}});
  const auto o = Orientation::standard(g);
  const auto u = contracted_xi_matrix(g, o, 0);
  CHECK((u.xi - pullback_xi(g, o, contract_edge(g, 0))).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("contraction sequence") {
  const auto g = fixtures::bridge();
  const std::vector<EdgeIndex> edges{4, 0};
  const std::vector<ContractionQuery> queries{{ContractionQuery::Kind::Resistance, {0, 2}},
                                              {ContractionQuery::Kind::J, {2, 0, 1}},
                                              {ContractionQuery::Kind::CrossRatio, {0, 2, 3, 1}}};
  const auto steps = contraction_sequence(g, edges, queries);
  REQUIRE(steps.size() == 3);
  CHECK_FALSE(steps[0].edge.has_value());
  CHECK(steps[0].answers[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(steps[1].answers[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(steps[1].pivot_resistance == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  // after both: A = B = D, C hangs off by 2 || 2 = 1
  CHECK(steps[2].answers[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(steps[2].corrections[0] == doctest::Approx(1.0).epsilon(1e-13));
  // j_C(A, B) with A = B is r(A, C)
  CHECK(steps[2].answers[1] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(steps[2].answers[2] == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));

  const std::vector<EdgeIndex> twice{0, 1, 4};  // e5 joins A = B = D to itself
  CHECK_THROWS_AS(contraction_sequence(g, twice, queries), Error);
  const auto k2 = fixtures::k2();
  const std::vector<EdgeIndex> only{0};
  CHECK_THROWS_AS(contraction_sequence(k2, only, {}), Error);
}
