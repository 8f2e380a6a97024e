#include <doctest.h>

#include <array>

#include "fixtures.hpp"
#include "ohmgraph/error.hpp"
#include "ohmgraph/graph_io.hpp"

using namespace ohmgraph;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an ohmgraph::Error");
  return ErrorCode::InvalidArgument;
}

WeightedGraph graph_of(std::vector<std::string> names, std::vector<Edge> edges) {
  return WeightedGraph(std::move(names), std::move(edges));
}

}  // namespace

TEST_CASE("fixtures parse and validate") {
  const auto g = fixtures::bridge();
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 5);
  CHECK(g.edge(4).id == "e5");
  CHECK(g.vertex_name(g.edge(4).u) == "D");
  CHECK_NOTHROW(validate(g));
  CHECK_NOTHROW(validate(fixtures::tripod()));
  CHECK_NOTHROW(validate(fixtures::parallel_pair()));
}

TEST_CASE("validate reports the first violated invariant") {
  CHECK(code_of([] { validate(graph_of({"A"}, {})); }) == ErrorCode::TooFewVertices);
  CHECK(code_of([] { validate(graph_of({"A", "B"}, {})); }) == ErrorCode::TooFewVertices);
  CHECK(code_of([] { validate(graph_of({"A", "B"}, {{"e1", 0, 1, 1.0}, {"e2", 1, 1, 1.0}})); }) ==
        ErrorCode::SelfLoop);
  CHECK(code_of([] { validate(graph_of({"A", "B"}, {{"e1", 0, 1, 0.0}})); }) == ErrorCode::NonpositiveLength);
  CHECK(code_of([] { validate(graph_of({"A", "B"}, {{"e1", 0, 1, -2.0}})); }) == ErrorCode::NonpositiveLength);
  CHECK(code_of([] { validate(fixtures::load("disconnected")); }) == ErrorCode::Disconnected);
}

TEST_CASE("json parsing errors") {
  CHECK(code_of([] { fixtures::load("malformed"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { fixtures::load("no-such-file"); }) == ErrorCode::ParseError);
  const auto dup = nlohmann::json::parse(R"({"vertices":["A","A"],"edges":[]})");
  CHECK(code_of([&] { graph_from_json(dup); }) == ErrorCode::DuplicateId);
  const auto dup_edge = nlohmann::json::parse(
      R"({"vertices":["A","B"],"edges":[{"id":"e","u":"A","v":"B","length":1},{"id":"e","u":"B","v":"A","length":1}]})");
  CHECK(code_of([&] { graph_from_json(dup_edge); }) == ErrorCode::DuplicateId);
  const auto unknown = nlohmann::json::parse(R"({"vertices":["A","B"],"edges":[{"id":"e","u":"A","v":"Z","length":1}]})");
  CHECK(code_of([&] { graph_from_json(unknown); }) == ErrorCode::UnknownVertex);
}

TEST_CASE("json round trip") {
  const auto g = fixtures::bridge();
  CHECK(graph_from_json(nlohmann::json::parse(graph_to_json(g).dump())) == g);
}

TEST_CASE("points") {
  const auto g = fixtures::bridge();
  CHECK(std::get<VertexIndex>(parse_point(g, "C")) == 2);
  const auto p = std::get<PointOnEdge>(parse_point(g, "e3@1.5"));
  CHECK(p.edge == 2);
  CHECK(p.offset == 1.5);
  CHECK(code_of([&] { parse_point(g, "Q"); }) == ErrorCode::UnknownVertex);
  CHECK(code_of([&] { parse_point(g, "e9@1"); }) == ErrorCode::UnknownEdge);
  CHECK(code_of([&] { parse_point(g, "e3@x"); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { parse_point(g, "e3@2.5"); }) == ErrorCode::OffsetOutOfRange);
}

TEST_CASE("subdivide splits an edge in place") {
  const auto g = fixtures::k2();
  const auto s = subdivide(g, {0, 2.0});
  CHECK(s.graph.vertex_count() == 3);
  CHECK(s.graph.edge_count() == 2);
  CHECK(s.vertex == 2);
  CHECK(s.graph.vertex_name(2) == "e1@2");
  CHECK(s.graph.edge(0).id == "e1.a");
  CHECK(s.graph.edge(0).length == 2.0);
  CHECK(s.graph.edge(1).length == 3.0);
  CHECK(s.graph.edge(1).v == 1);
  CHECK(code_of([&] { subdivide(g, {0, 0.0}); }) == ErrorCode::OffsetOutOfRange);
  CHECK(code_of([&] { subdivide(g, {0, 5.0}); }) == ErrorCode::OffsetOutOfRange);
}

TEST_CASE("refine keeps vertex indices and maps points") {
  const auto g = fixtures::bridge();
  const std::array<Point, 4> pts{Point{VertexIndex{0}}, Point{PointOnEdge{2, 1.5}}, Point{PointOnEdge{2, 0.5}},
                                 Point{PointOnEdge{0, 0.0}}};
  const auto m = refine(g, pts);
  CHECK(m.graph.vertex_count() == 6);
  CHECK(m.graph.edge_count() == 7);
  CHECK(m.points[0] == 0);
  CHECK(m.points[3] == 3);  // offset 0 on e1 is its first endpoint D
  CHECK(m.original_edge == std::vector<EdgeIndex>{0, 1, 2, 2, 2, 3, 4});
  CHECK(m.graph.vertex_name(m.points[2]) == "e3@0.5");
  CHECK(m.graph.vertex_name(m.points[1]) == "e3.b@1");
}

TEST_CASE("contracting the diagonal of the bridge") {
  const auto g = fixtures::bridge();
  const auto c = contract_edge(g, 4);
  CHECK(c.graph.vertex_names() == std::vector<std::string>{"A", "p_e5", "C"});
  CHECK(c.graph.edge_count() == 4);
  for (const auto& e : c.graph.edges()) CHECK(e.length == 2.0);
  CHECK(c.vertex_map == std::vector<VertexIndex>{0, 1, 2, 1});
  CHECK(c.edge_image[4].empty());
}

TEST_CASE("contracting one of two parallel edges splits the other") {
  const WeightedGraph g = graph_of({"A", "B", "C"}, {{"e1", 0, 1, 2.0}, {"e2", 0, 1, 3.0}, {"e3", 1, 2, 1.0}});
  const auto c = contract_edge(g, 0);
  CHECK(c.graph.vertex_count() == 3);
  CHECK(c.graph.edge_count() == 3);
  CHECK(c.edge_image[1] == std::vector<EdgeIndex>{0, 1});
  CHECK(c.graph.edge(0).length == 1.5);
  CHECK(c.graph.vertex_name(2) == "e2@mid");
  CHECK(code_of([] { contract_edge(fixtures::k2(), 0); }) == ErrorCode::TooFewVertices);
  CHECK(code_of([] { contract_edge(fixtures::k2(), 3); }) == ErrorCode::UnknownEdge);
}

TEST_CASE("boundary of a path is head minus tail") {
  const auto g = fixtures::bridge();
  const auto o = Orientation::standard(g);
  // A -e1-> D -e4-> C, traversing e1 backwards
  const PathSpec path{{0, 3, 2}, {0, 3}};
  const auto c = chain_of_path(g, o, path);
  CHECK(c[0] == -1.0);
  CHECK(c[3] == 1.0);
  const auto d = boundary(g, o, c);
  CHECK(d.masses().isApprox(ZeroDivisor::dipole(4, 2, 0).masses()));
  CHECK(code_of([&] { chain_of_path(g, o, PathSpec{{0, 2}, {0}}); }) == ErrorCode::BrokenPath);

  const auto flipped = o.reversed(0);
  const auto c2 = chain_of_path(g, flipped, path);
  CHECK(c2[0] == 1.0);
  CHECK(c.reoriented(o, flipped).coefficients() == c2.coefficients());
}

TEST_CASE("mass-zero divisors") {
  Eigen::VectorXd a(3);
  a << 1.0, -0.5, -0.5;
  CHECK_NOTHROW(ZeroDivisor::from_masses(a));
  a(0) = 1.1;
  CHECK(code_of([&] { ZeroDivisor::from_masses(a); }) == ErrorCode::MassNotZero);
}

TEST_CASE("chain_for_divisor has the requested boundary") {
  const auto g = fixtures::bridge();
  const auto o = Orientation::standard(g);
  Eigen::VectorXd a(4);
  a << 0.25, -1.0, 0.5, 0.25;
  const auto nu = ZeroDivisor::from_masses(a);
  for (VertexIndex q = 0; q < 4; ++q) {
    CHECK((boundary(g, o, chain_for_divisor(g, o, nu, q)).masses() - a).cwiseAbs().maxCoeff() < 1e-15);
  }
}
