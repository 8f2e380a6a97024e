// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ohmgraph/error.hpp"
#include "ohmgraph/laplacian.hpp"
#include "ohmgraph/potentials.hpp"
#include "ohmgraph/projections.hpp"
#include "ohmgraph/rayleigh.hpp"
#include "ohmgraph/spanning.hpp"
#include "ohmgraph/verify.hpp"

using namespace ohmgraph;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  double worst = 0.0;
  std::size_t cases = 0;
  std::string note;

  // |a - b| <= bound
  void abs(double a, double b, double bound) {
    ++cases;
    const double d = std::abs(a - b);
    worst = std::max(worst, d);
    if (!(d <= bound)) fail("|" + std::to_string(a) + " - " + std::to_string(b) + "| > " + std::to_string(bound));
  }
  // |a - b| <= rel * max(|a|, |b|) + abs_floor
  void rel(double a, double b, double rel_tol, double abs_floor = 1e-12) {
    ++cases;
    const double d = std::abs(a - b);
    worst = std::max(worst, d);
    if (!(d <= abs_floor + rel_tol * std::max(std::abs(a), std::abs(b)))) {
      fail(std::to_string(a) + " vs " + std::to_string(b));
    }
  }
  void holds(bool cond, const std::string& what) {
    ++cases;
    if (!cond) fail(what);
  }
  void fail(const std::string& what) {
    if (ok) note = what;
    ok = false;
  }
};

int failures = 0;

void criterion(int number, const std::string& title, const std::function<void(Outcome&)>& body,
               double time_limit_ms) {
  Outcome out;
  const auto start = Clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  if (ms > time_limit_ms) out.fail("took " + std::to_string(ms) + " ms, limit " + std::to_string(time_limit_ms));
  std::printf("[%s] criterion %2d: %-58s cases=%-7zu worst=%.3e time=%.3f ms%s%s\n", out.ok ? "PASS" : "FAIL",
              number, title.c_str(), out.cases, out.worst, ms, out.ok ? "" : "  -- ", out.note.c_str());
  if (!out.ok) ++failures;
}

WeightedGraph bridge() {
  return WeightedGraph({"A", "B", "C", "D"}, {{"e1", 3, 0, 2.0},
                                              {"e2", 0, 1, 2.0},
                                              {"e3", 1, 2, 2.0},
                                              {"e4", 3, 2, 2.0},
                                              {"e5", 3, 1, 1.0}});
}

WeightedGraph tripod() {
  return WeightedGraph({"o", "x", "y", "z"}, {{"a", 0, 1, 1.0}, {"b", 0, 2, 2.0}, {"c", 0, 3, 3.0}});
}

Point pt(VertexIndex v) { return Point{v}; }

VertexIndex pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<VertexIndex>(0, n - 1)(rng);
}

ZeroDivisor random_divisor(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd a(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = u(rng);
  a.array() -= a.mean();
  return ZeroDivisor::from_masses(a);
}

}  // namespace

int main() {
  const auto corpus = random_corpus(20240601, 200);

  criterion(1, "tripod resistances and j_z(x,y)", [](Outcome& o) {
    const auto g = tripod();
    o.abs(effective_resistance(g, pt(1), pt(2)), 3.0, 1e-12);
    o.abs(effective_resistance(g, pt(1), pt(3)), 4.0, 1e-12);
    o.abs(effective_resistance(g, pt(2), pt(3)), 5.0, 1e-12);
    o.abs(j_function(g, pt(3), pt(1), pt(2)), 3.0, 1e-12);
  }, 1.0);

  criterion(2, "bridge network r(D,B) = 2/3, r(A,C) = 2", [](Outcome& o) {
    const auto g = bridge();
    o.abs(effective_resistance(g, pt(3), pt(1)), 2.0 / 3.0, 1e-12);
    o.abs(effective_resistance(g, pt(0), pt(2)), 2.0, 1e-12);
  }, 1.0);

  criterion(3, "Xi projections equal Kirchhoff tree averages (200 graphs)", [&](Outcome& o) {
    std::mt19937_64 rng(3);
    for (const auto& g : corpus) {
      std::vector<bool> flips(g.edge_count());
      for (std::size_t e = 0; e < flips.size(); ++e) flips[e] = std::bernoulli_distribution(0.5)(rng);
      const Orientation orient(g, flips);
      const auto x = projection_matrices(g, orient);
      const auto k = kirchhoff_projection_matrices(g, orient);
      o.abs((x.cycle - k.cycle).cwiseAbs().maxCoeff(), 0.0, 1e-9);
      o.abs((x.cocycle - k.cocycle).cwiseAbs().maxCoeff(), 0.0, 1e-9);
    }
  }, 30000.0);

  criterion(4, "Foster trace m-n+1 and Pr{e not in T} = F(e)", [&](Outcome& o) {
    for (const auto& g : corpus) {
      const auto p = projection_matrices(g, Orientation::standard(g));
      o.abs(p.cycle.trace(), static_cast<double>(g.edge_count()) - static_cast<double>(g.vertex_count()) + 1.0,
            1e-9);
      const auto trees = enumerate_spanning_trees(g);
      const Eigen::VectorXd excluded = exclusion_probabilities(g, trees);
      for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        o.abs(excluded(static_cast<Eigen::Index>(e)), foster_coefficient(g, e), 1e-9);
      }
    }
  }, 1e9);

  criterion(5, "matrix-tree: enumerated w'(G) = det(Q_q) for every q", [&](Outcome& o) {
    for (const auto& g : corpus) {
      const auto trees = enumerate_spanning_trees(g);
      for (VertexIndex q = 0; q < g.vertex_count(); ++q) {
        o.rel(trees.total_coweight, reduced_determinant(g, q), 1e-9, 0.0);
      }
    }
  }, 1e9);

  criterion(6, "Rayleigh updates vs rebuild, every edge, 20 queries", [&](Outcome& o) {
    std::mt19937_64 rng(6);
    for (const auto& g : corpus) {
      const std::size_t n = g.vertex_count();
      if (g.edge_count() == 1) continue;  // contracting K2's only edge leaves a point
      const PotentialKernel before(g);
      for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        const auto c = contract_edge(g, e);
        const PotentialKernel rebuilt(c.graph);
        const auto& m = c.vertex_map;
        for (int t = 0; t < 20; ++t) {
          const VertexIndex x = pick(rng, n), y = pick(rng, n), z = pick(rng, n), w = pick(rng, n);
          const auto a = random_divisor(rng, n), b = random_divisor(rng, n);
          Eigen::VectorXd pa = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(c.graph.vertex_count()));
          Eigen::VectorXd pb = pa;
          for (VertexIndex v = 0; v < n; ++v) {
            pa(static_cast<Eigen::Index>(m[v])) += a[v];
            pb(static_cast<Eigen::Index>(m[v])) += b[v];
          }
          o.rel(contracted_energy_pairing(g, e, a, b),
                rebuilt.energy(ZeroDivisor::from_masses(pa), ZeroDivisor::from_masses(pb)), 1e-9);
          o.rel(contracted_cross_ratio(g, e, pt(x), pt(y), pt(z), pt(w)), rebuilt.cross_ratio(m[x], m[y], m[z], m[w]),
                1e-9);
          o.rel(contracted_j(g, e, pt(z), pt(x), pt(y)), rebuilt.j(m[z], m[x], m[y]), 1e-9);
          const double r_after = contracted_resistance(g, e, pt(x), pt(y));
          o.rel(r_after, rebuilt.resistance(m[x], m[y]), 1e-9);
          o.holds(r_after <= before.resistance(x, y) + 1e-12, "monotonicity");
        }
      }
    }
  }, 1e9);

  criterion(7, "base-point, inverse independence, reciprocity (1000 tuples)", [&](Outcome& o) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 1000; ++t) {
      const auto& g = corpus[static_cast<std::size_t>(t) % corpus.size()];
      const std::size_t n = g.vertex_count();
      const VertexIndex x = pick(rng, n), y = pick(rng, n), z = pick(rng, n), w = pick(rng, n);
      const VertexIndex q1 = pick(rng, n), q2 = pick(rng, n);
      const PotentialKernel k1(g, q1), k2(g, q2), kp(g, pseudo_inverse(g));
      o.rel(k1.cross_ratio(x, y, z, w), k2.cross_ratio(x, y, z, w), 1e-9);
      const auto a = random_divisor(rng, n), b = random_divisor(rng, n);
      o.rel(k1.energy(a, b), kp.energy(a, b), 1e-9);
      o.rel(k1.energy(a, b), k2.energy(a, b), 1e-9);
      o.holds(kp.energy(a, a) > 0.0, "positive definite");
      // j_y(x,z) - j_y(x,w) = j_w(x,z) - j_w(y,z), each from its own grounded inverse
      const PotentialKernel ky(g, y), kw(g, w);
      o.rel(ky.j(y, x, z) - ky.j(y, x, w), kw.j(w, x, z) - kw.j(w, y, z), 1e-9);
    }
  }, 1e9);

  criterion(8, "resistance metric axioms (1000 triples)", [&](Outcome& o) {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 1000; ++t) {
      const auto& g = corpus[static_cast<std::size_t>(t) % corpus.size()];
      const std::size_t n = g.vertex_count();
      const VertexIndex x = pick(rng, n), y = pick(rng, n), z = pick(rng, n);
      const PotentialKernel k(g);
      const double rxy = k.resistance(x, y);
      o.abs(rxy, k.resistance(y, x), 1e-12);
      o.holds(rxy >= -1e-12, "nonnegative");
      o.holds((x == y) == (rxy == 0.0), "zero iff equal");
      o.holds(k.resistance(x, z) <= rxy + k.resistance(y, z) + 1e-12, "triangle inequality");
    }
  }, 1e9);

  criterion(9, "Thomson resistance and path independence (500 cases)", [&](Outcome& o) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 500; ++t) {
      const auto& g = corpus[static_cast<std::size_t>(t) % corpus.size()];
      const std::size_t n = g.vertex_count();
      const auto orient = Orientation::standard(g);
      const auto proj = projection_matrices(g, orient);
      VertexIndex x = pick(rng, n), y = pick(rng, n);
      if (x == y) y = (x + 1) % n;
      o.rel(resistance_via_thomson(g, orient, x, y), effective_resistance(g, pt(x), pt(y)), 1e-9);

      // same boundaries, different chains: a random walk closed into a loop is added
      const auto a = random_divisor(rng, n), b = random_divisor(rng, n);
      const auto ga = chain_for_divisor(g, orient, a, pick(rng, n));
      const auto gb = chain_for_divisor(g, orient, b, pick(rng, n));
      const auto ga2 = chain_for_divisor(g, orient, a, pick(rng, n));
      const auto tree = bfs_spanning_tree(g);
      OneChain cycles(g.edge_count());
      for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        if (!tree.contains(e)) {
          cycles += std::uniform_real_distribution<double>(-3.0, 3.0)(rng) * fundamental_circuit_chain(g, orient, tree, e);
        }
      }
      const double base = energy_via_projection(g, proj, ga, gb);
      o.rel(energy_via_projection(g, proj, ga2 + cycles, gb), base, 1e-9);
      o.rel(base, energy_pairing(g, a, b), 1e-9);
    }
  }, 1e9);

  criterion(10, "n=300, m=1000: Xi and projections < 5 s; oracle refuses", [](Outcome& o) {
    std::mt19937_64 rng(10);
    const auto g = random_graph(rng, 300, 1000);
    const auto orient = Orientation::standard(g);
    const auto start = Clock::now();
    const Eigen::MatrixXd xi = xi_matrix(g, orient);
    const auto proj = projections_from_xi(g, xi);
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    o.holds(secs < 5.0, "took " + std::to_string(secs) + " s");
    o.abs(proj.cycle.trace(), 1000.0 - 300.0 + 1.0, 1e-6);
    bool refused = false;
    try {
      enumerate_spanning_trees(g);
    } catch (const Error& e) {
      refused = e.code() == ErrorCode::TooManyTrees;
    }
    o.holds(refused, "oracle did not refuse with TooManyTrees");
  }, 1e9);

  std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
