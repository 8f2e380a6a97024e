#include "ohmgraph/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>

#include "ohmgraph/error.hpp"
#include "ohmgraph/laplacian.hpp"
#include "ohmgraph/potentials.hpp"
#include "ohmgraph/projections.hpp"
#include "ohmgraph/rayleigh.hpp"
#include "ohmgraph/spanning.hpp"

namespace ohmgraph {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

// Registration order is report order.
const std::vector<std::string>& invariant_names() {
  static const std::vector<std::string> names = {
      // graph-core
      "subdivide-preserves-resistance",
      "boundary-of-path",
      "contraction-valid",
      "chain-for-divisor-boundary",
      // laplacian
      "incidence-factorization",
      "generalized-inverse-law",
      "grounded-product",
      "j-symmetry-and-bounds",
      "dirichlet-residual",
      // potentials
      "cross-ratio-base-point-independence",
      "reciprocity",
      "resistance-metric",
      "gromov-identity",
      "inverse-independence",
      "cross-ratio-resistance-identity",
      "energy-positive-definite",
      "dirichlet-energy-identity",
      // projections
      "projection-idempotence",
      "projection-complementarity",
      "projection-self-adjoint",
      "projection-ranges",
      "projection-entries",
      "foster-trace",
      "projection-path-independence",
      "j-via-projection",
      "thomson-resistance",
      // rayleigh
      "rayleigh-update-vs-rebuild",
      "rayleigh-monotonicity",
      "rayleigh-xi-rebuild",
      "rayleigh-rank-drop",
      "rayleigh-orientation-independence",
      // spanning-tree oracle
      "oracle-equivalence",
      "oracle-foster-trace",
      "foster-probability",
      "matrix-tree",
      "tree-ratio",
      "circuit-kernel",
      "circuit-cocircuit-orthogonality",
      "canonical-factorization",
  };
  return names;
}

bool is_oracle_suite(const std::string& name) {
  static const std::vector<std::string> oracle = {"oracle-equivalence", "oracle-foster-trace", "foster-probability",
                                                  "matrix-tree",        "tree-ratio",          "circuit-kernel",
                                                  "circuit-cocircuit-orthogonality", "canonical-factorization"};
  return std::find(oracle.begin(), oracle.end(), name) != oracle.end();
}

class Recorder {
 public:
  Recorder(bool oracle, const Tolerance& tol) : tol_(tol) {
    for (const auto& name : invariant_names()) {
      if (oracle || !is_oracle_suite(name)) {
        index_[name] = report_.results.size();
        InvariantResult r;
        r.name = name;
        report_.results.push_back(std::move(r));
      }
    }
  }

  void set_context(std::string context) { context_ = std::move(context); }

  /// Relative/absolute comparison with the configured tolerance.
  void close(const std::string& name, double actual, double expected) {
    note(name, tol_.close(actual, expected), std::abs(actual - expected), actual, expected);
  }

  /// |actual - expected| <= bound.
  void within(const std::string& name, double actual, double expected, double bound) {
    const double dev = std::abs(actual - expected);
    note(name, dev <= bound, dev, actual, expected);
  }

  void matrix_within(const std::string& name, const Eigen::MatrixXd& actual, const Eigen::MatrixXd& expected,
                     double bound) {
    const double dev = actual.rows() == 0 ? 0.0 : (actual - expected).cwiseAbs().maxCoeff();
    note(name, std::isfinite(dev) && dev <= bound, dev, dev, 0.0);
  }

  /// Inequality actual <= bound with slack >= 0.
  void at_most(const std::string& name, double actual, double bound, double slack) {
    const double excess = std::max(0.0, actual - bound);
    note(name, actual <= bound + slack, excess, actual, bound);
  }

  void holds(const std::string& name, bool ok, double deviation = 0.0) { note(name, ok, deviation, 0.0, 0.0); }

  VerificationReport take() { return std::move(report_); }

 private:
  void note(const std::string& name, bool ok, double deviation, double actual, double expected) {
    auto& r = report_.results.at(index_.at(name));
    ++r.cases;
    if (std::isfinite(deviation)) {
      r.worst_deviation = std::max(r.worst_deviation, deviation);
    } else {
      r.worst_deviation = deviation;
    }
    if (!ok && r.passed) {
      r.passed = false;
      r.first_failure = context_ + ": got " + std::to_string(actual) + ", expected " + std::to_string(expected);
    }
  }

  Tolerance tol_;
  std::string context_;
  std::map<std::string, std::size_t> index_;
  VerificationReport report_;
};

Eigen::VectorXd random_masses(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd a(idx(n));
  for (Index i = 0; i < a.size(); ++i) a(i) = u(rng);
  a.array() -= a.mean();
  return a;
}

ZeroDivisor random_divisor(std::mt19937_64& rng, std::size_t n) {
  return ZeroDivisor::from_masses(random_masses(rng, n));
}

VertexIndex pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<VertexIndex>(0, n - 1)(rng);
}

// Ground vertices checked by per-ground suites; all of them for small graphs.
std::vector<VertexIndex> grounds(std::size_t n) {
  std::vector<VertexIndex> out;
  const std::size_t step = n <= 12 ? 1 : n / 8;
  for (VertexIndex q = 0; q < n; q += step) out.push_back(q);
  return out;
}

ZeroDivisor push_forward(const ZeroDivisor& nu, const Contraction& c) {
  Eigen::VectorXd a = Eigen::VectorXd::Zero(idx(c.graph.vertex_count()));
  for (VertexIndex v = 0; v < nu.size(); ++v) a(idx(c.vertex_map[v])) += nu[v];
  return ZeroDivisor::from_masses(std::move(a));
}

std::size_t numerical_rank(const Eigen::MatrixXd& sym) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  std::size_t rank = 0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (std::abs(es.eigenvalues()(i)) > 1e-9 * std::max(top, 1.0)) ++rank;
  }
  return rank;
}

void check_graph_core(Recorder& rec, const WeightedGraph& g, const PotentialKernel& kernel, std::mt19937_64& rng,
                      const VerifyOptions& opt) {
  const std::size_t n = g.vertex_count();
  const auto o = Orientation::standard(g);
  for (std::size_t t = 0; t < std::min<std::size_t>(opt.random_tuples, 5); ++t) {
    const EdgeIndex e = std::uniform_int_distribution<EdgeIndex>(0, g.edge_count() - 1)(rng);
    const double offset = std::uniform_real_distribution<double>(0.1, 0.9)(rng) * g.length(e);
    const auto split = subdivide(g, {e, offset});
    const PotentialKernel refined(split.graph);
    for (VertexIndex x = 0; x < n; ++x) {
      for (VertexIndex y = x + 1; y < n; ++y) {
        rec.close("subdivide-preserves-resistance", refined.resistance(x, y), kernel.resistance(x, y));
      }
    }
  }
  for (std::size_t t = 0; t < opt.random_tuples; ++t) {
    PathSpec path{{pick(rng, n)}, {}};
    const std::size_t len = std::uniform_int_distribution<std::size_t>(0, 6)(rng);
    for (std::size_t k = 0; k < len; ++k) {
      const auto& inc = g.incident(path.vertices.back());
      const auto& step = inc[std::uniform_int_distribution<std::size_t>(0, inc.size() - 1)(rng)];
      path.edges.push_back(step.edge);
      path.vertices.push_back(step.other);
    }
    const auto d = boundary(g, o, chain_of_path(g, o, path));
    const auto expected = ZeroDivisor::dipole(n, path.vertices.back(), path.vertices.front());
    rec.within("boundary-of-path", (d.masses() - expected.masses()).cwiseAbs().maxCoeff(), 0.0, 1e-12);

    const auto nu = random_divisor(rng, n);
    const auto chain = chain_for_divisor(g, o, nu, pick(rng, n));
    rec.within("chain-for-divisor-boundary", (boundary(g, o, chain).masses() - nu.masses()).cwiseAbs().maxCoeff(),
               0.0, opt.tol.absolute + opt.tol.relative * nu.masses().cwiseAbs().sum());
  }
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (n == 2 && g.edge_count() == 1) {
      continue;  // K2 collapses to a point
    }
    bool ok = true;
    try {
      validate(contract_edge(g, e).graph);
    } catch (const Error&) {
      ok = false;
    }
    rec.holds("contraction-valid", ok);
  }
}

void check_laplacian(Recorder& rec, const WeightedGraph& g, const std::vector<GeneralizedInverse>& grounded,
                     const GeneralizedInverse& pseudo, std::mt19937_64& rng, const VerifyOptions& opt) {
  const auto n = idx(g.vertex_count());
  const auto o = Orientation::standard(g);
  const Eigen::MatrixXd q = laplacian_matrix(g);
  const Eigen::MatrixXd b = incidence_matrix(g, o);
  rec.matrix_within("incidence-factorization", b * edge_gram(g).inverse() * b.transpose(), q, 1e-12);

  const double scale = q.cwiseAbs().maxCoeff();
  for (const auto& l : grounded) {
    rec.matrix_within("generalized-inverse-law", q * l.matrix * q, q, opt.tol.relative * scale);
    Eigen::MatrixXd expected = Eigen::MatrixXd::Identity(n, n);
    expected.row(idx(*l.ground)).array() -= 1.0;
    rec.matrix_within("grounded-product", q * l.matrix, expected, 1e-9);
    rec.matrix_within("j-symmetry-and-bounds", l.matrix, l.matrix.transpose(), 1e-12);
    for (Index p = 0; p < n; ++p) {
      for (Index v = 0; v < n; ++v) {
        const double slack = opt.tol.absolute + opt.tol.relative * l.matrix(p, p);
        rec.at_most("j-symmetry-and-bounds", -l.matrix(p, v), 0.0, slack);
        rec.at_most("j-symmetry-and-bounds", l.matrix(p, v), l.matrix(p, p), slack);
      }
    }
  }
  rec.matrix_within("generalized-inverse-law", q * pseudo.matrix * q, q, opt.tol.relative * scale);

  for (std::size_t t = 0; t < opt.random_tuples; ++t) {
    const auto nu = random_divisor(rng, g.vertex_count());
    const auto psi = solve_dirichlet(g, nu, pick(rng, g.vertex_count()));
    rec.within("dirichlet-residual", (q * psi - nu.masses()).cwiseAbs().maxCoeff(), 0.0, 1e-9);
  }
}

void check_potentials(Recorder& rec, const WeightedGraph& g, const PotentialKernel& kernel,
                      const std::vector<GeneralizedInverse>& grounded, const GeneralizedInverse& pseudo,
                      std::mt19937_64& rng, const VerifyOptions& opt) {
  const std::size_t n = g.vertex_count();
  std::vector<PotentialKernel> by_ground;
  for (const auto& l : grounded) by_ground.emplace_back(g, l);
  const PotentialKernel via_pseudo(g, pseudo);
  const Eigen::MatrixXd q = laplacian_matrix(g);

  for (std::size_t t = 0; t < opt.random_tuples; ++t) {
    const VertexIndex x = pick(rng, n), y = pick(rng, n), z = pick(rng, n), w = pick(rng, n);
    const double xi = kernel.cross_ratio(x, y, z, w);
    for (const auto& k : by_ground) {
      const VertexIndex base = *k.inverse().ground;
      rec.close("cross-ratio-base-point-independence", k.cross_ratio_grounded_at(base, x, y, z, w), xi);
    }
    // j_y(x,z) - j_y(x,w) = j_w(x,z) - j_w(y,z), each side from its own grounded inverse.
    const PotentialKernel at_y(g, y), at_w(g, w);
    rec.close("reciprocity", at_y.j(y, x, z) - at_y.j(y, x, w), at_w.j(w, x, z) - at_w.j(w, y, z));

    const double rxy = kernel.resistance(x, y), ryz = kernel.resistance(y, z), rxz = kernel.resistance(x, z);
    rec.close("resistance-metric", rxy, kernel.resistance(y, x));
    rec.at_most("resistance-metric", -rxy, 0.0, 1e-12);
    rec.holds("resistance-metric", (x == y) == (rxy == 0.0) && (x == y || rxy > 0.0));
    rec.at_most("resistance-metric", rxz, rxy + ryz, 1e-12);

    const PotentialKernel at_z(g, z);
    rec.close("gromov-identity", kernel.gromov_product(x, y, z), at_z.j(z, x, y));

    rec.close("cross-ratio-resistance-identity", -2.0 * xi,
              kernel.resistance(x, z) + kernel.resistance(y, w) - kernel.resistance(x, w) - kernel.resistance(y, z));

    const auto nu1 = random_divisor(rng, n), nu2 = random_divisor(rng, n);
    const double e12 = kernel.energy(nu1, nu2);
    rec.close("inverse-independence", via_pseudo.energy(nu1, nu2), e12);
    for (const auto& k : by_ground) rec.close("inverse-independence", k.energy(nu1, nu2), e12);
    rec.holds("energy-positive-definite", kernel.energy(nu1, nu1) > 0.0, 0.0);

    const Eigen::VectorXd psi1 = random_masses(rng, n), psi2 = random_masses(rng, n);
    const auto d1 = ZeroDivisor::from_masses(q * psi1), d2 = ZeroDivisor::from_masses(q * psi2);
    rec.close("dirichlet-energy-identity", psi1.dot(q * psi2), kernel.energy(d1, d2));
  }
}

void check_projections(Recorder& rec, const WeightedGraph& g, const Orientation& o, const PotentialKernel& kernel,
                       std::mt19937_64& rng, const VerifyOptions& opt) {
  const std::size_t n = g.vertex_count();
  const std::size_t m = g.edge_count();
  const auto mi = idx(m);
  Eigen::MatrixXd xi = kernel.xi(g, o);
  if (opt.corrupt_xi) opt.corrupt_xi(xi);
  const auto proj = projections_from_xi(g, xi);
  const auto d = edge_gram(g);
  const Eigen::MatrixXd dd = d.toDenseMatrix();
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(mi, mi);

  rec.matrix_within("projection-idempotence", proj.cycle * proj.cycle, proj.cycle, 1e-9);
  rec.matrix_within("projection-idempotence", proj.cocycle * proj.cocycle, proj.cocycle, 1e-9);
  rec.matrix_within("projection-complementarity", proj.cycle + proj.cocycle, eye, 1e-12);
  rec.matrix_within("projection-self-adjoint", dd * proj.cycle, proj.cycle.transpose() * dd, 1e-9);
  rec.matrix_within("projection-self-adjoint", dd * proj.cocycle, proj.cocycle.transpose() * dd, 1e-9);

  const Eigen::MatrixXd b = incidence_matrix(g, o);
  rec.matrix_within("projection-ranges", b * proj.cycle, Eigen::MatrixXd::Zero(idx(n), mi), 1e-9);
  const auto tree = bfs_spanning_tree(g);
  std::vector<OneChain> cycles;
  for (EdgeIndex e = 0; e < m; ++e) {
    if (!tree.contains(e)) {
      cycles.push_back(fundamental_circuit_chain(g, o, tree, e));
      rec.within("projection-ranges", (proj.cocycle * cycles.back().coefficients()).cwiseAbs().maxCoeff(), 0.0, 1e-9);
    }
  }

  for (EdgeIndex e = 0; e < m; ++e) {
    for (EdgeIndex f = 0; f < m; ++f) {
      const double expected = e == f ? 1.0 - kernel.resistance(o.tail(e), o.head(e)) / g.length(e)
                                     : -kernel.cross_ratio(o.tail(e), o.head(e), o.tail(f), o.head(f)) / g.length(e);
      rec.within("projection-entries", proj.cycle(idx(e), idx(f)), expected, 1e-9);
    }
  }
  rec.within("foster-trace", proj.cycle.trace(), static_cast<double>(m) - static_cast<double>(n) + 1.0, 1e-9);

  for (std::size_t t = 0; t < opt.random_tuples; ++t) {
    const auto nu1 = random_divisor(rng, n), nu2 = random_divisor(rng, n);
    OneChain g1 = chain_for_divisor(g, o, nu1, pick(rng, n));
    OneChain g2 = chain_for_divisor(g, o, nu2, pick(rng, n));
    const double base = energy_via_projection(g, proj, g1, g2);
    rec.close("projection-path-independence", base, kernel.energy(nu1, nu2));
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (const auto& c : cycles) {
      g1 += coef(rng) * c;
      g2 += coef(rng) * c;
    }
    rec.close("projection-path-independence", energy_via_projection(g, proj, g1, g2), base);

    const VertexIndex x = pick(rng, n), y = pick(rng, n), z = pick(rng, n);
    rec.close("j-via-projection", j_via_projection(g, proj, o, z, x, y), kernel.j(z, x, y));
    if (x != y) {
      const OneChain path = chain_of_path(g, o, shortest_hop_path(g, y, x));
      const OneChain projected(proj.cocycle * path.coefficients());
      rec.close("thomson-resistance", chain_inner_product(g, projected, projected), kernel.resistance(x, y));
    }
  }
}

void check_rayleigh(Recorder& rec, const WeightedGraph& g, const Orientation& o, const PotentialKernel& kernel,
                    std::mt19937_64& rng, const VerifyOptions& opt) {
  const std::size_t n = g.vertex_count();
  const Eigen::MatrixXd xi = kernel.xi(g, o);
  const std::size_t base_rank = numerical_rank(xi);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (n == 2 && g.edge_count() == 1) {
      continue;
    }
    const auto contraction = contract_edge(g, e);
    const PotentialKernel rebuilt(contraction.graph);
    const RayleighKernel update(g, e);
    const auto& map = contraction.vertex_map;
    for (std::size_t t = 0; t < opt.random_tuples; ++t) {
      const auto nu1 = random_divisor(rng, n), nu2 = random_divisor(rng, n);
      const auto p1 = push_forward(nu1, contraction), p2 = push_forward(nu2, contraction);
      rec.close("rayleigh-update-vs-rebuild", update.energy(nu1, nu2), rebuilt.energy(p1, p2));
      const double self_after = update.energy(nu1, nu1);
      rec.at_most("rayleigh-monotonicity", self_after, kernel.energy(nu1, nu1),
                  opt.tol.absolute + opt.tol.relative * std::abs(self_after));

      const VertexIndex x = pick(rng, n), y = pick(rng, n), z = pick(rng, n), w = pick(rng, n);
      rec.close("rayleigh-update-vs-rebuild", update.cross_ratio(x, y, z, w),
                rebuilt.cross_ratio(map[x], map[y], map[z], map[w]));
      rec.close("rayleigh-update-vs-rebuild", update.j(z, x, y), rebuilt.j(map[z], map[x], map[y]));
      const double r_after = update.resistance(x, y);
      rec.close("rayleigh-update-vs-rebuild", r_after, rebuilt.resistance(map[x], map[y]));
      rec.at_most("rayleigh-monotonicity", r_after, kernel.resistance(x, y), 1e-12);
    }

    const auto contracted = update_xi(g, xi, e);
    const double scale = std::max(1.0, xi.cwiseAbs().maxCoeff());
    rec.matrix_within("rayleigh-xi-rebuild", contracted.xi, pullback_xi(g, o, contraction), 1e-9 * scale);
    rec.holds("rayleigh-rank-drop", numerical_rank(contracted.xi) + 1 == base_rank,
              std::abs(static_cast<double>(numerical_rank(contracted.xi)) + 1.0 - static_cast<double>(base_rank)));

    const auto flipped = update_xi(g, kernel.xi(g, o.reversed(e)), e);
    rec.matrix_within("rayleigh-orientation-independence", flipped.xi, contracted.xi, 1e-9 * scale);
  }
}

void check_oracle(Recorder& rec, const WeightedGraph& g, const Orientation& o, const PotentialKernel& kernel,
                  const VerifyOptions& opt) {
  const std::size_t n = g.vertex_count();
  const std::size_t m = g.edge_count();
  const auto ensemble = enumerate_spanning_trees(g);
  const auto kirchhoff = kirchhoff_projection_matrices(g, o, ensemble);
  Eigen::MatrixXd xi = kernel.xi(g, o);
  const auto cross = projections_from_xi(g, xi);
  rec.matrix_within("oracle-equivalence", kirchhoff.cycle, cross.cycle, 1e-9);
  rec.matrix_within("oracle-equivalence", kirchhoff.cocycle, cross.cocycle, 1e-9);
  rec.within("oracle-foster-trace", kirchhoff.cycle.trace(), static_cast<double>(m) - static_cast<double>(n) + 1.0,
             1e-9);

  const Eigen::VectorXd excluded = exclusion_probabilities(g, ensemble);
  for (EdgeIndex e = 0; e < m; ++e) {
    const double foster = 1.0 - kernel.resistance(g.edge(e).u, g.edge(e).v) / g.length(e);
    rec.within("foster-probability", excluded(idx(e)), foster, 1e-9);
  }

  for (VertexIndex q : grounds(n)) {
    rec.close("matrix-tree", ensemble.total_coweight, reduced_determinant(g, q));
  }

  double total = 0.0;
  for (const auto& tree : ensemble.trees) {
    try {
      total += tree_probability(ensemble, tree, opt.tol);
      rec.holds("tree-ratio", true);
    } catch (const Error&) {
      rec.holds("tree-ratio", false);
    }
  }
  rec.within("tree-ratio", total, 1.0, 1e-9);

  const Eigen::MatrixXd b = incidence_matrix(g, o);
  const std::size_t tree_limit = std::min<std::size_t>(ensemble.trees.size(), 16);
  for (std::size_t t = 0; t < tree_limit; ++t) {
    const auto& tree = ensemble.trees[t];
    std::vector<OneChain> circuits, cocircuits;
    for (EdgeIndex e = 0; e < m; ++e) {
      if (tree.contains(e)) {
        cocircuits.push_back(fundamental_cocircuit_chain(g, o, tree, e));
      } else {
        circuits.push_back(fundamental_circuit_chain(g, o, tree, e));
        rec.within("circuit-kernel", (b * circuits.back().coefficients()).cwiseAbs().maxCoeff(), 0.0, 1e-12);
      }
    }
    for (const auto& c : circuits) {
      for (const auto& k : cocircuits) {
        rec.within("circuit-cocircuit-orthogonality", c.coefficients().dot(k.coefficients()), 0.0, 1e-12);
      }
    }
  }

  // P' = B^T L B D^-1.
  const Eigen::MatrixXd p_prime = kirchhoff.cocycle.transpose();
  rec.matrix_within("canonical-factorization", p_prime, xi * edge_gram(g).inverse(), 1e-9);
}

}  // namespace

bool VerificationReport::passed() const {
  return std::all_of(results.begin(), results.end(), [](const InvariantResult& r) { return r.passed; });
}

std::optional<std::string> VerificationReport::first_failure() const {
  for (const auto& r : results) {
    if (!r.passed) return r.name;
  }
  return std::nullopt;
}

VerificationReport run_verification(std::span<const WeightedGraph> graphs, const VerifyOptions& options) {
  Recorder rec(options.oracle, options.tol);
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const WeightedGraph& g = graphs[i];
    validate(g);
    std::mt19937_64 rng(options.seed + 0x9e3779b97f4a7c15ULL * (i + 1));
    std::vector<bool> flips(g.edge_count());
    for (std::size_t e = 0; e < flips.size(); ++e) flips[e] = std::bernoulli_distribution(0.5)(rng);
    const Orientation o(g, flips);

    std::vector<GeneralizedInverse> grounded;
    for (VertexIndex q : grounds(g.vertex_count())) grounded.push_back(grounded_inverse(g, q));
    const GeneralizedInverse pseudo = pseudo_inverse(g);
    const PotentialKernel kernel(g, grounded.front());

    rec.set_context("graph #" + std::to_string(i));
    check_graph_core(rec, g, kernel, rng, options);
    check_laplacian(rec, g, grounded, pseudo, rng, options);
    check_potentials(rec, g, kernel, grounded, pseudo, rng, options);
    check_projections(rec, g, o, kernel, rng, options);
    check_rayleigh(rec, g, o, kernel, rng, options);
    if (options.oracle) {
      check_oracle(rec, g, o, kernel, options);
    }
  }
  return rec.take();
}

}  // namespace ohmgraph
