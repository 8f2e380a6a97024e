#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ohmgraph/graph.hpp"
#include "ohmgraph/tolerance.hpp"

namespace ohmgraph {

struct RandomGraphSpec {
  std::size_t min_vertices = 2;
  std::size_t max_vertices = 6;
  std::size_t max_edges = 9;
  double min_length = 0.1;
  double max_length = 10.0;
};

/// Connected multigraph without loops: a random tree plus random extra edges
/// (parallel edges allowed), edge order and endpoint order shuffled.
WeightedGraph random_graph(std::mt19937_64& rng, const RandomGraphSpec& spec = {});

/// Exactly n vertices and m edges (m >= n - 1).
WeightedGraph random_graph(std::mt19937_64& rng, std::size_t n, std::size_t m, double min_length = 0.1,
                           double max_length = 10.0);

std::vector<WeightedGraph> random_corpus(std::uint64_t seed, std::size_t count, const RandomGraphSpec& spec = {});

/// Outcome of one named invariant over all checked cases.
struct InvariantResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  double worst_deviation = 0.0;  // largest |actual - expected| seen
  std::string first_failure;
};

struct VerificationReport {
  std::vector<InvariantResult> results;

  bool passed() const;
  /// Name of the first failing invariant, if any.
  std::optional<std::string> first_failure() const;
};

struct VerifyOptions {
  bool oracle = false;
  std::uint64_t seed = 42;
  std::size_t random_tuples = 20;  // per graph and suite
  Tolerance tol{};
  /// Test hook: applied to every Xi before projections are formed.
  std::function<void(Eigen::MatrixXd&)> corrupt_xi;
};

/// Runs every property suite on each graph. Deterministic for fixed options.
VerificationReport run_verification(std::span<const WeightedGraph> graphs, const VerifyOptions& options);

}  // namespace ohmgraph
