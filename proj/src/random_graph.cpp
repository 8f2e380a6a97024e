#include <algorithm>
#include <string>

#include "ohmgraph/error.hpp"
#include "ohmgraph/verify.hpp"

namespace ohmgraph {

WeightedGraph random_graph(std::mt19937_64& rng, std::size_t n, std::size_t m, double min_length, double max_length) {
  if (n < 2 || m + 1 < n) {
    throw Error(ErrorCode::InvalidArgument, "need n >= 2 and m >= n - 1");
  }
  std::uniform_real_distribution<double> length(min_length, max_length);
  std::vector<std::string> names;
  for (std::size_t v = 0; v < n; ++v) {
    names.push_back("v" + std::to_string(v));
  }
  std::vector<std::pair<VertexIndex, VertexIndex>> pairs;
  for (VertexIndex v = 1; v < n; ++v) {
    pairs.emplace_back(std::uniform_int_distribution<VertexIndex>(0, v - 1)(rng), v);
  }
  std::uniform_int_distribution<VertexIndex> any(0, n - 1);
  while (pairs.size() < m) {
    const VertexIndex a = any(rng);
    const VertexIndex b = any(rng);
    if (a != b) {
      pairs.emplace_back(a, b);
    }
  }
  std::shuffle(pairs.begin(), pairs.end(), rng);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [a, b] = pairs[i];
    if (std::bernoulli_distribution(0.5)(rng)) {
      std::swap(a, b);
    }
    edges.push_back({"e" + std::to_string(i + 1), a, b, length(rng)});
  }
  return WeightedGraph(std::move(names), std::move(edges));
}

WeightedGraph random_graph(std::mt19937_64& rng, const RandomGraphSpec& spec) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(spec.min_vertices, spec.max_vertices)(rng);
  const std::size_t m = std::uniform_int_distribution<std::size_t>(n - 1, std::max(n - 1, spec.max_edges))(rng);
  return random_graph(rng, n, m, spec.min_length, spec.max_length);
}

std::vector<WeightedGraph> random_corpus(std::uint64_t seed, std::size_t count, const RandomGraphSpec& spec) {
  std::mt19937_64 rng(seed);
  std::vector<WeightedGraph> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(random_graph(rng, spec));
  }
  return out;
}

}  // namespace ohmgraph
