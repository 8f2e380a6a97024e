#pragma once

#include <string>

#include "ohmgraph/graph.hpp"
#include "ohmgraph/graph_io.hpp"

namespace fixtures {

inline ohmgraph::WeightedGraph load(const std::string& name) {
  return ohmgraph::read_graph_file(std::string(OHMGRAPH_TEST_DATA) + "/" + name + ".json");
}

// Square A-B-C-D (top, right, bottom, left), sides 2, diagonal D-B of length 1.
inline ohmgraph::WeightedGraph bridge() { return load("bridge"); }
// Star with center o and legs x, y, z of lengths 1, 2, 3.
inline ohmgraph::WeightedGraph tripod() { return load("tripod"); }
inline ohmgraph::WeightedGraph k2() { return load("k2"); }
inline ohmgraph::WeightedGraph parallel_pair() { return load("parallel"); }
inline ohmgraph::WeightedGraph c3() { return load("c3"); }

}  // namespace fixtures
