#pragma once

#include <vector>

#include "reslab/resistance_network.hpp"
#include "reslab/util.hpp"

namespace reslab::testing {

// random connected graph: random spanning tree plus extra edges, conductances
// uniform in [0.1, 10]
inline ResistanceNetwork random_network(std::size_t n, SplitMix64& rng) {
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v)
    edges.push_back({rng.next_below(v), v, rng.uniform(0.1, 10.0)});
  std::size_t extra = rng.next_below(n + 1);
  for (std::size_t k = 0; k < extra; ++k) {
    std::size_t u = rng.next_below(n), v = rng.next_below(n);
    if (u != v) edges.push_back({std::min(u, v), std::max(u, v), rng.uniform(0.1, 10.0)});
  }
  return ResistanceNetwork(n, std::move(edges));
}

inline std::vector<double> random_measure(std::size_t n, SplitMix64& rng) {
  std::vector<double> m(n);
  for (auto& v : m) v = rng.uniform(0.1, 3.0);
  return m;
}

}  // namespace reslab::testing
