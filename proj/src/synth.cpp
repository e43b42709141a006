#include "ctxembed/synth.hpp"

#include <algorithm>
#include <vector>

#include "ctxembed/errors.hpp"
#include "ctxembed/random.hpp"

namespace ctxembed {

Graph erdos_renyi(std::size_t n, double p, bool directed, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("p must lie in [0,1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = directed ? 0 : u + 1; v < n; ++v) {
      if (u != v && rng.bernoulli(p)) edges.push_back({u, v, 1.0});
    }
  }
  return Graph::from_edges(n, edges, directed);
}

Graph layered_dag(std::size_t n, std::size_t layers, std::size_t out_degree,
                  std::size_t min_in_degree, std::uint64_t seed) {
  if (layers < 2 || n < 2 * layers) throw PreconditionError("need >= 2 layers of >= 2 nodes");
  std::vector<std::size_t> start(layers + 1);
  for (std::size_t l = 0; l <= layers; ++l) start[l] = l * n / layers;
  for (std::size_t l = 0; l + 1 < layers; ++l) {
    const std::size_t next = start[l + 2] - start[l + 1];
    if (out_degree > next || min_in_degree > start[l + 1] - start[l]) {
      throw PreconditionError("layer too small for the requested degrees");
    }
  }

  Rng rng(seed);
  std::vector<Edge> edges;
  std::vector<std::size_t> in_degree(n, 0);
  for (std::size_t l = 0; l + 1 < layers; ++l) {
    std::vector<NodeId> targets;
    for (std::size_t v = start[l + 1]; v < start[l + 2]; ++v) targets.push_back(static_cast<NodeId>(v));
    for (std::size_t u = start[l]; u < start[l + 1]; ++u) {
      // Partial Fisher-Yates: the first out_degree entries form a uniform subset.
      for (std::size_t k = 0; k < out_degree; ++k) {
        std::swap(targets[k], targets[k + rng.index(targets.size() - k)]);
        edges.push_back({static_cast<NodeId>(u), targets[k], 1.0});
        ++in_degree[targets[k]];
      }
    }
    std::vector<NodeId> sources;
    for (std::size_t u = start[l]; u < start[l + 1]; ++u) sources.push_back(static_cast<NodeId>(u));
    for (std::size_t v = start[l + 1]; v < start[l + 2]; ++v) {
      while (in_degree[v] < min_in_degree) {
        NodeId u = sources[rng.index(sources.size())];
        auto dup = std::find_if(edges.begin(), edges.end(), [&](const Edge& e) {
          return e.src == u && e.dst == v;
        });
        if (dup != edges.end()) continue;
        edges.push_back({u, static_cast<NodeId>(v), 1.0});
        ++in_degree[v];
      }
    }
  }
  return Graph::from_edges(n, edges, true);
}

Graph disjoint_cliques(std::size_t count, std::size_t size) {
  std::vector<Edge> edges;
  for (std::size_t c = 0; c < count; ++c) {
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = i + 1; j < size; ++j) {
        edges.push_back({static_cast<NodeId>(c * size + i), static_cast<NodeId>(c * size + j), 1.0});
      }
    }
  }
  return Graph::from_edges(count * size, edges, false);
}

Graph triangle_with_pendant() {
  const std::vector<Edge> edges = {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}};
  return Graph::from_edges(4, edges, false);
}

}  // namespace ctxembed
