#pragma once

#include <cstdint>

#include "ctxembed/graph.hpp"

namespace ctxembed {

/// G(n, p); undirected edges or directed arcs each present independently.
Graph erdos_renyi(std::size_t n, double p, bool directed, std::uint64_t seed);

/// Acyclic digraph on `layers` equal layers; each node links to `out_degree`
/// distinct nodes of the next layer, and every non-first-layer node receives
/// at least `min_in_degree` arcs. Zero reciprocity and zero directed
/// transitivity by construction.
Graph layered_dag(std::size_t n, std::size_t layers, std::size_t out_degree,
                  std::size_t min_in_degree, std::uint64_t seed);

/// `count` disjoint copies of K_size; clique c holds nodes [c*size, (c+1)*size).
Graph disjoint_cliques(std::size_t count, std::size_t size);

/// Triangle 0-1-2 with pendant node 3 attached to 0.
Graph triangle_with_pendant();

}  // namespace ctxembed
