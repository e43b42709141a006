#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "ctxembed/graph.hpp"

namespace ctxembed {

/// Fraction of arcs (u,v) whose reverse (v,u) exists.
/// Throws NotApplicableError on undirected graphs.
double reciprocity(const Graph& g);

/// Mean local clustering coefficient over all nodes of the undirected view;
/// nodes of degree < 2 contribute 0.
double clustering_coefficient(const Graph& g);

/// 3 * triangles / connected triplets on the undirected view; 0 without triplets.
double transitivity(const Graph& g);

/// Mean over nodes u of the fraction of directed 2-paths u->v->w (w != u)
/// closed by the arc u->w. Throws NotApplicableError on undirected graphs.
double directed_clustering_coefficient(const Graph& g);

/// Fraction of all directed 2-paths u->v->w (w != u) closed by u->w.
double directed_transitivity(const Graph& g);

struct SpectralOptions {
  double tolerance = 1e-8;
  long max_iterations = 10000;
  std::size_t block_size = 8;
  std::uint64_t seed = 7;
};

/// |lambda_1| / |lambda_2| of the adjacency matrix (of the undirected view for
/// directed graphs). Block power iteration with Rayleigh-Ritz extraction;
/// graphs with at most `block_size` nodes are solved densely.
/// Throws ConvergenceError when the two leading Ritz pairs do not converge.
double spectral_separation(const Graph& g, const SpectralOptions& options = {});

struct Diameter {
  std::uint32_t hops = 0;
  /// True when computed by double-sweep lower bounds instead of exact BFS.
  bool approximate = false;
};

/// Diameter of the largest connected component of the undirected view.
/// Exact (BFS from every node) up to `exact_limit` nodes, otherwise the best
/// of 100 double-sweep lower bounds.
Diameter diameter(const Graph& g, std::size_t exact_limit = 50000, std::uint64_t seed = 11);

struct GraphProfile {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  bool directed = false;
  std::optional<double> reciprocity;
  Diameter diameter;
  double clustering = 0.0;
  double transitivity = 0.0;
  std::optional<double> clustering_dir;
  std::optional<double> transitivity_dir;
  double spectral_separation = 1.0;
  /// Spectral separation was taken on the symmetrized adjacency.
  bool spectral_symmetrized = false;
};

GraphProfile profile_graph(const Graph& g);

}  // namespace ctxembed
