#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ctxembed {

using NodeId = std::uint32_t;

struct Edge {
  NodeId src = 0;
  NodeId dst = 0;
  double weight = 1.0;

  friend bool operator==(const Edge& a, const Edge& b) {
    return a.src == b.src && a.dst == b.dst;
  }
};

/// Immutable compressed adjacency structure.
///
/// Undirected graphs store each edge in both orientations, so `out_neighbors`
/// is the neighborhood and `in_neighbors` aliases it. Neighbor lists are
/// sorted and free of duplicates and self-loops. Weights are stored only when
/// some edge weight differs from 1.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an arc list. Self-loops are dropped; for repeated
  /// (u,v) pairs (either orientation when undirected) the first weight wins.
  /// Throws PreconditionError on out-of-range ids or negative/non-finite weights.
  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges, bool directed);

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  /// Directed arcs, or undirected edges counted once.
  std::size_t edge_count() const noexcept { return directed_ ? targets_.size() : targets_.size() / 2; }
  /// Stored adjacency entries (2 per undirected edge).
  std::size_t arc_count() const noexcept { return targets_.size(); }
  bool directed() const noexcept { return directed_; }
  bool weighted() const noexcept { return !weights_.empty(); }

  std::span<const NodeId> out_neighbors(NodeId u) const {
    return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
  }
  /// Empty for unweighted graphs.
  std::span<const double> out_weights(NodeId u) const {
    if (weights_.empty()) return {};
    return {weights_.data() + offsets_[u], weights_.data() + offsets_[u + 1]};
  }
  std::span<const NodeId> in_neighbors(NodeId u) const {
    if (!directed_) return out_neighbors(u);
    return {sources_.data() + in_offsets_[u], sources_.data() + in_offsets_[u + 1]};
  }
  std::span<const double> in_weights(NodeId u) const {
    if (!directed_) return out_weights(u);
    if (in_weights_.empty()) return {};
    return {in_weights_.data() + in_offsets_[u], in_weights_.data() + in_offsets_[u + 1]};
  }

  std::size_t out_degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
  std::size_t in_degree(NodeId u) const {
    return directed_ ? in_offsets_[u + 1] - in_offsets_[u] : out_degree(u);
  }
  /// Sum of outgoing weights (out-degree when unweighted).
  double out_strength(NodeId u) const;
  double in_strength(NodeId u) const;

  bool has_edge(NodeId u, NodeId v) const;
  /// Weight of (u,v), 0 when absent.
  double edge_weight(NodeId u, NodeId v) const;

  /// Arcs of a directed graph, or undirected edges once with src < dst.
  std::vector<Edge> edges() const;

  /// Symmetrized copy; returns *this unchanged for undirected graphs.
  Graph undirected_view() const;

  /// Copy with node u renamed to permutation[u].
  Graph relabeled(std::span<const NodeId> permutation) const;

  /// True when some node has no outgoing edge.
  bool has_dangling_nodes() const;

 private:
  bool directed_ = false;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
  std::vector<double> weights_;
  std::vector<std::size_t> in_offsets_;
  std::vector<NodeId> sources_;
  std::vector<double> in_weights_;
};

/// Original string ids <-> dense indices, in order of first appearance.
class IdMap {
 public:
  NodeId intern(std::string_view name);
  /// Throws std::out_of_range for unknown names.
  NodeId at(std::string_view name) const;
  bool contains(std::string_view name) const;
  const std::string& name(NodeId id) const { return names_[id]; }
  std::size_t size() const noexcept { return names_.size(); }

  /// Identity map "0".."n-1", used for generated graphs.
  static IdMap identity(std::size_t n);

  void write(std::ostream& out) const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> index_;
};

struct LoadedGraph {
  Graph graph;
  IdMap ids;
};

/// Parses `src dst [weight]` lines; `#` and `%` lines and blank lines are
/// skipped. Throws ParseError (with line number) on malformed lines and on an
/// input without edges.
LoadedGraph read_edge_list(std::istream& in, bool directed);
LoadedGraph load_edge_list(const std::filesystem::path& path, bool directed);

/// Writes the graph's edges using original ids; weights only when weighted.
void write_edge_list(const Graph& g, const IdMap& ids, std::ostream& out);
void save_edge_list(const Graph& g, const IdMap& ids, const std::filesystem::path& path);
void save_id_map(const IdMap& ids, const std::filesystem::path& path);

}  // namespace ctxembed
