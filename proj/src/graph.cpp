#include "ctxembed/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "ctxembed/errors.hpp"

namespace ctxembed {

namespace {

struct Csr {
  std::vector<std::size_t> offsets;
  std::vector<NodeId> targets;
  std::vector<double> weights;
};

// Arcs must already be free of self-loops. Duplicates keep the first weight.
Csr build_csr(std::size_t n, std::vector<Edge>& arcs, bool keep_weights) {
  std::stable_sort(arcs.begin(), arcs.end(), [](const Edge& a, const Edge& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  Csr csr;
  csr.offsets.assign(n + 1, 0);
  csr.targets.reserve(arcs.size());
  if (keep_weights) csr.weights.reserve(arcs.size());
  for (const Edge& e : arcs) {
    ++csr.offsets[e.src + 1];
    csr.targets.push_back(e.dst);
    if (keep_weights) csr.weights.push_back(e.weight);
  }
  std::partial_sum(csr.offsets.begin(), csr.offsets.end(), csr.offsets.begin());
  return csr;
}

}  // namespace

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges, bool directed) {
  std::vector<Edge> arcs;
  arcs.reserve(directed ? edges.size() : 2 * edges.size());
  bool weighted = false;
  for (const Edge& e : edges) {
    if (e.src >= node_count || e.dst >= node_count) {
      throw PreconditionError("edge (" + std::to_string(e.src) + "," + std::to_string(e.dst) +
                              ") references a node id >= node_count " +
                              std::to_string(node_count));
    }
    if (!std::isfinite(e.weight) || e.weight < 0.0) {
      throw PreconditionError("edge weights must be finite and non-negative");
    }
    if (e.src == e.dst) continue;
    weighted = weighted || e.weight != 1.0;
    arcs.push_back(e);
  }
  if (!directed) {
    // Canonicalize first so that "0 1" then "1 0" keeps the first weight.
    for (Edge& e : arcs) {
      if (e.src > e.dst) std::swap(e.src, e.dst);
    }
    std::stable_sort(arcs.begin(), arcs.end(), [](const Edge& a, const Edge& b) {
      return a.src != b.src ? a.src < b.src : a.dst < b.dst;
    });
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    const std::size_t m = arcs.size();
    for (std::size_t i = 0; i < m; ++i) arcs.push_back({arcs[i].dst, arcs[i].src, arcs[i].weight});
  }

  Graph g;
  g.directed_ = directed;
  std::vector<Edge> reversed;
  if (directed) {
    reversed.reserve(arcs.size());
    for (const Edge& e : arcs) reversed.push_back({e.dst, e.src, e.weight});
  }
  Csr out = build_csr(node_count, arcs, weighted);
  g.offsets_ = std::move(out.offsets);
  g.targets_ = std::move(out.targets);
  g.weights_ = std::move(out.weights);
  if (directed) {
    // Dedup on the forward list already happened; the reversed list has the
    // same multiset of pairs, so dedup there keeps the matching weight.
    Csr in = build_csr(node_count, reversed, weighted);
    g.in_offsets_ = std::move(in.offsets);
    g.sources_ = std::move(in.targets);
    g.in_weights_ = std::move(in.weights);
  }
  return g;
}

double Graph::out_strength(NodeId u) const {
  if (weights_.empty()) return static_cast<double>(out_degree(u));
  double s = 0.0;
  for (double w : out_weights(u)) s += w;
  return s;
}

double Graph::in_strength(NodeId u) const {
  auto w = in_weights(u);
  if (w.empty()) return static_cast<double>(in_degree(u));
  double s = 0.0;
  for (double x : w) s += x;
  return s;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto nbrs = out_neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

double Graph::edge_weight(NodeId u, NodeId v) const {
  auto nbrs = out_neighbors(u);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
  if (it == nbrs.end() || *it != v) return 0.0;
  if (weights_.empty()) return 1.0;
  return out_weights(u)[static_cast<std::size_t>(it - nbrs.begin())];
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> result;
  result.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    auto nbrs = out_neighbors(u);
    auto w = out_weights(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (!directed_ && nbrs[i] < u) continue;
      result.push_back({u, nbrs[i], w.empty() ? 1.0 : w[i]});
    }
  }
  return result;
}

Graph Graph::undirected_view() const {
  if (!directed_) return *this;
  auto arcs = edges();
  return from_edges(node_count(), arcs, false);
}

Graph Graph::relabeled(std::span<const NodeId> permutation) const {
  if (permutation.size() != node_count()) {
    throw PreconditionError("relabeling permutation has the wrong size");
  }
  auto arcs = edges();
  for (Edge& e : arcs) {
    e.src = permutation[e.src];
    e.dst = permutation[e.dst];
  }
  return from_edges(node_count(), arcs, directed_);
}

bool Graph::has_dangling_nodes() const {
  for (NodeId u = 0; u < node_count(); ++u) {
    if (out_degree(u) == 0) return true;
  }
  return false;
}

NodeId IdMap::intern(std::string_view name) {
  std::string key(name);
  auto [it, inserted] = index_.try_emplace(key, static_cast<NodeId>(names_.size()));
  if (inserted) names_.push_back(std::move(key));
  return it->second;
}

NodeId IdMap::at(std::string_view name) const { return index_.at(std::string(name)); }

bool IdMap::contains(std::string_view name) const {
  return index_.find(std::string(name)) != index_.end();
}

IdMap IdMap::identity(std::size_t n) {
  IdMap map;
  for (std::size_t i = 0; i < n; ++i) map.intern(std::to_string(i));
  return map;
}

void IdMap::write(std::ostream& out) const {
  for (std::size_t i = 0; i < names_.size(); ++i) out << names_[i] << ' ' << i << '\n';
}

LoadedGraph read_edge_list(std::istream& in, bool directed) {
  LoadedGraph result;
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#' || line[first] == '%') continue;

    std::istringstream tokens(line);
    std::string src, dst, weight_token, extra;
    if (!(tokens >> src >> dst)) throw ParseError("expected `src dst [weight]`", line_no);
    double weight = 1.0;
    if (tokens >> weight_token) {
      std::size_t used = 0;
      try {
        weight = std::stod(weight_token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != weight_token.size() || !std::isfinite(weight) || weight < 0.0) {
        throw ParseError("invalid edge weight '" + weight_token + "'", line_no);
      }
      if (tokens >> extra) throw ParseError("too many fields", line_no);
    }
    NodeId u = result.ids.intern(src);
    NodeId v = result.ids.intern(dst);
    edges.push_back({u, v, weight});
  }
  if (edges.empty()) throw ParseError("edge list contains no edges", 0);
  result.graph = Graph::from_edges(result.ids.size(), edges, directed);
  if (result.graph.edge_count() == 0) throw ParseError("edge list contains only self-loops", 0);
  return result;
}

LoadedGraph load_edge_list(const std::filesystem::path& path, bool directed) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open edge list " + path.string());
  return read_edge_list(in, directed);
}

void write_edge_list(const Graph& g, const IdMap& ids, std::ostream& out) {
  auto old_precision = out.precision(17);
  for (const Edge& e : g.edges()) {
    out << ids.name(e.src) << ' ' << ids.name(e.dst);
    if (g.weighted()) out << ' ' << e.weight;
    out << '\n';
  }
  out.precision(old_precision);
}

void save_edge_list(const Graph& g, const IdMap& ids, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_edge_list(g, ids, out);
}

void save_id_map(const IdMap& ids, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  ids.write(out);
}

}  // namespace ctxembed
