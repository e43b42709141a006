#include "ctxembed/profile.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "ctxembed/errors.hpp"
#include "ctxembed/random.hpp"

namespace ctxembed {

double reciprocity(const Graph& g) {
  if (!g.directed()) throw NotApplicableError("reciprocity is defined for directed graphs only");
  if (g.edge_count() == 0) return 0.0;
  std::size_t reciprocated = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (NodeId v : g.out_neighbors(u)) reciprocated += g.has_edge(v, u) ? 1 : 0;
  }
  return static_cast<double>(reciprocated) / static_cast<double>(g.edge_count());
}

namespace {

struct TriangleCounts {
  double clustering_sum = 0.0;
  double closed = 0.0;
  double triplets = 0.0;
};

TriangleCounts count_undirected(const Graph& und) {
  const std::size_t n = und.node_count();
  std::vector<NodeId> stamp(n, static_cast<NodeId>(-1));
  TriangleCounts counts;
  for (NodeId u = 0; u < n; ++u) {
    auto nbrs = und.out_neighbors(u);
    const double d = static_cast<double>(nbrs.size());
    if (nbrs.size() < 2) continue;
    for (NodeId v : nbrs) stamp[v] = u;
    double ordered_links = 0.0;
    for (NodeId v : nbrs) {
      for (NodeId w : und.out_neighbors(v)) ordered_links += stamp[w] == u ? 1.0 : 0.0;
    }
    const double pairs = d * (d - 1.0);
    counts.clustering_sum += ordered_links / pairs;
    counts.closed += ordered_links;
    counts.triplets += pairs;
  }
  return counts;
}

TriangleCounts count_directed(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<NodeId> stamp(n, static_cast<NodeId>(-1));
  TriangleCounts counts;
  for (NodeId u = 0; u < n; ++u) {
    auto outs = g.out_neighbors(u);
    for (NodeId v : outs) stamp[v] = u;
    double paths = 0.0;
    double closed = 0.0;
    for (NodeId v : outs) {
      for (NodeId w : g.out_neighbors(v)) {
        if (w == u) continue;
        paths += 1.0;
        closed += stamp[w] == u ? 1.0 : 0.0;
      }
    }
    if (paths > 0.0) counts.clustering_sum += closed / paths;
    counts.closed += closed;
    counts.triplets += paths;
  }
  return counts;
}

}  // namespace

double clustering_coefficient(const Graph& g) {
  if (g.node_count() == 0) return 0.0;
  auto counts = count_undirected(g.undirected_view());
  return counts.clustering_sum / static_cast<double>(g.node_count());
}

double transitivity(const Graph& g) {
  auto counts = count_undirected(g.undirected_view());
  return counts.triplets > 0.0 ? counts.closed / counts.triplets : 0.0;
}

double directed_clustering_coefficient(const Graph& g) {
  if (!g.directed()) throw NotApplicableError("directed clustering needs a directed graph");
  if (g.node_count() == 0) return 0.0;
  auto counts = count_directed(g);
  return counts.clustering_sum / static_cast<double>(g.node_count());
}

double directed_transitivity(const Graph& g) {
  if (!g.directed()) throw NotApplicableError("directed transitivity needs a directed graph");
  auto counts = count_directed(g);
  return counts.triplets > 0.0 ? counts.closed / counts.triplets : 0.0;
}

namespace {

Eigen::MatrixXd multiply(const Graph& g, const Eigen::MatrixXd& x) {
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(x.rows(), x.cols());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    auto nbrs = g.out_neighbors(u);
    auto w = g.out_weights(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      y.row(u) += (w.empty() ? 1.0 : w[i]) * x.row(nbrs[i]);
    }
  }
  return y;
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& y) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
  return qr.householderQ() * Eigen::MatrixXd::Identity(y.rows(), y.cols());
}

double ratio_of_leading(const Eigen::VectorXd& eigenvalues) {
  std::vector<double> mags(eigenvalues.size());
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) mags[i] = std::abs(eigenvalues[i]);
  std::sort(mags.rbegin(), mags.rend());
  if (mags[0] == 0.0) throw PreconditionError("spectral separation of a graph without edges");
  if (mags[1] == 0.0) throw PreconditionError("second eigenvalue is zero");
  return mags[0] / mags[1];
}

}  // namespace

double spectral_separation(const Graph& graph, const SpectralOptions& options) {
  if (graph.node_count() < 2) throw PreconditionError("spectral separation needs at least 2 nodes");
  const Graph g = graph.undirected_view();
  const auto n = static_cast<Eigen::Index>(g.node_count());

  if (static_cast<std::size_t>(n) <= options.block_size) {
    Eigen::MatrixXd a = multiply(g, Eigen::MatrixXd::Identity(n, n));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    return ratio_of_leading(solver.eigenvalues());
  }

  const auto p = static_cast<Eigen::Index>(options.block_size);
  Rng rng(options.seed);
  Eigen::MatrixXd x(n, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) x(i, j) = rng.normal();
  }
  x = orthonormalize(x);

  for (long it = 1; it <= options.max_iterations; ++it) {
    Eigen::MatrixXd ax = multiply(g, x);
    Eigen::MatrixXd h = x.transpose() * ax;
    h = 0.5 * (h + h.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    const Eigen::VectorXd& theta = solver.eigenvalues();

    std::vector<Eigen::Index> order(static_cast<std::size_t>(p));
    for (Eigen::Index i = 0; i < p; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return std::abs(theta[a]) > std::abs(theta[b]);
    });
    Eigen::MatrixXd ritz = x * solver.eigenvectors();
    Eigen::MatrixXd aritz = ax * solver.eigenvectors();

    const double scale = std::abs(theta[order[0]]);
    if (scale == 0.0) throw PreconditionError("spectral separation of a graph without edges");
    bool converged = true;
    for (std::size_t k = 0; k < 2; ++k) {
      Eigen::Index j = order[k];
      double residual = (aritz.col(j) - theta[j] * ritz.col(j)).norm();
      converged = converged && residual <= options.tolerance * scale;
    }
    if (converged) {
      Eigen::VectorXd leading(2);
      leading << theta[order[0]], theta[order[1]];
      return ratio_of_leading(leading);
    }
    x = orthonormalize(aritz);
  }
  throw ConvergenceError("spectral separation did not converge", options.max_iterations);
}

namespace {

// Returns distances from `source` (-1 for unreachable) and the farthest node.
std::pair<std::uint32_t, NodeId> bfs_eccentricity(const Graph& und, NodeId source,
                                                 std::vector<std::int64_t>& dist,
                                                 std::vector<NodeId>& queue) {
  std::fill(dist.begin(), dist.end(), -1);
  queue.clear();
  queue.push_back(source);
  dist[source] = 0;
  NodeId far = source;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    NodeId u = queue[head];
    if (dist[u] > dist[far]) far = u;
    for (NodeId v : und.out_neighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return {static_cast<std::uint32_t>(dist[far]), far};
}

}  // namespace

Diameter diameter(const Graph& g, std::size_t exact_limit, std::uint64_t seed) {
  Diameter result;
  const std::size_t n = g.node_count();
  if (n == 0) return result;
  const Graph und = g.undirected_view();

  std::vector<std::int64_t> component(n, -1);
  std::vector<NodeId> queue;
  std::size_t best_size = 0;
  std::int64_t best_component = -1;
  std::int64_t next_component = 0;
  for (NodeId s = 0; s < n; ++s) {
    if (component[s] >= 0) continue;
    queue.clear();
    queue.push_back(s);
    component[s] = next_component;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (NodeId v : und.out_neighbors(queue[head])) {
        if (component[v] < 0) {
          component[v] = next_component;
          queue.push_back(v);
        }
      }
    }
    if (queue.size() > best_size) {
      best_size = queue.size();
      best_component = next_component;
    }
    ++next_component;
  }

  std::vector<NodeId> members;
  members.reserve(best_size);
  for (NodeId u = 0; u < n; ++u) {
    if (component[u] == best_component) members.push_back(u);
  }

  std::vector<std::int64_t> dist(n);
  if (n <= exact_limit) {
    for (NodeId u : members) {
      result.hops = std::max(result.hops, bfs_eccentricity(und, u, dist, queue).first);
    }
    return result;
  }

  result.approximate = true;
  Rng rng(seed);
  for (int sweep = 0; sweep < 100; ++sweep) {
    NodeId start = members[rng.index(members.size())];
    NodeId far = bfs_eccentricity(und, start, dist, queue).second;
    result.hops = std::max(result.hops, bfs_eccentricity(und, far, dist, queue).first);
  }
  return result;
}

GraphProfile profile_graph(const Graph& g) {
  GraphProfile p;
  p.nodes = g.node_count();
  p.edges = g.edge_count();
  p.directed = g.directed();
  if (g.directed()) {
    p.reciprocity = reciprocity(g);
    p.clustering_dir = directed_clustering_coefficient(g);
    p.transitivity_dir = directed_transitivity(g);
    p.spectral_symmetrized = true;
  }
  p.clustering = clustering_coefficient(g);
  p.transitivity = transitivity(g);
  p.diameter = diameter(g);
  p.spectral_separation = spectral_separation(g);
  return p;
}

}  // namespace ctxembed
