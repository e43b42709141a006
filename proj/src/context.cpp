#include "ctxembed/context.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "ctxembed/errors.hpp"

namespace ctxembed {

void WalkConfig::validate() const {
  if (walks_per_node == 0) throw PreconditionError("walks_per_node must be > 0");
  if (walk_length == 0) throw PreconditionError("walk_length must be > 0");
  if (window == 0) throw PreconditionError("window must be > 0");
  if (window > walk_length) throw PreconditionError("window must not exceed walk_length");
}

void SecondOrderConfig::validate() const {
  walk.validate();
  if (!(p > 0.0) || !std::isfinite(p)) throw PreconditionError("p must be finite and > 0");
  if (!(q > 0.0) || !std::isfinite(q)) throw PreconditionError("q must be finite and > 0");
}

void PPRConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw PreconditionError("alpha must lie in (0,1)");
  if (samples == 0) throw PreconditionError("samples must be > 0");
}

namespace {

[[noreturn]] void throw_dangling(NodeId u) {
  throw PreconditionError("node " + std::to_string(u) +
                          " has no outgoing edge; random walks cannot continue");
}

void check_walkable(const Graph& g, DanglingPolicy dangling) {
  if (dangling != DanglingPolicy::kError) return;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (g.out_degree(u) == 0) throw_dangling(u);
  }
}

// Per-node alias tables for weighted graphs; unweighted graphs draw uniformly.
class NeighborSampler {
 public:
  explicit NeighborSampler(const Graph& g) : g_(g) {
    if (!g.weighted()) return;
    tables_.reserve(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
      auto w = g.out_weights(u);
      double total = 0.0;
      for (double x : w) total += x;
      tables_.push_back(total > 0.0 ? AliasTable(w) : AliasTable());
    }
  }

  // Index into out_neighbors(u); u must have out-degree > 0.
  std::size_t sample(NodeId u, Rng& rng) const {
    if (tables_.empty() || tables_[u].size() == 0) return rng.index(g_.out_degree(u));
    return tables_[u].sample(rng);
  }

 private:
  const Graph& g_;
  std::vector<AliasTable> tables_;
};

enum class StepCase : std::uint8_t { kReturn, kCommon, kOutward };

// Fills weights for node2vec's step and reports whether all neighbors share one
// case (the step then reduces exactly to first order).
bool second_order_weights(const Graph& g, NodeId previous, NodeId current, double p, double q,
                          std::vector<double>& weights) {
  auto nbrs = g.out_neighbors(current);
  auto w = g.out_weights(current);
  weights.resize(nbrs.size());
  bool uniform_case = true;
  StepCase first_case = StepCase::kReturn;
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    NodeId x = nbrs[i];
    StepCase c = x == previous                 ? StepCase::kReturn
                 : g.has_edge(previous, x)     ? StepCase::kCommon
                                               : StepCase::kOutward;
    double factor = c == StepCase::kReturn ? 1.0 / p : c == StepCase::kCommon ? 1.0 : 1.0 / q;
    weights[i] = (w.empty() ? 1.0 : w[i]) * factor;
    if (i == 0) first_case = c;
    uniform_case = uniform_case && c == first_case;
  }
  return uniform_case;
}

std::size_t sample_linear(std::span<const double> weights, Rng& rng) {
  double total = 0.0;
  for (double x : weights) total += x;
  double target = rng.uniform() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (target < acc) return i;
  }
  // Rounding can leave target == total; return the last positive weight.
  for (std::size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0.0) return i;
  }
  return weights.size() - 1;
}

class WalkStream : public PairStream {
 public:
  WalkStream(const Graph& g, const SecondOrderConfig& cfg, bool second_order)
      : g_(g), cfg_(cfg), second_order_(second_order), sampler_(g) {
    cfg_.validate();
    if (g.node_count() == 0) throw PreconditionError("graph has no nodes");
    check_walkable(g, cfg_.walk.dangling);
  }

  void generate(std::uint64_t epoch, std::uint32_t shard, std::uint32_t shards,
                const PairSink& sink) const override {
    const WalkConfig& w = cfg_.walk;
    Rng rng(derive_seed(w.seed, (epoch << 16) | shard));
    std::vector<NodeId> order;
    for (NodeId u = shard; u < g_.node_count(); u += shards) order.push_back(u);
    std::vector<NodeId> walk;
    std::vector<double> scratch;
    for (std::uint32_t round = 0; round < w.walks_per_node; ++round) {
      rng.shuffle(std::span<NodeId>(order));
      for (NodeId start : order) {
        walk_from(start, rng, walk, scratch);
        window_pairs(walk, w.window, sink);
      }
    }
  }

  std::uint64_t pairs_per_epoch() const override {
    const WalkConfig& w = cfg_.walk;
    return static_cast<std::uint64_t>(g_.node_count()) * w.walks_per_node *
           window_pair_count(w.walk_length, w.window);
  }

 private:
  void walk_from(NodeId start, Rng& rng, std::vector<NodeId>& walk,
                 std::vector<double>& scratch) const {
    const WalkConfig& w = cfg_.walk;
    walk.clear();
    walk.push_back(start);
    while (walk.size() < w.walk_length) {
      NodeId cur = walk.back();
      auto nbrs = g_.out_neighbors(cur);
      if (nbrs.empty()) {
        if (w.dangling == DanglingPolicy::kError) throw_dangling(cur);
        break;
      }
      if (!second_order_ || walk.size() == 1 ||
          second_order_weights(g_, walk[walk.size() - 2], cur, cfg_.p, cfg_.q, scratch)) {
        walk.push_back(nbrs[sampler_.sample(cur, rng)]);
      } else {
        walk.push_back(nbrs[sample_linear(scratch, rng)]);
      }
    }
  }

  const Graph& g_;
  SecondOrderConfig cfg_;
  bool second_order_;
  NeighborSampler sampler_;
};

class PprStream : public PairStream {
 public:
  PprStream(const Graph& g, const PPRConfig& cfg) : g_(g), cfg_(cfg), sampler_(g) {
    cfg_.validate();
    if (g.node_count() == 0) throw PreconditionError("graph has no nodes");
    check_walkable(g, cfg_.dangling);
  }

  void generate(std::uint64_t epoch, std::uint32_t shard, std::uint32_t shards,
                const PairSink& sink) const override {
    Rng rng(derive_seed(cfg_.seed, (epoch << 16) | shard));
    const std::size_t n = g_.node_count();
    for (std::uint64_t i = shard; i < cfg_.samples; i += shards) {
      NodeId start = static_cast<NodeId>(rng.index(n));
      NodeId cur = start;
      for (std::uint32_t h = 0; h < cfg_.max_length && !rng.bernoulli(cfg_.alpha); ++h) {
        auto nbrs = g_.out_neighbors(cur);
        if (nbrs.empty()) {
          if (cfg_.dangling == DanglingPolicy::kError) throw_dangling(cur);
          break;
        }
        cur = nbrs[sampler_.sample(cur, rng)];
      }
      sink(start, cur);
    }
  }

  std::uint64_t pairs_per_epoch() const override { return cfg_.samples; }

 private:
  const Graph& g_;
  PPRConfig cfg_;
  NeighborSampler sampler_;
};

class AdjacencyStream : public PairStream {
 public:
  AdjacencyStream(const Graph& g, std::uint64_t samples, std::uint64_t seed)
      : g_(g), samples_(samples), seed_(seed) {
    if (g.arc_count() == 0) throw PreconditionError("adjacency context needs at least one edge");
    if (samples == 0) throw PreconditionError("samples must be > 0");
    arcs_.reserve(g.arc_count());
    std::vector<double> weights;
    weights.reserve(g.arc_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
      auto nbrs = g.out_neighbors(u);
      auto w = g.out_weights(u);
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        arcs_.push_back({u, nbrs[i]});
        weights.push_back(w.empty() ? 1.0 : w[i]);
      }
    }
    table_ = AliasTable(weights);
  }

  void generate(std::uint64_t epoch, std::uint32_t shard, std::uint32_t shards,
                const PairSink& sink) const override {
    Rng rng(derive_seed(seed_, (epoch << 16) | shard));
    for (std::uint64_t i = shard; i < samples_; i += shards) {
      const ContextPair& arc = arcs_[table_.sample(rng)];
      sink(arc.source, arc.context);
    }
  }

  std::uint64_t pairs_per_epoch() const override { return samples_; }

 private:
  const Graph& g_;
  std::uint64_t samples_;
  std::uint64_t seed_;
  std::vector<ContextPair> arcs_;
  AliasTable table_;
};

}  // namespace

std::vector<ContextPair> collect_pairs(const PairStream& stream, std::uint64_t epoch,
                                       std::uint64_t limit) {
  std::vector<ContextPair> pairs;
  struct Full {};
  try {
    stream.generate(epoch, [&](NodeId s, NodeId c) {
      pairs.push_back({s, c});
      if (limit != 0 && pairs.size() >= limit) throw Full{};
    });
  } catch (const Full&) {
  }
  return pairs;
}

std::unique_ptr<PairStream> uniform_walk_pairs(const Graph& g, const WalkConfig& cfg) {
  SecondOrderConfig second;
  second.walk = cfg;
  return std::make_unique<WalkStream>(g, second, false);
}

std::unique_ptr<PairStream> node2vec_walk_pairs(const Graph& g, const SecondOrderConfig& cfg) {
  return std::make_unique<WalkStream>(g, cfg, true);
}

std::unique_ptr<PairStream> ppr_pairs(const Graph& g, const PPRConfig& cfg) {
  return std::make_unique<PprStream>(g, cfg);
}

std::unique_ptr<PairStream> adjacency_pairs(const Graph& g, std::uint64_t samples,
                                            std::uint64_t seed) {
  return std::make_unique<AdjacencyStream>(g, samples, seed);
}

std::vector<double> first_order_row(const Graph& g, NodeId current) {
  auto nbrs = g.out_neighbors(current);
  auto w = g.out_weights(current);
  std::vector<double> row(nbrs.size());
  if (nbrs.empty()) return row;
  if (w.empty()) {
    std::fill(row.begin(), row.end(), 1.0 / static_cast<double>(nbrs.size()));
    return row;
  }
  double total = 0.0;
  for (double x : w) total += x;
  for (std::size_t i = 0; i < row.size(); ++i) row[i] = w[i] / total;
  return row;
}

std::vector<double> second_order_row(const Graph& g, NodeId previous, NodeId current, double p,
                                     double q) {
  std::vector<double> weights;
  if (second_order_weights(g, previous, current, p, q, weights)) {
    return first_order_row(g, current);
  }
  double total = 0.0;
  for (double x : weights) total += x;
  for (double& x : weights) x /= total;
  return weights;
}

std::vector<NodeId> random_walk(const Graph& g, NodeId start, std::uint32_t length, Rng& rng,
                                DanglingPolicy dangling) {
  return node2vec_walk(g, start, length, 1.0, 1.0, rng, dangling);
}

std::vector<NodeId> node2vec_walk(const Graph& g, NodeId start, std::uint32_t length, double p,
                                  double q, Rng& rng, DanglingPolicy dangling) {
  NeighborSampler sampler(g);
  std::vector<NodeId> walk{start};
  std::vector<double> scratch;
  while (walk.size() < length) {
    NodeId cur = walk.back();
    auto nbrs = g.out_neighbors(cur);
    if (nbrs.empty()) {
      if (dangling == DanglingPolicy::kError) throw_dangling(cur);
      break;
    }
    if (walk.size() == 1 ||
        second_order_weights(g, walk[walk.size() - 2], cur, p, q, scratch)) {
      walk.push_back(nbrs[sampler.sample(cur, rng)]);
    } else {
      walk.push_back(nbrs[sample_linear(scratch, rng)]);
    }
  }
  return walk;
}

void window_pairs(std::span<const NodeId> walk, std::uint32_t window, const PairSink& sink) {
  const std::size_t len = walk.size();
  for (std::size_t i = 0; i < len; ++i) {
    const std::size_t lo = i >= window ? i - window : 0;
    const std::size_t hi = std::min(len - 1, i + window);
    for (std::size_t j = lo; j <= hi; ++j) {
      if (j != i) sink(walk[i], walk[j]);
    }
  }
}

std::uint64_t window_pair_count(std::uint64_t length, std::uint32_t window) {
  if (length < 2) return 0;
  const std::uint64_t reach = std::min<std::uint64_t>(window, length - 1);
  std::uint64_t total = 0;
  for (std::uint64_t s = 1; s <= reach; ++s) total += length - s;
  return 2 * total;
}

void write_walks(std::span<const std::vector<NodeId>> walks, std::ostream& out) {
  for (const auto& walk : walks) {
    for (std::size_t i = 0; i < walk.size(); ++i) out << (i ? " " : "") << walk[i];
    out << '\n';
  }
}

Eigen::SparseMatrix<double, Eigen::RowMajor> adjacency_matrix(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(g.arc_count());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    auto nbrs = g.out_neighbors(u);
    auto w = g.out_weights(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      triplets.emplace_back(u, nbrs[i], w.empty() ? 1.0 : w[i]);
    }
  }
  Eigen::SparseMatrix<double, Eigen::RowMajor> a(n, n);
  a.setFromTriplets(triplets.begin(), triplets.end());
  return a;
}

Eigen::MatrixXd transition_matrix(const Graph& g, bool absorb_dangling) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    auto row = first_order_row(g, u);
    auto nbrs = g.out_neighbors(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) p(u, nbrs[i]) = row[i];
    if (nbrs.empty() && absorb_dangling) p(u, u) = 1.0;
  }
  return p;
}

namespace {

void require_size(const Graph& g, std::size_t limit, const char* what) {
  if (g.node_count() > limit) {
    throw PreconditionError(std::string(what) + " is dense and limited to " +
                            std::to_string(limit) + " nodes; graph has " +
                            std::to_string(g.node_count()) +
                            " (use a sampling-based method instead)");
  }
}

ContextMatrix sparse_positive(const Eigen::MatrixXd& dense) {
  std::vector<Eigen::Triplet<double>> triplets;
  for (Eigen::Index i = 0; i < dense.rows(); ++i) {
    for (Eigen::Index j = 0; j < dense.cols(); ++j) {
      if (dense(i, j) > 0.0) triplets.emplace_back(i, j, dense(i, j));
    }
  }
  ContextMatrix m;
  m.values.resize(dense.rows(), dense.cols());
  m.values.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

}  // namespace

ContextMatrix netmf_matrix(const Graph& g, std::uint32_t window, std::uint32_t negatives) {
  if (g.directed()) throw PreconditionError("NetMF is defined for undirected graphs only");
  require_size(g, kDenseContextLimit, "the NetMF matrix");
  if (window == 0) throw PreconditionError("window must be > 0");
  if (negatives == 0) throw PreconditionError("negatives must be > 0");

  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd p = transition_matrix(g);
  Eigen::MatrixXd power = p;
  Eigen::MatrixXd sum = p;
  for (std::uint32_t r = 2; r <= window; ++r) {
    power = power * p;
    sum += power;
  }
  Eigen::VectorXd degree(n);
  double volume = 0.0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    degree[u] = g.out_strength(u);
    volume += degree[u];
  }
  const double scale = volume / (static_cast<double>(negatives) * window);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (degree[j] > 0.0) {
      sum.col(j) *= scale / degree[j];
    } else {
      sum.col(j).setZero();
    }
  }

  double asymmetry = (sum - sum.transpose()).cwiseAbs().maxCoeff();
  double magnitude = std::max(1.0, sum.cwiseAbs().maxCoeff());
  Eigen::MatrixXd arg = 0.5 * (sum + sum.transpose());
  Eigen::MatrixXd logged = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (arg(i, j) > 1.0) logged(i, j) = std::log(arg(i, j));
    }
  }
  ContextMatrix m = sparse_positive(logged);
  m.symmetrized = asymmetry > 1e-9 * magnitude;
  return m;
}

SpectralRadiusBounds adjacency_spectral_radius(
    const Graph& g, double tolerance, long max_iterations,
    const std::function<bool(const SpectralRadiusBounds&)>& stop) {
  const std::size_t n = g.node_count();
  SpectralRadiusBounds bounds;
  if (n == 0) return bounds;
  double max_out = 0.0, max_in = 0.0;
  for (NodeId u = 0; u < n; ++u) {
    max_out = std::max(max_out, g.out_strength(u));
    max_in = std::max(max_in, g.in_strength(u));
  }
  bounds.upper = std::min(max_out, max_in);
  if (bounds.upper == 0.0 || (stop && stop(bounds))) return bounds;

  std::vector<double> x(n, 1.0), y(n);
  for (long it = 0; it < max_iterations; ++it) {
    for (NodeId u = 0; u < n; ++u) {
      double acc = x[u];
      auto nbrs = g.out_neighbors(u);
      auto w = g.out_weights(u);
      for (std::size_t i = 0; i < nbrs.size(); ++i) acc += (w.empty() ? 1.0 : w[i]) * x[nbrs[i]];
      y[u] = acc;
    }
    double lo = INFINITY, hi = 0.0, norm = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      double ratio = y[u] / x[u];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      norm = std::max(norm, y[u]);
    }
    bounds.lower = std::max(bounds.lower, lo - 1.0);
    bounds.upper = std::min(bounds.upper, hi - 1.0);
    if (bounds.upper - bounds.lower <= tolerance * std::max(1.0, bounds.upper)) break;
    if (stop && stop(bounds)) break;
    for (std::size_t u = 0; u < n; ++u) x[u] = y[u] / norm;
  }
  return bounds;
}

SpectralRadiusBounds check_katz_convergence(const Graph& g, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw PreconditionError("beta must be finite and >= 0");
  auto decided = [beta](const SpectralRadiusBounds& b) {
    return beta * b.upper < 1.0 || beta * b.lower >= 1.0;
  };
  SpectralRadiusBounds bounds = adjacency_spectral_radius(g, 1e-10, 10000, decided);
  const double estimate = 0.5 * (bounds.lower + bounds.upper);
  if (beta * bounds.upper >= 1.0 && (beta * bounds.lower >= 1.0 || beta * estimate >= 1.0)) {
    throw PreconditionError("Katz series diverges: beta * rho(A) >= 1 (beta = " +
                            std::to_string(beta) + ", spectral radius ~ " +
                            std::to_string(estimate) + ")");
  }
  return bounds;
}

ContextMatrix katz_matrix(const Graph& g, double beta, double tolerance) {
  require_size(g, kDenseContextLimit, "the Katz matrix");
  SpectralRadiusBounds bounds = check_katz_convergence(g, beta);
  const auto n = static_cast<Eigen::Index>(g.node_count());
  if (beta == 0.0) {
    ContextMatrix zero;
    zero.values.resize(n, n);
    return zero;
  }
  const double rate = beta * bounds.upper;
  auto a = adjacency_matrix(g);
  Eigen::MatrixXd term = beta * Eigen::MatrixXd(a);
  Eigen::MatrixXd sum = term;
  double previous = term.norm();
  constexpr long kMaxTerms = 100000;
  for (long l = 2; l <= kMaxTerms; ++l) {
    if (previous == 0.0) break;
    term = beta * (a * term);
    const double norm = term.norm();
    sum += term;
    const double ratio = std::max(rate < 1.0 ? rate : 0.0, previous > 0.0 ? norm / previous : 0.0);
    if (norm == 0.0 || (ratio < 1.0 && norm * ratio / (1.0 - ratio) < tolerance)) {
      return sparse_positive(sum);
    }
    previous = norm;
  }
  if (previous == 0.0) return sparse_positive(sum);
  throw ConvergenceError("Katz series did not reach the requested tolerance", kMaxTerms);
}

Eigen::MatrixXd expected_cooccurrence(const Graph& g, std::uint32_t window) {
  require_size(g, kOracleLimit, "expected_cooccurrence");
  if (window == 0) throw PreconditionError("window must be > 0");
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd p = transition_matrix(g);
  Eigen::VectorXd pi(n);
  for (NodeId u = 0; u < g.node_count(); ++u) pi[u] = g.out_strength(u);
  pi /= pi.sum();

  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (std::uint32_t r = 1; r <= window; ++r) {
    power = power * p;
    s += pi.asDiagonal() * power;
  }
  return (s + s.transpose()) / (2.0 * window);
}

Eigen::MatrixXd ppr_pair_oracle(const Graph& g, double alpha, std::uint32_t max_length) {
  require_size(g, kOracleLimit, "ppr_pair_oracle");
  if (!(alpha > 0.0 && alpha < 1.0)) throw PreconditionError("alpha must lie in (0,1)");
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd p = transition_matrix(g, true);
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  double survive = 1.0;  // (1-alpha)^h
  for (std::uint32_t h = 0; h < max_length; ++h) {
    m += (alpha * survive) * power;
    power = power * p;
    survive *= 1.0 - alpha;
  }
  m += survive * power;
  return m / static_cast<double>(n);
}

Eigen::MatrixXd empirical_pair_frequencies(const PairStream& stream, std::size_t node_count,
                                           std::uint64_t count) {
  const auto n = static_cast<Eigen::Index>(node_count);
  Eigen::MatrixXd freq = Eigen::MatrixXd::Zero(n, n);
  std::uint64_t seen = 0;
  struct Done {};
  try {
    for (std::uint64_t epoch = 0; seen < count; ++epoch) {
      const std::uint64_t before = seen;
      stream.generate(epoch, [&](NodeId s, NodeId c) {
        freq(s, c) += 1.0;
        if (++seen >= count) throw Done{};
      });
      if (seen == before) throw PreconditionError("pair stream produced no pairs");
    }
  } catch (const Done&) {
  }
  return freq / static_cast<double>(count);
}

}  // namespace ctxembed
