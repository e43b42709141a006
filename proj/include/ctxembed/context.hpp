#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "ctxembed/graph.hpp"
#include "ctxembed/random.hpp"

namespace ctxembed {

struct ContextPair {
  NodeId source = 0;
  NodeId context = 0;

  friend bool operator==(const ContextPair&, const ContextPair&) = default;
};

/// What a walker does on reaching a node without outgoing edges.
enum class DanglingPolicy {
  kError,  ///< throw PreconditionError naming the node
  kStop,   ///< end the walk at that node
};

struct WalkConfig {
  std::uint32_t walks_per_node = 10;
  std::uint32_t walk_length = 80;  ///< nodes per walk
  std::uint32_t window = 10;
  std::uint64_t seed = 1;
  DanglingPolicy dangling = DanglingPolicy::kError;

  void validate() const;
};

struct SecondOrderConfig {
  WalkConfig walk;
  double p = 1.0;  ///< return parameter
  double q = 1.0;  ///< in-out parameter

  void validate() const;
};

struct PPRConfig {
  double alpha = 0.15;  ///< termination (restart) probability per step
  std::uint64_t samples = 100000;
  std::uint32_t max_length = 64;
  std::uint64_t seed = 1;
  DanglingPolicy dangling = DanglingPolicy::kError;

  void validate() const;
};

using PairSink = std::function<void(NodeId source, NodeId context)>;

/// A finite, replayable stream of (source, context) samples: the positive
/// edges of a context graph. Implementations keep a reference to the graph,
/// which must outlive the stream.
class PairStream {
 public:
  virtual ~PairStream() = default;

  /// Emits the pairs of `epoch`. Shard `shard` of `shards` covers a disjoint
  /// part of the epoch with its own derived seed; the union over shards is one
  /// full epoch. Output is a pure function of (config, epoch, shard, shards).
  virtual void generate(std::uint64_t epoch, std::uint32_t shard, std::uint32_t shards,
                        const PairSink& sink) const = 0;

  void generate(std::uint64_t epoch, const PairSink& sink) const { generate(epoch, 0, 1, sink); }

  /// Number of pairs in one epoch (an upper bound when walks may stop early).
  virtual std::uint64_t pairs_per_epoch() const = 0;
};

/// Materializes up to `limit` pairs of one epoch (0 = no limit).
std::vector<ContextPair> collect_pairs(const PairStream& stream, std::uint64_t epoch = 0,
                                       std::uint64_t limit = 0);

/// DeepWalk context: uniform (weight-proportional) walks, windowed pairs.
std::unique_ptr<PairStream> uniform_walk_pairs(const Graph& g, const WalkConfig& cfg);

/// Node2vec context: second-order biased walks, windowed pairs.
std::unique_ptr<PairStream> node2vec_walk_pairs(const Graph& g, const SecondOrderConfig& cfg);

/// APP/VERSE context: (first, last) node of walks with restart probability alpha.
std::unique_ptr<PairStream> ppr_pairs(const Graph& g, const PPRConfig& cfg);

/// LINE context: edges drawn proportionally to weight; undirected edges in
/// either orientation with equal probability. Throws on graphs without edges.
std::unique_ptr<PairStream> adjacency_pairs(const Graph& g, std::uint64_t samples,
                                            std::uint64_t seed);

// --- walk primitives ------------------------------------------------------

/// Transition probabilities from `current`, aligned with out_neighbors(current).
std::vector<double> first_order_row(const Graph& g, NodeId current);

/// Node2vec transition probabilities at `current` having arrived from
/// `previous`, aligned with out_neighbors(current). Each neighbor x gets
/// weight w(current,x) times 1/p (x == previous), 1 ((previous,x) in E) or
/// 1/q (otherwise). When every neighbor falls in the same case the row is
/// exactly first_order_row(g, current).
std::vector<double> second_order_row(const Graph& g, NodeId previous, NodeId current, double p,
                                     double q);

/// One first-order walk of at most `length` nodes starting at `start`.
std::vector<NodeId> random_walk(const Graph& g, NodeId start, std::uint32_t length, Rng& rng,
                                DanglingPolicy dangling = DanglingPolicy::kError);

/// One node2vec walk; the first step is first-order.
std::vector<NodeId> node2vec_walk(const Graph& g, NodeId start, std::uint32_t length, double p,
                                  double q, Rng& rng,
                                  DanglingPolicy dangling = DanglingPolicy::kError);

/// Emits (walk[i], walk[j]) for every i and every j != i with |i - j| <= window.
void window_pairs(std::span<const NodeId> walk, std::uint32_t window, const PairSink& sink);

/// Number of pairs window_pairs emits for a walk of `length` nodes.
std::uint64_t window_pair_count(std::uint64_t length, std::uint32_t window);

/// Walk dump: one walk per line, space-separated dense ids.
void write_walks(std::span<const std::vector<NodeId>> walks, std::ostream& out);

// --- explicit context matrices -------------------------------------------

/// Sparse non-negative context matrix; dissimilar pairs are not stored.
struct ContextMatrix {
  Eigen::SparseMatrix<double, Eigen::RowMajor> values;
  /// Set when the raw matrix needed symmetrization beyond 1e-9.
  bool symmetrized = false;

  Eigen::Index size() const { return values.rows(); }
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(values); }
};

inline constexpr std::size_t kDenseContextLimit = 20000;
inline constexpr std::size_t kOracleLimit = 100;

/// Weighted adjacency matrix A (A_uv = w(u,v)).
Eigen::SparseMatrix<double, Eigen::RowMajor> adjacency_matrix(const Graph& g);

/// Row-stochastic transition matrix D^-1 A. Dangling rows are zero, or the
/// identity row when `absorb_dangling` (a walk that stops stays put).
Eigen::MatrixXd transition_matrix(const Graph& g, bool absorb_dangling = false);

/// NetMF matrix: log(vol(G)/(k T) * (sum_{r=1..T} P^r)_{ij} / d_j) with
/// T = window; entries whose log argument is <= 1 are dropped.
/// Undirected graphs only, node_count <= kDenseContextLimit.
ContextMatrix netmf_matrix(const Graph& g, std::uint32_t window, std::uint32_t negatives);

/// Collatz-Wielandt bracket on the Perron root of the (non-negative)
/// adjacency matrix: lower <= rho(A) <= upper.
struct SpectralRadiusBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Shifted power iteration on A + I from the all-ones vector until the
/// bracket is narrower than `tolerance` (relative) or `stop(bounds)` holds.
SpectralRadiusBounds adjacency_spectral_radius(
    const Graph& g, double tolerance = 1e-10, long max_iterations = 10000,
    const std::function<bool(const SpectralRadiusBounds&)>& stop = {});

/// Throws PreconditionError unless beta * rho(A) < 1; returns the bracket.
SpectralRadiusBounds check_katz_convergence(const Graph& g, double beta);

/// Katz proximity sum_{l>=1} beta^l A^l, truncated once the dropped tail's
/// Frobenius estimate is below `tolerance`. Throws PreconditionError when
/// beta * rho(A) >= 1.
ContextMatrix katz_matrix(const Graph& g, double beta, double tolerance = 1e-10);

/// Expected normalized DeepWalk co-occurrence for window T:
/// (1/2T) sum_{r=1..T} [pi_i (P^r)_ij + pi_j (P^r)_ji], pi_i = d_i / sum d.
/// node_count <= kOracleLimit.
Eigen::MatrixXd expected_cooccurrence(const Graph& g, std::uint32_t window);

/// Exact pair law of ppr_pairs: (1/|V|) sum_h Pr[len = h] (P^h)_ij, where
/// Pr[len = h] = alpha (1-alpha)^h for h < max_len and (1-alpha)^max_len at
/// max_len. Dangling nodes absorb. node_count <= kOracleLimit.
Eigen::MatrixXd ppr_pair_oracle(const Graph& g, double alpha, std::uint32_t max_length);

/// Empirical pair frequencies of `count` samples (counts / count).
Eigen::MatrixXd empirical_pair_frequencies(const PairStream& stream, std::size_t node_count,
                                           std::uint64_t count);

}  // namespace ctxembed
