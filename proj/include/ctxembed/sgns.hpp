#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "ctxembed/context.hpp"
#include "ctxembed/graph.hpp"
#include "ctxembed/random.hpp"

namespace ctxembed {

/// Source matrix Phi and, when learned separately, context matrix theta.
/// Row-major n x d.
class EmbeddingSet {
 public:
  EmbeddingSet() = default;
  EmbeddingSet(std::size_t nodes, std::size_t dim, bool with_context);

  std::size_t nodes() const noexcept { return nodes_; }
  std::size_t dim() const noexcept { return dim_; }
  bool has_context() const noexcept { return !context_.empty(); }

  std::span<float> source(NodeId u) { return {source_.data() + u * dim_, dim_}; }
  std::span<const float> source(NodeId u) const { return {source_.data() + u * dim_, dim_}; }
  /// Throws PreconditionError when theta is absent.
  std::span<float> context(NodeId u);
  std::span<const float> context(NodeId u) const;

  std::vector<float>& source_data() { return source_; }
  const std::vector<float>& source_data() const { return source_; }
  std::vector<float>& context_data() { return context_; }
  const std::vector<float>& context_data() const { return context_; }

  void drop_context() { context_.clear(); context_.shrink_to_fit(); }

  /// All entries finite.
  bool finite() const;

 private:
  std::size_t nodes_ = 0;
  std::size_t dim_ = 0;
  std::vector<float> source_;
  std::vector<float> context_;
};

enum class Objective { kNegativeSampling, kHierarchicalSoftmax };

struct TrainConfig {
  std::uint32_t dim = 128;
  std::uint32_t epochs = 1;
  std::uint32_t negatives = 5;
  double learning_rate = 0.025;
  double min_learning_rate = 1e-4;
  /// Learn Phi only and use it in both roles (VERSE, LINE-1).
  bool shared = false;
  Objective objective = Objective::kNegativeSampling;
  std::uint64_t seed = 1;
  /// 0 = deterministic single-threaded; otherwise asynchronous workers.
  std::uint32_t threads = 0;

  void validate() const;
};

struct TrainStats {
  std::vector<double> epoch_loss;  ///< mean per-pair loss of each epoch
  std::uint64_t pairs = 0;
};

/// Draws negatives with probability proportional to frequency^power.
class NegativeSampler {
 public:
  NegativeSampler(std::span<const double> frequencies, double power = 0.75);
  /// Frequencies are total degrees (in + out for directed graphs), floored at 1
  /// so every node can be drawn.
  static NegativeSampler from_degrees(const Graph& g, double power = 0.75);

  NodeId sample(Rng& rng) const { return static_cast<NodeId>(table_.sample(rng)); }
  double probability(NodeId u) const { return probabilities_[u]; }
  std::size_t size() const noexcept { return probabilities_.size(); }

 private:
  AliasTable table_;
  std::vector<double> probabilities_;
};

inline constexpr double kDotClamp = 30.0;

inline double sigmoid(double x) {
  x = x > kDotClamp ? kDotClamp : (x < -kDotClamp ? -kDotClamp : x);
  return 1.0 / (1.0 + std::exp(-x));
}

/// -log sigma(phi.theta_j) - sum_n log sigma(-phi.theta_n), dots clamped to +-30.
double sgns_loss(std::span<const double> source, std::span<const double> context,
                 std::span<const std::vector<double>> negatives);

/// Gradient of sgns_loss with respect to each argument.
struct SgnsGradient {
  std::vector<double> source;
  std::vector<double> context;
  std::vector<std::vector<double>> negatives;
};
SgnsGradient sgns_gradient(std::span<const double> source, std::span<const double> context,
                           std::span<const std::vector<double>> negatives);

/// Skip-gram with negative sampling over a pair stream. Phi starts uniform in
/// [-0.5/d, 0.5/d], theta at zero; the learning rate decays linearly per
/// processed pair to min_learning_rate. Throws TrainingError on non-finite
/// parameters.
EmbeddingSet train(const PairStream& stream, const Graph& g, const TrainConfig& cfg,
                   TrainStats* stats = nullptr);

/// Huffman code tree over nodes (leaves) keyed by frequency.
class HuffmanTree {
 public:
  explicit HuffmanTree(std::span<const double> frequencies);
  static HuffmanTree from_degrees(const Graph& g);

  std::size_t leaves() const noexcept { return codes_.size(); }
  std::size_t internal_nodes() const noexcept { return leaves() > 0 ? leaves() - 1 : 0; }
  /// Branch bits from the root down to `leaf`.
  std::span<const std::uint8_t> code(NodeId leaf) const { return codes_[leaf]; }
  /// Internal node indices (0-based, root = internal_nodes()-1) along the path.
  std::span<const std::uint32_t> path(NodeId leaf) const { return paths_[leaf]; }

  /// Probability of `leaf` under per-internal-node vectors `internal`
  /// (row-major, internal_nodes() x d): product over the path of
  /// sigma(phi.psi) for bit 0 and sigma(-phi.psi) for bit 1.
  double leaf_probability(std::span<const double> phi, std::span<const double> internal,
                          NodeId leaf) const;

 private:
  std::vector<std::vector<std::uint8_t>> codes_;
  std::vector<std::vector<std::uint32_t>> paths_;
};

/// Skip-gram with hierarchical softmax (DeepWalk). Only Phi is returned; the
/// internal-node vectors are not an embedding of the nodes.
EmbeddingSet train_hsoftmax(const PairStream& stream, const Graph& g, const TrainConfig& cfg,
                            TrainStats* stats = nullptr);

enum class ScoreMode { kSourceSource, kSourceContext };

/// sigma(Phi_u . Phi_v) or sigma(Phi_u . theta_v).
double score_pair(const EmbeddingSet& e, NodeId u, NodeId v, ScoreMode mode);

/// Each half L2-normalized row-wise, then concatenated (LINE-1+2).
EmbeddingSet concat_normalized(const EmbeddingSet& first, const EmbeddingSet& second);

/// `nodes dim` header, then `id v1 .. vd` per node with %.6g values. theta
/// goes to `path` + ".ctx" when present.
void write_embeddings(const EmbeddingSet& e, const IdMap& ids, const std::filesystem::path& path);
void write_embedding_matrix(std::span<const float> data, std::size_t nodes, std::size_t dim,
                            const IdMap& ids, std::ostream& out);

}  // namespace ctxembed
