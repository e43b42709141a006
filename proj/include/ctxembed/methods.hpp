#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "ctxembed/graph.hpp"
#include "ctxembed/sgns.hpp"

namespace ctxembed {

enum class Method { kDeepWalk, kNode2vec, kLine1, kLine2, kLine12, kApp, kVerse, kNetMF, kHope, kMaxVote };

struct MethodTraits {
  Method method;
  std::string_view name;
  bool embeds;           ///< false for the Max-Vote baseline
  bool uses_context;     ///< downstream tasks use theta as well as Phi
  bool undirected_only;  ///< NetMF
};

std::span<const MethodTraits> all_methods();
const MethodTraits& traits(Method m);
std::optional<Method> parse_method(std::string_view name);

struct MethodConfig {
  std::uint32_t dim = 128;
  std::uint32_t walks = 10;
  std::uint32_t walk_length = 80;
  std::uint32_t window = 10;
  std::uint32_t negatives = 5;
  double p = 1.0;
  double q = 1.0;
  double alpha = 0.15;
  double beta = 0.01;
  /// Pair budget per epoch for LINE, APP and VERSE; 0 = 1000 per node.
  std::uint64_t samples = 0;
  std::uint32_t epochs = 1;
  double learning_rate = 0.025;
  std::uint32_t oversample = 10;
  std::uint32_t power_iterations = 4;
  std::uint64_t seed = 1;
  std::uint32_t threads = 0;
};

/// Katz factorization switches to the implicit operator above this size.
inline constexpr std::size_t kExplicitKatzLimit = 4096;

/// Trains `m` on `g`. Walk-based methods stop walks at dangling nodes.
/// `warning` receives factorization rank warnings.
EmbeddingSet embed(const Graph& g, Method m, const MethodConfig& cfg,
                   std::string* warning = nullptr);

/// Link-prediction scoring: source-context for methods that use theta.
ScoreMode score_mode(Method m);

/// Node-classification features: Phi, or [Phi theta] for methods that use theta.
Eigen::MatrixXd node_features(const EmbeddingSet& e, Method m);

}  // namespace ctxembed
