#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ctxembed/graph.hpp"
#include "ctxembed/sgns.hpp"

namespace ctxembed {

// --- link prediction ------------------------------------------------------

struct LinkSplit {
  Graph train;                  ///< residual graph
  std::vector<Edge> positives;  ///< held-out edges
  std::vector<Edge> negatives;  ///< non-edges, |negatives| == |positives|
  std::size_t reversed = 0;     ///< negatives built by reversing a positive
  double holdout = 0.5;
  double reversal = 0.0;
  std::uint64_t seed = 1;
};

/// Removes round(holdout * |E|) edges at random while keeping every node
/// incident to at least one training edge. The first round(reversal * |pos|)
/// positives (a,b) contribute the negative (b,a) when it is not an edge; the
/// rest are distinct uniform non-edges. Throws SplitError naming a blocking
/// node when the holdout cannot be met.
LinkSplit make_lp_split(const Graph& g, double holdout, double reversal, std::uint64_t seed);

/// Exhaustive scan of the split invariants against the full graph; throws
/// SplitError describing the first violation.
void check_split(const Graph& full, const LinkSplit& split);

/// Writes train.edges, test_pos.edges, test_neg.edges and manifest.json.
void save_split(const LinkSplit& split, const IdMap& ids, const std::filesystem::path& dir);

/// Rank statistic: (#{p > n} + 0.5 #{p == n}) / (|pos| |neg|).
double roc_auc(std::span<const double> positive, std::span<const double> negative);

using PairScorer = std::function<double(NodeId, NodeId)>;
double eval_lp(const PairScorer& score, const LinkSplit& split);
double eval_lp(const EmbeddingSet& e, const LinkSplit& split, ScoreMode mode);

// --- node classification --------------------------------------------------

struct LabeledNodes {
  std::size_t label_count = 0;                     ///< l
  std::vector<std::string> label_names;            ///< by label id
  std::vector<std::vector<std::uint32_t>> labels;  ///< per node, sorted; empty = unlabeled

  std::vector<NodeId> labeled() const;
};

/// `node_id label` lines; ids not in `ids` are skipped and counted in
/// `skipped`. Label ids follow the sorted label names (numerically when all
/// names are integers).
LabeledNodes read_labels(std::istream& in, const IdMap& ids, std::size_t* skipped = nullptr);
LabeledNodes load_labels(const std::filesystem::path& path, const IdMap& ids,
                         std::size_t* skipped = nullptr);

/// Fold index per node (-1 for unlabeled): labeled nodes shuffled and dealt
/// round-robin.
std::vector<int> assign_folds(const LabeledNodes& labels, std::uint32_t folds, std::uint64_t seed);

struct LogRegConfig {
  double lambda = 1.0;  ///< penalty (lambda/2)||w||^2 on the summed log-loss; bias free
  std::uint32_t max_iterations = 500;
  double tolerance = 1e-5;  ///< on the gradient norm
};

/// Binary L2-regularized logistic regression by accelerated full-batch
/// gradient descent. Returns d+1 weights, bias last.
Eigen::VectorXd fit_logistic(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                             const LogRegConfig& cfg);
/// Gradient of the objective fit_logistic minimizes.
Eigen::VectorXd logistic_gradient(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                  const Eigen::VectorXd& w, double lambda);

struct ClassifierModel {
  std::vector<Eigen::VectorXd> weights;  ///< per label, bias last
  /// Labels without positive or without negative training examples score a
  /// constant (0 or 1) instead.
  std::vector<std::optional<double>> constant;

  double score(std::uint32_t label, const Eigen::Ref<const Eigen::RowVectorXd>& x) const;
};

ClassifierModel train_logreg_ovr(const Eigen::MatrixXd& features, const LabeledNodes& labels,
                                 std::span<const NodeId> train_nodes, const LogRegConfig& cfg = {});

/// Top-k labels of each node by score, k = its true label count; ties go to
/// the smaller label id.
std::vector<std::vector<std::uint32_t>> predict_top_k(const ClassifierModel& model,
                                                      const Eigen::MatrixXd& features,
                                                      const LabeledNodes& labels,
                                                      std::span<const NodeId> nodes);

struct F1Scores {
  double micro = 0.0;
  double macro = 0.0;
};

/// Micro-F1 over global TP/FP/FN; macro-F1 averaged over all `label_count`
/// labels (labels never seen or predicted score 0).
F1Scores f1_scores(std::span<const std::vector<std::uint32_t>> truth,
                   std::span<const std::vector<std::uint32_t>> predicted, std::size_t label_count);

F1Scores predict_and_score(const ClassifierModel& model, const Eigen::MatrixXd& features,
                           const LabeledNodes& labels, std::span<const NodeId> test_nodes);

/// Max-Vote: the k most frequent labels among labeled training neighbors
/// (undirected), ties to the smaller label id, topped up with labels drawn
/// uniformly without replacement from the remaining classes.
std::vector<std::vector<std::uint32_t>> max_vote(const Graph& g, const LabeledNodes& labels,
                                                 const std::vector<bool>& is_train,
                                                 std::span<const NodeId> test_nodes,
                                                 std::uint64_t seed);

struct CrossValidation {
  F1Scores mean;
  std::vector<F1Scores> folds;
};

CrossValidation cross_validate_logreg(const Eigen::MatrixXd& features, const LabeledNodes& labels,
                                      std::uint32_t folds, std::uint64_t seed,
                                      const LogRegConfig& cfg = {});
CrossValidation cross_validate_max_vote(const Graph& g, const LabeledNodes& labels,
                                        std::uint32_t folds, std::uint64_t seed);

}  // namespace ctxembed
