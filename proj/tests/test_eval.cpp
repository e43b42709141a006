#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "ctxembed/errors.hpp"
#include "ctxembed/eval.hpp"
#include "ctxembed/synth.hpp"
#include "helpers.hpp"

using namespace ctxembed;

namespace {

Graph directed_cycle(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i) e.push_back({i, static_cast<NodeId>((i + 1) % n)});
  return make_graph(n, e, true);
}

LabeledNodes labels_from(const std::string& text, const IdMap& ids) {
  std::istringstream in(text);
  return read_labels(in, ids);
}

}  // namespace

TEST(Split, ReversalOnDirectedCycle) {
  Graph g = directed_cycle(4);
  LinkSplit s = make_lp_split(g, 0.25, 1.0, 1);
  ASSERT_EQ(s.positives.size(), 1u);
  ASSERT_EQ(s.negatives.size(), 1u);
  EXPECT_EQ(s.negatives[0].src, s.positives[0].dst);
  EXPECT_EQ(s.negatives[0].dst, s.positives[0].src);
  EXPECT_EQ(s.reversed, 1u);
}

TEST(Split, NoReversalMeansUniformNonEdges) {
  Graph g = erdos_renyi(40, 0.1, true, 2);
  LinkSplit s = make_lp_split(g, 0.3, 0.0, 3);
  check_split(g, s);
  EXPECT_EQ(s.reversed, 0u);
  std::set<std::pair<NodeId, NodeId>> seen;
  for (const Edge& e : s.negatives) {
    EXPECT_FALSE(g.has_edge(e.src, e.dst));
    EXPECT_TRUE(seen.insert({e.src, e.dst}).second);
  }
}

TEST(Split, StarCannotLoseLeafEdges) {
  try {
    make_lp_split(star_graph(5), 0.5, 0.0, 1);
    FAIL() << "expected SplitError";
  } catch (const SplitError& e) {
    EXPECT_NE(std::string(e.what()).find("node"), std::string::npos);
  }
}

TEST(Split, InvariantsHoldExhaustively) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const bool directed = seed % 2 == 0;
    Graph g = erdos_renyi(60, 0.12, directed, seed);
    for (double rho : {0.0, 0.5, 1.0}) {
      LinkSplit s = make_lp_split(g, 0.4, rho, seed);
      EXPECT_NO_THROW(check_split(g, s));
      EXPECT_EQ(s.train.edge_count() + s.positives.size(), g.edge_count());
      for (NodeId u = 0; u < g.node_count(); ++u) {
        const bool had = g.out_degree(u) + g.in_degree(u) > 0;
        if (had) EXPECT_GT(s.train.out_degree(u) + s.train.in_degree(u), 0u);
      }
    }
  }
}

TEST(Split, Deterministic) {
  Graph g = erdos_renyi(50, 0.1, true, 1);
  LinkSplit a = make_lp_split(g, 0.5, 0.5, 9), b = make_lp_split(g, 0.5, 0.5, 9);
  EXPECT_EQ(a.positives, b.positives);
  EXPECT_EQ(a.negatives, b.negatives);
}

TEST(Split, SavesFiles) {
  auto loaded = parse("a b\nb c\nc a\na d\nd b\nc d", true);
  LinkSplit s = make_lp_split(loaded.graph, 0.34, 1.0, 2);
  const auto dir = std::filesystem::temp_directory_path() / "ctxembed_test_split";
  std::filesystem::remove_all(dir);
  save_split(s, loaded.ids, dir);
  for (const char* f : {"train.edges", "test_pos.edges", "test_neg.edges", "manifest.json"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  }
  auto back = load_edge_list(dir / "train.edges", true);
  EXPECT_EQ(back.graph.edge_count(), s.train.edge_count());
  std::filesystem::remove_all(dir);
}

TEST(Auc, Examples) {
  EXPECT_DOUBLE_EQ(roc_auc(std::vector<double>{0.9, 0.8}, std::vector<double>{0.1, 0.2}), 1.0);
  EXPECT_DOUBLE_EQ(roc_auc(std::vector<double>{0.5, 0.5}, std::vector<double>{0.5, 0.5}), 0.5);
  EXPECT_DOUBLE_EQ(roc_auc(std::vector<double>{0.8, 0.3}, std::vector<double>{0.5, 0.1}), 0.75);
  EXPECT_THROW(roc_auc(std::vector<double>{}, std::vector<double>{1.0}), PreconditionError);
}

TEST(Auc, MonotoneTransformInvariant) {
  Rng rng(4);
  std::vector<double> pos(200), neg(150);
  for (auto& x : pos) x = std::round(rng.normal() * 4) / 4 + 0.3;
  for (auto& x : neg) x = std::round(rng.normal() * 4) / 4;
  const double base = roc_auc(pos, neg);
  auto map = [](std::vector<double> v, auto f) {
    for (auto& x : v) x = f(x);
    return v;
  };
  auto ex = [](double x) { return std::exp(x); };
  auto affine = [](double x) { return 3.0 * x - 7.0; };
  EXPECT_EQ(roc_auc(map(pos, ex), map(neg, ex)), base);
  EXPECT_EQ(roc_auc(map(pos, affine), map(neg, affine)), base);
}

TEST(EvalLp, SymmetricScorerTiesAtFullReversal) {
  Graph g = layered_dag(60, 3, 3, 2, 1);
  LinkSplit s = make_lp_split(g, 0.5, 1.0, 1);
  ASSERT_EQ(s.reversed, s.positives.size());
  auto symmetric = [](NodeId u, NodeId v) { return std::sin(u * 0.37 + v * 0.37) + u * v; };
  EXPECT_EQ(eval_lp(symmetric, s), 0.5);
}

TEST(EvalLp, PerfectOracle) {
  Graph g = erdos_renyi(40, 0.15, true, 2);
  LinkSplit s = make_lp_split(g, 0.3, 0.5, 2);
  auto perfect = [&](NodeId u, NodeId v) { return g.has_edge(u, v) ? 1.0 : 0.0; };
  EXPECT_EQ(eval_lp(perfect, s), 1.0);
}

TEST(Labels, ReadAndSkip) {
  auto l = parse("a b\nb c", false);
  std::istringstream in("a 3\nb 10\nb 3\nzz 3\n");
  std::size_t skipped = 0;
  LabeledNodes labels = read_labels(in, l.ids, &skipped);
  EXPECT_EQ(skipped, 1u);
  EXPECT_EQ(labels.label_count, 2u);
  EXPECT_EQ(labels.label_names[0], "3");
  EXPECT_EQ(labels.label_names[1], "10");
  std::vector<std::uint32_t> both = {0, 1};
  EXPECT_EQ(labels.labels[l.ids.at("b")], both);
  EXPECT_TRUE(labels.labels[l.ids.at("c")].empty());
  EXPECT_EQ(labels.labeled().size(), 2u);
}

TEST(Folds, BalancedAndUnlabeledExcluded) {
  IdMap ids = IdMap::identity(23);
  std::string text;
  for (int i = 0; i < 21; ++i) text += std::to_string(i) + " x\n";
  LabeledNodes labels = labels_from(text, ids);
  auto folds = assign_folds(labels, 5, 3);
  std::map<int, int> count;
  for (int f : folds) ++count[f];
  EXPECT_EQ(count[-1], 2);
  for (int f = 0; f < 5; ++f) EXPECT_GE(count[f], 4);
}

TEST(LogReg, SeparableData) {
  Eigen::MatrixXd x(8, 1);
  Eigen::VectorXd y(8);
  for (int i = 0; i < 8; ++i) {
    x(i, 0) = i < 4 ? -1.0 - i : 1.0 + i;
    y[i] = i < 4 ? 0.0 : 1.0;
  }
  LogRegConfig cfg;
  cfg.lambda = 0.01;
  Eigen::VectorXd w = fit_logistic(x, y, cfg);
  for (int i = 0; i < 8; ++i) EXPECT_EQ(w[0] * x(i, 0) + w[1] > 0, y[i] == 1.0);
}

TEST(LogReg, HeavyPenaltyGivesPrior) {
  Rng rng(5);
  Eigen::MatrixXd x(40, 3);
  Eigen::VectorXd y(40);
  for (Eigen::Index i = 0; i < 40; ++i) {
    for (int k = 0; k < 3; ++k) x(i, k) = rng.normal();
    y[i] = i < 10 ? 1.0 : 0.0;
  }
  LogRegConfig cfg;
  cfg.lambda = 1e8;
  Eigen::VectorXd w = fit_logistic(x, y, cfg);
  EXPECT_LT(w.head(3).cwiseAbs().maxCoeff(), 1e-5);
  EXPECT_NEAR(1.0 / (1.0 + std::exp(-w[3])), 0.25, 1e-4);
}

TEST(LogReg, StationaryPoint) {
  Rng rng(6);
  Eigen::MatrixXd x(50, 4);
  Eigen::VectorXd y(50);
  for (Eigen::Index i = 0; i < 50; ++i) {
    for (int k = 0; k < 4; ++k) x(i, k) = rng.normal();
    y[i] = rng.uniform() < 1.0 / (1.0 + std::exp(-(x(i, 0) - x(i, 2)))) ? 1.0 : 0.0;
  }
  LogRegConfig cfg;
  Eigen::VectorXd w = fit_logistic(x, y, cfg);
  EXPECT_LT(logistic_gradient(x, y, w, cfg.lambda).norm(), 1e-4);
  EXPECT_THROW(fit_logistic(Eigen::MatrixXd::Constant(2, 1, std::nan("")), Eigen::VectorXd::Ones(2), cfg),
               PreconditionError);
}

TEST(F1, Examples) {
  std::vector<std::vector<std::uint32_t>> truth = {{0}, {1}}, pred = {{0}, {0}};
  F1Scores s = f1_scores(truth, pred, 2);
  EXPECT_NEAR(s.micro, 0.5, 1e-15);
  EXPECT_NEAR(s.macro, 1.0 / 3.0, 1e-15);
  F1Scores perfect = f1_scores(truth, truth, 2);
  EXPECT_EQ(perfect.micro, 1.0);
  EXPECT_EQ(perfect.macro, 1.0);
}

TEST(F1, AbsentLabelCountsZeroInMacro) {
  std::vector<std::vector<std::uint32_t>> truth = {{0}, {0}};
  F1Scores s = f1_scores(truth, truth, 2);
  EXPECT_EQ(s.micro, 1.0);
  EXPECT_EQ(s.macro, 0.5);
}

TEST(F1, PermutationInvariantAndAccuracyForSingleLabels) {
  Rng rng(2);
  std::vector<std::vector<std::uint32_t>> truth, pred;
  int correct = 0;
  for (int i = 0; i < 100; ++i) {
    truth.push_back({static_cast<std::uint32_t>(rng.index(4))});
    pred.push_back({static_cast<std::uint32_t>(rng.index(4))});
    correct += truth.back() == pred.back();
  }
  F1Scores a = f1_scores(truth, pred, 4);
  EXPECT_NEAR(a.micro, correct / 100.0, 1e-12);
  std::reverse(truth.begin(), truth.end());
  std::reverse(pred.begin(), pred.end());
  F1Scores b = f1_scores(truth, pred, 4);
  EXPECT_NEAR(a.micro, b.micro, 1e-15);
  EXPECT_NEAR(a.macro, b.macro, 1e-15);
}

TEST(Ovr, ConstantForMissingClass) {
  IdMap ids = IdMap::identity(6);
  LabeledNodes labels = labels_from("0 a\n1 a\n2 b\n3 b\n4 c\n5 a\n", ids);
  Eigen::MatrixXd x(6, 2);
  x << 1, 0, 1, 0.1, 0, 1, 0.1, 1, 0.5, 0.5, 0.9, 0;
  std::vector<NodeId> train = {0, 1, 2, 3};
  ClassifierModel m = train_logreg_ovr(x, labels, train);
  ASSERT_EQ(m.constant.size(), 3u);
  ASSERT_TRUE(m.constant[2].has_value());
  EXPECT_EQ(*m.constant[2], 0.0);
  auto pred = predict_top_k(m, x, labels, std::vector<NodeId>{5});
  EXPECT_EQ(pred[0], std::vector<std::uint32_t>{0});
}

TEST(MaxVote, Examples) {
  // Node 0 is tested; neighbors 1,2 have label A, neighbor 3 has B.
  Graph g = star_graph(3);
  IdMap ids = IdMap::identity(4);
  LabeledNodes one = labels_from("0 A\n1 A\n2 A\n3 B\n", ids);
  std::vector<bool> is_train = {false, true, true, true};
  std::vector<NodeId> test = {0};
  EXPECT_EQ(max_vote(g, one, is_train, test, 1)[0], std::vector<std::uint32_t>{0});
  LabeledNodes two = labels_from("0 A\n0 B\n1 A\n2 A\n3 B\n", ids);
  EXPECT_EQ(max_vote(g, two, is_train, test, 1)[0], (std::vector<std::uint32_t>{0, 1}));
}

TEST(MaxVote, TieGoesToSmallerLabel) {
  Graph g = star_graph(2);
  IdMap ids = IdMap::identity(3);
  LabeledNodes l = labels_from("0 A\n1 B\n2 A\n", ids);
  EXPECT_EQ(max_vote(g, l, {false, true, true}, std::vector<NodeId>{0}, 3)[0],
            std::vector<std::uint32_t>{0});
}

TEST(MaxVote, UniformFill) {
  Graph g = make_graph(11, {{1, 2}}, false);
  IdMap ids = IdMap::identity(11);
  std::string text = "0 0\n";
  for (int i = 1; i <= 10; ++i) text += std::to_string(i) + " " + std::to_string(i - 1) + "\n";
  LabeledNodes l = labels_from(text, ids);
  std::vector<bool> is_train(11, true);
  is_train[0] = false;
  std::vector<int> count(10);
  const int trials = 100000;
  for (int t = 0; t < trials; ++t) ++count[max_vote(g, l, is_train, std::vector<NodeId>{0}, t)[0][0]];
  for (int c : count) EXPECT_NEAR(c / static_cast<double>(trials), 0.1, 0.005);
}

TEST(CrossValidation, MaxVoteOnCliques) {
  Graph g = disjoint_cliques(4, 6);
  IdMap ids = IdMap::identity(24);
  std::string text;
  for (int i = 0; i < 24; ++i) text += std::to_string(i) + " c" + std::to_string(i / 6) + "\n";
  CrossValidation cv = cross_validate_max_vote(g, labels_from(text, ids), 5, 1);
  EXPECT_EQ(cv.folds.size(), 5u);
  EXPECT_EQ(cv.mean.micro, 1.0);
}

TEST(CrossValidation, LogRegOnSeparableFeatures) {
  IdMap ids = IdMap::identity(40);
  std::string text;
  Eigen::MatrixXd x(40, 2);
  for (int i = 0; i < 40; ++i) {
    text += std::to_string(i) + (i % 2 ? " odd\n" : " even\n");
    x(i, 0) = i % 2 ? 2.0 : -2.0;
    x(i, 1) = 0.01 * i;
  }
  CrossValidation cv = cross_validate_logreg(x, labels_from(text, ids), 5, 2);
  EXPECT_EQ(cv.mean.micro, 1.0);
  for (const F1Scores& f : cv.folds) EXPECT_EQ(f.micro, 1.0);
}
