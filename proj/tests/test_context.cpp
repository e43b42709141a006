#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "ctxembed/context.hpp"
#include "ctxembed/errors.hpp"
#include "ctxembed/synth.hpp"
#include "ctxembed/verify.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace ctxembed;

namespace {

std::vector<ContextPair> pairs_of(std::vector<NodeId> walk, std::uint32_t window) {
  std::vector<ContextPair> out;
  window_pairs(walk, window, [&](NodeId s, NodeId c) { out.push_back({s, c}); });
  return out;
}

}  // namespace

TEST(Window, Example) {
  auto p = pairs_of({0, 1, 2}, 1);
  std::vector<ContextPair> expected = {{0, 1}, {1, 0}, {1, 2}, {2, 1}};
  EXPECT_EQ(p, expected);
  std::vector<ContextPair> k2 = {{0, 1}, {1, 0}};
  EXPECT_EQ(pairs_of({0, 1}, 1), k2);
}

TEST(Window, CountMatchesFormula) {
  for (std::uint32_t len = 1; len <= 30; ++len) {
    for (std::uint32_t r = 1; r <= 12; ++r) {
      std::vector<NodeId> walk(len);
      std::uint64_t brute = 0;
      for (std::uint32_t i = 0; i < len; ++i) {
        const std::uint32_t lo = i >= r ? i - r : 0, hi = std::min(len - 1, i + r);
        brute += hi - lo;
      }
      EXPECT_EQ(pairs_of(walk, r).size(), brute);
      EXPECT_EQ(window_pair_count(len, r), brute);
    }
  }
}

TEST(Walks, StreamPairCount) {
  Graph g = complete_graph(5);
  WalkConfig cfg;
  cfg.walks_per_node = 3;
  cfg.walk_length = 7;
  cfg.window = 2;
  auto s = uniform_walk_pairs(g, cfg);
  EXPECT_EQ(collect_pairs(*s).size(), 5u * 3u * window_pair_count(7, 2));
  EXPECT_EQ(s->pairs_per_epoch(), 5u * 3u * window_pair_count(7, 2));
}

TEST(Walks, DanglingPolicy) {
  Graph g = make_graph(3, {{0, 1}, {1, 2}}, true);
  Rng rng(1);
  EXPECT_THROW(random_walk(g, 0, 5, rng), PreconditionError);
  Rng rng2(1);
  auto w = random_walk(g, 0, 5, rng2, DanglingPolicy::kStop);
  std::vector<NodeId> expected = {0, 1, 2};
  EXPECT_EQ(w, expected);
}

TEST(Walks, Deterministic) {
  Graph g = erdos_renyi(20, 0.3, false, 2);
  WalkConfig cfg;
  cfg.walks_per_node = 2;
  cfg.walk_length = 10;
  auto a = collect_pairs(*uniform_walk_pairs(g, cfg), 1);
  auto b = collect_pairs(*uniform_walk_pairs(g, cfg), 1);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, collect_pairs(*uniform_walk_pairs(g, cfg), 0));
}

TEST(Node2vec, TriangleRow) {
  Graph g = complete_graph(3);
  // At node 1 arriving from 0: neighbors {0, 2}; 0 is the return (1/p), 2 is
  // a common neighbor of 0 (weight 1).
  auto row = second_order_row(g, 0, 1, 2.0, 0.5);
  ASSERT_EQ(row.size(), 2u);
  EXPECT_NEAR(row[0], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(row[1], 2.0 / 3.0, 1e-15);
}

TEST(Node2vec, UnitParametersMatchFirstOrderExactly) {
  Graph g = erdos_renyi(25, 0.25, false, 4);
  for (NodeId v = 0; v < 25; ++v) {
    for (NodeId u : g.in_neighbors(v)) EXPECT_EQ(second_order_row(g, u, v, 1.0, 1.0), first_order_row(g, v));
  }
}

TEST(Node2vec, ZeroReciprocityIgnoresP) {
  Graph und = erdos_renyi(30, 0.2, false, 8);
  Graph dag = Graph::from_edges(30, und.edges(), true);
  std::vector<double> ps = {0.25, 1.0, 4.0};
  EXPECT_TRUE(tables_independent_of_p(dag, ps, 0.5));
  EXPECT_FALSE(tables_independent_of_p(und, ps, 0.5));
}

TEST(Node2vec, NoReciprocityNoTransitivityIsFirstOrder) {
  Graph g = layered_dag(45, 3, 3, 2, 7);
  std::vector<double> grid = {0.25, 1.0, 4.0};
  EXPECT_TRUE(tables_match_first_order(g, grid, grid));
}

TEST(Ppr, TwoCycleOracle) {
  Graph g = make_graph(2, {{0, 1}, {1, 0}}, true);
  Eigen::MatrixXd m = ppr_pair_oracle(g, 0.5, 63);
  EXPECT_NEAR(m(0, 1), 1.0 / 6.0, 1e-15);
  EXPECT_GE(m(0, 0), 0.25);
  EXPECT_NEAR(m.sum(), 1.0, 1e-12);
}

TEST(Ppr, RowsAreDistributions) {
  Graph g = erdos_renyi(15, 0.3, true, 5);
  Eigen::MatrixXd m = ppr_pair_oracle(g, 0.2, 64);
  for (Eigen::Index i = 0; i < m.rows(); ++i) EXPECT_NEAR(m.row(i).sum() * 15.0, 1.0, 1e-9);
}

TEST(Ppr, AsymmetricOnFanGraph) {
  // u=0 reaches v=5 through four middle nodes; v returns to u along one arc.
  std::vector<Edge> e;
  for (NodeId m = 1; m <= 4; ++m) {
    e.push_back({0, m});
    e.push_back({m, 5});
  }
  e.push_back({5, 0});
  Eigen::MatrixXd m = ppr_pair_oracle(make_graph(6, e, true), 0.15, 64);
  EXPECT_GT(std::abs(m(0, 5) - m(5, 0)), 1e-3);
}

TEST(Ppr, StreamMatchesOracle) {
  Graph g = make_graph(2, {{0, 1}, {1, 0}}, true);
  PPRConfig cfg;
  cfg.alpha = 0.5;
  cfg.samples = 200000;
  Eigen::MatrixXd emp = empirical_pair_frequencies(*ppr_pairs(g, cfg), 2, cfg.samples);
  EXPECT_NEAR(emp(0, 1), 1.0 / 6.0, 0.005);
}

TEST(Adjacency, WeightedFrequencies) {
  Graph g = make_graph(3, {{0, 1, 1.0}, {0, 2, 3.0}}, true);
  Eigen::MatrixXd emp = empirical_pair_frequencies(*adjacency_pairs(g, 1000000, 3), 3, 1000000);
  EXPECT_NEAR(emp(0, 1), 0.25, 0.01);
  EXPECT_NEAR(emp(0, 2), 0.75, 0.01);
}

TEST(Adjacency, SingleArcAndK2) {
  auto single = collect_pairs(*adjacency_pairs(make_graph(2, {{0, 1}}, true), 100, 1));
  for (const auto& p : single) EXPECT_EQ(p, (ContextPair{0, 1}));
  Eigen::MatrixXd k2 = empirical_pair_frequencies(*adjacency_pairs(complete_graph(2), 100000, 1), 2, 100000);
  EXPECT_NEAR(k2(0, 1), 0.5, 0.01);
  EXPECT_NEAR(k2(1, 0), 0.5, 0.01);
}

TEST(NetMF, Examples) {
  ContextMatrix k2 = netmf_matrix(complete_graph(2), 1, 1);
  EXPECT_NEAR(k2.values.coeff(0, 1), std::log(2.0), 1e-12);
  EXPECT_EQ(k2.values.coeff(0, 0), 0.0);
  ContextMatrix k3 = netmf_matrix(complete_graph(3), 1, 1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) EXPECT_NEAR(k3.values.coeff(i, j), std::log(1.5), 1e-12);
}

TEST(NetMF, SymmetricAndUndirectedOnly) {
  Graph g = erdos_renyi(40, 0.15, false, 6);
  Eigen::MatrixXd m = netmf_matrix(g, 5, 1).dense();
  EXPECT_LT((m - m.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_THROW(netmf_matrix(erdos_renyi(10, 0.3, true, 1), 2, 1), PreconditionError);
}

TEST(Katz, Examples) {
  Eigen::MatrixXd single = katz_matrix(make_graph(2, {{0, 1}}, true), 0.5).dense();
  EXPECT_NEAR(single(0, 1), 0.5, 1e-12);
  EXPECT_NEAR(single.cwiseAbs().sum(), 0.5, 1e-12);
  Eigen::MatrixXd cyc = katz_matrix(make_graph(2, {{0, 1}, {1, 0}}, true), 0.5).dense();
  EXPECT_NEAR(cyc(0, 1), 2.0 / 3.0, 1e-9);
  EXPECT_NEAR(cyc(0, 0), 1.0 / 3.0, 1e-9);
  EXPECT_EQ(katz_matrix(complete_graph(4), 0.0).values.nonZeros(), 0);
}

TEST(Katz, ClosedForm) {
  Graph g = erdos_renyi(50, 0.08, true, 12);
  const double beta = 0.5 / adjacency_spectral_radius(g).upper;
  Eigen::MatrixXd m = katz_matrix(g, beta).dense();
  EXPECT_LT((m - oracle::katz_closed_form(g, beta)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Katz, DivergentBetaRejected) {
  EXPECT_THROW(katz_matrix(complete_graph(4), 0.5), PreconditionError);
  SpectralRadiusBounds b = adjacency_spectral_radius(complete_graph(4));
  EXPECT_NEAR(b.lower, 3.0, 1e-8);
  EXPECT_NEAR(b.upper, 3.0, 1e-8);
}

TEST(Cooccurrence, Examples) {
  Eigen::MatrixXd k2 = expected_cooccurrence(complete_graph(2), 1);
  EXPECT_NEAR(k2(0, 1), 0.5, 1e-15);
  EXPECT_NEAR(k2(1, 0), 0.5, 1e-15);
  EXPECT_EQ(k2(0, 0), 0.0);
  Graph g = erdos_renyi(12, 0.4, false, 3);
  Eigen::MatrixXd m = expected_cooccurrence(g, 4);
  EXPECT_NEAR(m.sum(), 1.0, 1e-10);
  EXPECT_LT((m - m.transpose()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Cooccurrence, SymmetricOnDigraphs) {
  Graph g = erdos_renyi(12, 0.3, true, 11);
  for (std::uint32_t w : {1u, 3u, 8u}) EXPECT_LT(cooccurrence_asymmetry(g, w), 1e-12);
}

TEST(Cooccurrence, GapShrinksWithSamples) {
  Graph g = erdos_renyi(10, 0.4, false, 13);
  WalkConfig cfg;
  cfg.walk_length = 20;
  cfg.window = 3;
  const double a = cooccurrence_gap(g, cfg, 10000);
  const double b = cooccurrence_gap(g, cfg, 100000);
  const double c = cooccurrence_gap(g, cfg, 1000000);
  EXPECT_GT(a, b);
  EXPECT_GT(b, c);
  EXPECT_LT(c, 0.01);
}

TEST(Oracles, SizeLimit) {
  EXPECT_THROW(expected_cooccurrence(erdos_renyi(101, 0.05, false, 1), 2), PreconditionError);
}
