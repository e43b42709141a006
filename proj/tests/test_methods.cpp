#include <gtest/gtest.h>

#include "ctxembed/errors.hpp"
#include "ctxembed/eval.hpp"
#include "ctxembed/methods.hpp"
#include "ctxembed/profile.hpp"
#include "ctxembed/synth.hpp"

using namespace ctxembed;

TEST(Methods, RosterRoundTrips) {
  EXPECT_EQ(all_methods().size(), 10u);
  for (const MethodTraits& t : all_methods()) {
    auto m = parse_method(t.name);
    ASSERT_TRUE(m.has_value());
    EXPECT_EQ(*m, t.method);
  }
  EXPECT_FALSE(parse_method("sdne").has_value());
  EXPECT_EQ(score_mode(Method::kHope), ScoreMode::kSourceContext);
  EXPECT_EQ(score_mode(Method::kApp), ScoreMode::kSourceContext);
  EXPECT_EQ(score_mode(Method::kVerse), ScoreMode::kSourceSource);
}

TEST(Methods, EveryEmbeddingMethodRuns) {
  Graph g = erdos_renyi(30, 0.2, false, 3);
  MethodConfig cfg;
  cfg.dim = 8;
  cfg.walks = 2;
  cfg.walk_length = 10;
  cfg.window = 3;
  cfg.samples = 3000;
  for (const MethodTraits& t : all_methods()) {
    if (!t.embeds) {
      EXPECT_THROW(embed(g, t.method, cfg), PreconditionError);
      continue;
    }
    EmbeddingSet e = embed(g, t.method, cfg);
    EXPECT_EQ(e.nodes(), 30u) << t.name;
    EXPECT_EQ(e.dim(), 8u) << t.name;
    EXPECT_TRUE(e.finite()) << t.name;
    EXPECT_EQ(e.has_context(), t.uses_context) << t.name;
    EXPECT_EQ(node_features(e, t.method).cols(), t.uses_context ? 16 : 8) << t.name;
  }
}

TEST(Methods, DirectedGraphsWithSinks) {
  Graph g = layered_dag(30, 3, 3, 1, 1);
  MethodConfig cfg;
  cfg.dim = 4;
  cfg.samples = 2000;
  for (Method m : {Method::kDeepWalk, Method::kNode2vec, Method::kApp, Method::kHope}) {
    EXPECT_TRUE(embed(g, m, cfg).finite());
  }
  EXPECT_THROW(embed(g, Method::kNetMF, cfg), PreconditionError);
}

TEST(Methods, ImplicitKatzAboveLimit) {
  Graph g = erdos_renyi(kExplicitKatzLimit + 50, 2.0 / kExplicitKatzLimit, true, 2);
  MethodConfig cfg;
  cfg.dim = 4;
  EmbeddingSet e = embed(g, Method::kHope, cfg);
  EXPECT_TRUE(e.has_context());
  EXPECT_TRUE(e.finite());
}

TEST(Synth, LayeredDagShape) {
  Graph g = layered_dag(90, 3, 4, 2, 5);
  EXPECT_TRUE(g.directed());
  EXPECT_EQ(reciprocity(g), 0.0);
  EXPECT_EQ(directed_transitivity(g), 0.0);
  for (NodeId u = 0; u < 60; ++u) EXPECT_GE(g.out_degree(u), 4u);
  for (NodeId u = 0; u < 30; ++u) EXPECT_EQ(g.in_degree(u), 0u);
  for (NodeId u = 30; u < 90; ++u) EXPECT_GE(g.in_degree(u), 2u);
  for (const Edge& e : g.edges()) EXPECT_EQ(e.dst / 30, e.src / 30 + 1);
}

TEST(Synth, Cliques) {
  Graph g = disjoint_cliques(3, 4);
  EXPECT_EQ(g.node_count(), 12u);
  EXPECT_EQ(g.edge_count(), 18u);
  EXPECT_EQ(clustering_coefficient(g), 1.0);
}
