#include <gtest/gtest.h>

#include <sstream>

#include "ctxembed/errors.hpp"
#include "ctxembed/graph.hpp"
#include "helpers.hpp"

using namespace ctxembed;

TEST(Loader, DirectedPath) {
  auto l = parse("0 1\n1 2", true);
  EXPECT_EQ(l.graph.node_count(), 3u);
  EXPECT_EQ(l.graph.edge_count(), 2u);
  EXPECT_TRUE(l.graph.has_edge(0, 1));
  EXPECT_FALSE(l.graph.has_edge(1, 0));
}

TEST(Loader, UndirectedDuplicatesDropped) {
  auto l = parse("0 1\n0 1\n1 0", false);
  EXPECT_EQ(l.graph.edge_count(), 1u);
  EXPECT_EQ(l.graph.arc_count(), 2u);
  EXPECT_TRUE(l.graph.has_edge(0, 1));
  EXPECT_TRUE(l.graph.has_edge(1, 0));
}

TEST(Loader, StringIdsAndComments) {
  auto l = parse("a b\n# comment\nb c", true);
  EXPECT_EQ(l.graph.node_count(), 3u);
  EXPECT_EQ(l.graph.edge_count(), 2u);
  EXPECT_EQ(l.ids.at("a"), 0u);
  EXPECT_EQ(l.ids.at("c"), 2u);
  EXPECT_TRUE(l.graph.has_edge(l.ids.at("b"), l.ids.at("c")));
}

TEST(Loader, SelfLoopsDropped) {
  auto l = parse("0 0\n0 1", false);
  EXPECT_EQ(l.graph.edge_count(), 1u);
  EXPECT_FALSE(l.graph.has_edge(0, 0));
}

TEST(Loader, Weights) {
  auto l = parse("0 1 2.5\n1 2", true);
  EXPECT_TRUE(l.graph.weighted());
  EXPECT_DOUBLE_EQ(l.graph.edge_weight(0, 1), 2.5);
  EXPECT_DOUBLE_EQ(l.graph.edge_weight(1, 2), 1.0);
  EXPECT_DOUBLE_EQ(l.graph.edge_weight(2, 1), 0.0);
}

TEST(Loader, MalformedLineReportsLine) {
  try {
    parse("0 1\n1\n", true);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse("0 1 -3\n", true), Error);
  EXPECT_THROW(parse("# nothing\n", true), ParseError);
}

TEST(Graph, InNeighbors) {
  Graph g = make_graph(3, {{0, 2}, {1, 2}}, true);
  auto in = g.in_neighbors(2);
  ASSERT_EQ(in.size(), 2u);
  EXPECT_EQ(in[0], 0u);
  EXPECT_EQ(in[1], 1u);
  EXPECT_EQ(g.out_degree(2), 0u);
  EXPECT_TRUE(g.has_dangling_nodes());
}

TEST(Graph, UndirectedViewAndRelabel) {
  Graph g = make_graph(3, {{0, 1}, {1, 2}}, true);
  Graph u = g.undirected_view();
  EXPECT_FALSE(u.directed());
  EXPECT_TRUE(u.has_edge(1, 0));
  std::vector<NodeId> perm = {2, 0, 1};
  Graph r = g.relabeled(perm);
  EXPECT_TRUE(r.has_edge(2, 0));
  EXPECT_TRUE(r.has_edge(0, 1));
  EXPECT_EQ(r.edge_count(), 2u);
}

TEST(Graph, EdgeListRoundTrip) {
  auto l = parse("x y\ny z\nz x", true);
  std::ostringstream out;
  write_edge_list(l.graph, l.ids, out);
  auto back = parse(out.str(), true);
  EXPECT_EQ(back.graph.edges(), l.graph.edges());
}
