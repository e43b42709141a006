#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "ctxembed/graph.hpp"

inline ctxembed::LoadedGraph parse(const std::string& text, bool directed) {
  std::istringstream in(text);
  return ctxembed::read_edge_list(in, directed);
}

inline ctxembed::Graph make_graph(std::size_t n, std::vector<ctxembed::Edge> edges, bool directed) {
  return ctxembed::Graph::from_edges(n, edges, directed);
}

inline ctxembed::Graph path_graph(std::size_t n) {
  std::vector<ctxembed::Edge> e;
  for (ctxembed::NodeId i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return make_graph(n, e, false);
}

inline ctxembed::Graph complete_graph(std::size_t n) {
  std::vector<ctxembed::Edge> e;
  for (ctxembed::NodeId i = 0; i < n; ++i)
    for (ctxembed::NodeId j = i + 1; j < n; ++j) e.push_back({i, j});
  return make_graph(n, e, false);
}

inline ctxembed::Graph star_graph(std::size_t leaves) {
  std::vector<ctxembed::Edge> e;
  for (ctxembed::NodeId i = 1; i <= leaves; ++i) e.push_back({0, i});
  return make_graph(leaves + 1, e, false);
}
