#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ctxembed/context.hpp"
#include "ctxembed/graph.hpp"
#include "ctxembed/report.hpp"

namespace ctxembed {

/// L-infinity distance between the frequencies of the first `samples`
/// windowed walk pairs and expected_cooccurrence(g, cfg.window).
double cooccurrence_gap(const Graph& g, const WalkConfig& cfg, std::uint64_t samples);

/// Total-variation distance between `samples` PPR pairs and ppr_pair_oracle.
double ppr_tv_distance(const Graph& g, double alpha, std::uint32_t max_length,
                       std::uint64_t samples, std::uint64_t seed);

/// max |M - M^T| of expected_cooccurrence(g, window).
double cooccurrence_asymmetry(const Graph& g, std::uint32_t window);

/// Every node2vec row (over all arcs prev->cur) is bitwise identical across
/// the given p values at fixed q.
bool tables_independent_of_p(const Graph& g, std::span<const double> ps, double q);

/// Every node2vec row equals the first-order row bitwise for all (p, q).
bool tables_match_first_order(const Graph& g, std::span<const double> ps,
                              std::span<const double> qs);

struct VerifyOptions {
  WalkConfig walk;
  std::uint64_t samples = 1000000;
  std::vector<double> alphas = {0.15, 0.5};
  std::uint32_t ppr_max_length = 64;
  double cooccurrence_tolerance = 0.01;
  double ppr_tolerance = 0.01;
  double symmetry_tolerance = 1e-12;
};

/// Runs every check that applies to `g` and records values and
/// `*_status=pass|fail|n/a` lines; `status` summarizes. Returns true when
/// no applicable check failed.
bool verify_graph(const Graph& g, const VerifyOptions& options, Report& report);

}  // namespace ctxembed
