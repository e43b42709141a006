#include "ctxembed/methods.hpp"

#include <array>

#include "ctxembed/context.hpp"
#include "ctxembed/errors.hpp"
#include "ctxembed/mf.hpp"

namespace ctxembed {

namespace {

constexpr std::array<MethodTraits, 10> kMethods = {{
    {Method::kDeepWalk, "deepwalk", true, false, false},
    {Method::kNode2vec, "node2vec", true, false, false},
    {Method::kLine1, "line1", true, false, false},
    {Method::kLine2, "line2", true, false, false},
    {Method::kLine12, "line12", true, false, false},
    {Method::kApp, "app", true, true, false},
    {Method::kVerse, "verse", true, false, false},
    {Method::kNetMF, "netmf", true, false, true},
    {Method::kHope, "hope", true, true, false},
    {Method::kMaxVote, "maxvote", false, false, false},
}};

WalkConfig walk_config(const MethodConfig& cfg) {
  WalkConfig w;
  w.walks_per_node = cfg.walks;
  w.walk_length = cfg.walk_length;
  w.window = cfg.window;
  w.seed = cfg.seed;
  w.dangling = DanglingPolicy::kStop;
  return w;
}

TrainConfig train_config(const MethodConfig& cfg, bool shared, std::uint32_t dim, std::uint64_t seed) {
  TrainConfig t;
  t.dim = dim;
  t.epochs = cfg.epochs;
  t.negatives = cfg.negatives;
  t.learning_rate = cfg.learning_rate;
  t.shared = shared;
  t.seed = seed;
  t.threads = cfg.threads;
  return t;
}

std::uint64_t pair_budget(const Graph& g, const MethodConfig& cfg) {
  return cfg.samples ? cfg.samples : 1000 * static_cast<std::uint64_t>(g.node_count());
}

EmbeddingSet line(const Graph& g, const MethodConfig& cfg, bool second_order, std::uint32_t dim,
                  std::uint64_t seed) {
  auto stream = adjacency_pairs(g, pair_budget(g, cfg), seed);
  EmbeddingSet e = train(*stream, g, train_config(cfg, !second_order, dim, seed));
  return e;
}

EmbeddingSet factorized(const FactorizationResult& r, bool keep_context, std::string* warning) {
  if (warning && r.warning) *warning = *r.warning;
  return to_embeddings(r, keep_context);
}

}  // namespace

std::span<const MethodTraits> all_methods() { return kMethods; }

const MethodTraits& traits(Method m) {
  for (const auto& t : kMethods) {
    if (t.method == m) return t;
  }
  throw PreconditionError("unknown method");
}

std::optional<Method> parse_method(std::string_view name) {
  for (const auto& t : kMethods) {
    if (t.name == name) return t.method;
  }
  return std::nullopt;
}

EmbeddingSet embed(const Graph& g, Method m, const MethodConfig& cfg, std::string* warning) {
  if (cfg.dim == 0) throw PreconditionError("dim must be >= 1");
  switch (m) {
    case Method::kDeepWalk: {
      auto stream = uniform_walk_pairs(g, walk_config(cfg));
      TrainConfig t = train_config(cfg, false, cfg.dim, cfg.seed);
      t.objective = Objective::kHierarchicalSoftmax;
      return train_hsoftmax(*stream, g, t);
    }
    case Method::kNode2vec: {
      SecondOrderConfig s;
      s.walk = walk_config(cfg);
      s.p = cfg.p;
      s.q = cfg.q;
      auto stream = node2vec_walk_pairs(g, s);
      EmbeddingSet e = train(*stream, g, train_config(cfg, false, cfg.dim, cfg.seed));
      e.drop_context();
      return e;
    }
    case Method::kLine1:
      return line(g, cfg, false, cfg.dim, cfg.seed);
    case Method::kLine2: {
      EmbeddingSet e = line(g, cfg, true, cfg.dim, cfg.seed);
      e.drop_context();
      return e;
    }
    case Method::kLine12: {
      if (cfg.dim < 2) throw PreconditionError("line12 needs dim >= 2");
      const std::uint32_t half = cfg.dim / 2;
      EmbeddingSet first = line(g, cfg, false, half, derive_seed(cfg.seed, 1));
      EmbeddingSet second = line(g, cfg, true, cfg.dim - half, derive_seed(cfg.seed, 2));
      return concat_normalized(first, second);
    }
    case Method::kApp:
    case Method::kVerse: {
      PPRConfig p;
      p.alpha = cfg.alpha;
      p.samples = pair_budget(g, cfg);
      p.seed = cfg.seed;
      p.dangling = DanglingPolicy::kStop;
      auto stream = ppr_pairs(g, p);
      return train(*stream, g, train_config(cfg, m == Method::kVerse, cfg.dim, cfg.seed));
    }
    case Method::kNetMF: {
      if (g.directed()) throw PreconditionError("netmf is defined for undirected graphs only");
      ContextMatrix c = netmf_matrix(g, cfg.window, cfg.negatives);
      FactorizeOptions o{cfg.dim, cfg.oversample, cfg.power_iterations, cfg.seed};
      return factorized(factorize(c, o), false, warning);
    }
    case Method::kHope: {
      FactorizeOptions o{cfg.dim, cfg.oversample, cfg.power_iterations, cfg.seed};
      if (g.node_count() <= kExplicitKatzLimit) {
        ContextMatrix c = katz_matrix(g, cfg.beta);
        return factorized(factorize(c, o), true, warning);
      }
      KatzOperator op(g, cfg.beta);
      return factorized(factorize(op, o), true, warning);
    }
    case Method::kMaxVote:
      throw PreconditionError("maxvote does not produce embeddings");
  }
  throw PreconditionError("unknown method");
}

ScoreMode score_mode(Method m) {
  return traits(m).uses_context ? ScoreMode::kSourceContext : ScoreMode::kSourceSource;
}

Eigen::MatrixXd node_features(const EmbeddingSet& e, Method m) {
  const auto n = static_cast<Eigen::Index>(e.nodes());
  const auto d = static_cast<Eigen::Index>(e.dim());
  const bool both = traits(m).uses_context;
  if (both && !e.has_context()) throw PreconditionError("method uses theta but none was learned");
  Eigen::MatrixXd x(n, both ? 2 * d : d);
  for (Eigen::Index u = 0; u < n; ++u) {
    auto phi = e.source(static_cast<NodeId>(u));
    for (Eigen::Index k = 0; k < d; ++k) x(u, k) = phi[k];
    if (both) {
      auto theta = e.context(static_cast<NodeId>(u));
      for (Eigen::Index k = 0; k < d; ++k) x(u, d + k) = theta[k];
    }
  }
  return x;
}

}  // namespace ctxembed
