#include "ctxembed/sgns.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <numeric>
#include <ostream>
#include <string>
#include <thread>

#include "ctxembed/errors.hpp"

namespace ctxembed {

EmbeddingSet::EmbeddingSet(std::size_t nodes, std::size_t dim, bool with_context)
    : nodes_(nodes), dim_(dim), source_(nodes * dim, 0.0f) {
  if (with_context) context_.assign(nodes * dim, 0.0f);
}

std::span<float> EmbeddingSet::context(NodeId u) {
  if (context_.empty()) throw PreconditionError("embedding set has no context matrix");
  return {context_.data() + u * dim_, dim_};
}

std::span<const float> EmbeddingSet::context(NodeId u) const {
  if (context_.empty()) throw PreconditionError("embedding set has no context matrix");
  return {context_.data() + u * dim_, dim_};
}

bool EmbeddingSet::finite() const {
  auto ok = [](float x) { return std::isfinite(x); };
  return std::all_of(source_.begin(), source_.end(), ok) &&
         std::all_of(context_.begin(), context_.end(), ok);
}

void TrainConfig::validate() const {
  if (dim == 0) throw PreconditionError("dim must be >= 1");
  if (objective == Objective::kNegativeSampling && negatives == 0) {
    throw PreconditionError("negative sampling needs at least one negative");
  }
  if (objective == Objective::kHierarchicalSoftmax && shared) {
    throw PreconditionError("hierarchical softmax requires separate source/context roles");
  }
  if (!(learning_rate > 0.0)) throw PreconditionError("learning rate must be > 0");
}

NegativeSampler::NegativeSampler(std::span<const double> frequencies, double power) {
  std::vector<double> weights(frequencies.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(frequencies[i] > 0.0)) throw PreconditionError("negative-sampling frequencies must be > 0");
    weights[i] = std::pow(frequencies[i], power);
  }
  table_ = AliasTable(weights);
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  probabilities_.resize(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) probabilities_[i] = weights[i] / total;
}

namespace {

std::vector<double> degree_frequencies(const Graph& g) {
  std::vector<double> freq(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    double d = g.directed() ? static_cast<double>(g.out_degree(u) + g.in_degree(u))
                            : static_cast<double>(g.out_degree(u));
    freq[u] = std::max(1.0, d);
  }
  return freq;
}

}  // namespace

NegativeSampler NegativeSampler::from_degrees(const Graph& g, double power) {
  auto freq = degree_frequencies(g);
  return NegativeSampler(freq, power);
}

namespace {

template <typename T>
T clamped_sigmoid(T x) {
  const T bound = static_cast<T>(kDotClamp);
  x = x > bound ? bound : (x < -bound ? -bound : x);
  return T(1) / (T(1) + std::exp(-x));
}

// d(-log-likelihood)/d(dot) is -(label - sigma(dot)); SGD steps along
// (label - sigma(dot)). Shared by the trainers and by sgns_gradient.
template <typename T>
T descent_coefficient(T dot, int label) {
  return static_cast<T>(label) - clamped_sigmoid(dot);
}

template <typename T>
T pair_loss(T dot, int label) {
  return -std::log(clamped_sigmoid(label ? dot : -dot));
}

template <typename A, typename B>
double dot_product(std::span<const A> a, std::span<const B> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  return acc;
}

inline float dotf(const float* a, const float* b, std::size_t d) {
  float acc = 0.0f;
  for (std::size_t i = 0; i < d; ++i) acc += a[i] * b[i];
  return acc;
}

inline void axpy(float alpha, const float* x, float* y, std::size_t d) {
  for (std::size_t i = 0; i < d; ++i) y[i] += alpha * x[i];
}

void check_dims(std::span<const double> source, std::span<const double> context,
                std::span<const std::vector<double>> negatives) {
  if (source.size() != context.size()) throw PreconditionError("vector dimensions differ");
  for (const auto& n : negatives) {
    if (n.size() != source.size()) throw PreconditionError("vector dimensions differ");
  }
}

}  // namespace

double sgns_loss(std::span<const double> source, std::span<const double> context,
                 std::span<const std::vector<double>> negatives) {
  check_dims(source, context, negatives);
  double loss = pair_loss(dot_product(source, context), 1);
  for (const auto& n : negatives) loss += pair_loss(dot_product(source, std::span<const double>(n)), 0);
  return loss;
}

SgnsGradient sgns_gradient(std::span<const double> source, std::span<const double> context,
                           std::span<const std::vector<double>> negatives) {
  check_dims(source, context, negatives);
  const std::size_t d = source.size();
  SgnsGradient grad;
  grad.source.assign(d, 0.0);
  grad.context.assign(d, 0.0);

  const double gp = -descent_coefficient(dot_product(source, context), 1);
  for (std::size_t i = 0; i < d; ++i) {
    grad.source[i] += gp * context[i];
    grad.context[i] = gp * source[i];
  }
  for (const auto& n : negatives) {
    const double gn = -descent_coefficient(dot_product(source, std::span<const double>(n)), 0);
    std::vector<double> g(d);
    for (std::size_t i = 0; i < d; ++i) {
      grad.source[i] += gn * n[i];
      g[i] = gn * source[i];
    }
    grad.negatives.push_back(std::move(g));
  }
  return grad;
}

namespace {

void initialize_source(EmbeddingSet& e, std::uint64_t seed) {
  Rng rng(seed);
  const float half = 0.5f / static_cast<float>(e.dim());
  for (float& x : e.source_data()) {
    x = static_cast<float>((rng.uniform() * 2.0 - 1.0) * half);
  }
}

struct StepState {
  std::atomic<std::uint64_t> processed{0};
  std::uint64_t total = 1;
  double lr0 = 0.025;
  double lr_min = 1e-4;

  float learning_rate(std::uint64_t done) const {
    double lr = lr0 * (1.0 - static_cast<double>(done) / static_cast<double>(total));
    return static_cast<float>(std::max(lr, lr_min));
  }
};

[[noreturn]] void throw_non_finite(float lr, std::uint64_t step) {
  throw TrainingError("non-finite embedding value at step " + std::to_string(step) +
                      " (learning rate " + std::to_string(lr) +
                      "); lower the learning rate or check the input graph");
}

// Runs `body(pair sink)` once per epoch and shard, on `threads` workers (0 =
// inline). Workers own disjoint shards and update shared parameters without
// synchronization; only the single-threaded path is bit-reproducible.
template <typename WorkerFactory>
void run_epochs(const PairStream& stream, const TrainConfig& cfg, TrainStats* stats,
                WorkerFactory&& make_worker) {
  const std::uint32_t shards = std::max<std::uint32_t>(1, cfg.threads);
  std::vector<double> epoch_loss(cfg.epochs, 0.0);
  std::vector<std::uint64_t> epoch_pairs(cfg.epochs, 0);

  auto run_shard = [&](std::uint32_t shard, std::vector<double>& loss,
                       std::vector<std::uint64_t>& count) {
    for (std::uint32_t epoch = 0; epoch < cfg.epochs; ++epoch) {
      auto worker = make_worker(epoch, shard);
      stream.generate(epoch, shard, shards, [&](NodeId s, NodeId c) { worker(s, c); });
      loss[epoch] += worker.loss;
      count[epoch] += worker.pairs;
    }
  };

  if (cfg.threads == 0) {
    run_shard(0, epoch_loss, epoch_pairs);
  } else {
    std::vector<std::vector<double>> losses(shards, std::vector<double>(cfg.epochs, 0.0));
    std::vector<std::vector<std::uint64_t>> counts(shards,
                                                   std::vector<std::uint64_t>(cfg.epochs, 0));
    std::vector<std::exception_ptr> errors(shards);
    std::vector<std::thread> workers;
    for (std::uint32_t s = 0; s < shards; ++s) {
      workers.emplace_back([&, s] {
        try {
          run_shard(s, losses[s], counts[s]);
        } catch (...) {
          errors[s] = std::current_exception();
        }
      });
    }
    for (auto& t : workers) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    for (std::uint32_t s = 0; s < shards; ++s) {
      for (std::uint32_t e = 0; e < cfg.epochs; ++e) {
        epoch_loss[e] += losses[s][e];
        epoch_pairs[e] += counts[s][e];
      }
    }
  }

  if (stats) {
    stats->epoch_loss.clear();
    stats->pairs = 0;
    for (std::uint32_t e = 0; e < cfg.epochs; ++e) {
      stats->epoch_loss.push_back(epoch_pairs[e] ? epoch_loss[e] / epoch_pairs[e] : 0.0);
      stats->pairs += epoch_pairs[e];
    }
  }
}

constexpr std::uint64_t kNegativeStream = 0x6e656773ULL;

}  // namespace

EmbeddingSet train(const PairStream& stream, const Graph& g, const TrainConfig& cfg,
                   TrainStats* stats) {
  cfg.validate();
  if (cfg.objective == Objective::kHierarchicalSoftmax) return train_hsoftmax(stream, g, cfg, stats);

  const std::size_t n = g.node_count();
  const std::size_t d = cfg.dim;
  EmbeddingSet emb(n, d, !cfg.shared);
  initialize_source(emb, cfg.seed);
  if (cfg.epochs == 0) {
    if (stats) *stats = {};
    return emb;
  }

  const NegativeSampler negatives = NegativeSampler::from_degrees(g);
  StepState state;
  state.total = std::max<std::uint64_t>(1, stream.pairs_per_epoch() * cfg.epochs);
  state.lr0 = cfg.learning_rate;
  state.lr_min = cfg.min_learning_rate;

  struct Worker {
    const TrainConfig& cfg;
    const NegativeSampler& negatives;
    StepState& state;
    float* phi_base;
    float* ctx_base;
    bool track_loss;
    Rng rng;
    std::vector<float> grad;
    double loss = 0.0;
    std::uint64_t pairs = 0;

    void update(float* phi, NodeId target, int label, float lr, std::uint64_t step) {
      const std::size_t d = grad.size();
      float* vec = ctx_base + static_cast<std::size_t>(target) * d;
      const float f = dotf(phi, vec, d);
      if (!std::isfinite(f)) throw_non_finite(lr, step);
      const float coef = descent_coefficient(f, label) * lr;
      if (track_loss) loss += pair_loss(static_cast<double>(f), label);
      axpy(coef, vec, grad.data(), d);
      axpy(coef, phi, vec, d);
    }

    void operator()(NodeId s, NodeId c) {
      const std::size_t d = grad.size();
      const std::uint64_t step = state.processed.fetch_add(1, std::memory_order_relaxed);
      const float lr = state.learning_rate(step);
      float* phi = phi_base + static_cast<std::size_t>(s) * d;
      std::fill(grad.begin(), grad.end(), 0.0f);
      update(phi, c, 1, lr, step);
      for (std::uint32_t k = 0; k < cfg.negatives; ++k) {
        NodeId neg = negatives.sample(rng);
        if (neg == c || (cfg.shared && neg == s)) continue;
        update(phi, neg, 0, lr, step);
      }
      axpy(1.0f, grad.data(), phi, d);
      ++pairs;
    }
  };

  float* phi_base = emb.source_data().data();
  float* ctx_base = cfg.shared ? phi_base : emb.context_data().data();
  run_epochs(stream, cfg, stats, [&](std::uint32_t epoch, std::uint32_t shard) {
    return Worker{cfg, negatives, state, phi_base, ctx_base, stats != nullptr,
                  Rng(derive_seed(cfg.seed ^ kNegativeStream, (std::uint64_t{epoch} << 16) | shard)),
                  std::vector<float>(d)};
  });

  if (!emb.finite()) throw_non_finite(state.learning_rate(state.processed), state.processed);
  return emb;
}

HuffmanTree::HuffmanTree(std::span<const double> frequencies) {
  const std::size_t n = frequencies.size();
  codes_.resize(n);
  paths_.resize(n);
  if (n < 2) return;

  // Leaves sorted by decreasing frequency; two-queue construction so that code
  // lengths are non-increasing in frequency.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return frequencies[a] > frequencies[b]; });

  std::vector<double> count(2 * n - 1);
  std::vector<std::size_t> parent(2 * n - 1, 0);
  std::vector<std::uint8_t> bit(2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i) count[i] = frequencies[order[i]];

  std::ptrdiff_t leaf = static_cast<std::ptrdiff_t>(n) - 1;
  std::size_t internal = n;  // oldest unmerged internal node
  std::size_t next = n;      // next internal slot to create
  for (std::size_t a = 0; a + 1 < n; ++a) {
    std::size_t picks[2];
    for (std::size_t& pick : picks) {
      if (leaf >= 0 && (internal >= next || count[static_cast<std::size_t>(leaf)] < count[internal])) {
        pick = static_cast<std::size_t>(leaf--);
      } else {
        pick = internal++;
      }
    }
    count[next] = count[picks[0]] + count[picks[1]];
    parent[picks[0]] = next;
    parent[picks[1]] = next;
    bit[picks[1]] = 1;
    ++next;
  }

  const std::size_t root = 2 * n - 2;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint8_t> code;
    std::vector<std::uint32_t> path;
    for (std::size_t node = i; node != root; node = parent[node]) {
      code.push_back(bit[node]);
      path.push_back(static_cast<std::uint32_t>(parent[node] - n));
    }
    std::reverse(code.begin(), code.end());
    std::reverse(path.begin(), path.end());
    codes_[order[i]] = std::move(code);
    paths_[order[i]] = std::move(path);
  }
}

HuffmanTree HuffmanTree::from_degrees(const Graph& g) {
  auto freq = degree_frequencies(g);
  return HuffmanTree(freq);
}

double HuffmanTree::leaf_probability(std::span<const double> phi,
                                     std::span<const double> internal, NodeId leaf) const {
  const std::size_t d = phi.size();
  double p = 1.0;
  auto code = codes_[leaf];
  auto path = paths_[leaf];
  for (std::size_t k = 0; k < code.size(); ++k) {
    double x = dot_product(phi, internal.subspan(static_cast<std::size_t>(path[k]) * d, d));
    p *= clamped_sigmoid(code[k] ? -x : x);
  }
  return p;
}

EmbeddingSet train_hsoftmax(const PairStream& stream, const Graph& g, const TrainConfig& cfg,
                            TrainStats* stats) {
  TrainConfig local = cfg;
  local.objective = Objective::kHierarchicalSoftmax;
  local.validate();

  const std::size_t n = g.node_count();
  const std::size_t d = cfg.dim;
  EmbeddingSet emb(n, d, false);
  initialize_source(emb, cfg.seed);
  if (cfg.epochs == 0) {
    if (stats) *stats = {};
    return emb;
  }

  const HuffmanTree tree = HuffmanTree::from_degrees(g);
  std::vector<float> internal(tree.internal_nodes() * d, 0.0f);
  StepState state;
  state.total = std::max<std::uint64_t>(1, stream.pairs_per_epoch() * cfg.epochs);
  state.lr0 = cfg.learning_rate;
  state.lr_min = cfg.min_learning_rate;
  struct Worker {
    const HuffmanTree& tree;
    StepState& state;
    float* phi_base;
    float* internal;
    bool track_loss;
    std::vector<float> grad;
    double loss = 0.0;
    std::uint64_t pairs = 0;

    void operator()(NodeId s, NodeId c) {
      const std::size_t d = grad.size();
      const std::uint64_t step = state.processed.fetch_add(1, std::memory_order_relaxed);
      const float lr = state.learning_rate(step);
      float* phi = phi_base + static_cast<std::size_t>(s) * d;
      std::fill(grad.begin(), grad.end(), 0.0f);
      auto code = tree.code(c);
      auto path = tree.path(c);
      for (std::size_t k = 0; k < code.size(); ++k) {
        float* psi = internal + static_cast<std::size_t>(path[k]) * d;
        const float f = dotf(phi, psi, d);
        if (!std::isfinite(f)) throw_non_finite(lr, step);
        const int label = 1 - code[k];
        const float coef = descent_coefficient(f, label) * lr;
        if (track_loss) loss += pair_loss(static_cast<double>(f), label);
        axpy(coef, psi, grad.data(), d);
        axpy(coef, phi, psi, d);
      }
      axpy(1.0f, grad.data(), phi, d);
      ++pairs;
    }
  };

  run_epochs(stream, local, stats, [&](std::uint32_t, std::uint32_t) {
    return Worker{tree, state, emb.source_data().data(), internal.data(), stats != nullptr,
                  std::vector<float>(d)};
  });

  if (!emb.finite()) throw_non_finite(state.learning_rate(state.processed), state.processed);
  return emb;
}

double score_pair(const EmbeddingSet& e, NodeId u, NodeId v, ScoreMode mode) {
  auto a = e.source(u);
  auto b = mode == ScoreMode::kSourceSource ? e.source(v) : e.context(v);
  return sigmoid(dot_product(a, b));
}

EmbeddingSet concat_normalized(const EmbeddingSet& first, const EmbeddingSet& second) {
  if (first.nodes() != second.nodes()) throw PreconditionError("embedding sets cover different nodes");
  const std::size_t d1 = first.dim(), d2 = second.dim();
  EmbeddingSet out(first.nodes(), d1 + d2, false);
  auto copy_normalized = [](std::span<const float> src, float* dst) {
    double norm = 0.0;
    for (float x : src) norm += static_cast<double>(x) * x;
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < src.size(); ++i) {
      dst[i] = norm > 0.0 ? static_cast<float>(src[i] / norm) : 0.0f;
    }
  };
  for (NodeId u = 0; u < first.nodes(); ++u) {
    float* row = out.source(u).data();
    copy_normalized(first.source(u), row);
    copy_normalized(second.source(u), row + d1);
  }
  return out;
}

void write_embedding_matrix(std::span<const float> data, std::size_t nodes, std::size_t dim,
                            const IdMap& ids, std::ostream& out) {
  out << nodes << ' ' << dim << '\n';
  char buf[32];
  for (std::size_t u = 0; u < nodes; ++u) {
    out << ids.name(static_cast<NodeId>(u));
    for (std::size_t k = 0; k < dim; ++k) {
      std::snprintf(buf, sizeof buf, " %.6g", static_cast<double>(data[u * dim + k]));
      out << buf;
    }
    out << '\n';
  }
}

void write_embeddings(const EmbeddingSet& e, const IdMap& ids, const std::filesystem::path& path) {
  {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    write_embedding_matrix(e.source_data(), e.nodes(), e.dim(), ids, out);
  }
  if (e.has_context()) {
    std::ofstream out(path.string() + ".ctx");
    if (!out) throw Error("cannot write " + path.string() + ".ctx");
    write_embedding_matrix(e.context_data(), e.nodes(), e.dim(), ids, out);
  }
}

}  // namespace ctxembed
