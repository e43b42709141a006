#include "ctxembed/eval.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "ctxembed/errors.hpp"
#include "ctxembed/random.hpp"
#include "json.hpp"

namespace ctxembed {

namespace {

std::uint64_t pair_key(NodeId u, NodeId v, bool directed) {
  if (!directed && u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

bool is_edge(const Graph& g, NodeId u, NodeId v) { return g.has_edge(u, v); }

}  // namespace

LinkSplit make_lp_split(const Graph& g, double holdout, double reversal, std::uint64_t seed) {
  if (!(holdout > 0.0 && holdout < 1.0)) throw PreconditionError("holdout must lie in (0,1)");
  if (!(reversal >= 0.0 && reversal <= 1.0)) throw PreconditionError("reversal must lie in [0,1]");
  const std::size_t n = g.node_count();
  std::vector<Edge> edges = g.edges();
  const auto target = static_cast<std::size_t>(std::llround(holdout * static_cast<double>(edges.size())));
  if (target == 0) throw SplitError("holdout selects no edges");

  Rng rng(seed);
  rng.shuffle(std::span<Edge>(edges));

  // Training edges incident to each node, either direction.
  std::vector<std::size_t> incident(n, 0);
  for (const Edge& e : edges) {
    ++incident[e.src];
    ++incident[e.dst];
  }

  LinkSplit split;
  split.holdout = holdout;
  split.reversal = reversal;
  split.seed = seed;
  std::vector<Edge> kept;
  kept.reserve(edges.size());
  NodeId blocking = 0;
  bool blocked = false;
  for (const Edge& e : edges) {
    if (split.positives.size() < target && incident[e.src] > 1 && incident[e.dst] > 1) {
      --incident[e.src];
      --incident[e.dst];
      split.positives.push_back(e);
    } else {
      if (split.positives.size() < target && !blocked) {
        blocking = incident[e.src] > 1 ? e.dst : e.src;
        blocked = true;
      }
      kept.push_back(e);
    }
  }
  if (split.positives.size() < target) {
    throw SplitError("cannot hold out " + std::to_string(target) + " of " +
                     std::to_string(edges.size()) + " edges without isolating a node (node " +
                     std::to_string(blocking) + " has a single remaining edge); only " +
                     std::to_string(split.positives.size()) + " removable");
  }
  split.train = Graph::from_edges(n, kept, g.directed());

  const bool directed = g.directed();
  const std::size_t need = split.positives.size();
  std::unordered_set<std::uint64_t> used;
  used.reserve(2 * need);
  const auto reversals = static_cast<std::size_t>(std::llround(reversal * static_cast<double>(need)));
  for (std::size_t i = 0; i < reversals; ++i) {
    const Edge& p = split.positives[i];
    if (is_edge(g, p.dst, p.src)) continue;
    if (!used.insert(pair_key(p.dst, p.src, directed)).second) continue;
    split.negatives.push_back({p.dst, p.src, 1.0});
    ++split.reversed;
  }

  const double nd = static_cast<double>(n);
  const double non_edges = (directed ? nd * (nd - 1.0) : nd * (nd - 1.0) / 2.0) -
                           static_cast<double>(g.edge_count());
  if (non_edges < static_cast<double>(need)) {
    throw SplitError("graph has too few non-edges for a balanced test set");
  }
  while (split.negatives.size() < need) {
    const auto u = static_cast<NodeId>(rng.index(n));
    const auto v = static_cast<NodeId>(rng.index(n));
    if (u == v || is_edge(g, u, v)) continue;
    if (!used.insert(pair_key(u, v, directed)).second) continue;
    split.negatives.push_back({u, v, 1.0});
  }
  return split;
}

void check_split(const Graph& full, const LinkSplit& split) {
  const Graph& train = split.train;
  if (train.node_count() != full.node_count()) throw SplitError("train graph changed node count");
  if (split.negatives.size() != split.positives.size()) throw SplitError("test set is unbalanced");
  if (train.edge_count() + split.positives.size() != full.edge_count()) {
    throw SplitError("train and test edges do not partition the graph");
  }
  for (const Edge& e : split.positives) {
    if (!full.has_edge(e.src, e.dst)) throw SplitError("positive is not an edge");
    if (train.has_edge(e.src, e.dst)) throw SplitError("positive remains in the train graph");
  }
  std::unordered_set<std::uint64_t> seen;
  for (const Edge& e : split.negatives) {
    if (e.src == e.dst) throw SplitError("negative is a self-loop");
    if (full.has_edge(e.src, e.dst)) throw SplitError("negative is an edge");
    if (!seen.insert(pair_key(e.src, e.dst, full.directed())).second) {
      throw SplitError("duplicate negative");
    }
  }
  const Graph und = train.undirected_view();
  for (NodeId u = 0; u < und.node_count(); ++u) {
    if (und.out_degree(u) == 0 && (full.out_degree(u) > 0 || full.in_degree(u) > 0)) {
      throw SplitError("node " + std::to_string(u) + " is isolated in the train graph");
    }
  }
}

void save_split(const LinkSplit& split, const IdMap& ids, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  save_edge_list(split.train, ids, dir / "train.edges");
  auto write_pairs = [&](const std::vector<Edge>& edges, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    for (const Edge& e : edges) out << ids.name(e.src) << ' ' << ids.name(e.dst) << '\n';
  };
  write_pairs(split.positives, dir / "test_pos.edges");
  write_pairs(split.negatives, dir / "test_neg.edges");
  nlohmann::ordered_json manifest = {
      {"holdout", split.holdout},
      {"reversal", split.reversal},
      {"seed", split.seed},
      {"directed", split.train.directed()},
      {"train_edges", split.train.edge_count()},
      {"test_positives", split.positives.size()},
      {"test_negatives", split.negatives.size()},
      {"reversed_negatives", split.reversed},
  };
  std::ofstream out(dir / "manifest.json");
  if (!out) throw Error("cannot write " + (dir / "manifest.json").string());
  out << manifest.dump(2) << '\n';
}

double roc_auc(std::span<const double> positive, std::span<const double> negative) {
  if (positive.empty() || negative.empty()) throw PreconditionError("roc_auc needs both classes");
  struct Scored {
    double score;
    bool positive;
  };
  std::vector<Scored> all;
  all.reserve(positive.size() + negative.size());
  for (double s : positive) all.push_back({s, true});
  for (double s : negative) all.push_back({s, false});
  for (const auto& s : all) {
    if (std::isnan(s.score)) throw PreconditionError("roc_auc got a NaN score");
  }
  std::sort(all.begin(), all.end(), [](const Scored& a, const Scored& b) { return a.score < b.score; });

  // Twice the Mann-Whitney count, kept integral so ties are exact.
  unsigned __int128 twice = 0;
  std::uint64_t negatives_below = 0;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    std::uint64_t pos = 0, neg = 0;
    while (j < all.size() && all[j].score == all[i].score) {
      (all[j].positive ? pos : neg) += 1;
      ++j;
    }
    twice += static_cast<unsigned __int128>(pos) * (2 * negatives_below + neg);
    negatives_below += neg;
    i = j;
  }
  const double denominator = 2.0 * static_cast<double>(positive.size()) *
                             static_cast<double>(negative.size());
  return static_cast<double>(twice) / denominator;
}

double eval_lp(const PairScorer& score, const LinkSplit& split) {
  std::vector<double> pos, neg;
  pos.reserve(split.positives.size());
  neg.reserve(split.negatives.size());
  for (const Edge& e : split.positives) pos.push_back(score(e.src, e.dst));
  for (const Edge& e : split.negatives) neg.push_back(score(e.src, e.dst));
  return roc_auc(pos, neg);
}

double eval_lp(const EmbeddingSet& e, const LinkSplit& split, ScoreMode mode) {
  if (mode == ScoreMode::kSourceContext && !e.has_context()) {
    throw PreconditionError("source-context scoring needs context embeddings");
  }
  return eval_lp([&](NodeId u, NodeId v) { return score_pair(e, u, v, mode); }, split);
}

// --- labels -------------------------------------------------------------

std::vector<NodeId> LabeledNodes::labeled() const {
  std::vector<NodeId> out;
  for (NodeId u = 0; u < labels.size(); ++u) {
    if (!labels[u].empty()) out.push_back(u);
  }
  return out;
}

namespace {

bool parse_integer(const std::string& s, long long& value) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

LabeledNodes read_labels(std::istream& in, const IdMap& ids, std::size_t* skipped) {
  std::vector<std::pair<NodeId, std::string>> raw;
  std::size_t unknown = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(line);
    std::string node, label, extra;
    if (!(fields >> node)) continue;
    if (node[0] == '#' || node[0] == '%') continue;
    if (!(fields >> label)) throw ParseError("expected `node label`", lineno);
    if (fields >> extra) throw ParseError("unexpected field '" + extra + "'", lineno);
    if (!ids.contains(node)) {
      ++unknown;
      continue;
    }
    raw.emplace_back(ids.at(node), label);
  }
  if (skipped) *skipped = unknown;
  if (raw.empty()) throw ParseError("no labels for nodes of the graph", 0);

  std::vector<std::string> names;
  for (const auto& [u, l] : raw) names.push_back(l);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  bool numeric = true;
  long long tmp = 0;
  for (const auto& s : names) numeric = numeric && parse_integer(s, tmp);
  if (numeric) {
    std::sort(names.begin(), names.end(), [](const std::string& a, const std::string& b) {
      long long x = 0, y = 0;
      parse_integer(a, x);
      parse_integer(b, y);
      return x < y;
    });
  }
  std::map<std::string, std::uint32_t> index;
  for (std::uint32_t i = 0; i < names.size(); ++i) index[names[i]] = i;

  LabeledNodes result;
  result.label_count = names.size();
  result.label_names = names;
  result.labels.resize(ids.size());
  for (const auto& [u, l] : raw) result.labels[u].push_back(index.at(l));
  for (auto& set : result.labels) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
  }
  return result;
}

LabeledNodes load_labels(const std::filesystem::path& path, const IdMap& ids, std::size_t* skipped) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_labels(in, ids, skipped);
}

std::vector<int> assign_folds(const LabeledNodes& labels, std::uint32_t folds, std::uint64_t seed) {
  if (folds < 2) throw PreconditionError("need at least 2 folds");
  std::vector<NodeId> nodes = labels.labeled();
  if (nodes.size() < folds) throw PreconditionError("fewer labeled nodes than folds");
  Rng rng(seed);
  rng.shuffle(std::span<NodeId>(nodes));
  std::vector<int> fold(labels.labels.size(), -1);
  for (std::size_t i = 0; i < nodes.size(); ++i) fold[nodes[i]] = static_cast<int>(i % folds);
  return fold;
}

// --- logistic regression --------------------------------------------------

namespace {

double stable_sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

Eigen::MatrixXd with_bias(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd xb(x.rows(), x.cols() + 1);
  xb.leftCols(x.cols()) = x;
  xb.col(x.cols()).setOnes();
  return xb;
}

Eigen::VectorXd gradient_biased(const Eigen::MatrixXd& xb, const Eigen::VectorXd& y,
                                const Eigen::VectorXd& w, double lambda) {
  Eigen::VectorXd z = xb * w;
  Eigen::VectorXd r(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) r[i] = stable_sigmoid(z[i]) - y[i];
  Eigen::VectorXd g = xb.transpose() * r;
  const Eigen::Index d = w.size() - 1;
  g.head(d) += lambda * w.head(d);
  return g;
}

}  // namespace

Eigen::VectorXd logistic_gradient(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                  const Eigen::VectorXd& w, double lambda) {
  return gradient_biased(with_bias(x), y, w, lambda);
}

Eigen::VectorXd fit_logistic(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                             const LogRegConfig& cfg) {
  if (!x.allFinite()) throw PreconditionError("features contain non-finite values");
  if (x.rows() != y.size() || x.rows() == 0) throw PreconditionError("feature/label size mismatch");
  if (!(cfg.lambda >= 0.0)) throw PreconditionError("lambda must be >= 0");
  const Eigen::MatrixXd xb = with_bias(x);
  const Eigen::Index p = xb.cols();

  // Jacobi scaling D, then steps of 1/L with L the largest eigenvalue of
  // D^1/2 (Xb^T Xb / 4 + lambda I') D^1/2, a bound on the scaled Hessian.
  Eigen::MatrixXd curvature = xb.transpose() * xb / 4.0;
  curvature.diagonal().head(p - 1).array() += cfg.lambda;
  Eigen::VectorXd scale = curvature.diagonal().cwiseMax(1e-12).cwiseInverse();
  const Eigen::VectorXd root = scale.cwiseSqrt();
  const Eigen::MatrixXd scaled = root.asDiagonal() * curvature * root.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(scaled, Eigen::EigenvaluesOnly);
  scale /= eig.eigenvalues().maxCoeff();

  // Nesterov acceleration with gradient-based restart.
  Eigen::VectorXd w = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd v = w;
  double t = 1.0;
  for (std::uint32_t it = 0; it < cfg.max_iterations; ++it) {
    Eigen::VectorXd gv = gradient_biased(xb, y, v, cfg.lambda);
    Eigen::VectorXd next = v - scale.cwiseProduct(gv);
    if (gv.dot(next - w) > 0.0) {
      t = 1.0;
      v = w;
      gv = gradient_biased(xb, y, v, cfg.lambda);
      next = v - scale.cwiseProduct(gv);
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    v = next + ((t - 1.0) / t_next) * (next - w);
    w = std::move(next);
    t = t_next;
    if (gradient_biased(xb, y, w, cfg.lambda).norm() < cfg.tolerance) break;
  }
  return w;
}

double ClassifierModel::score(std::uint32_t label, const Eigen::Ref<const Eigen::RowVectorXd>& x) const {
  if (constant[label]) return *constant[label];
  const Eigen::VectorXd& w = weights[label];
  const Eigen::Index d = w.size() - 1;
  return stable_sigmoid(x.dot(w.head(d)) + w[d]);
}

ClassifierModel train_logreg_ovr(const Eigen::MatrixXd& features, const LabeledNodes& labels,
                                 std::span<const NodeId> train_nodes, const LogRegConfig& cfg) {
  if (!features.allFinite()) throw PreconditionError("features contain non-finite values");
  const auto m = static_cast<Eigen::Index>(train_nodes.size());
  Eigen::MatrixXd x(m, features.cols());
  for (Eigen::Index i = 0; i < m; ++i) x.row(i) = features.row(train_nodes[i]);

  ClassifierModel model;
  model.weights.resize(labels.label_count);
  model.constant.resize(labels.label_count);
  for (std::uint32_t l = 0; l < labels.label_count; ++l) {
    Eigen::VectorXd y(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto& set = labels.labels[train_nodes[i]];
      y[i] = std::binary_search(set.begin(), set.end(), l) ? 1.0 : 0.0;
    }
    const double positives = y.sum();
    if (positives == 0.0 || positives == static_cast<double>(m)) {
      model.constant[l] = positives == 0.0 ? 0.0 : 1.0;
      model.weights[l] = Eigen::VectorXd::Zero(features.cols() + 1);
      continue;
    }
    model.weights[l] = fit_logistic(x, y, cfg);
  }
  return model;
}

std::vector<std::vector<std::uint32_t>> predict_top_k(const ClassifierModel& model,
                                                      const Eigen::MatrixXd& features,
                                                      const LabeledNodes& labels,
                                                      std::span<const NodeId> nodes) {
  std::vector<std::vector<std::uint32_t>> predicted;
  predicted.reserve(nodes.size());
  const std::size_t l = model.weights.size();
  std::vector<std::uint32_t> order(l);
  std::vector<double> scores(l);
  for (NodeId u : nodes) {
    for (std::uint32_t c = 0; c < l; ++c) scores[c] = model.score(c, features.row(u));
    std::iota(order.begin(), order.end(), 0);
    const std::size_t k = std::min(labels.labels[u].size(), l);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](std::uint32_t a, std::uint32_t b) {
                        return scores[a] != scores[b] ? scores[a] > scores[b] : a < b;
                      });
    std::vector<std::uint32_t> top(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(top.begin(), top.end());
    predicted.push_back(std::move(top));
  }
  return predicted;
}

F1Scores f1_scores(std::span<const std::vector<std::uint32_t>> truth,
                   std::span<const std::vector<std::uint32_t>> predicted, std::size_t label_count) {
  if (truth.size() != predicted.size()) throw PreconditionError("truth/prediction size mismatch");
  std::vector<std::uint64_t> tp(label_count, 0), fp(label_count, 0), fn(label_count, 0);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const auto& t = truth[i];
    const auto& p = predicted[i];
    for (std::uint32_t l : p) {
      if (l >= label_count) throw PreconditionError("predicted label out of range");
      (std::find(t.begin(), t.end(), l) != t.end() ? tp : fp)[l] += 1;
    }
    for (std::uint32_t l : t) {
      if (l >= label_count) throw PreconditionError("true label out of range");
      if (std::find(p.begin(), p.end(), l) == p.end()) fn[l] += 1;
    }
  }
  auto f1 = [](std::uint64_t tp_, std::uint64_t fp_, std::uint64_t fn_) {
    const std::uint64_t denom = 2 * tp_ + fp_ + fn_;
    return denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp_) / static_cast<double>(denom);
  };
  F1Scores s;
  std::uint64_t TP = 0, FP = 0, FN = 0;
  double macro = 0.0;
  for (std::size_t l = 0; l < label_count; ++l) {
    TP += tp[l];
    FP += fp[l];
    FN += fn[l];
    macro += f1(tp[l], fp[l], fn[l]);
  }
  s.micro = f1(TP, FP, FN);
  s.macro = label_count ? macro / static_cast<double>(label_count) : 0.0;
  return s;
}

F1Scores predict_and_score(const ClassifierModel& model, const Eigen::MatrixXd& features,
                           const LabeledNodes& labels, std::span<const NodeId> test_nodes) {
  auto predicted = predict_top_k(model, features, labels, test_nodes);
  std::vector<std::vector<std::uint32_t>> truth;
  for (NodeId u : test_nodes) truth.push_back(labels.labels[u]);
  return f1_scores(truth, predicted, labels.label_count);
}

std::vector<std::vector<std::uint32_t>> max_vote(const Graph& g, const LabeledNodes& labels,
                                                 const std::vector<bool>& is_train,
                                                 std::span<const NodeId> test_nodes,
                                                 std::uint64_t seed) {
  const std::size_t l = labels.label_count;
  Rng rng(seed);
  std::vector<std::uint64_t> tally(l);
  std::vector<std::uint32_t> order(l);
  std::vector<std::vector<std::uint32_t>> predicted;
  predicted.reserve(test_nodes.size());

  auto count_neighbors = [&](std::span<const NodeId> nbrs, NodeId self) {
    for (NodeId v : nbrs) {
      if (v == self || !is_train[v]) continue;
      for (std::uint32_t c : labels.labels[v]) ++tally[c];
    }
  };

  for (NodeId u : test_nodes) {
    std::fill(tally.begin(), tally.end(), 0);
    count_neighbors(g.out_neighbors(u), u);
    if (g.directed()) {
      // Union neighborhood: count in-neighbors not already counted as out-neighbors.
      auto outs = g.out_neighbors(u);
      for (NodeId v : g.in_neighbors(u)) {
        if (v == u || !is_train[v] || std::binary_search(outs.begin(), outs.end(), v)) continue;
        for (std::uint32_t c : labels.labels[v]) ++tally[c];
      }
    }
    const std::size_t k = std::min(labels.labels[u].size(), l);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return tally[a] > tally[b]; });
    std::vector<std::uint32_t> chosen;
    for (std::uint32_t c : order) {
      if (chosen.size() == k || tally[c] == 0) break;
      chosen.push_back(c);
    }
    if (chosen.size() < k) {
      std::vector<std::uint32_t> rest;
      for (std::uint32_t c = 0; c < l; ++c) {
        if (std::find(chosen.begin(), chosen.end(), c) == chosen.end()) rest.push_back(c);
      }
      while (chosen.size() < k) {
        const std::size_t pick = rng.index(rest.size());
        chosen.push_back(rest[pick]);
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
      }
    }
    std::sort(chosen.begin(), chosen.end());
    predicted.push_back(std::move(chosen));
  }
  return predicted;
}

namespace {

template <typename Evaluate>
CrossValidation run_folds(const LabeledNodes& labels, std::uint32_t folds, std::uint64_t seed,
                          Evaluate&& evaluate) {
  const std::vector<int> fold = assign_folds(labels, folds, seed);
  CrossValidation cv;
  for (std::uint32_t f = 0; f < folds; ++f) {
    std::vector<NodeId> train, test;
    for (NodeId u = 0; u < fold.size(); ++u) {
      if (fold[u] < 0) continue;
      (static_cast<std::uint32_t>(fold[u]) == f ? test : train).push_back(u);
    }
    cv.folds.push_back(evaluate(f, train, test));
    cv.mean.micro += cv.folds.back().micro / folds;
    cv.mean.macro += cv.folds.back().macro / folds;
  }
  return cv;
}

}  // namespace

CrossValidation cross_validate_logreg(const Eigen::MatrixXd& features, const LabeledNodes& labels,
                                      std::uint32_t folds, std::uint64_t seed,
                                      const LogRegConfig& cfg) {
  if (static_cast<std::size_t>(features.rows()) != labels.labels.size()) {
    throw PreconditionError("feature rows do not match the labeled node set");
  }
  return run_folds(labels, folds, seed,
                   [&](std::uint32_t, const std::vector<NodeId>& train, const std::vector<NodeId>& test) {
                     auto model = train_logreg_ovr(features, labels, train, cfg);
                     return predict_and_score(model, features, labels, test);
                   });
}

CrossValidation cross_validate_max_vote(const Graph& g, const LabeledNodes& labels,
                                        std::uint32_t folds, std::uint64_t seed) {
  if (g.node_count() != labels.labels.size()) {
    throw PreconditionError("label set does not match the graph");
  }
  return run_folds(labels, folds, seed,
                   [&](std::uint32_t f, const std::vector<NodeId>& train, const std::vector<NodeId>& test) {
                     std::vector<bool> is_train(g.node_count(), false);
                     for (NodeId u : train) is_train[u] = true;
                     auto predicted = max_vote(g, labels, is_train, test, derive_seed(seed, f + 1));
                     std::vector<std::vector<std::uint32_t>> truth;
                     for (NodeId u : test) truth.push_back(labels.labels[u]);
                     return f1_scores(truth, predicted, labels.label_count);
                   });
}

}  // namespace ctxembed
