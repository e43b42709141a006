// ctxembed: node-embedding toolkit driver.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ctxembed/errors.hpp"
#include "ctxembed/eval.hpp"
#include "ctxembed/methods.hpp"
#include "ctxembed/profile.hpp"
#include "ctxembed/report.hpp"
#include "ctxembed/verify.hpp"

namespace fs = std::filesystem;
using namespace ctxembed;

namespace {

struct Options {
  std::string task;
  std::string method;
  std::string input;
  std::string labels;
  std::string out = "ctxembed_out";
  bool directed = false;
  MethodConfig method_cfg;
  double holdout = 0.5;
  double reversal = 0.0;
  std::uint32_t folds = 5;
  double lambda = 1.0;
  std::uint64_t verify_samples = 1000000;
  std::optional<std::uint64_t> seed;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("CTXEMBED_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("CTXEMBED_SEED is not an unsigned integer: ") + env);
  }
  return 1;
}

nlohmann::ordered_json resolved_config(const Options& o) {
  const MethodConfig& m = o.method_cfg;
  return {
      {"task", o.task},
      {"method", o.method},
      {"input", o.input},
      {"labels", o.labels},
      {"directed", o.directed},
      {"out", o.out},
      {"dim", m.dim},
      {"walks", m.walks},
      {"walk_len", m.walk_length},
      {"window", m.window},
      {"neg", m.negatives},
      {"alpha", m.alpha},
      {"p", m.p},
      {"q", m.q},
      {"beta", m.beta},
      {"samples", m.samples},
      {"epochs", m.epochs},
      {"lr", m.learning_rate},
      {"holdout", o.holdout},
      {"reversal", o.reversal},
      {"folds", o.folds},
      {"lambda", o.lambda},
      {"verify_samples", o.verify_samples},
      {"seed", m.seed},
      {"threads", m.threads},
  };
}

Method require_method(const Options& o) {
  if (o.method.empty()) throw UsageError("--method is required for task " + o.task);
  auto m = parse_method(o.method);
  if (!m) throw UsageError("unknown method '" + o.method + "'");
  return *m;
}

void check_compatibility(const Options& o, Method m) {
  const auto& t = traits(m);
  if (!t.embeds && o.task != "eval-nc") {
    throw UsageError(std::string(t.name) + " is a node-classification baseline; use --task eval-nc");
  }
  if (t.undirected_only && o.directed) {
    throw UsageError(std::string(t.name) + " is defined for undirected graphs only");
  }
}

LoadedGraph load(const Options& o) {
  if (o.input.empty()) throw UsageError("--input is required");
  return load_edge_list(o.input, o.directed);
}

void add_profile(const GraphProfile& p, Report& r) {
  auto optional = [&](const std::string& key, const std::optional<double>& v) {
    if (v) {
      r.set(key, *v);
    } else {
      r.set(key, "n/a");
    }
  };
  r.set("nodes", p.nodes);
  r.set("edges", p.edges);
  r.set("directed", p.directed ? 1 : 0);
  optional("reciprocity", p.reciprocity);
  r.set("diameter", static_cast<std::int64_t>(p.diameter.hops));
  r.set("diameter_approximate", p.diameter.approximate ? 1 : 0);
  r.set("clustering", p.clustering);
  r.set("transitivity", p.transitivity);
  optional("clustering_dir", p.clustering_dir);
  optional("transitivity_dir", p.transitivity_dir);
  r.set("spectral_separation", p.spectral_separation);
  r.set("spectral_symmetrized", p.spectral_symmetrized ? 1 : 0);
}

int run(const Options& o) {
  Report report;
  const fs::path out(o.out);
  bool ok = true;

  if (o.task == "stats") {
    auto loaded = load(o);
    add_profile(profile_graph(loaded.graph), report);
  } else if (o.task == "split") {
    auto loaded = load(o);
    LinkSplit split = make_lp_split(loaded.graph, o.holdout, o.reversal, o.method_cfg.seed);
    check_split(loaded.graph, split);
    save_split(split, loaded.ids, out / "split");
    report.set("train_edges", split.train.edge_count());
    report.set("test_positives", split.positives.size());
    report.set("test_negatives", split.negatives.size());
    report.set("reversed_negatives", split.reversed);
  } else if (o.task == "embed") {
    const Method m = require_method(o);
    check_compatibility(o, m);
    auto loaded = load(o);
    std::string warning;
    EmbeddingSet e = embed(loaded.graph, m, o.method_cfg, &warning);
    fs::create_directories(out);
    write_embeddings(e, loaded.ids, out / (o.method + ".emb"));
    report.set("method", o.method);
    report.set("nodes", e.nodes());
    report.set("dim", e.dim());
    report.set("context", e.has_context() ? 1 : 0);
    if (!warning.empty()) report.set("warning", "rank_deficient");
  } else if (o.task == "eval-lp") {
    const Method m = require_method(o);
    check_compatibility(o, m);
    auto loaded = load(o);
    LinkSplit split = make_lp_split(loaded.graph, o.holdout, o.reversal, o.method_cfg.seed);
    check_split(loaded.graph, split);
    std::string warning;
    EmbeddingSet e = embed(split.train, m, o.method_cfg, &warning);
    report.set("method", o.method);
    report.set("auc", eval_lp(e, split, score_mode(m)));
    report.set("scoring", score_mode(m) == ScoreMode::kSourceContext ? "source-context" : "source-source");
    report.set("test_positives", split.positives.size());
    report.set("test_negatives", split.negatives.size());
    report.set("reversed_negatives", split.reversed);
    if (!warning.empty()) report.set("warning", "rank_deficient");
  } else if (o.task == "eval-nc") {
    const Method m = require_method(o);
    check_compatibility(o, m);
    if (o.labels.empty()) throw UsageError("--labels is required for eval-nc");
    auto loaded = load(o);
    std::size_t skipped = 0;
    LabeledNodes labels = load_labels(o.labels, loaded.ids, &skipped);
    CrossValidation cv;
    if (m == Method::kMaxVote) {
      cv = cross_validate_max_vote(loaded.graph, labels, o.folds, o.method_cfg.seed);
    } else {
      EmbeddingSet e = embed(loaded.graph, m, o.method_cfg);
      LogRegConfig lr;
      lr.lambda = o.lambda;
      cv = cross_validate_logreg(node_features(e, m), labels, o.folds, o.method_cfg.seed, lr);
    }
    report.set("method", o.method);
    report.set("labeled_nodes", labels.labeled().size());
    report.set("label_count", labels.label_count);
    report.set("skipped_label_lines", skipped);
    report.set("micro_f1", cv.mean.micro);
    report.set("macro_f1", cv.mean.macro);
    for (std::size_t f = 0; f < cv.folds.size(); ++f) {
      report.set("fold" + std::to_string(f) + "_micro_f1", cv.folds[f].micro);
      report.set("fold" + std::to_string(f) + "_macro_f1", cv.folds[f].macro);
    }
  } else if (o.task == "verify") {
    auto loaded = load(o);
    VerifyOptions v;
    v.walk.walks_per_node = o.method_cfg.walks;
    v.walk.walk_length = o.method_cfg.walk_length;
    v.walk.window = o.method_cfg.window;
    v.walk.seed = o.method_cfg.seed;
    v.samples = o.verify_samples;
    ok = verify_graph(loaded.graph, v, report);
  } else {
    throw UsageError("unknown task '" + o.task + "'");
  }

  const fs::path report_path = out / (o.task + ".txt");
  report.write(report_path, resolved_config(o));
  std::cout << report.text();
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ctxembed: context-graph node embeddings, link prediction and node classification"};
  Options o;
  MethodConfig& m = o.method_cfg;
  std::uint64_t seed = 0;

  app.add_option("--task", o.task, "stats | split | embed | eval-lp | eval-nc | verify")
      ->required()
      ->check(CLI::IsMember({"stats", "split", "embed", "eval-lp", "eval-nc", "verify"}));
  app.add_option("--method", o.method,
                 "deepwalk | node2vec | line1 | line2 | line12 | app | verse | netmf | hope | maxvote");
  app.add_option("--input", o.input, "edge list: src dst [weight]");
  app.add_option("--labels", o.labels, "label file: node label");
  app.add_flag("--directed", o.directed, "treat the edge list as directed");
  app.add_option("--out", o.out, "output directory")->capture_default_str();
  app.add_option("--dim", m.dim, "embedding dimension")->capture_default_str();
  app.add_option("--walks", m.walks, "walks per node")->capture_default_str();
  app.add_option("--walk-len", m.walk_length, "nodes per walk")->capture_default_str();
  app.add_option("--window", m.window, "context window")->capture_default_str();
  app.add_option("--neg", m.negatives, "negative samples per pair")->capture_default_str();
  app.add_option("--alpha", m.alpha, "PPR restart probability")->capture_default_str();
  app.add_option("--p", m.p, "node2vec return parameter")->capture_default_str();
  app.add_option("--q", m.q, "node2vec in-out parameter")->capture_default_str();
  app.add_option("--beta", m.beta, "Katz decay")->capture_default_str();
  app.add_option("--samples", m.samples, "pair budget for line/app/verse (0 = 1000 per node)")
      ->capture_default_str();
  app.add_option("--epochs", m.epochs, "passes over the pair stream")->capture_default_str();
  app.add_option("--lr", m.learning_rate, "initial learning rate")->capture_default_str();
  app.add_option("--holdout", o.holdout, "fraction of edges held out")->capture_default_str();
  app.add_option("--reversal", o.reversal, "fraction of negatives built by reversal")
      ->capture_default_str();
  app.add_option("--folds", o.folds, "cross-validation folds")->capture_default_str();
  app.add_option("--lambda", o.lambda, "logistic-regression L2 penalty")->capture_default_str();
  app.add_option("--verify-samples", o.verify_samples, "Monte Carlo samples for verify")
      ->capture_default_str();
  auto* seed_opt = app.add_option("--seed", seed, "random seed (default: $CTXEMBED_SEED or 1)");
  app.add_option("--threads", m.threads, "training threads (0 = deterministic)")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  if (seed_opt->count() > 0) o.seed = seed;

  try {
    m.seed = resolve_seed(o);
    return run(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
