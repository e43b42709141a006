// Python bindings for the ctxembed core.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ctxembed/errors.hpp"
#include "ctxembed/eval.hpp"
#include "ctxembed/methods.hpp"
#include "ctxembed/mf.hpp"
#include "ctxembed/profile.hpp"
#include "ctxembed/report.hpp"
#include "ctxembed/synth.hpp"
#include "ctxembed/verify.hpp"

namespace py = pybind11;
using namespace ctxembed;

namespace {

using RowMatrix = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

RowMatrix to_matrix(const std::vector<float>& data, std::size_t nodes, std::size_t dim) {
  return Eigen::Map<const RowMatrix>(data.data(), static_cast<Eigen::Index>(nodes),
                                     static_cast<Eigen::Index>(dim));
}

MethodConfig method_config(const py::kwargs& kw) {
  MethodConfig c;
  for (auto [key, value] : kw) {
    const std::string k = py::str(key);
    if (k == "dim") c.dim = value.cast<std::uint32_t>();
    else if (k == "walks") c.walks = value.cast<std::uint32_t>();
    else if (k == "walk_length") c.walk_length = value.cast<std::uint32_t>();
    else if (k == "window") c.window = value.cast<std::uint32_t>();
    else if (k == "negatives") c.negatives = value.cast<std::uint32_t>();
    else if (k == "p") c.p = value.cast<double>();
    else if (k == "q") c.q = value.cast<double>();
    else if (k == "alpha") c.alpha = value.cast<double>();
    else if (k == "beta") c.beta = value.cast<double>();
    else if (k == "samples") c.samples = value.cast<std::uint64_t>();
    else if (k == "epochs") c.epochs = value.cast<std::uint32_t>();
    else if (k == "lr") c.learning_rate = value.cast<double>();
    else if (k == "seed") c.seed = value.cast<std::uint64_t>();
    else if (k == "threads") c.threads = value.cast<std::uint32_t>();
    else throw py::type_error("unknown method option '" + k + "'");
  }
  return c;
}

Method method_from(const std::string& name) {
  auto m = parse_method(name);
  if (!m) throw py::value_error("unknown method '" + name + "'");
  return *m;
}

py::object metric_to_py(const MetricValue& v) {
  return std::visit([](const auto& x) -> py::object { return py::cast(x); }, v);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Node embeddings from context graphs";
  m.attr("__version__") = std::string(kVersion);

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<SplitError>(m, "SplitError", base.ptr());

  py::class_<Graph>(m, "Graph")
      .def_static(
          "from_edges",
          [](std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& pairs, bool directed) {
            std::vector<Edge> edges;
            edges.reserve(pairs.size());
            for (auto [u, v] : pairs) edges.push_back({u, v});
            return Graph::from_edges(n, edges, directed);
          },
          py::arg("node_count"), py::arg("edges"), py::arg("directed") = false)
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def_property_readonly("directed", &Graph::directed)
      .def("has_edge", &Graph::has_edge)
      .def("edges", [](const Graph& g) {
        std::vector<std::pair<NodeId, NodeId>> out;
        for (const Edge& e : g.edges()) out.emplace_back(e.src, e.dst);
        return out;
      });

  m.def(
      "load_edge_list",
      [](const std::filesystem::path& path, bool directed) {
        LoadedGraph l = load_edge_list(path, directed);
        std::vector<std::string> names;
        for (NodeId u = 0; u < l.ids.size(); ++u) names.push_back(l.ids.name(u));
        return py::make_tuple(std::move(l.graph), names);
      },
      py::arg("path"), py::arg("directed") = false,
      "Returns (graph, original node names by dense id).");

  m.def("layered_dag", &layered_dag, py::arg("n"), py::arg("layers"), py::arg("out_degree"),
        py::arg("min_in_degree"), py::arg("seed") = 1);
  m.def("erdos_renyi", &erdos_renyi, py::arg("n"), py::arg("p"), py::arg("directed") = false,
        py::arg("seed") = 1);

  m.def("reciprocity", &reciprocity);
  m.def("clustering_coefficient", &clustering_coefficient);
  m.def("transitivity", &transitivity);
  m.def("spectral_separation", [](const Graph& g) { return spectral_separation(g); });
  m.def("diameter", [](const Graph& g) { return diameter(g).hops; });
  m.def("profile", [](const Graph& g) {
    GraphProfile p = profile_graph(g);
    py::dict d;
    d["nodes"] = p.nodes;
    d["edges"] = p.edges;
    d["directed"] = p.directed;
    d["reciprocity"] = p.reciprocity ? py::cast(*p.reciprocity) : py::none();
    d["diameter"] = p.diameter.hops;
    d["diameter_approximate"] = p.diameter.approximate;
    d["clustering"] = p.clustering;
    d["transitivity"] = p.transitivity;
    d["spectral_separation"] = p.spectral_separation;
    return d;
  });

  m.def("methods", [] {
    std::vector<std::string> names;
    for (const auto& t : all_methods()) names.emplace_back(t.name);
    return names;
  });

  m.def(
      "embed",
      [](const Graph& g, const std::string& method, py::kwargs kw) {
        const Method meth = method_from(method);
        const MethodConfig cfg = method_config(kw);
        EmbeddingSet e;
        {
          py::gil_scoped_release release;
          e = embed(g, meth, cfg);
        }
        py::object context = py::none();
        if (e.has_context()) context = py::cast(to_matrix(e.context_data(), e.nodes(), e.dim()));
        return py::make_tuple(to_matrix(e.source_data(), e.nodes(), e.dim()), context);
      },
      py::arg("graph"), py::arg("method"),
      "Trains `method`; returns (source, context) arrays, context None when not learned.");

  m.def(
      "link_prediction",
      [](const Graph& g, const std::string& method, double holdout, double reversal, py::kwargs kw) {
        const Method meth = method_from(method);
        const MethodConfig cfg = method_config(kw);
        py::gil_scoped_release release;
        LinkSplit split = make_lp_split(g, holdout, reversal, cfg.seed);
        check_split(g, split);
        return eval_lp(embed(split.train, meth, cfg), split, score_mode(meth));
      },
      py::arg("graph"), py::arg("method"), py::arg("holdout") = 0.5, py::arg("reversal") = 0.0,
      "Split, train on the residual graph and return the test ROC-AUC.");

  m.def("roc_auc", [](const std::vector<double>& pos, const std::vector<double>& neg) {
    return roc_auc(pos, neg);
  });

  m.def(
      "factorize",
      [](const Eigen::MatrixXd& c, std::uint32_t dim, std::uint64_t seed) {
        FactorizeOptions o;
        o.dim = dim;
        o.seed = seed;
        FactorizationResult r = factorize(c, o);
        return py::make_tuple(r.source, r.context, r.singular_values, *r.residual);
      },
      py::arg("matrix"), py::arg("dim"), py::arg("seed") = 1,
      "Rank-`dim` factorization; returns (source, context, singular values, residual).");

  m.def(
      "verify",
      [](const Graph& g, std::uint64_t samples, std::uint64_t seed) {
        VerifyOptions o;
        o.samples = samples;
        o.walk.seed = seed;
        Report report;
        const bool ok = verify_graph(g, o, report);
        py::dict d;
        for (const auto& [k, v] : report.values()) d[py::str(k)] = metric_to_py(v);
        return py::make_tuple(ok, d);
      },
      py::arg("graph"), py::arg("samples") = 1000000, py::arg("seed") = 1);
}
