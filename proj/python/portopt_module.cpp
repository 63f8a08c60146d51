// Python bindings for the solver, evaluation, and generator entry points.
// Matroids cross the boundary as opaque handles; portfolios and estimates
// as plain dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "portopt/algorithms.hpp"
#include "portopt/errors.hpp"
#include "portopt/evaluation.hpp"
#include "portopt/instance_gen.hpp"
#include "portopt/instance_io.hpp"
#include "portopt/matroid.hpp"
#include "portopt/rng.hpp"
#include "portopt/stochastic.hpp"

namespace py = pybind11;
using namespace portopt;

namespace {

struct PyMatroid {
  std::shared_ptr<const Matroid> m;
};

ElementSet as_set(ElementSet ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

py::dict estimate_to_dict(const ValueEstimate& e) {
  py::dict d;
  d["mean"] = e.mean;
  d["ci"] = e.ci_half_width;
  d["n"] = e.n_samples;
  d["seed"] = e.seed;
  return d;
}

py::dict portfolio_to_dict(const Portfolio& p, const ValueEstimate* e) {
  py::dict d;
  d["sets"] = p.sets;
  d["algorithm"] = p.provenance.algorithm;
  d["prefix"] = p.provenance.prefix;
  d["seed"] = p.provenance.seed;
  if (e) d["estimate"] = estimate_to_dict(*e);
  return d;
}

py::dict instance_to_dict(const Instance& inst) {
  py::dict d;
  d["matroid"] = py::cast(PyMatroid{inst.matroid});
  d["probs"] = inst.probs;
  d["k"] = inst.k;
  return d;
}

}  // namespace

PYBIND11_MODULE(_portopt, mod) {
  mod.doc() = "portfolio optimization over matroids with random element values";

  py::class_<PyMatroid>(mod, "Matroid")
      .def_static(
          "uniform",
          [](int n, int r) { return PyMatroid{std::make_shared<UniformMatroid>(n, r)}; },
          py::arg("n"), py::arg("r"))
      .def_static(
          "graphic",
          [](int vertices, const std::vector<std::pair<int, int>>& edges) {
            return PyMatroid{std::make_shared<GraphicMatroid>(vertices, edges)};
          },
          py::arg("vertices"), py::arg("edges"))
      .def_static(
          "partition",
          [](std::vector<int> blocks, std::vector<int> capacities) {
            return PyMatroid{
                std::make_shared<PartitionMatroid>(std::move(blocks), std::move(capacities))};
          },
          py::arg("blocks"), py::arg("capacities"))
      .def_static(
          "explicit_sets",
          [](int n, const std::vector<ElementSet>& maximal) {
            return PyMatroid{std::make_shared<ExplicitMatroid>(n, maximal)};
          },
          py::arg("n"), py::arg("maximal_sets"))
      .def_property_readonly("n", [](const PyMatroid& s) { return s.m->ground_size(); })
      .def_property_readonly("rank", [](const PyMatroid& s) { return s.m->full_rank(); })
      .def(
          "is_independent",
          [](const PyMatroid& s, ElementSet ids) { return s.m->is_independent(as_set(std::move(ids))); },
          py::arg("ids"), "Independence of the given element ids, treated as a set.")
      .def(
          "rank_of",
          [](const PyMatroid& s, ElementSet ids) { return s.m->rank(as_set(std::move(ids))); },
          py::arg("ids"));

  mod.def(
      "solve",
      [](const PyMatroid& m, const std::vector<double>& probs, int k, std::uint64_t seed,
         long long samples, const std::string& algorithm, int ell_pad, int order_trials,
         double delta) {
        Instance inst{m.m, probs, k};
        SolverConfig cfg;
        cfg.seed = seed;
        cfg.eval_samples = samples;
        cfg.ell_pad = ell_pad;
        cfg.order_trials = order_trials;
        cfg.delta = delta;

        std::string algo = algorithm;
        if (algo == "auto") {
          algo = dynamic_cast<const UniformMatroid*>(m.m.get()) ? "uniform" : "general";
        }
        if (algo == "uniform") {
          SolveReport r = solve_uniform_report(inst, cfg);
          return portfolio_to_dict(r.best(), &r.best_estimate());
        }
        if (algo == "general") {
          SolveReport r = solve_general_report(inst, cfg);
          return portfolio_to_dict(r.best(), &r.best_estimate());
        }
        if (algo == "disjoint") {
          Portfolio p = disjoint_baseline(inst, cfg);
          EstimateOptions opts;
          opts.delta = delta;
          // Same evaluation seed the solvers use, so solve and baseline pair up.
          ValueEstimate e = estimate_value(p.sets, ProductDistribution(probs), cfg.eval_samples,
                                           derive_seed(seed, {2}), opts);
          return portfolio_to_dict(p, &e);
        }
        throw InvalidInput("unknown algorithm " + algorithm +
                           " (expected auto, uniform, general, or disjoint)");
      },
      py::arg("matroid"), py::arg("probs"), py::arg("k"), py::kw_only(),
      py::arg("seed") = std::uint64_t{0}, py::arg("samples") = 4000,
      py::arg("algorithm") = "auto", py::arg("ell_pad") = 0, py::arg("order_trials") = 400,
      py::arg("delta") = 0.05,
      "Best portfolio of k independent sets under the product distribution.");

  mod.def(
      "estimate_value",
      [](const std::vector<ElementSet>& sets, const std::vector<double>& probs,
         long long samples, std::uint64_t seed, double delta) {
        EstimateOptions opts;
        opts.delta = delta;
        return estimate_to_dict(
            estimate_value(sets, ProductDistribution(probs), samples, seed, opts));
      },
      py::arg("sets"), py::arg("probs"), py::arg("samples"), py::kw_only(),
      py::arg("seed") = std::uint64_t{0}, py::arg("delta") = 0.05,
      "Monte Carlo estimate of E[max over sets of the active-element count].");

  mod.def(
      "exact_value",
      [](const std::vector<ElementSet>& sets, const std::vector<double>& probs) {
        return exact_portfolio_value(sets, ProductDistribution(probs));
      },
      py::arg("sets"), py::arg("probs"),
      "Exact portfolio value; the sets' footprint must stay within 22 elements.");

  mod.def(
      "pb_pmf", [](const std::vector<double>& probs) { return pb_pmf(probs).pmf; },
      py::arg("probs"), "Distribution of the number of successes, as a list of length n+1.");

  mod.def(
      "expected_max_iid",
      [](const std::vector<double>& probs, int k) { return expected_max_iid(pb_pmf(probs), k); },
      py::arg("probs"), py::arg("k"),
      "E[max of k iid success counts] for the given trial probabilities.");

  mod.def(
      "gen_uniform_mixing", [](int k) { return instance_to_dict(gen_uniform_mixing(k)); },
      py::arg("k"));
  mod.def(
      "gen_clique_path", [](int n) { return instance_to_dict(gen_graphic_clique_path(n)); },
      py::arg("n"));
  mod.def(
      "gen_random",
      [](int n, int r, int k, const std::string& law, const std::string& kind,
         std::uint64_t seed) { return instance_to_dict(gen_random(n, r, k, law, kind, seed)); },
      py::arg("n"), py::arg("r"), py::arg("k"), py::kw_only(),
      py::arg("law") = "uniform01", py::arg("kind") = "uniform",
      py::arg("seed") = std::uint64_t{0});

  mod.def(
      "instance_to_json",
      [](const PyMatroid& m, const std::vector<double>& probs, int k) {
        return instance_to_json_text(Instance{m.m, probs, k});
      },
      py::arg("matroid"), py::arg("probs"), py::arg("k"));
  mod.def(
      "parse_instance_json",
      [](const std::string& text) { return instance_to_dict(parse_instance_text(text).instance); },
      py::arg("text"));
}
