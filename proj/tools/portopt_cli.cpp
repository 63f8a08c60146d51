// Batch frontend: solve instances, evaluate portfolios, generate benchmark
// inputs, and run the measurement experiments. All output is deterministic
// for a fixed seed; PORTFOLIO_THREADS only changes wall time.
//
// Exit codes: 2 malformed JSON or unknown experiment name, 3 infeasible k,
// 4 non-independent portfolio set, 1 any other error.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "portopt/algorithms.hpp"
#include "portopt/errors.hpp"
#include "portopt/evaluation.hpp"
#include "portopt/experiments.hpp"
#include "portopt/instance_gen.hpp"
#include "portopt/instance_io.hpp"
#include "portopt/matroid.hpp"
#include "portopt/rng.hpp"

namespace {

using namespace portopt;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + out_path);
  out << text;
}

long long overlap(const ElementSet& a, const ElementSet& b) {
  long long c = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++c;
      ++i;
      ++j;
    }
  }
  return c;
}

struct SolveFlags {
  std::string instance_path;
  std::string algorithm;
  std::string out;
  std::uint64_t seed = 0;
  long long samples = 0;  // 0: solver default
  int ell_pad = 0;
  int order_trials = 0;  // 0: solver default
  double delta = 0.05;
};

int cmd_solve(const SolveFlags& f) {
  InstanceDoc doc = parse_instance_text(read_file(f.instance_path));
  const Instance& inst = doc.instance;
  if (inst.k < 1) {
    std::cerr << "error: infeasible k: " << inst.k << " (a portfolio needs k >= 1 sets)\n";
    return 3;
  }

  SolverConfig config;
  config.seed = f.seed;
  if (f.samples > 0) config.eval_samples = f.samples;
  if (f.order_trials > 0) config.order_trials = f.order_trials;
  config.ell_pad = f.ell_pad;
  config.delta = f.delta;

  std::string algo = f.algorithm;
  if (algo.empty()) {
    algo = dynamic_cast<const UniformMatroid*>(inst.matroid.get()) ? "uniform" : "general";
  }

  Portfolio best;
  ValueEstimate estimate;
  if (algo == "uniform") {
    SolveReport rep = solve_uniform_report(inst, config);
    best = rep.best();
    estimate = rep.best_estimate();
  } else if (algo == "general") {
    SolveReport rep = solve_general_report(inst, config);
    best = rep.best();
    estimate = rep.best_estimate();
  } else if (algo == "disjoint") {
    best = disjoint_baseline(inst, config);
    EstimateOptions opts;
    opts.delta = config.delta;
    // Same evaluation seed the solvers score candidates with, so one seed
    // gives a paired comparison between solve and the disjoint baseline.
    estimate = estimate_value(best.sets, ProductDistribution(inst.probs), config.eval_samples,
                              derive_seed(config.seed, {2}), opts);
  } else if (algo == "greedy-explicit") {
    if (!doc.support) {
      throw InvalidInput("algorithm greedy-explicit needs a \"support\" block in the instance");
    }
    std::vector<ElementSet> solutions = enumerate_independent_sets(*inst.matroid, true);
    best = greedy_explicit(solutions, *doc.support, inst.k);
    // The support is finite, so the value is exact: zero-width interval.
    double value = 0.0;
    for (const auto& [active, prob] : doc.support->support) {
      long long top = 0;
      for (const auto& s : best.sets) top = std::max(top, overlap(s, active));
      value += prob * static_cast<double>(top);
    }
    estimate.mean = value;
    estimate.ci_half_width = 0.0;
    estimate.n_samples = 0;
    estimate.seed = config.seed;
  } else {
    std::cerr << "error: unknown algorithm " << algo
              << " (expected uniform, general, disjoint, or greedy-explicit)\n";
    return 2;
  }

  emit(portfolio_to_json_text(best, &estimate), f.out);
  return 0;
}

struct EvalFlags {
  std::string instance_path;
  std::string portfolio_path;
  std::string out;
  std::uint64_t seed = 0;
  long long samples = 10000;
  double delta = 0.05;
};

int cmd_eval(const EvalFlags& f) {
  InstanceDoc doc = parse_instance_text(read_file(f.instance_path));
  Portfolio p = parse_portfolio_text(read_file(f.portfolio_path));
  const Instance& inst = doc.instance;
  int n = inst.matroid->ground_size();

  for (std::size_t i = 0; i < p.sets.size(); ++i) {
    ElementSet s = p.sets[i];
    std::sort(s.begin(), s.end());
    const char* why = nullptr;
    if (!s.empty() && (s.front() < 0 || s.back() >= n)) {
      why = "has an element id outside the ground set";
    } else if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      why = "repeats an element id";
    } else if (!inst.matroid->is_independent(s)) {
      why = "is dependent in the instance matroid";
    }
    if (why) {
      std::cerr << "error: set " << i << " " << why << "\n";
      return 4;
    }
    p.sets[i] = std::move(s);
  }

  ProductDistribution d(inst.probs);
  EstimateOptions opts;
  opts.delta = f.delta;
  ValueEstimate est = estimate_value(p.sets, d, f.samples, f.seed, opts);

  nlohmann::json out{{"estimate",
                      {{"mean", est.mean},
                       {"ci", est.ci_half_width},
                       {"n", est.n_samples},
                       {"seed", est.seed}}}};
  // Exact value is available whenever the portfolio touches few enough
  // elements to enumerate their active subsets.
  try {
    out["exact"] = exact_portfolio_value(p.sets, d);
  } catch (const CapacityError&) {
  }
  emit(out.dump(2) + "\n", f.out);
  return 0;
}

struct GenFlags {
  std::string name;
  std::string out;
  std::string law = "uniform01";
  std::string kind = "uniform";
  std::uint64_t seed = 0;
  int n = 0;
  int r = 0;
  int k = 0;
};

int cmd_gen(const GenFlags& f) {
  if (f.name == "uniform-mixing") {
    emit(instance_to_json_text(gen_uniform_mixing(f.k)), f.out);
  } else if (f.name == "clique-path") {
    emit(instance_to_json_text(gen_graphic_clique_path(f.n)), f.out);
  } else if (f.name == "random") {
    emit(instance_to_json_text(gen_random(f.n, f.r, f.k, f.law, f.kind, f.seed)), f.out);
  } else if (f.name == "batch-portfolio") {
    // Emits a portfolio document, not an instance: the batched counterpart
    // to the uniform-mixing instance of the same k.
    Portfolio p = gen_batch_portfolio(f.k);
    emit(portfolio_to_json_text(p, nullptr), f.out);
  } else {
    std::cerr << "error: unknown generator " << f.name
              << " (expected uniform-mixing, clique-path, random, or batch-portfolio)\n";
    return 2;
  }
  return 0;
}

struct ExperimentFlags {
  std::string name;
  std::string out;
  std::uint64_t seed = 0;
  long long samples = 100000;
  int k = 256;
  int count = 50;
  int instances = 20;
  int trials = 0;  // 0: per-experiment default
  bool json_stdout = false;
};

int cmd_experiment(const ExperimentFlags& f) {
  std::string json_text;
  std::string text;
  if (f.name == "crs-retention") {
    int trials = f.trials > 0 ? f.trials : 4000;
    RetentionReport r = run_crs_retention(f.instances, trials, f.seed);
    json_text = to_json_text(r);
    text = to_text(r);
  } else if (f.name == "ratio-sweep") {
    RatioSweepReport r = run_ratio_sweep(f.count, f.seed);
    json_text = to_json_text(r);
    text = to_text(r);
  } else if (f.name == "mixing-counterexample") {
    MixingReport r = run_mixing_counterexample(f.k, f.samples, f.seed);
    json_text = to_json_text(r);
    text = to_text(r);
  } else if (f.name == "lemma-suite") {
    int trials = f.trials > 0 ? f.trials : 200;
    std::vector<LemmaCheck> r = run_lemma_suite(trials, f.seed);
    json_text = to_json_text(r);
    text = to_text(r);
  } else {
    std::cerr << "error: unknown experiment " << f.name
              << " (expected crs-retention, ratio-sweep, mixing-counterexample, or lemma-suite)\n";
    return 2;
  }

  std::cout << (f.json_stdout ? json_text : text);
  if (!f.out.empty()) emit(json_text, f.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"portfolio optimization over matroids with random element values"};
  app.require_subcommand(1);

  SolveFlags sf;
  CLI::App* solve = app.add_subcommand("solve", "compute a k-set portfolio for an instance");
  solve->add_option("instance", sf.instance_path, "instance JSON file")->required();
  solve->add_option("--seed", sf.seed, "run seed");
  solve->add_option("--samples", sf.samples, "Monte Carlo budget per candidate");
  solve->add_option("--algorithm", sf.algorithm,
                    "uniform | general | disjoint | greedy-explicit (default: by matroid kind)");
  solve->add_option("--out", sf.out, "output file (default: stdout)");
  solve->add_option("--ell-pad", sf.ell_pad, "parallel copies per element before base extraction");
  solve->add_option("--order-trials", sf.order_trials, "per-step trials when fitting CRS orders");
  solve->add_option("--delta", sf.delta, "confidence parameter for interval widths");

  EvalFlags ef;
  CLI::App* eval = app.add_subcommand("eval", "estimate the value of a portfolio on an instance");
  eval->add_option("instance", ef.instance_path, "instance JSON file")->required();
  eval->add_option("portfolio", ef.portfolio_path, "portfolio JSON file")->required();
  eval->add_option("--seed", ef.seed, "run seed");
  eval->add_option("--samples", ef.samples, "Monte Carlo sample count");
  eval->add_option("--out", ef.out, "output file (default: stdout)");
  eval->add_option("--delta", ef.delta, "confidence parameter for interval widths");

  GenFlags gf;
  CLI::App* gen = app.add_subcommand("gen", "generate a benchmark instance or portfolio");
  gen->add_option("name", gf.name, "uniform-mixing | clique-path | random | batch-portfolio")
      ->required();
  gen->add_option("--n", gf.n, "ground set size (clique-path: vertex count)");
  gen->add_option("--r", gf.r, "rank (random)");
  gen->add_option("--k", gf.k, "portfolio size (uniform-mixing, batch-portfolio, random)");
  gen->add_option("--law", gf.law, "probability law for random: uniform01 | half | small");
  gen->add_option("--kind", gf.kind, "matroid kind for random: uniform | graphic | partition");
  gen->add_option("--seed", gf.seed, "generator seed (random)");
  gen->add_option("--out", gf.out, "output file (default: stdout)");

  ExperimentFlags xf;
  CLI::App* experiment = app.add_subcommand("experiment", "run a measurement suite");
  experiment
      ->add_option("name", xf.name,
                   "crs-retention | ratio-sweep | mixing-counterexample | lemma-suite")
      ->required();
  experiment->add_option("--seed", xf.seed, "run seed");
  experiment->add_option("--samples", xf.samples, "samples per portfolio (mixing-counterexample)");
  experiment->add_option("--k", xf.k, "instance scale (mixing-counterexample)");
  experiment->add_option("--count", xf.count, "instance count (ratio-sweep)");
  experiment->add_option("--instances", xf.instances, "instance count (crs-retention)");
  experiment->add_option("--trials", xf.trials,
                         "trials per strategy (crs-retention) or per property (lemma-suite)");
  experiment->add_flag("--json", xf.json_stdout, "print the JSON report instead of text");
  experiment->add_option("--out", xf.out, "also write the JSON report to a file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(sf);
    if (eval->parsed()) return cmd_eval(ef);
    if (gen->parsed()) return cmd_gen(gf);
    return cmd_experiment(xf);
  } catch (const MalformedJson& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
