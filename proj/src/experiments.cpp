#include "portopt/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "portopt/errors.hpp"
#include "portopt/instance_gen.hpp"

namespace portopt {

namespace {

using nlohmann::json;

void tally_run(const Matroid& m, const SetSampler& sampler, int instance_index,
               const char* strategy, int trials, std::uint64_t seed,
               RetentionReport& report) {
  Rng order_rng(derive_seed(seed, {1}));
  CRSOrder order = compute_order(m, sampler, 120, order_rng);

  int n = m.ground_size();
  std::vector<long long> appeared(n, 0), kept(n, 0);
  Rng rng(derive_seed(seed, {2}));
  for (int t = 0; t < trials; ++t) {
    ElementSet r_set = sampler.draw(rng);
    ElementSet out = resolve(m, order, r_set, rng);
    ++report.resolve_calls;
    for (int e : r_set) ++appeared[e];
    for (int e : out) ++kept[e];
  }

  for (int e = 0; e < n; ++e) {
    if (appeared[e] < report.min_events) continue;
    RetentionElement row;
    row.instance_index = instance_index;
    row.strategy = strategy;
    row.element = e;
    row.appearances = appeared[e];
    row.retained = kept[e];
    row.ratio = static_cast<double>(kept[e]) / static_cast<double>(appeared[e]);
    double sigma = std::sqrt(0.125 * 0.875 / static_cast<double>(appeared[e]));
    row.floor_bound = 0.125 - 3.0 * sigma;
    double margin = row.ratio - row.floor_bound;
    if (report.elements_checked == 0 || margin < report.min_margin) {
      report.min_margin = margin;
      report.worst = row;
    }
    ++report.elements_checked;
    if (row.ratio < row.floor_bound) ++report.failures;
  }
  ++report.runs;
}

}  // namespace

RetentionReport run_crs_retention(int instances, int trials_per_strategy,
                                  std::uint64_t seed) {
  require(instances >= 1, "need at least one instance");
  require(trials_per_strategy >= 1, "need at least one trial");
  RetentionReport report;
  report.instances = instances;

  for (int i = 0; i < instances; ++i) {
    const char* kind = (i % 2 == 0) ? "uniform" : "graphic";
    int n = 10 + (i * 7) % 31;  // 10..40
    int r = 2 + i % 5;          // 2..6
    Instance inst = gen_random(n, r, 1, "uniform01", kind,
                               derive_seed(seed, {4, static_cast<std::uint64_t>(i)}));
    BaseOrdering ordering = build_base_ordering(inst.matroid, inst.probs, 2);
    int bases = static_cast<int>(ordering.bases.size());
    if (bases < 2) continue;
    int ell = std::min(3, bases - 1);
    const Matroid& pm = *ordering.matroid;

    ElementSet prefix;
    for (int b = 0; b < ell; ++b) {
      prefix.insert(prefix.end(), ordering.bases[b].begin(), ordering.bases[b].end());
    }
    std::sort(prefix.begin(), prefix.end());
    PrefixUniformSampler prefix_sampler(prefix, pm.full_rank(), pm.ground_size());
    tally_run(pm, prefix_sampler, i, "prefix", trials_per_strategy,
              derive_seed(seed, {5, static_cast<std::uint64_t>(i)}), report);

    ColumnDecomposition decomp = column_decomposition(ordering, ell);
    OnePerColumnSampler column_sampler(decomp.columns, pm.ground_size());
    tally_run(pm, column_sampler, i, "column", trials_per_strategy,
              derive_seed(seed, {6, static_cast<std::uint64_t>(i)}), report);
  }
  return report;
}

RatioSweepReport run_ratio_sweep(int count, std::uint64_t seed) {
  require(count >= 1, "need at least one case");
  RatioSweepReport report;
  const char* kinds[] = {"uniform", "graphic", "partition"};

  for (int i = 0; i < count; ++i) {
    std::uint64_t case_seed = derive_seed(seed, {7, static_cast<std::uint64_t>(i)});
    Rng rng(case_seed);
    int n = 4 + static_cast<int>(next_below(rng, 5));               // 4..8
    int r = 1 + static_cast<int>(next_below(rng, 3));               // 1..3
    int k = 1 + static_cast<int>(next_below(rng, 3));               // 1..3
    const char* kind = kinds[i % 3];
    Instance inst = gen_random(n, r, k, "uniform01", kind, case_seed);
    ProductDistribution d(inst.probs);

    BruteForceResult opt = optimal_portfolio_bruteforce(*inst.matroid, d, k);
    SolverConfig cfg;
    cfg.seed = case_seed;
    cfg.eval_samples = 2000;
    cfg.order_trials = 120;
    Portfolio got = solve_general(inst, cfg);
    double achieved = exact_portfolio_value(got.sets, d);

    RatioCase row;
    row.seed = case_seed;
    row.kind = kind;
    row.n = n;
    row.r = r;
    row.k = k;
    row.opt = opt.value;
    row.achieved = achieved;
    row.ratio = opt.value > 1e-12 ? achieved / opt.value : 1.0;
    report.cases.push_back(std::move(row));
  }

  std::vector<double> ratios;
  double sum = 0.0;
  for (const auto& c : report.cases) {
    ratios.push_back(c.ratio);
    sum += c.ratio;
  }
  std::sort(ratios.begin(), ratios.end());
  report.min_ratio = ratios.front();
  std::size_t mid = ratios.size() / 2;
  report.median_ratio = ratios.size() % 2 == 1
                            ? ratios[mid]
                            : 0.5 * (ratios[mid - 1] + ratios[mid]);
  report.mean_ratio = sum / static_cast<double>(ratios.size());
  return report;
}

MixingReport run_mixing_counterexample(int k, long long samples, std::uint64_t seed) {
  Instance inst = gen_uniform_mixing(k);
  ProductDistribution d(inst.probs);
  Portfolio batch = gen_batch_portfolio(k);
  SolverConfig cfg;
  cfg.seed = seed;
  Portfolio disjoint = disjoint_baseline(inst, cfg);

  std::uint64_t eval_seed = derive_seed(seed, {8});
  ValueEstimate vb = estimate_value(batch.sets, d, samples, eval_seed);
  ValueEstimate vd = estimate_value(disjoint.sets, d, samples, eval_seed);

  MixingReport report;
  report.k = k;
  report.samples = samples;
  report.batch_mean = vb.mean;
  report.batch_hoeffding_ci = vb.ci_half_width;
  report.batch_clt_ci = 1.96 * std::sqrt(vb.variance / static_cast<double>(samples));
  report.disjoint_mean = vd.mean;
  report.disjoint_hoeffding_ci = vd.ci_half_width;
  report.disjoint_clt_ci =
      1.96 * std::sqrt(vd.variance / static_cast<double>(samples));
  report.batch_separated_hoeffding =
      vb.mean - vb.ci_half_width > vd.mean + vd.ci_half_width;
  report.batch_separated_clt =
      vb.mean - report.batch_clt_ci > vd.mean + report.disjoint_clt_ci;
  return report;
}

std::vector<LemmaCheck> run_lemma_suite(int per_property, std::uint64_t seed) {
  require(per_property >= 1, "need at least one trial per property");
  std::vector<LemmaCheck> out;
  Rng rng(derive_seed(seed, {9}));
  const double eps = 1e-9;

  {
    // E[max of k] is monotone when every trial probability rises.
    LemmaCheck c{"pb-max-monotone", per_property, 0};
    for (int t = 0; t < per_property; ++t) {
      int n = 1 + static_cast<int>(next_below(rng, 10));
      int k = 1 + static_cast<int>(next_below(rng, 8));
      std::vector<double> p(n), q(n);
      for (int i = 0; i < n; ++i) {
        p[i] = next_double(rng);
        q[i] = p[i] * next_double(rng);
      }
      double hi = expected_max_iid(pb_pmf(p), k);
      double lo = expected_max_iid(pb_pmf(q), k);
      if (hi < lo - eps) ++c.failures;
    }
    out.push_back(c);
  }
  {
    // Scaling all probabilities by c in [0,1] keeps at least c of the value.
    LemmaCheck c{"pb-max-scaling", per_property, 0};
    for (int t = 0; t < per_property; ++t) {
      int n = 1 + static_cast<int>(next_below(rng, 10));
      int k = 1 + static_cast<int>(next_below(rng, 8));
      double scale = next_double(rng);
      std::vector<double> p(n), ps(n);
      for (int i = 0; i < n; ++i) {
        p[i] = next_double(rng);
        ps[i] = scale * p[i];
      }
      double full = expected_max_iid(pb_pmf(p), k);
      double scaled = expected_max_iid(pb_pmf(ps), k);
      if (scaled < scale * full - eps) ++c.failures;
    }
    out.push_back(c);
  }
  {
    // Averaging the parameters never decreases E[max of k]: equal-parameter
    // trials have the largest spread, hence the largest expected maximum.
    LemmaCheck c{"pb-max-averaging", per_property, 0};
    for (int t = 0; t < per_property; ++t) {
      int n = 1 + static_cast<int>(next_below(rng, 10));
      int k = 1 + static_cast<int>(next_below(rng, 8));
      std::vector<double> p(n);
      double mean = 0.0;
      for (int i = 0; i < n; ++i) {
        p[i] = next_double(rng);
        mean += p[i];
      }
      mean /= n;
      double general = expected_max_iid(pb_pmf(p), k);
      double averaged = expected_max_iid(pb_pmf(std::vector<double>(n, mean)), k);
      if (averaged < general - eps) ++c.failures;
    }
    out.push_back(c);
  }
  {
    // m balls into n bins: E[nonempty bins] >= min(m/2, 3n/10), closed form.
    LemmaCheck c{"balls-and-bins-floor", 0, 0};
    for (int m = 1; m <= 20; ++m) {
      for (int n = 1; n <= 20; ++n) {
        ++c.trials;
        double nonempty = n * (1.0 - std::pow(1.0 - 1.0 / n, m));
        double floor_bound = std::min(m / 2.0, 0.3 * n);
        if (nonempty < floor_bound - eps) ++c.failures;
      }
    }
    out.push_back(c);
  }
  {
    // Max of k >= 4 iid binomials with E[max] >= 30 lands above E[max]/6
    // with probability at least 1 - 1/e; checked via the exact cdf.
    LemmaCheck c{"max-binomial-concentration", per_property, 0};
    for (int t = 0; t < per_property; ++t) {
      int k = 4 + static_cast<int>(next_below(rng, 61));
      double mu = 30.0 + 30.0 * next_double(rng);
      int n = static_cast<int>(mu) + 1 + static_cast<int>(next_below(rng, 1000));
      double p = mu / n;
      PBDistribution pb = pb_pmf(std::vector<double>(n, p));
      double emax = expected_max_iid(pb, k);
      if (emax < 30.0) {
        ++c.failures;  // parameterization out of the lemma's range; flag it
        continue;
      }
      double threshold = emax / 6.0;
      double below = 0.0;  // P(single binomial < threshold)
      for (int x = 0; x < static_cast<int>(pb.pmf.size()); ++x) {
        if (x < threshold) below += pb.pmf[x];
      }
      double hit = 1.0 - std::pow(below, k);
      if (hit < 1.0 - 1.0 / std::exp(1.0) - eps) ++c.failures;
    }
    out.push_back(c);
  }
  return out;
}

std::string to_json_text(const RetentionReport& r) {
  json j{{"instances", r.instances},
         {"runs", r.runs},
         {"resolve_calls", r.resolve_calls},
         {"elements_checked", r.elements_checked},
         {"min_events", r.min_events},
         {"failures", r.failures},
         {"min_margin", r.min_margin},
         {"worst",
          {{"instance", r.worst.instance_index},
           {"strategy", r.worst.strategy},
           {"element", r.worst.element},
           {"appearances", r.worst.appearances},
           {"retained", r.worst.retained},
           {"ratio", r.worst.ratio},
           {"floor_bound", r.worst.floor_bound}}}};
  return j.dump(2) + "\n";
}

std::string to_json_text(const RatioSweepReport& r) {
  json cases = json::array();
  for (const auto& c : r.cases) {
    cases.push_back({{"seed", c.seed},
                     {"kind", c.kind},
                     {"n", c.n},
                     {"r", c.r},
                     {"k", c.k},
                     {"opt", c.opt},
                     {"achieved", c.achieved},
                     {"ratio", c.ratio}});
  }
  json j{{"min_ratio", r.min_ratio},
         {"median_ratio", r.median_ratio},
         {"mean_ratio", r.mean_ratio},
         {"cases", std::move(cases)}};
  return j.dump(2) + "\n";
}

std::string to_json_text(const MixingReport& r) {
  json j{{"k", r.k},
         {"samples", r.samples},
         {"batch",
          {{"mean", r.batch_mean},
           {"hoeffding_ci", r.batch_hoeffding_ci},
           {"clt_ci", r.batch_clt_ci}}},
         {"disjoint",
          {{"mean", r.disjoint_mean},
           {"hoeffding_ci", r.disjoint_hoeffding_ci},
           {"clt_ci", r.disjoint_clt_ci}}},
         {"batch_separated_hoeffding", r.batch_separated_hoeffding},
         {"batch_separated_clt", r.batch_separated_clt}};
  return j.dump(2) + "\n";
}

std::string to_json_text(const std::vector<LemmaCheck>& r) {
  json rows = json::array();
  for (const auto& c : r) {
    rows.push_back({{"name", c.name}, {"trials", c.trials}, {"failures", c.failures}});
  }
  json j{{"properties", std::move(rows)}};
  return j.dump(2) + "\n";
}

std::string to_text(const RetentionReport& r) {
  std::ostringstream os;
  os << "crs retention: " << r.instances << " instances, " << r.runs << " runs, "
     << r.resolve_calls << " resolve calls\n"
     << "elements with >= " << r.min_events << " events: " << r.elements_checked
     << ", failures: " << r.failures << "\n"
     << "worst margin " << r.min_margin << " (instance " << r.worst.instance_index
     << ", " << r.worst.strategy << ", element " << r.worst.element << ": "
     << r.worst.retained << "/" << r.worst.appearances << " = " << r.worst.ratio
     << " vs floor " << r.worst.floor_bound << ")\n";
  return os.str();
}

std::string to_text(const RatioSweepReport& r) {
  std::ostringstream os;
  os << "ratio sweep over " << r.cases.size() << " instances\n"
     << "min " << r.min_ratio << ", median " << r.median_ratio << ", mean "
     << r.mean_ratio << "\n";
  for (const auto& c : r.cases) {
    os << "  seed " << c.seed << " " << c.kind << " n=" << c.n << " r=" << c.r
       << " k=" << c.k << ": " << c.achieved << " / " << c.opt << " = " << c.ratio
       << "\n";
  }
  return os.str();
}

std::string to_text(const MixingReport& r) {
  std::ostringstream os;
  os << "mixing counterexample at k=" << r.k << ", " << r.samples
     << " samples per portfolio\n"
     << "batch:    " << r.batch_mean << " +- " << r.batch_hoeffding_ci
     << " (hoeffding), +- " << r.batch_clt_ci << " (clt)\n"
     << "disjoint: " << r.disjoint_mean << " +- " << r.disjoint_hoeffding_ci
     << " (hoeffding), +- " << r.disjoint_clt_ci << " (clt)\n"
     << "batch separated above disjoint: hoeffding="
     << (r.batch_separated_hoeffding ? "yes" : "no")
     << ", clt=" << (r.batch_separated_clt ? "yes" : "no") << "\n";
  return os.str();
}

std::string to_text(const std::vector<LemmaCheck>& r) {
  std::ostringstream os;
  os << "lemma suite\n";
  for (const auto& c : r) {
    os << "  " << c.name << ": " << c.trials << " trials, " << c.failures
       << " failures -> " << (c.failures == 0 ? "pass" : "FAIL") << "\n";
  }
  return os.str();
}

}  // namespace portopt
