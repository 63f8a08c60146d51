#include "portopt/algorithms.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

#include "portopt/errors.hpp"
#include "portopt/verify.hpp"

namespace portopt {

namespace {

int env_workers(int requested, std::size_t jobs) {
  int t = requested;
  if (t <= 0) {
    if (const char* env = std::getenv("PORTFOLIO_THREADS")) t = std::atoi(env);
  }
  if (t <= 0) t = static_cast<int>(std::thread::hardware_concurrency());
  if (t <= 0) t = 1;
  return static_cast<int>(std::min<std::size_t>(t, std::max<std::size_t>(jobs, 1)));
}

double sum_probs(const ElementSet& s, const std::vector<double>& probs) {
  double out = 0.0;
  for (int e : s) out += probs[e];
  return out;
}

ElementSet map_set_to_original(const ElementSet& s, const std::vector<int>& parent) {
  ElementSet out;
  out.reserve(s.size());
  for (int e : s) out.push_back(parent[e]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void map_portfolio_to_original(Portfolio& p, const std::vector<int>& parent) {
  for (auto& s : p.sets) s = map_set_to_original(s, parent);
}

// Estimates every candidate under the same seed (common random numbers),
// fanning out across candidates; per-candidate estimation is single-threaded
// so results do not depend on the worker count.
std::vector<ValueEstimate> estimate_candidates(const std::vector<Portfolio>& candidates,
                                               const ProductDistribution& d,
                                               const SolverConfig& config,
                                               std::uint64_t eval_seed) {
  std::vector<ValueEstimate> out(candidates.size());
  EstimateOptions opts;
  opts.delta = config.delta;
  opts.threads = 1;
  int workers = env_workers(config.threads, candidates.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      out[i] = estimate_value(candidates[i].sets, d, config.eval_samples, eval_seed, opts);
    }
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < candidates.size();
           i = next.fetch_add(1)) {
        out[i] = estimate_value(candidates[i].sets, d, config.eval_samples, eval_seed, opts);
      }
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

SolveReport pick_best(std::vector<Portfolio> candidates, const ProductDistribution& d,
                      const SolverConfig& config) {
  std::uint64_t eval_seed = derive_seed(config.seed, {2});
  std::vector<ValueEstimate> estimates = estimate_candidates(candidates, d, config, eval_seed);

  SolveReport report;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    report.candidates.push_back({std::move(candidates[i]), estimates[i]});
  }
  report.best_index = 0;
  for (std::size_t i = 1; i < report.candidates.size(); ++i) {
    if (report.candidates[i].estimate.mean >
        report.candidates[report.best_index].estimate.mean) {
      report.best_index = static_cast<int>(i);
    }
  }
  return report;
}

Portfolio empty_portfolio(int k, const char* algorithm, std::uint64_t seed) {
  Portfolio p;
  p.sets.assign(k, {});
  p.provenance = {algorithm, -1, seed};
  return p;
}

}  // namespace

Portfolio portfolio_from_prefix(const ElementSet& prefix, int k, int r, Rng& rng) {
  require(!prefix.empty(), "prefix must be non-empty");
  require(k >= 0, "portfolio size must be nonnegative");
  require(r >= 0, "pick count must be nonnegative");
  Portfolio out;
  out.provenance.algorithm = "prefix-sample";
  for (int i = 0; i < k; ++i) {
    ElementSet s;
    for (int j = 0; j < r; ++j) s.push_back(prefix[next_below(rng, prefix.size())]);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    out.sets.push_back(std::move(s));
  }
  return out;
}

BaseOrdering build_base_ordering(std::shared_ptr<const Matroid> m,
                                 const std::vector<double>& probs, int ell_pad,
                                 int max_bases) {
  require(m != nullptr, "matroid must not be null");
  require(ell_pad >= 1, "padding factor must be at least 1");
  require(static_cast<int>(probs.size()) == m->ground_size(),
          "probability vector length must match ground size");

  Padding pad = pad_with_duplicates(std::move(m), probs, ell_pad);
  BaseOrdering out;
  out.matroid = pad.matroid;
  out.probs = std::move(pad.probs);
  out.parent = std::move(pad.parent);

  int r = out.matroid->full_rank();
  if (r == 0) return out;
  int pn = out.matroid->ground_size();
  long long cap = max_bases > 0 ? max_bases : (static_cast<long long>(pn) + r - 1) / r;

  ElementSet order(pn);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (out.probs[a] != out.probs[b]) return out.probs[a] > out.probs[b];
    return a < b;
  });

  std::vector<char> used(pn, 0);
  double prev = std::numeric_limits<double>::infinity();
  while (static_cast<long long>(out.bases.size()) < cap) {
    auto scan = out.matroid->make_scan();
    ElementSet base;
    for (int e : order) {
      if (used[e] || !scan->try_add(e)) continue;
      base.push_back(e);
      if (static_cast<int>(base.size()) == r) break;
    }
    if (static_cast<int>(base.size()) < r) break;
    for (int e : base) used[e] = 1;
    std::sort(base.begin(), base.end());
    double w = sum_probs(base, out.probs);
    check_invariant(w <= prev + 1e-9, "base expectations must be nonincreasing");
    prev = w;
    out.bases.push_back(std::move(base));
  }
  return out;
}

ColumnDecomposition column_decomposition(const BaseOrdering& ordering, int ell) {
  require(ell >= 1, "prefix length must be at least 1");
  require(static_cast<int>(ordering.bases.size()) >= ell + 1,
          "column decomposition needs at least " + std::to_string(ell + 1) +
              " extracted bases, have " + std::to_string(ordering.bases.size()));

  const Matroid& m = *ordering.matroid;
  const auto& probs = ordering.probs;
  int r = m.full_rank();

  ColumnDecomposition out;
  out.prefix_len = ell;
  out.next_base = ordering.bases[ell];
  std::sort(out.next_base.begin(), out.next_base.end(), [&](int a, int b) {
    if (probs[a] != probs[b]) return probs[a] > probs[b];
    return a < b;
  });
  double threshold = 10.0 / static_cast<double>(ell);
  out.high_count = 0;
  while (out.high_count < r && probs[out.next_base[out.high_count]] >= threshold) {
    ++out.high_count;
  }

  std::vector<ExchangeBijection> bijections;
  for (int i = 0; i < ell; ++i) {
    bijections.push_back(exchange_bijection(m, out.next_base, ordering.bases[i]));
  }

  out.columns.assign(r, ElementSet(ell));
  for (int j = 0; j < r; ++j) {
    for (int i = 0; i < ell; ++i) {
      out.columns[j][i] = bijections[i].image_of(out.next_base[j]);
    }
  }

  // Partition check: the columns together must be exactly the prefix bases.
  ElementSet collected;
  for (const auto& col : out.columns) collected.insert(collected.end(), col.begin(), col.end());
  std::sort(collected.begin(), collected.end());
  ElementSet prefix_elems;
  for (int i = 0; i < ell; ++i) {
    prefix_elems.insert(prefix_elems.end(), ordering.bases[i].begin(),
                        ordering.bases[i].end());
  }
  std::sort(prefix_elems.begin(), prefix_elems.end());
  check_invariant(collected == prefix_elems, "columns must partition the prefix bases");

  // Exchange validity: every promised swap re-verified against the oracle.
  for (int i = 0; i < ell; ++i) {
    verify_exchange_bijection(m, bijections[i]);
  }

  // Probability domination: greedy extraction makes every image at least as
  // likely as its preimage.
  for (int j = 0; j < r; ++j) {
    for (int i = 0; i < ell; ++i) {
      check_invariant(probs[out.columns[j][i]] >= probs[out.next_base[j]] - 1e-12,
                      "column image must dominate the preimage probability");
    }
  }
  return out;
}

Portfolio uniform_portfolio_general(const BaseOrdering& ordering, int ell, int k,
                                    const CRSOrder& crs_order, Rng& rng) {
  require(ell >= 1 && ell <= static_cast<int>(ordering.bases.size()),
          "prefix length out of range");
  const Matroid& m = *ordering.matroid;
  int r = m.full_rank();

  ElementSet prefix;
  for (int i = 0; i < ell; ++i) {
    prefix.insert(prefix.end(), ordering.bases[i].begin(), ordering.bases[i].end());
  }
  std::sort(prefix.begin(), prefix.end());
  require(!prefix.empty(), "prefix must be non-empty");

  PrefixUniformSampler sampler(prefix, r, m.ground_size());
  Portfolio out;
  out.provenance.algorithm = "uniform-prefix";
  out.provenance.prefix = ell;
  for (int i = 0; i < k; ++i) {
    out.sets.push_back(resolve(m, crs_order, sampler.draw(rng), rng));
  }
  return out;
}

Portfolio column_portfolio(const BaseOrdering& ordering, const ColumnDecomposition& decomp,
                           int k, const CRSOrder& crs_order, Rng& rng) {
  const Matroid& m = *ordering.matroid;
  OnePerColumnSampler sampler(decomp.columns, m.ground_size());
  Portfolio out;
  out.provenance.algorithm = "column";
  out.provenance.prefix = decomp.prefix_len;
  for (int i = 0; i < k; ++i) {
    out.sets.push_back(resolve(m, crs_order, sampler.draw(rng), rng));
  }
  return out;
}

SolveReport solve_uniform_report(const Instance& inst, const SolverConfig& config) {
  require(inst.matroid != nullptr, "matroid must not be null");
  require(dynamic_cast<const UniformMatroid*>(inst.matroid.get()) != nullptr,
          "this solver requires a uniform matroid");
  require(inst.k >= 1, "portfolio size must be at least 1");
  ProductDistribution d(inst.probs);
  require(static_cast<int>(inst.probs.size()) == inst.matroid->ground_size(),
          "probability vector length must match ground size");

  int n = inst.matroid->ground_size();
  int r = inst.matroid->full_rank();

  std::vector<Portfolio> candidates;
  if (n == 0) {
    candidates.push_back(empty_portfolio(inst.k, "uniform", config.seed));
  } else {
    ElementSet by_prob(n);
    std::iota(by_prob.begin(), by_prob.end(), 0);
    std::sort(by_prob.begin(), by_prob.end(), [&](int a, int b) {
      if (inst.probs[a] != inst.probs[b]) return inst.probs[a] > inst.probs[b];
      return a < b;
    });
    for (int i = 1; i <= n; ++i) {
      ElementSet prefix(by_prob.begin(), by_prob.begin() + i);
      Rng rng(derive_seed(config.seed, {1, static_cast<std::uint64_t>(i)}));
      Portfolio cand = portfolio_from_prefix(prefix, inst.k, r, rng);
      cand.provenance = {"uniform", i, config.seed};
      candidates.push_back(std::move(cand));
    }
  }

  SolveReport report = pick_best(std::move(candidates), d, config);
  assert_portfolio_valid(report.best(), *inst.matroid, inst.k);
  return report;
}

Portfolio solve_uniform(const Instance& inst, const SolverConfig& config) {
  return solve_uniform_report(inst, config).best();
}

SolveReport solve_general_report(const Instance& inst, const SolverConfig& config) {
  require(inst.matroid != nullptr, "matroid must not be null");
  require(inst.k >= 1, "portfolio size must be at least 1");
  ProductDistribution d(inst.probs);
  require(static_cast<int>(inst.probs.size()) == inst.matroid->ground_size(),
          "probability vector length must match ground size");

  int ell_pad = config.ell_pad > 0 ? config.ell_pad : std::max(inst.k, 2);
  BaseOrdering ordering =
      build_base_ordering(inst.matroid, inst.probs, ell_pad, config.max_bases);
  int bases = static_cast<int>(ordering.bases.size());

  std::vector<Portfolio> candidates;
  if (bases == 0) {
    candidates.push_back(empty_portfolio(inst.k, "disjoint", config.seed));
  } else {
    const Matroid& pm = *ordering.matroid;
    for (int ell = 1; ell < bases; ++ell) {
      ElementSet prefix;
      for (int i = 0; i < ell; ++i) {
        prefix.insert(prefix.end(), ordering.bases[i].begin(), ordering.bases[i].end());
      }
      std::sort(prefix.begin(), prefix.end());
      std::uint64_t l = static_cast<std::uint64_t>(ell);

      PrefixUniformSampler uniform_sampler(prefix, pm.full_rank(), pm.ground_size());
      Rng order_rng_u(derive_seed(config.seed, {10, l}));
      CRSOrder crs_u = compute_order(pm, uniform_sampler, config.order_trials, order_rng_u);
      Rng build_rng_u(derive_seed(config.seed, {11, l}));
      candidates.push_back(uniform_portfolio_general(ordering, ell, inst.k, crs_u, build_rng_u));

      ColumnDecomposition decomp = column_decomposition(ordering, ell);
      OnePerColumnSampler column_sampler(decomp.columns, pm.ground_size());
      Rng order_rng_c(derive_seed(config.seed, {12, l}));
      CRSOrder crs_c = compute_order(pm, column_sampler, config.order_trials, order_rng_c);
      Rng build_rng_c(derive_seed(config.seed, {13, l}));
      candidates.push_back(column_portfolio(ordering, decomp, inst.k, crs_c, build_rng_c));
    }

    Portfolio first_bases;
    first_bases.provenance = {"disjoint", -1, config.seed};
    for (int i = 0; i < inst.k; ++i) first_bases.sets.push_back(ordering.bases[i % bases]);
    candidates.push_back(std::move(first_bases));

    // Base-swap variants: replace each candidate's lowest-expectation set
    // with the top base.
    std::size_t plain = candidates.size();
    for (std::size_t c = 0; c < plain; ++c) {
      Portfolio variant = candidates[c];
      std::size_t worst = 0;
      double worst_sum = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < variant.sets.size(); ++i) {
        double s = sum_probs(variant.sets[i], ordering.probs);
        if (s < worst_sum) {
          worst_sum = s;
          worst = i;
        }
      }
      variant.sets[worst] = ordering.bases[0];
      variant.provenance.algorithm += "+swap";
      candidates.push_back(std::move(variant));
    }
  }

  for (auto& cand : candidates) {
    map_portfolio_to_original(cand, ordering.parent);
    cand.provenance.seed = config.seed;
  }

  SolveReport report = pick_best(std::move(candidates), d, config);
  assert_portfolio_valid(report.best(), *inst.matroid, inst.k);
  return report;
}

Portfolio solve_general(const Instance& inst, const SolverConfig& config) {
  return solve_general_report(inst, config).best();
}

Portfolio greedy_explicit(const std::vector<ElementSet>& solutions,
                          const ExplicitDistribution& d, int k) {
  require(!solutions.empty(), "solution list must be non-empty");
  require(solutions.size() <= 10000, "solution list limited to 10000 entries");
  require(k >= 1, "portfolio size must be at least 1");

  std::size_t outcomes = d.support.size();
  std::vector<std::vector<int>> count(solutions.size(), std::vector<int>(outcomes, 0));
  for (std::size_t s = 0; s < solutions.size(); ++s) {
    ElementSet sorted(solutions[s]);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t o = 0; o < outcomes; ++o) {
      const ElementSet& active = d.support[o].first;
      int c = 0;
      for (int e : sorted) {
        if (std::binary_search(active.begin(), active.end(), e)) ++c;
      }
      count[s][o] = c;
    }
  }

  Portfolio out;
  out.provenance.algorithm = "greedy-explicit";
  std::vector<int> cur(outcomes, 0);
  for (int it = 0; it < k; ++it) {
    double best_gain = -1.0;
    std::size_t best_s = 0;
    for (std::size_t s = 0; s < solutions.size(); ++s) {
      double gain = 0.0;
      for (std::size_t o = 0; o < outcomes; ++o) {
        if (count[s][o] > cur[o]) gain += d.support[o].second * (count[s][o] - cur[o]);
      }
      if (gain > best_gain) {
        best_gain = gain;
        best_s = s;
      }
    }
    ElementSet chosen(solutions[best_s]);
    std::sort(chosen.begin(), chosen.end());
    out.sets.push_back(std::move(chosen));
    for (std::size_t o = 0; o < outcomes; ++o) cur[o] = std::max(cur[o], count[best_s][o]);
  }
  return out;
}

Portfolio disjoint_baseline(const Instance& inst, const SolverConfig& config) {
  require(inst.matroid != nullptr, "matroid must not be null");
  require(inst.k >= 1, "portfolio size must be at least 1");
  require(static_cast<int>(inst.probs.size()) == inst.matroid->ground_size(),
          "probability vector length must match ground size");

  BaseOrdering ordering = build_base_ordering(inst.matroid, inst.probs, 1, config.max_bases);
  if (static_cast<int>(ordering.bases.size()) < inst.k &&
      inst.matroid->full_rank() > 0 && inst.k > 1) {
    ordering = build_base_ordering(inst.matroid, inst.probs, inst.k, config.max_bases);
  }

  Portfolio out;
  out.provenance = {"disjoint", -1, config.seed};
  int bases = static_cast<int>(ordering.bases.size());
  for (int i = 0; i < inst.k; ++i) {
    out.sets.push_back(bases > 0 ? ordering.bases[i % bases] : ElementSet{});
  }
  map_portfolio_to_original(out, ordering.parent);
  assert_portfolio_valid(out, *inst.matroid, inst.k);
  return out;
}

void assert_portfolio_valid(const Portfolio& p, const Matroid& m, int k) {
  check_invariant(static_cast<int>(p.sets.size()) == k,
                  "portfolio must contain exactly " + std::to_string(k) + " sets");
  for (const auto& s : p.sets) {
    check_invariant(std::is_sorted(s.begin(), s.end()) &&
                        std::adjacent_find(s.begin(), s.end()) == s.end(),
                    "portfolio sets must be sorted and duplicate-free");
    for (int e : s) {
      check_invariant(e >= 0 && e < m.ground_size(), "portfolio element outside ground set");
    }
    check_invariant(m.is_independent(s), "portfolio sets must be independent");
  }
}

}  // namespace portopt
