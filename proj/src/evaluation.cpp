#include "portopt/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <thread>

#include "portopt/errors.hpp"
#include "portopt/rng.hpp"

namespace portopt {

namespace {

constexpr long long kBlock = 4096;  // draws per reduction block
constexpr double kTwo53 = 9007199254740992.0;

struct FootEntry {
  std::uint64_t key;  // per-element hash key
  std::uint64_t thr;  // active iff hashed draw < thr
};

int resolve_threads(int requested, long long blocks) {
  int t = requested;
  if (t <= 0) {
    if (const char* env = std::getenv("PORTFOLIO_THREADS")) {
      t = std::atoi(env);
    }
  }
  if (t <= 0) t = static_cast<int>(std::thread::hardware_concurrency());
  if (t <= 0) t = 1;
  return static_cast<int>(std::min<long long>(t, blocks));
}

double log_choose(int n, int k) {
  double out = 0.0;
  for (int i = 0; i < k; ++i) {
    out += std::log(static_cast<double>(n - i)) - std::log(static_cast<double>(i + 1));
  }
  return out;
}

}  // namespace

ValueEstimate estimate_value(const std::vector<ElementSet>& portfolio,
                             const ProductDistribution& d, long long n_samples,
                             std::uint64_t seed, const EstimateOptions& opts) {
  require(n_samples >= 1, "sample count must be at least 1");
  require(opts.delta > 0.0 && opts.delta < 1.0, "delta must lie in (0,1)");
  int n = static_cast<int>(d.probs.size());

  int range = 0;
  std::vector<std::vector<FootEntry>> feet;
  for (const auto& raw : portfolio) {
    ElementSet s(raw);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    std::vector<FootEntry> foot;
    for (int e : s) {
      require(e >= 0 && e < n, "element id " + std::to_string(e) +
                                   " outside ground set of size " + std::to_string(n));
      FootEntry f;
      f.key = mix64(static_cast<std::uint64_t>(e) * 0xbf58476d1ce4e5b9ULL +
                    0x94d049bb133111ebULL);
      f.thr = static_cast<std::uint64_t>(d.probs[e] * kTwo53);
      foot.push_back(f);
    }
    range = std::max(range, static_cast<int>(foot.size()));
    feet.push_back(std::move(foot));
  }

  long long blocks = (n_samples + kBlock - 1) / kBlock;
  std::vector<long long> block_sum(blocks, 0), block_sq(blocks, 0);

  auto run_block = [&](long long b) {
    long long lo = b * kBlock;
    long long hi = std::min(n_samples, lo + kBlock);
    long long sum = 0, sq = 0;
    for (long long t = lo; t < hi; ++t) {
      std::uint64_t key_t =
          mix64(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(t + 1)));
      long long best = 0;
      for (const auto& foot : feet) {
        long long count = 0;
        for (const auto& f : foot) {
          if ((mix64(key_t ^ f.key) >> 11) < f.thr) ++count;
        }
        best = std::max(best, count);
      }
      sum += best;
      sq += best * best;
    }
    block_sum[b] = sum;
    block_sq[b] = sq;
  };

  int workers = resolve_threads(opts.threads, blocks);
  if (workers <= 1) {
    for (long long b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::atomic<long long> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (long long b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) {
          run_block(b);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  long long total = 0, total_sq = 0;
  for (long long b = 0; b < blocks; ++b) {
    total += block_sum[b];
    total_sq += block_sq[b];
  }

  ValueEstimate out;
  out.n_samples = n_samples;
  out.seed = seed;
  out.mean = static_cast<double>(total) / static_cast<double>(n_samples);
  if (n_samples > 1) {
    double raw = static_cast<double>(total_sq) / static_cast<double>(n_samples) -
                 out.mean * out.mean;
    out.variance = std::max(0.0, raw) * static_cast<double>(n_samples) /
                   static_cast<double>(n_samples - 1);
  }
  out.ci_half_width = range * std::sqrt(std::log(2.0 / opts.delta) /
                                        (2.0 * static_cast<double>(n_samples)));
  return out;
}

std::vector<ElementSet> enumerate_independent_sets(const Matroid& m, bool maximal_only) {
  int n = m.ground_size();
  std::vector<ElementSet> out;
  ElementSet cur;

  auto is_maximal = [&](const ElementSet& s) {
    for (int e = 0; e < n; ++e) {
      if (std::binary_search(s.begin(), s.end(), e)) continue;
      ElementSet with(s);
      with.push_back(e);
      std::sort(with.begin(), with.end());
      if (m.is_independent(with)) return false;
    }
    return true;
  };

  auto dfs = [&](auto&& self, int start) -> void {
    if (!maximal_only || is_maximal(cur)) {
      out.push_back(cur);
      if (out.size() > 200) {
        throw CapacityError("more than 200 independent sets; brute force is limited to 200");
      }
    }
    for (int e = start; e < n; ++e) {
      cur.push_back(e);
      if (m.is_independent(cur)) {
        self(self, e + 1);
        cur.pop_back();
      } else {
        cur.pop_back();
      }
    }
  };
  dfs(dfs, 0);
  return out;
}

BruteForceResult optimal_portfolio_bruteforce(const Matroid& m, const ProductDistribution& d,
                                              int k, bool maximal_only) {
  require(k >= 1, "portfolio size must be at least 1");
  require(static_cast<int>(d.probs.size()) == m.ground_size(),
          "probability vector length must match ground size");
  std::vector<ElementSet> sets = enumerate_independent_sets(m, maximal_only);
  int s = static_cast<int>(sets.size());

  BruteForceResult out;
  out.portfolio.provenance.algorithm = "bruteforce";

  if (k >= s) {
    out.portfolio.sets = sets;
    while (static_cast<int>(out.portfolio.sets.size()) < k) {
      out.portfolio.sets.push_back(sets.front());
    }
    out.value = exact_portfolio_value(sets, d);
    return out;
  }

  if (log_choose(s, k) > std::log(1e6)) {
    throw CapacityError("more than 10^6 candidate portfolios; brute force guard exceeded");
  }

  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  double best = -1.0;
  std::vector<int> best_idx;
  while (true) {
    std::vector<ElementSet> candidate;
    for (int i : idx) candidate.push_back(sets[i]);
    double value = exact_portfolio_value(candidate, d);
    if (value > best) {
      best = value;
      best_idx = idx;
    }
    // next k-combination in lexicographic order
    int i = k - 1;
    while (i >= 0 && idx[i] == s - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }

  for (int i : best_idx) out.portfolio.sets.push_back(sets[i]);
  out.value = best;
  return out;
}

RatioReport ratio_report(
    const Matroid& m, const ProductDistribution& d, int k,
    const std::vector<std::pair<std::string, std::vector<ElementSet>>>& portfolios) {
  RatioReport report;
  report.opt_value = optimal_portfolio_bruteforce(m, d, k).value;
  for (const auto& [name, sets] : portfolios) {
    RatioRow row;
    row.algorithm = name;
    try {
      row.value = exact_portfolio_value(sets, d);
      row.exact = true;
    } catch (const CapacityError&) {
      row.value = estimate_value(sets, d, 200000, 0).mean;
      row.exact = false;
    }
    row.ratio = report.opt_value > 0.0 ? row.value / report.opt_value
                                       : (row.value == 0.0 ? 1.0 : 0.0);
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string ratio_report_text(const RatioReport& r) {
  std::ostringstream out;
  std::size_t width = 12;
  for (const auto& row : r.rows) width = std::max(width, row.algorithm.size() + 2);
  out << "optimal value: " << r.opt_value << "\n";
  out << std::left;
  out.width(width);
  out << "algorithm";
  out << "value        ratio    method\n";
  char buf[64];
  for (const auto& row : r.rows) {
    out.width(width);
    out << row.algorithm;
    std::snprintf(buf, sizeof(buf), "%-12.6f %-8.4f %s", row.value, row.ratio,
                  row.exact ? "exact" : "estimated");
    out << buf << "\n";
  }
  return out.str();
}

}  // namespace portopt
