#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "portopt/matroid.hpp"
#include "portopt/portfolio.hpp"
#include "portopt/stochastic.hpp"

namespace portopt {

struct ValueEstimate {
  double mean = 0.0;
  double ci_half_width = 0.0;  // Hoeffding: range * sqrt(ln(2/delta) / (2n))
  long long n_samples = 0;
  std::uint64_t seed = 0;
  double variance = 0.0;  // unbiased sample variance of the per-draw maxima
};

struct EstimateOptions {
  double delta = 0.05;
  // 0: use PORTFOLIO_THREADS from the environment, else hardware concurrency.
  int threads = 0;
};

// Monte Carlo mean of max_i |S_i ∩ A| over n_samples draws. Each draw is a
// pure function of (seed, draw index, element id), so the result is bitwise
// identical for every worker count, and two calls sharing a seed see the
// same active-set stream (common random numbers).
ValueEstimate estimate_value(const std::vector<ElementSet>& portfolio,
                             const ProductDistribution& d, long long n_samples,
                             std::uint64_t seed, const EstimateOptions& opts = {});

// All independent sets of m in lexicographic DFS order, or only the maximal
// ones. Throws CapacityError beyond 200 sets.
std::vector<ElementSet> enumerate_independent_sets(const Matroid& m, bool maximal_only);

// Exhaustive optimum over k-subsets of the enumerated sets. maximal_only
// is sound because the value functional is monotone in every set. When k
// exceeds the number of enumerated sets the portfolio is all of them plus
// repeats. Guards: ≤ 200 sets and ≤ 10^6 k-subsets.
struct BruteForceResult {
  Portfolio portfolio;
  double value = 0.0;
};

BruteForceResult optimal_portfolio_bruteforce(const Matroid& m, const ProductDistribution& d,
                                              int k, bool maximal_only = true);

struct RatioRow {
  std::string algorithm;
  double value = 0.0;
  bool exact = true;  // false when the value had to be Monte Carlo estimated
  double ratio = 0.0;
};

struct RatioReport {
  double opt_value = 0.0;
  std::vector<RatioRow> rows;
};

// Values each named portfolio against the brute-force optimum, exactly when
// the footprint allows it and by a 2*10^5-sample estimate otherwise.
RatioReport ratio_report(
    const Matroid& m, const ProductDistribution& d, int k,
    const std::vector<std::pair<std::string, std::vector<ElementSet>>>& portfolios);

std::string ratio_report_text(const RatioReport& r);

}  // namespace portopt
