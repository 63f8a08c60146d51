#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "portopt/algorithms.hpp"

namespace portopt {

// End-to-end conditional retention of the rounding pipeline, measured per
// element: Pr[e in output | e in sampled set], compared to the 1/8 floor
// minus three binomial standard errors.
struct RetentionElement {
  int instance_index = -1;
  std::string strategy;  // "prefix" or "column"
  int element = -1;      // padded element id
  long long appearances = 0;
  long long retained = 0;
  double ratio = 0.0;
  double floor_bound = 0.0;  // 0.125 - 3*sigma at this event count
};

struct RetentionReport {
  int instances = 0;
  int runs = 0;  // (instance, strategy) pairs measured
  long long resolve_calls = 0;
  long long elements_checked = 0;
  long long min_events = 500;
  int failures = 0;
  double min_margin = 0.0;  // min over checked elements of ratio - floor_bound
  RetentionElement worst;
};

RetentionReport run_crs_retention(int instances, int trials_per_strategy,
                                  std::uint64_t seed);

// Approximation ratios of the general solver against the brute-force optimum
// on tiny random instances (n <= 8, r <= 3, k <= 3), valued exactly.
struct RatioCase {
  std::uint64_t seed = 0;
  std::string kind;
  int n = 0, r = 0, k = 0;
  double opt = 0.0;
  double achieved = 0.0;
  double ratio = 0.0;
};

struct RatioSweepReport {
  std::vector<RatioCase> cases;
  double min_ratio = 0.0;
  double median_ratio = 0.0;
  double mean_ratio = 0.0;
};

RatioSweepReport run_ratio_sweep(int count, std::uint64_t seed);

// Batch-combination portfolio versus the disjoint baseline on the mixing
// instance, estimated with a shared seed. Reports both the distribution-free
// interval the estimator guarantees and the tighter CLT interval.
struct MixingReport {
  int k = 0;
  long long samples = 0;
  double batch_mean = 0.0, batch_hoeffding_ci = 0.0, batch_clt_ci = 0.0;
  double disjoint_mean = 0.0, disjoint_hoeffding_ci = 0.0, disjoint_clt_ci = 0.0;
  bool batch_separated_hoeffding = false;
  bool batch_separated_clt = false;
};

MixingReport run_mixing_counterexample(int k, long long samples, std::uint64_t seed);

// Exact-oracle checks of the distributional lemmas, each over many random
// parameterizations (the balls-and-bins check walks a fixed grid).
struct LemmaCheck {
  std::string name;
  int trials = 0;
  int failures = 0;
};

std::vector<LemmaCheck> run_lemma_suite(int per_property, std::uint64_t seed);

std::string to_json_text(const RetentionReport& r);
std::string to_json_text(const RatioSweepReport& r);
std::string to_json_text(const MixingReport& r);
std::string to_json_text(const std::vector<LemmaCheck>& r);
std::string to_text(const RetentionReport& r);
std::string to_text(const RatioSweepReport& r);
std::string to_text(const MixingReport& r);
std::string to_text(const std::vector<LemmaCheck>& r);

}  // namespace portopt
