#include "portopt/stochastic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "portopt/errors.hpp"

namespace portopt {

ProductDistribution::ProductDistribution(std::vector<double> p) : probs(std::move(p)) {
  for (double x : probs) {
    require(x >= 0.0 && x <= 1.0, "activation probabilities must lie in [0,1]");
  }
}

ExplicitDistribution::ExplicitDistribution(
    std::vector<std::pair<ElementSet, double>> entries)
    : support(std::move(entries)) {
  require(!support.empty(), "explicit distribution needs at least one support set");
  double total = 0.0;
  for (auto& [set, prob] : support) {
    require(prob >= 0.0, "support probabilities must be nonnegative");
    std::sort(set.begin(), set.end());
    total += prob;
    cdf.push_back(total);
  }
  require(std::abs(total - 1.0) <= 1e-9, "support probabilities must sum to 1");
  cdf.back() = 1.0;
}

double PBDistribution::mean() const {
  double out = 0.0;
  for (std::size_t t = 1; t < pmf.size(); ++t) out += static_cast<double>(t) * pmf[t];
  return out;
}

ElementSet sample_active_set(const ProductDistribution& d, Rng& rng) {
  ElementSet out;
  for (std::size_t e = 0; e < d.probs.size(); ++e) {
    if (next_bernoulli(rng, d.probs[e])) out.push_back(static_cast<int>(e));
  }
  return out;
}

ElementSet sample_active_set(const ExplicitDistribution& d, Rng& rng) {
  double u = next_double(rng);
  auto it = std::upper_bound(d.cdf.begin(), d.cdf.end(), u);
  if (it == d.cdf.end()) --it;  // u can tie the final 1.0 only by rounding
  return d.support[it - d.cdf.begin()].first;
}

PBDistribution pb_pmf(const std::vector<double>& probs) {
  require(probs.size() <= 10000, "Poisson-binomial pmf limited to 10000 trials");
  PBDistribution out;
  out.probs = probs;
  out.pmf.assign(probs.size() + 1, 0.0);
  out.pmf[0] = 1.0;
  std::size_t used = 0;
  for (double p : probs) {
    require(p >= 0.0 && p <= 1.0, "trial probabilities must lie in [0,1]");
    ++used;
    for (std::size_t t = used; t > 0; --t) {
      out.pmf[t] = out.pmf[t] * (1.0 - p) + out.pmf[t - 1] * p;
    }
    out.pmf[0] *= 1.0 - p;
  }
  return out;
}

double expected_max_iid(const PBDistribution& pb, int k) {
  require(k >= 1, "draw count must be at least 1");
  double cdf = 0.0;
  double out = 0.0;
  for (std::size_t t = 1; t < pb.pmf.size(); ++t) {
    cdf += pb.pmf[t - 1];
    out += 1.0 - std::pow(std::min(cdf, 1.0), static_cast<double>(k));
  }
  return out;
}

double exact_portfolio_value(const std::vector<ElementSet>& portfolio,
                             const ProductDistribution& d) {
  if (portfolio.empty()) return 0.0;
  int n = static_cast<int>(d.probs.size());

  ElementSet footprint;
  for (const auto& s : portfolio) {
    for (int e : s) {
      require(e >= 0 && e < n, "element id " + std::to_string(e) +
                                   " outside ground set of size " + std::to_string(n));
      footprint.push_back(e);
    }
  }
  std::sort(footprint.begin(), footprint.end());
  footprint.erase(std::unique(footprint.begin(), footprint.end()), footprint.end());
  int m = static_cast<int>(footprint.size());
  if (m > 22) {
    throw CapacityError("portfolio footprint of " + std::to_string(m) +
                        " elements exceeds the 22-element exact-enumeration limit; "
                        "use the Monte Carlo estimator");
  }

  std::vector<std::uint32_t> set_masks;
  for (const auto& s : portfolio) {
    std::uint32_t mask = 0;
    for (int e : s) {
      auto it = std::lower_bound(footprint.begin(), footprint.end(), e);
      mask |= std::uint32_t{1} << (it - footprint.begin());
    }
    set_masks.push_back(mask);
  }

  double value = 0.0;
  for (std::uint32_t active = 0; active < (std::uint32_t{1} << m); ++active) {
    double pr = 1.0;
    for (int i = 0; i < m; ++i) {
      double p = d.probs[footprint[i]];
      pr *= (active >> i & 1) ? p : 1.0 - p;
    }
    if (pr == 0.0) continue;
    int best = 0;
    for (std::uint32_t mask : set_masks) {
      best = std::max(best, std::popcount(active & mask));
    }
    value += pr * best;
  }
  return value;
}

}  // namespace portopt
