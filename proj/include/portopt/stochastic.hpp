#pragma once

#include <utility>
#include <vector>

#include "portopt/matroid.hpp"
#include "portopt/rng.hpp"

namespace portopt {

// Each element e is active independently with probability probs[e].
struct ProductDistribution {
  std::vector<double> probs;

  explicit ProductDistribution(std::vector<double> p);
};

// Finite-support distribution over active sets. Entries keep their input
// order; sets are stored sorted. Probabilities must sum to 1 within 1e-9.
struct ExplicitDistribution {
  std::vector<std::pair<ElementSet, double>> support;
  std::vector<double> cdf;  // inclusive prefix sums, last entry forced to 1

  explicit ExplicitDistribution(std::vector<std::pair<ElementSet, double>> entries);
};

// Poisson-binomial distribution: number of successes among independent
// Bernoulli trials with the given probabilities.
struct PBDistribution {
  std::vector<double> pmf;  // length probs.size() + 1
  std::vector<double> probs;

  double mean() const;
};

ElementSet sample_active_set(const ProductDistribution& d, Rng& rng);
ElementSet sample_active_set(const ExplicitDistribution& d, Rng& rng);

// Exact pmf via the O(n^2) convolution recurrence.
PBDistribution pb_pmf(const std::vector<double>& probs);

// E[max of k iid draws from pb] = sum_{t>=1} (1 - F(t-1)^k).
double expected_max_iid(const PBDistribution& pb, int k);

// E[max_i |S_i ∩ A|] by enumerating active subsets of the portfolio's
// element footprint. Throws CapacityError when the footprint exceeds 22
// elements; use the Monte Carlo estimator instead at that size.
double exact_portfolio_value(const std::vector<ElementSet>& portfolio,
                             const ProductDistribution& d);

}  // namespace portopt
