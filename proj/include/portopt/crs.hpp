#pragma once

#include <memory>
#include <vector>

#include "portopt/matroid.hpp"
#include "portopt/rng.hpp"

namespace portopt {

// A randomized rule for drawing a subset of the ground set, with declared
// per-element inclusion probabilities. Draws must consume rng values in a
// fixed order so runs are reproducible from the seed.
class SetSampler {
 public:
  virtual ~SetSampler() = default;
  virtual ElementSet draw(Rng& rng) const = 0;
  // Length = ground size; entry e is Pr[e ∈ draw()].
  virtual const std::vector<double>& marginals() const = 0;
};

// r picks uniformly with replacement from a fixed prefix of elements,
// deduplicated. Marginal on the prefix: 1 - (1 - 1/m)^r with m = |prefix|.
class PrefixUniformSampler final : public SetSampler {
 public:
  PrefixUniformSampler(ElementSet prefix, int picks, int ground_size);
  ElementSet draw(Rng& rng) const override;
  const std::vector<double>& marginals() const override { return marginals_; }

 private:
  ElementSet prefix_;
  int picks_;
  std::vector<double> marginals_;
};

// One uniform pick from each column of a column decomposition. Marginal of
// an element: 1 / (size of its column).
class OnePerColumnSampler final : public SetSampler {
 public:
  OnePerColumnSampler(std::vector<ElementSet> columns, int ground_size);
  ElementSet draw(Rng& rng) const override;
  const std::vector<double>& marginals() const override { return marginals_; }

 private:
  std::vector<ElementSet> columns_;
  std::vector<double> marginals_;
};

// Independent per-element inclusion; mostly a test harness.
class BernoulliSampler final : public SetSampler {
 public:
  explicit BernoulliSampler(std::vector<double> probs);
  ElementSet draw(Rng& rng) const override;
  const std::vector<double>& marginals() const override { return marginals_; }

 private:
  std::vector<double> marginals_;
};

struct CRSOrder {
  std::vector<int> order;  // permutation of the ground set, resolved front first
  long long trials_used = 0;
};

// Monte-Carlo construction of the resolution order: repeatedly estimate, for
// each remaining element e, Pr[e ∈ span(R∖{e}) | e ∈ R] under the sampler
// restricted to the remaining elements and thinned to a quarter, then move
// the argmin (ties by smaller id) to the last unfilled position.
CRSOrder compute_order(const Matroid& m, const SetSampler& sampler, int n_trials, Rng& rng);

// Drop each element of r_set independently with probability 1/4, then greedily
// keep survivors in order-position sequence while independence allows. The
// result is re-checked to be an independent subset of r_set on every call.
ElementSet resolve(const Matroid& m, const CRSOrder& order, const ElementSet& r_set, Rng& rng);

// Constructive feasibility check for the shipped strategies: marginals must
// be constant on each of the given pairwise-disjoint bases, zero elsewhere,
// and their per-base levels must sum to at most 2 (so half the marginal
// vector is a convex combination of base indicators). Throws InternalError.
void verify_sampler_feasible(const SetSampler& sampler,
                             const std::vector<ElementSet>& disjoint_bases);

}  // namespace portopt
