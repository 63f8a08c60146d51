#include "portopt/crs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "portopt/errors.hpp"

namespace portopt {

namespace {

void check_ids_in(const ElementSet& s, int n, const char* what) {
  for (int e : s) {
    require(e >= 0 && e < n, std::string(what) + ": element id " + std::to_string(e) +
                                 " outside ground set of size " + std::to_string(n));
  }
}

}  // namespace

PrefixUniformSampler::PrefixUniformSampler(ElementSet prefix, int picks, int ground_size)
    : prefix_(std::move(prefix)), picks_(picks), marginals_(ground_size, 0.0) {
  require(!prefix_.empty(), "prefix must be non-empty");
  require(picks_ >= 0, "pick count must be nonnegative");
  check_ids_in(prefix_, ground_size, "prefix");
  double m = static_cast<double>(prefix_.size());
  double inclusion = 1.0 - std::pow(1.0 - 1.0 / m, static_cast<double>(picks_));
  for (int e : prefix_) marginals_[e] = inclusion;
}

ElementSet PrefixUniformSampler::draw(Rng& rng) const {
  ElementSet out;
  for (int i = 0; i < picks_; ++i) {
    out.push_back(prefix_[next_below(rng, prefix_.size())]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

OnePerColumnSampler::OnePerColumnSampler(std::vector<ElementSet> columns, int ground_size)
    : columns_(std::move(columns)), marginals_(ground_size, 0.0) {
  for (const auto& col : columns_) {
    require(!col.empty(), "columns must be non-empty");
    check_ids_in(col, ground_size, "column");
    for (int e : col) {
      require(marginals_[e] == 0.0, "columns must be disjoint");
      marginals_[e] = 1.0 / static_cast<double>(col.size());
    }
  }
}

ElementSet OnePerColumnSampler::draw(Rng& rng) const {
  ElementSet out;
  for (const auto& col : columns_) {
    out.push_back(col[next_below(rng, col.size())]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

BernoulliSampler::BernoulliSampler(std::vector<double> probs) : marginals_(std::move(probs)) {
  for (double p : marginals_) {
    require(p >= 0.0 && p <= 1.0, "inclusion probabilities must lie in [0,1]");
  }
}

ElementSet BernoulliSampler::draw(Rng& rng) const {
  ElementSet out;
  for (std::size_t e = 0; e < marginals_.size(); ++e) {
    if (next_bernoulli(rng, marginals_[e])) out.push_back(static_cast<int>(e));
  }
  return out;
}

CRSOrder compute_order(const Matroid& m, const SetSampler& sampler, int n_trials, Rng& rng) {
  require(n_trials >= 1, "trial count must be at least 1");
  int n = m.ground_size();
  require(static_cast<int>(sampler.marginals().size()) == n,
          "sampler marginals must match ground size");

  CRSOrder out;
  out.order.assign(n, -1);
  std::vector<char> remaining(n, 1);

  std::vector<long long> appear(n), spanned(n);
  for (int fill = n - 1; fill >= 0; --fill) {
    std::fill(appear.begin(), appear.end(), 0);
    std::fill(spanned.begin(), spanned.end(), 0);

    for (int trial = 0; trial < n_trials; ++trial) {
      ++out.trials_used;
      // Draw, restrict to the remaining elements, thin to a quarter.
      ElementSet r_full = sampler.draw(rng);
      ElementSet r_x;
      for (int e : r_full) {
        if (remaining[e] && next_bernoulli(rng, 0.25)) r_x.push_back(e);
      }
      if (r_x.empty()) continue;
      int full_rank_rx = m.rank(r_x);
      for (std::size_t i = 0; i < r_x.size(); ++i) {
        int e = r_x[i];
        ++appear[e];
        ElementSet rest;
        rest.reserve(r_x.size() - 1);
        for (std::size_t j = 0; j < r_x.size(); ++j) {
          if (j != i) rest.push_back(r_x[j]);
        }
        if (m.rank(rest) == full_rank_rx) ++spanned[e];
      }
    }

    int chosen = -1;
    double best = 2.0;  // all estimates are ≤ 1
    for (int e = 0; e < n; ++e) {
      if (!remaining[e]) continue;
      double est = appear[e] > 0
                       ? static_cast<double>(spanned[e]) / static_cast<double>(appear[e])
                       : 0.0;
      if (est < best) {
        best = est;
        chosen = e;
      }
    }
    out.order[fill] = chosen;
    remaining[chosen] = 0;
  }
  return out;
}

ElementSet resolve(const Matroid& m, const CRSOrder& order, const ElementSet& r_set, Rng& rng) {
  int n = m.ground_size();
  check_ids_in(r_set, n, "sampled set");
  check_invariant(static_cast<int>(order.order.size()) == n,
                  "resolution order length must match ground size");

  // Thinning draws follow the input order of r_set, one per element.
  ElementSet survivors;
  for (int e : r_set) {
    if (!next_bernoulli(rng, 0.25)) survivors.push_back(e);
  }

  std::vector<int> position(n, 0);
  for (int i = 0; i < n; ++i) position[order.order[i]] = i;
  std::sort(survivors.begin(), survivors.end(),
            [&](int a, int b) { return position[a] < position[b]; });

  ElementSet kept;
  auto scan = m.make_scan();
  for (int e : survivors) {
    if (scan->try_add(e)) kept.push_back(e);
  }
  std::sort(kept.begin(), kept.end());

  check_invariant(m.is_independent(kept), "resolved set is not independent");
  for (int e : kept) {
    check_invariant(std::find(r_set.begin(), r_set.end(), e) != r_set.end(),
                    "resolved set is not a subset of the sampled set");
  }
  return kept;
}

void verify_sampler_feasible(const SetSampler& sampler,
                             const std::vector<ElementSet>& disjoint_bases) {
  const auto& marg = sampler.marginals();
  std::vector<char> covered(marg.size(), 0);
  double level_sum = 0.0;
  for (const auto& base : disjoint_bases) {
    check_invariant(!base.empty(), "feasibility check needs non-empty bases");
    double level = marg[base.front()];
    for (int e : base) {
      check_invariant(e >= 0 && e < static_cast<int>(marg.size()),
                      "base element outside ground set");
      check_invariant(!covered[e], "bases are not disjoint");
      covered[e] = 1;
      check_invariant(std::abs(marg[e] - level) <= 1e-9,
                      "marginals are not constant on a base");
    }
    level_sum += level;
  }
  for (std::size_t e = 0; e < marg.size(); ++e) {
    check_invariant(covered[e] || marg[e] == 0.0,
                    "nonzero marginal outside the covered bases");
  }
  check_invariant(level_sum <= 2.0 + 1e-9,
                  "halved marginals are not a convex combination of base indicators");
}

}  // namespace portopt
