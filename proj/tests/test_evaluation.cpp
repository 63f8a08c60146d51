#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "portopt/errors.hpp"
#include "portopt/evaluation.hpp"
#include "portopt/matroid.hpp"
#include "portopt/rng.hpp"
#include "portopt/stochastic.hpp"

using namespace portopt;

TEST_CASE("estimator hits sure outcomes exactly") {
  ProductDistribution d({1.0, 1.0, 1.0, 1.0});
  auto est = estimate_value({{0, 1}, {2}}, d, 5000, 7);
  CHECK(est.mean == 2.0);
  CHECK(est.variance == 0.0);
  CHECK(est.n_samples == 5000);
  CHECK(est.seed == 7);

  ProductDistribution off({0.0, 0.0});
  CHECK(estimate_value({{0, 1}}, off, 1000, 7).mean == 0.0);
}

TEST_CASE("estimator lands within its own confidence interval") {
  ProductDistribution d({0.5, 0.5});
  auto est = estimate_value({{0, 1}}, d, 40000, 12345);
  CHECK(std::abs(est.mean - 1.0) <= est.ci_half_width);

  double expected_ci = 2.0 * std::sqrt(std::log(2.0 / 0.05) / (2.0 * 40000));
  CHECK(est.ci_half_width == doctest::Approx(expected_ci));

  EstimateOptions tight;
  tight.delta = 0.01;
  auto wide = estimate_value({{0, 1}}, d, 40000, 12345, tight);
  CHECK(wide.ci_half_width > est.ci_half_width);

  CHECK_THROWS_AS(estimate_value({{0}}, d, 0, 1), InvalidInput);
  CHECK_THROWS_AS(estimate_value({{5}}, d, 10, 1), InvalidInput);
}

TEST_CASE("confidence intervals cover the exact value") {
  ProductDistribution d({0.5, 0.5});
  std::vector<ElementSet> portfolio{{0}, {1}};
  double exact = exact_portfolio_value(portfolio, d);
  REQUIRE(exact == doctest::Approx(0.75));

  int covered = 0;
  const int reps = 200;
  for (int rep = 0; rep < reps; ++rep) {
    auto est = estimate_value(portfolio, d, 2000, derive_seed(99, {static_cast<std::uint64_t>(rep)}));
    if (std::abs(est.mean - exact) <= est.ci_half_width) ++covered;
  }
  CHECK(covered >= static_cast<int>(0.93 * reps));
}

TEST_CASE("estimator is unbiased and tightens with the budget") {
  ProductDistribution d({0.8, 0.6, 0.4, 0.2});
  std::vector<ElementSet> portfolio{{0, 3}, {1, 2}};
  double exact = exact_portfolio_value(portfolio, d);

  const int reps = 60;
  double sum = 0.0, err_small = 0.0, err_big = 0.0;
  for (int rep = 0; rep < reps; ++rep) {
    std::uint64_t seed = derive_seed(5, {static_cast<std::uint64_t>(rep)});
    double small = estimate_value(portfolio, d, 500, seed).mean;
    double big = estimate_value(portfolio, d, 8000, seed + 1).mean;
    sum += big;
    err_small += (small - exact) * (small - exact);
    err_big += (big - exact) * (big - exact);
  }
  double avg = sum / reps;
  // 16x the budget should shrink RMSE about 4x; allow generous slack.
  CHECK(std::sqrt(err_small / reps) > 1.8 * std::sqrt(err_big / reps));
  CHECK(std::abs(avg - exact) < 0.01);
}

TEST_CASE("estimates are bitwise reproducible across thread counts") {
  ProductDistribution d({0.3, 0.7, 0.5, 0.9, 0.1});
  std::vector<ElementSet> portfolio{{0, 1, 2}, {2, 3, 4}};

  EstimateOptions single, quad;
  single.threads = 1;
  quad.threads = 4;
  auto a = estimate_value(portfolio, d, 50001, 42, single);
  auto b = estimate_value(portfolio, d, 50001, 42, quad);
  auto c = estimate_value(portfolio, d, 50001, 42, single);
  CHECK(a.mean == b.mean);
  CHECK(a.variance == b.variance);
  CHECK(a.mean == c.mean);

  // A different seed gives a different stream.
  auto other = estimate_value(portfolio, d, 50001, 43, single);
  CHECK(a.mean != other.mean);
}

TEST_CASE("common random numbers align paired estimates") {
  ProductDistribution d({0.5, 0.5, 0.5});
  // Identical portfolios under the same seed score identically.
  auto a = estimate_value({{0, 1}}, d, 30000, 11);
  auto b = estimate_value({{0, 1}}, d, 30000, 11);
  CHECK(a.mean == b.mean);
  // A superset dominates draw-by-draw under a shared seed.
  auto sub = estimate_value({{0}}, d, 30000, 11);
  auto sup = estimate_value({{0, 1, 2}}, d, 30000, 11);
  CHECK(sup.mean >= sub.mean);
}

TEST_CASE("independent-set enumeration") {
  UniformMatroid u(4, 2);
  CHECK(enumerate_independent_sets(u, false).size() == 11);  // 1 + 4 + 6
  auto maximal = enumerate_independent_sets(u, true);
  CHECK(maximal.size() == 6);
  for (const auto& s : maximal) CHECK(s.size() == 2);

  GraphicMatroid tri(3, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(enumerate_independent_sets(tri, true).size() == 3);

  UniformMatroid big(12, 3);  // 220 maximal sets
  CHECK_THROWS_AS(enumerate_independent_sets(big, true), CapacityError);
}

TEST_CASE("brute-force optimum") {
  SUBCASE("single best base") {
    UniformMatroid u(3, 2);
    ProductDistribution d({0.9, 0.8, 0.1});
    auto res = optimal_portfolio_bruteforce(u, d, 1);
    CHECK(res.portfolio.sets == std::vector<ElementSet>{{0, 1}});
    CHECK(res.value == doctest::Approx(1.7));
  }

  SUBCASE("two singletons under symmetry") {
    UniformMatroid u(3, 1);
    ProductDistribution d({0.5, 0.5, 0.5});
    auto res = optimal_portfolio_bruteforce(u, d, 2);
    CHECK(res.value == doctest::Approx(0.75));
    REQUIRE(res.portfolio.sets.size() == 2);
    CHECK(res.portfolio.sets[0] != res.portfolio.sets[1]);
  }

  SUBCASE("k beyond the set count returns everything") {
    GraphicMatroid tri(3, {{0, 1}, {1, 2}, {2, 0}});
    ProductDistribution d({0.5, 0.4, 0.3});
    auto all = enumerate_independent_sets(tri, true);
    auto res = optimal_portfolio_bruteforce(tri, d, 5);
    CHECK(res.portfolio.sets.size() == 5);
    CHECK(res.value == doctest::Approx(exact_portfolio_value(all, d)));
  }

  SUBCASE("including non-maximal sets cannot help") {
    GraphicMatroid tri(3, {{0, 1}, {1, 2}, {2, 0}});
    ProductDistribution d({0.7, 0.2, 0.4});
    auto with = optimal_portfolio_bruteforce(tri, d, 2, false);
    auto without = optimal_portfolio_bruteforce(tri, d, 2, true);
    CHECK(with.value == doctest::Approx(without.value));
  }

  SUBCASE("combination guard") {
    UniformMatroid u(11, 3);  // 165 maximal sets, C(165,4) > 10^6
    ProductDistribution d(std::vector<double>(11, 0.5));
    CHECK_THROWS_AS(optimal_portfolio_bruteforce(u, d, 4), CapacityError);
  }
}

TEST_CASE("brute force agrees with direct subset enumeration on uniform matroids") {
  Rng rng(77);
  for (int trial = 0; trial < 8; ++trial) {
    int n = 4 + static_cast<int>(next_below(rng, 3));  // 4..6
    int r = 1 + static_cast<int>(next_below(rng, 2));  // 1..2
    int k = 1 + static_cast<int>(next_below(rng, 2));  // 1..2
    std::vector<double> probs(n);
    for (auto& p : probs) p = next_double(rng);
    UniformMatroid u(n, r);
    ProductDistribution d(probs);

    // Direct: all r-subsets, then all k-subsets of those.
    std::vector<ElementSet> bases;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (std::popcount(mask) != r) continue;
      ElementSet s;
      for (int e = 0; e < n; ++e) {
        if (mask >> e & 1) s.push_back(e);
      }
      bases.push_back(std::move(s));
    }
    double best = -1.0;
    int s = static_cast<int>(bases.size());
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::vector<ElementSet> cand;
      for (int i : idx) cand.push_back(bases[i]);
      best = std::max(best, exact_portfolio_value(cand, d));
      int i = k - 1;
      while (i >= 0 && idx[i] == s - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }

    auto res = optimal_portfolio_bruteforce(u, d, k);
    CHECK(res.value == doctest::Approx(best));
  }
}

TEST_CASE("ratio report") {
  UniformMatroid u(4, 2);
  ProductDistribution d({0.9, 0.7, 0.5, 0.3});
  std::vector<std::pair<std::string, std::vector<ElementSet>>> entries{
      {"top_base", {{0, 1}, {0, 1}}},
      {"overlap_top", {{0, 1}, {0, 2}}},
  };
  auto report = ratio_report(u, d, 2, entries);
  CHECK(report.opt_value == optimal_portfolio_bruteforce(u, d, 2).value);
  REQUIRE(report.rows.size() == 2);
  for (const auto& row : report.rows) {
    CHECK(row.ratio <= 1.0 + 1e-12);
    CHECK(row.ratio > 0.0);
    CHECK(row.exact);
  }
  CHECK(report.rows[0].value == doctest::Approx(1.6));
  CHECK(report.rows[1].value == doctest::Approx(1.75));
  CHECK(report.rows[1].ratio == doctest::Approx(1.0));  // hand-checked optimum

  auto text = ratio_report_text(report);
  CHECK(text.find("top_base") != std::string::npos);
  CHECK(text.find("ratio") != std::string::npos);
  CHECK(text.find("exact") != std::string::npos);
}
