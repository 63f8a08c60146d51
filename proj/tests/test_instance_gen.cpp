#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "portopt/errors.hpp"
#include "portopt/instance_gen.hpp"

using namespace portopt;

TEST_CASE("mixing instance") {
  SUBCASE("k=4: sixteen elements, half heavy") {
    Instance inst = gen_uniform_mixing(4);
    CHECK(inst.matroid->ground_size() == 16);
    CHECK(inst.matroid->full_rank() == 4);
    CHECK(inst.k == 4);
    REQUIRE(inst.probs.size() == 16);
    for (int e = 0; e < 8; ++e) CHECK(inst.probs[e] == 0.25);
    for (int e = 8; e < 16; ++e) CHECK(inst.probs[e] == 0.0625);
  }
  SUBCASE("k=16: 64 heavy elements at 1/16") {
    Instance inst = gen_uniform_mixing(16);
    CHECK(inst.matroid->ground_size() == 256);
    int heavy = 0;
    for (double p : inst.probs) {
      if (p == 1.0 / 16.0) {
        ++heavy;
      } else {
        CHECK(p == 1.0 / 256.0);
      }
    }
    CHECK(heavy == 64);
  }
  SUBCASE("probabilities always in (0, 1]") {
    for (int k : {4, 5, 8, 11, 16}) {
      Instance inst = gen_uniform_mixing(k);
      for (double p : inst.probs) {
        CHECK(p > 0.0);
        CHECK(p <= 1.0);
      }
    }
  }
  SUBCASE("too-small k rejected") {
    CHECK_THROWS_AS(gen_uniform_mixing(3), InvalidInput);
  }
}

TEST_CASE("batch portfolio") {
  SUBCASE("k=256: six distinct batch pairs padded to 256 sets") {
    Portfolio p = gen_batch_portfolio(256);
    REQUIRE(p.sets.size() == 256);
    std::set<ElementSet> distinct(p.sets.begin(), p.sets.end());
    CHECK(distinct.size() == 6);
    for (const auto& s : p.sets) {
      CHECK(s.size() == 256);
      CHECK(std::is_sorted(s.begin(), s.end()));
      CHECK(s.front() >= 0);
      CHECK(s.back() < 512);  // subsets of the B*k = 512 high elements
    }
    // First combination takes batches 0 and 1: ids 0..255.
    ElementSet first(256);
    for (int e = 0; e < 256; ++e) first[e] = e;
    CHECK(p.sets[0] == first);
    // Padding repeats the first set.
    CHECK(p.sets[255] == p.sets[0]);
    // Every pair of the 4 batches appears exactly once among the first 6.
    std::set<ElementSet> lead(p.sets.begin(), p.sets.begin() + 6);
    CHECK(lead.size() == 6);
  }
  SUBCASE("degenerate B=1 at small k") {
    Portfolio p = gen_batch_portfolio(8);
    REQUIRE(p.sets.size() == 8);
    for (const auto& s : p.sets) {
      CHECK(s.size() == 8);
      CHECK(s == p.sets[0]);
    }
  }
  SUBCASE("indivisible k rejected with the bound") {
    CHECK_THROWS_AS(gen_batch_portfolio(33), InvalidInput);
  }
}

TEST_CASE("clique plus path instance") {
  SUBCASE("n=9: triangle and a five-edge path") {
    Instance inst = gen_graphic_clique_path(9);
    REQUIRE(inst.probs.size() == 8);
    CHECK(inst.matroid->ground_size() == 8);
    for (int e = 0; e < 3; ++e) CHECK(inst.probs[e] == 1.0 / 3.0);
    for (int e = 3; e < 8; ++e) CHECK(inst.probs[e] == doctest::Approx(1.0 / 3.0 - 1e-6));
    // Disjoint union: rank = (3-1) + (6-1).
    CHECK(inst.matroid->full_rank() == 7);
  }
  SUBCASE("n=16: component ranks add up") {
    Instance inst = gen_graphic_clique_path(16);
    CHECK(inst.matroid->ground_size() == 6 + 11);
    CHECK(inst.matroid->full_rank() == 3 + 11);
  }
  SUBCASE("path expectation dominates the clique tree expectation") {
    Instance inst = gen_graphic_clique_path(49);
    double path = 0.0, clique_tree = 0.0;
    for (std::size_t e = 0; e < inst.probs.size(); ++e) {
      if (e < 21) {
        clique_tree += (e < 6 ? inst.probs[e] : 0.0);  // any 6 clique edges
      } else {
        path += inst.probs[e];
      }
    }
    CHECK(path > clique_tree);
    CHECK(path == doctest::Approx((49 - 7 - 1) / 7.0).epsilon(1e-3));
  }
  SUBCASE("the baseline's first base swallows the whole path") {
    Instance inst = gen_graphic_clique_path(16);
    Portfolio base = disjoint_baseline(inst, {});
    REQUIRE(!base.sets.empty());
    for (int e = 6; e < 17; ++e) {
      CHECK(std::binary_search(base.sets[0].begin(), base.sets[0].end(), e));
    }
  }
  SUBCASE("non-square sizes rejected") {
    CHECK_THROWS_AS(gen_graphic_clique_path(10), InvalidInput);
    CHECK_THROWS_AS(gen_graphic_clique_path(8), InvalidInput);
  }
}

TEST_CASE("random instances") {
  SUBCASE("same seed reproduces the instance") {
    for (const char* kind : {"uniform", "graphic", "partition"}) {
      Instance a = gen_random(12, 4, 3, "uniform01", kind, 42);
      Instance b = gen_random(12, 4, 3, "uniform01", kind, 42);
      CHECK(a.probs == b.probs);
      CHECK(a.matroid->ground_size() == b.matroid->ground_size());
      CHECK(a.matroid->full_rank() == b.matroid->full_rank());
      Rng rng(7);
      for (int t = 0; t < 50; ++t) {
        ElementSet s;
        for (int e = 0; e < 12; ++e) {
          if (next_bernoulli(rng, 0.3)) s.push_back(e);
        }
        CHECK(a.matroid->is_independent(s) == b.matroid->is_independent(s));
      }
    }
  }
  SUBCASE("different seeds differ") {
    Instance a = gen_random(12, 4, 3, "uniform01", "uniform", 1);
    Instance b = gen_random(12, 4, 3, "uniform01", "uniform", 2);
    CHECK(a.probs != b.probs);
  }
  SUBCASE("requested rank is delivered") {
    for (const char* kind : {"uniform", "graphic", "partition"}) {
      Instance inst = gen_random(15, 5, 2, "half", kind, 9);
      CHECK(inst.matroid->ground_size() == 15);
      CHECK(inst.matroid->full_rank() == 5);
    }
  }
  SUBCASE("probability laws stay in range") {
    Instance u = gen_random(30, 6, 2, "uniform01", "uniform", 3);
    Instance h = gen_random(30, 6, 2, "half", "uniform", 3);
    Instance s = gen_random(30, 6, 2, "small", "uniform", 3);
    for (double p : u.probs) {
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
    }
    for (double p : h.probs) CHECK(p == 0.5);
    for (double p : s.probs) {
      CHECK(p >= 0.0);
      CHECK(p <= 4.0 / 6.0);
    }
  }
  SUBCASE("free matroid at r=n") {
    Instance inst = gen_random(6, 6, 2, "half", "uniform", 5);
    ElementSet all{0, 1, 2, 3, 4, 5};
    CHECK(inst.matroid->is_independent(all));
  }
  SUBCASE("bad arguments rejected") {
    CHECK_THROWS_AS(gen_random(5, 6, 1, "half", "uniform", 0), InvalidInput);
    CHECK_THROWS_AS(gen_random(5, 2, 1, "half", "moebius", 0), InvalidInput);
    CHECK_THROWS_AS(gen_random(5, 2, 1, "cauchy", "uniform", 0), InvalidInput);
  }
}
