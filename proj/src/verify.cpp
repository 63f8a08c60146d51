#include "portopt/verify.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "portopt/errors.hpp"

namespace portopt {

namespace {

ElementSet unmask(std::uint32_t m, int n) {
  ElementSet s;
  for (int e = 0; e < n; ++e) {
    if (m >> e & 1) s.push_back(e);
  }
  return s;
}

std::string set_str(std::uint32_t m, int n) {
  std::string out = "{";
  bool first = true;
  for (int e = 0; e < n; ++e) {
    if (!(m >> e & 1)) continue;
    if (!first) out += ",";
    out += std::to_string(e);
    first = false;
  }
  return out + "}";
}

}  // namespace

void check_matroid_axioms_exhaustive(const Matroid& m) {
  int n = m.ground_size();
  check_invariant(n <= 20, "exhaustive axiom check limited to 20 elements");
  std::uint32_t total = std::uint32_t{1} << n;

  std::vector<char> indep(total);
  for (std::uint32_t s = 0; s < total; ++s) {
    indep[s] = m.is_independent(unmask(s, n));
  }

  check_invariant(indep[0], "axiom violation: empty set is dependent");

  for (std::uint32_t s = 0; s < total; ++s) {
    if (!indep[s]) continue;
    // Downward closure: removing any one element keeps independence.
    for (int e = 0; e < n; ++e) {
      if (!(s >> e & 1)) continue;
      std::uint32_t sub = s & ~(std::uint32_t{1} << e);
      check_invariant(indep[sub], "axiom violation: " + set_str(s, n) +
                                      " independent but subset " + set_str(sub, n) +
                                      " is not");
    }
  }

  // Exchange: |I| < |J| with both independent implies some e in J\I with
  // I+e independent. grow[s] collects every single element whose addition
  // keeps s independent.
  std::vector<std::uint32_t> grow(total, 0);
  for (std::uint32_t s = 0; s < total; ++s) {
    if (!indep[s]) continue;
    for (int e = 0; e < n; ++e) {
      if (s >> e & 1) continue;
      if (indep[s | (std::uint32_t{1} << e)]) grow[s] |= std::uint32_t{1} << e;
    }
  }
  for (std::uint32_t i = 0; i < total; ++i) {
    if (!indep[i]) continue;
    for (std::uint32_t j = 0; j < total; ++j) {
      if (!indep[j] || std::popcount(j) <= std::popcount(i)) continue;
      check_invariant((j & ~i & grow[i]) != 0,
                      "axiom violation: no element of " + set_str(j, n) +
                          " extends " + set_str(i, n));
    }
  }
}

void verify_exchange_bijection(const Matroid& m, const ExchangeBijection& b) {
  int r = m.full_rank();
  check_invariant(static_cast<int>(b.from_base.size()) == r &&
                      static_cast<int>(b.to_base.size()) == r &&
                      static_cast<int>(b.map.size()) == r,
                  "bijection arrays must all have length full_rank");
  check_invariant(std::is_sorted(b.from_base.begin(), b.from_base.end()),
                  "from_base must be sorted");
  check_invariant(std::is_sorted(b.to_base.begin(), b.to_base.end()), "to_base must be sorted");
  check_invariant(m.is_independent(b.from_base), "from_base is not independent");
  check_invariant(m.is_independent(b.to_base), "to_base is not independent");

  // map must be a bijection onto to_base.
  ElementSet image(b.map);
  std::sort(image.begin(), image.end());
  check_invariant(image == b.to_base, "map image is not exactly to_base");

  for (int i = 0; i < r; ++i) {
    int e = b.from_base[i];
    int f = b.map[i];
    bool shared = std::binary_search(b.to_base.begin(), b.to_base.end(), e);
    if (shared) {
      check_invariant(f == e, "shared element " + std::to_string(e) + " is not a fixed point");
      continue;
    }
    ElementSet swapped;
    swapped.reserve(r);
    for (int g : b.to_base) {
      if (g != f) swapped.push_back(g);
    }
    swapped.push_back(e);
    check_invariant(m.is_independent(swapped),
                    "exchange " + std::to_string(e) + " for " + std::to_string(f) +
                        " does not yield a base");
  }
}

}  // namespace portopt
