#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "portopt/matroid.hpp"

namespace portopt {

// Where a portfolio came from: which algorithm, which candidate prefix (when
// the algorithm enumerates prefixes; -1 otherwise), and the seed it ran with.
struct Provenance {
  std::string algorithm;
  int prefix = -1;
  std::uint64_t seed = 0;
};

// k independent sets; the holder of the instance's matroid guarantees
// independence (assert_portfolio_valid re-checks it).
struct Portfolio {
  std::vector<ElementSet> sets;
  Provenance provenance;
};

}  // namespace portopt
