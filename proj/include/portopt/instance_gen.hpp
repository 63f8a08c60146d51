#pragma once

#include <cstdint>
#include <string>

#include "portopt/algorithms.hpp"

namespace portopt {

// Uniform matroid of rank k over k^2 elements; the first floor(k*log2(k))
// elements have probability 1/k, the rest 1/k^2. The instance where mixed
// sampling beats disjoint bases.
Instance gen_uniform_mixing(int k);

// Batch-combination portfolio over the mixing instance's high elements:
// B*k elements split into B^2 batches of k/B, one set per choice of B
// batches, padded to k sets with repeats. B = max(1, ceil of
// log2(k) / (2*log2(log2(k)))).
Portfolio gen_batch_portfolio(int k);

// Disjoint union of a clique on sqrt(n) vertices (edge prob 1/sqrt(n)) and a
// path on the remaining n - sqrt(n) vertices (edge prob 1/sqrt(n) - 1e-6).
// Clique edges get the lower element ids. n must be a perfect square >= 9.
Instance gen_graphic_clique_path(int n);

// Reproducible random instance.
//   prob_law: "uniform01" (U[0,1]), "half" (all 0.5), "small" (U[0, min(1, 4/r)])
//   kind:     "uniform", "graphic" (random connected graph on r+1 vertices),
//             "partition" (r unit-capacity blocks, each non-empty)
Instance gen_random(int n, int r, int k, const std::string& prob_law,
                    const std::string& kind, std::uint64_t seed);

}  // namespace portopt
