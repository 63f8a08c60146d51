#pragma once

#include "portopt/matroid.hpp"

namespace portopt {

// Exhaustively checks the matroid axioms (empty set independent, downward
// closure, exchange) against the full independence table of m. Requires
// ground_size() <= 20. Throws InternalError naming the first violated axiom;
// returns normally iff m is a matroid.
void check_matroid_axioms_exhaustive(const Matroid& m);

// Re-derives every exchange promised by b: for each i, to_base with b.map[i]
// replaced by from_base[i] must again be a base, and map must be a bijection
// onto to_base fixing shared elements. Throws InternalError on violation.
void verify_exchange_bijection(const Matroid& m, const ExchangeBijection& b);

}  // namespace portopt
