#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "portopt/crs.hpp"
#include "portopt/evaluation.hpp"
#include "portopt/matroid.hpp"
#include "portopt/portfolio.hpp"
#include "portopt/rng.hpp"
#include "portopt/stochastic.hpp"

namespace portopt {

struct Instance {
  std::shared_ptr<const Matroid> matroid;
  std::vector<double> probs;
  int k = 1;
};

struct SolverConfig {
  std::uint64_t seed = 0;
  long long eval_samples = 4000;  // per-candidate Monte Carlo budget
  int order_trials = 400;         // per-step trials in compute_order
  int ell_pad = 0;                // 0: max(k, 2)
  int max_bases = 0;              // 0: ceil(padded ground size / rank)
  double delta = 0.05;
  int threads = 0;                // see EstimateOptions
};

// Greedily extracted pairwise-disjoint bases of the padded matroid, highest
// expectation first.
struct BaseOrdering {
  std::shared_ptr<const Matroid> matroid;  // padded
  std::vector<double> probs;               // padded, duplicates at 0
  std::vector<int> parent;                 // padded id -> original id
  std::vector<ElementSet> bases;
};

// The (ℓ+1)-st base split by the 10/ℓ probability threshold, its exchange
// images in the first ℓ bases grouped into columns.
struct ColumnDecomposition {
  int prefix_len = 0;       // ℓ
  ElementSet next_base;     // B_{ℓ+1} sorted by descending probability, ties by id
  int high_count = 0;       // elements with p ≥ 10/ℓ (they lead next_base)
  // columns[j][i-1] = image of next_base[j] in base i; columns partition
  // the prefix ∪_{i≤ℓ} B_i.
  std::vector<ElementSet> columns;
};

// One scored candidate portfolio out of a solver run.
struct CandidateReport {
  Portfolio portfolio;  // original element ids
  ValueEstimate estimate;
};

struct SolveReport {
  int best_index = -1;
  std::vector<CandidateReport> candidates;

  const Portfolio& best() const { return candidates[best_index].portfolio; }
  const ValueEstimate& best_estimate() const { return candidates[best_index].estimate; }
};

// k sets, each the distinct elements of r uniform with-replacement picks
// from prefix.
Portfolio portfolio_from_prefix(const ElementSet& prefix, int k, int r, Rng& rng);

// Pad with ell_pad parallel zero-probability copies, then greedily extract
// disjoint max-expectation bases until the rank drops or the cap is hit.
BaseOrdering build_base_ordering(std::shared_ptr<const Matroid> m,
                                 const std::vector<double>& probs, int ell_pad,
                                 int max_bases = 0);

// Exchange bijections from B_{ℓ+1} into each of B_1..B_ℓ, assembled into
// columns. Verifies the partition, every exchange, and probability
// domination before returning.
ColumnDecomposition column_decomposition(const BaseOrdering& ordering, int ell);

// Algorithm candidates on the padded instance (sets use padded ids).
Portfolio uniform_portfolio_general(const BaseOrdering& ordering, int ell, int k,
                                    const CRSOrder& crs_order, Rng& rng);
Portfolio column_portfolio(const BaseOrdering& ordering, const ColumnDecomposition& decomp,
                           int k, const CRSOrder& crs_order, Rng& rng);

// Prefix-enumeration solver for uniform matroids.
SolveReport solve_uniform_report(const Instance& inst, const SolverConfig& config = {});
Portfolio solve_uniform(const Instance& inst, const SolverConfig& config = {});

// General-matroid solver: base ordering, per-prefix uniform and column
// candidates, the k-disjoint-bases fallback, and base-swap variants of
// every candidate; all estimated under common random numbers.
SolveReport solve_general_report(const Instance& inst, const SolverConfig& config = {});
Portfolio solve_general(const Instance& inst, const SolverConfig& config = {});

// Nemhauser greedy over an explicit solution list and explicit support.
Portfolio greedy_explicit(const std::vector<ElementSet>& solutions,
                          const ExplicitDistribution& d, int k);

// First k bases of the greedy ordering (padded only when needed).
Portfolio disjoint_baseline(const Instance& inst, const SolverConfig& config = {});

// Re-checks the Portfolio type invariants against the matroid; throws
// InternalError on violation.
void assert_portfolio_valid(const Portfolio& p, const Matroid& m, int k);

}  // namespace portopt
