#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace portopt {

// A set of element ids. Functions taking an ElementSet expect distinct ids;
// canonical sets (solver outputs, JSON I/O) are additionally sorted ascending.
using ElementSet = std::vector<int>;

// Incremental independence checker: accepts elements one at a time, keeping the
// running set independent. One instance per greedy scan; not thread-safe, but
// cheap enough to create per call.
class IndependenceScan {
 public:
  virtual ~IndependenceScan() = default;
  // Adds e if the current set plus e stays independent; reports whether it did.
  virtual bool try_add(int e) = 0;
};

// Immutable independence oracle. Queries are read-only (per-call scratch only),
// so one instance can be shared freely across threads.
class Matroid {
 public:
  virtual ~Matroid() = default;

  int ground_size() const { return n_; }
  // Rank of the whole ground set.
  int full_rank() const { return full_rank_; }

  virtual bool is_independent(const ElementSet& s) const;
  virtual int rank(const ElementSet& s) const;
  // True iff rank(s + e) == rank(s).
  virtual bool span_contains(const ElementSet& s, int e) const;
  virtual std::unique_ptr<IndependenceScan> make_scan() const = 0;

 protected:
  explicit Matroid(int n);

  int n_;
  int full_rank_ = 0;  // concrete constructors fill this in
};

// All subsets of size at most r are independent.
class UniformMatroid final : public Matroid {
 public:
  UniformMatroid(int n, int r);
  int rank_limit() const { return r_; }

  bool is_independent(const ElementSet& s) const override;
  int rank(const ElementSet& s) const override;
  bool span_contains(const ElementSet& s, int e) const override;
  std::unique_ptr<IndependenceScan> make_scan() const override;

 private:
  int r_;
};

// Elements are edges of a multigraph; independent = acyclic (a forest).
class GraphicMatroid final : public Matroid {
 public:
  GraphicMatroid(int vertices, std::vector<std::pair<int, int>> edges);
  int vertices() const { return v_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  bool span_contains(const ElementSet& s, int e) const override;
  std::unique_ptr<IndependenceScan> make_scan() const override;

 private:
  int v_;
  std::vector<std::pair<int, int>> edges_;
};

// Ground set split into blocks; at most capacity[b] elements per block b.
class PartitionMatroid final : public Matroid {
 public:
  PartitionMatroid(std::vector<int> block_of, std::vector<int> capacities);
  const std::vector<int>& block_of() const { return block_of_; }
  const std::vector<int>& capacities() const { return capacities_; }

  std::unique_ptr<IndependenceScan> make_scan() const override;

 private:
  std::vector<int> block_of_;
  std::vector<int> capacities_;
};

// Independence given by an explicit list of maximal independent sets: S is
// independent iff S is contained in one of them. The listing must come from a
// genuine matroid for rank queries to be meaningful; nested or duplicate
// entries are normalized away. Ground sets up to 63 elements.
class ExplicitMatroid final : public Matroid {
 public:
  ExplicitMatroid(int n, const std::vector<ElementSet>& maximal_sets);
  std::vector<ElementSet> maximal_sets() const;

  bool is_independent(const ElementSet& s) const override;
  int rank(const ElementSet& s) const override;
  std::unique_ptr<IndependenceScan> make_scan() const override;

 private:
  std::vector<std::uint64_t> maximal_;
};

// Each element maps to a parent in an inner matroid; a set is independent iff
// its parents are distinct and form an independent set there. Parallel copies
// of one parent are mutually exclusive.
class ParallelExtensionMatroid final : public Matroid {
 public:
  ParallelExtensionMatroid(std::shared_ptr<const Matroid> inner,
                           std::vector<int> parent);
  const std::vector<int>& parent() const { return parent_; }
  const std::shared_ptr<const Matroid>& inner() const { return inner_; }

  std::unique_ptr<IndependenceScan> make_scan() const override;

 private:
  std::shared_ptr<const Matroid> inner_;
  std::vector<int> parent_;
};

// Same ground set as the inner matroid; elements outside `keep` become loops.
class RestrictionMatroid final : public Matroid {
 public:
  RestrictionMatroid(std::shared_ptr<const Matroid> inner, const ElementSet& keep);

  std::unique_ptr<IndependenceScan> make_scan() const override;

 private:
  std::shared_ptr<const Matroid> inner_;
  std::vector<char> keep_;
};

// Greedy max-weight base: elements in decreasing weight, ties by ascending id.
// Always returns a base (size full_rank), even under zero or negative weights.
ElementSet max_weight_base(const Matroid& m, const std::vector<double>& weights);

// A bijection between two bases such that swapping any single from-element for
// its image in to_base again yields a base. map[i] is the image of from_base[i];
// elements shared by both bases are fixed points.
struct ExchangeBijection {
  ElementSet from_base;  // sorted
  ElementSet to_base;    // sorted
  std::vector<int> map;  // aligned with from_base

  int image_of(int e) const;
};

ExchangeBijection exchange_bijection(const Matroid& m, const ElementSet& from_base,
                                     const ElementSet& to_base);

// Result of duplicating every element `copies` times: ids [c*n, (c+1)*n) are
// copy c, parent[id] = id % n, copies beyond the original carry probability 0.
struct Padding {
  std::shared_ptr<const Matroid> matroid;
  std::vector<double> probs;
  std::vector<int> parent;
};

Padding pad_with_duplicates(std::shared_ptr<const Matroid> m,
                            const std::vector<double>& probs, int copies);

std::shared_ptr<const Matroid> restrict_to(std::shared_ptr<const Matroid> m,
                                           const ElementSet& keep);

}  // namespace portopt
