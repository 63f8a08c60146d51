#include "portopt/matroid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "portopt/errors.hpp"

namespace portopt {

namespace {

void check_ids(const ElementSet& s, int n) {
  for (int e : s) {
    if (e < 0 || e >= n) {
      throw InvalidInput("element id " + std::to_string(e) +
                         " outside ground set of size " + std::to_string(n));
    }
  }
}

void check_id(int e, int n) {
  if (e < 0 || e >= n) {
    throw InvalidInput("element id " + std::to_string(e) +
                       " outside ground set of size " + std::to_string(n));
  }
}

// Union-find over vertices with path halving; scratch state for one scan.
class Dsu {
 public:
  explicit Dsu(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // False iff x and y were already connected.
  bool unite(int x, int y) {
    int rx = find(x), ry = find(y);
    if (rx == ry) return false;
    parent_[rx] = ry;
    return true;
  }

 private:
  std::vector<int> parent_;
};

ElementSet all_elements(int n) {
  ElementSet s(n);
  std::iota(s.begin(), s.end(), 0);
  return s;
}

std::uint64_t mask_of(const ElementSet& s) {
  std::uint64_t m = 0;
  for (int e : s) m |= std::uint64_t{1} << e;
  return m;
}

}  // namespace

Matroid::Matroid(int n) : n_(n) {
  require(n >= 0, "ground size must be nonnegative");
}

bool Matroid::is_independent(const ElementSet& s) const {
  check_ids(s, n_);
  auto scan = make_scan();
  for (int e : s) {
    if (!scan->try_add(e)) return false;
  }
  return true;
}

int Matroid::rank(const ElementSet& s) const {
  check_ids(s, n_);
  auto scan = make_scan();
  int out = 0;
  for (int e : s) {
    if (scan->try_add(e)) ++out;
  }
  return out;
}

bool Matroid::span_contains(const ElementSet& s, int e) const {
  check_id(e, n_);
  if (std::find(s.begin(), s.end(), e) != s.end()) return true;
  ElementSet with(s);
  with.push_back(e);
  return rank(with) == rank(s);
}

// ---------------------------------------------------------------------------
// Uniform

namespace {
class UniformScan final : public IndependenceScan {
 public:
  explicit UniformScan(int r) : left_(r) {}
  bool try_add(int) override {
    if (left_ == 0) return false;
    --left_;
    return true;
  }

 private:
  int left_;
};
}  // namespace

UniformMatroid::UniformMatroid(int n, int r) : Matroid(n), r_(r) {
  require(r >= 0, "uniform matroid rank must be nonnegative");
  full_rank_ = std::min(n, r);
}

bool UniformMatroid::is_independent(const ElementSet& s) const {
  check_ids(s, n_);
  return static_cast<int>(s.size()) <= r_;
}

int UniformMatroid::rank(const ElementSet& s) const {
  check_ids(s, n_);
  return std::min(static_cast<int>(s.size()), r_);
}

bool UniformMatroid::span_contains(const ElementSet& s, int e) const {
  check_id(e, n_);
  if (static_cast<int>(s.size()) >= r_) return true;
  return std::find(s.begin(), s.end(), e) != s.end();
}

std::unique_ptr<IndependenceScan> UniformMatroid::make_scan() const {
  return std::make_unique<UniformScan>(r_);
}

// ---------------------------------------------------------------------------
// Graphic

namespace {
class GraphicScan final : public IndependenceScan {
 public:
  GraphicScan(int vertices, const std::vector<std::pair<int, int>>* edges)
      : dsu_(vertices), edges_(edges) {}

  bool try_add(int e) override {
    const auto& [u, v] = (*edges_)[e];
    return dsu_.unite(u, v);
  }

 private:
  Dsu dsu_;
  const std::vector<std::pair<int, int>>* edges_;
};
}  // namespace

GraphicMatroid::GraphicMatroid(int vertices, std::vector<std::pair<int, int>> edges)
    : Matroid(static_cast<int>(edges.size())), v_(vertices), edges_(std::move(edges)) {
  require(vertices >= 0, "vertex count must be nonnegative");
  for (const auto& [u, v] : edges_) {
    require(u >= 0 && u < v_ && v >= 0 && v < v_, "edge endpoint outside vertex range");
  }
  Dsu dsu(v_);
  for (const auto& [u, v] : edges_) {
    if (dsu.unite(u, v)) ++full_rank_;
  }
}

bool GraphicMatroid::span_contains(const ElementSet& s, int e) const {
  check_ids(s, n_);
  check_id(e, n_);
  Dsu dsu(v_);
  for (int f : s) dsu.unite(edges_[f].first, edges_[f].second);
  return dsu.find(edges_[e].first) == dsu.find(edges_[e].second);
}

std::unique_ptr<IndependenceScan> GraphicMatroid::make_scan() const {
  return std::make_unique<GraphicScan>(v_, &edges_);
}

// ---------------------------------------------------------------------------
// Partition

namespace {
class PartitionScan final : public IndependenceScan {
 public:
  PartitionScan(const std::vector<int>* block_of, const std::vector<int>* capacities)
      : block_of_(block_of), used_(capacities->size(), 0), capacities_(capacities) {}

  bool try_add(int e) override {
    int b = (*block_of_)[e];
    if (used_[b] >= (*capacities_)[b]) return false;
    ++used_[b];
    return true;
  }

 private:
  const std::vector<int>* block_of_;
  std::vector<int> used_;
  const std::vector<int>* capacities_;
};
}  // namespace

PartitionMatroid::PartitionMatroid(std::vector<int> block_of, std::vector<int> capacities)
    : Matroid(static_cast<int>(block_of.size())),
      block_of_(std::move(block_of)),
      capacities_(std::move(capacities)) {
  int blocks = static_cast<int>(capacities_.size());
  std::vector<int> count(blocks, 0);
  for (int b : block_of_) {
    require(b >= 0 && b < blocks, "block id outside capacity list");
    ++count[b];
  }
  for (int c : capacities_) require(c >= 0, "block capacity must be nonnegative");
  for (int b = 0; b < blocks; ++b) full_rank_ += std::min(count[b], capacities_[b]);
}

std::unique_ptr<IndependenceScan> PartitionMatroid::make_scan() const {
  return std::make_unique<PartitionScan>(&block_of_, &capacities_);
}

// ---------------------------------------------------------------------------
// Explicit

namespace {
class ExplicitScan final : public IndependenceScan {
 public:
  explicit ExplicitScan(const std::vector<std::uint64_t>* maximal) : maximal_(maximal) {}

  bool try_add(int e) override {
    std::uint64_t next = cur_ | (std::uint64_t{1} << e);
    for (std::uint64_t m : *maximal_) {
      if ((next & m) == next) {
        cur_ = next;
        return true;
      }
    }
    return false;
  }

 private:
  std::uint64_t cur_ = 0;
  const std::vector<std::uint64_t>* maximal_;
};
}  // namespace

ExplicitMatroid::ExplicitMatroid(int n, const std::vector<ElementSet>& maximal_sets)
    : Matroid(n) {
  require(n <= 63, "explicit matroids support ground sets of at most 63 elements");
  for (const auto& s : maximal_sets) {
    check_ids(s, n);
    maximal_.push_back(mask_of(s));
  }
  if (maximal_.empty()) maximal_.push_back(0);  // rank-0 matroid: only the empty set
  // Normalize: drop entries contained in another entry, then duplicates.
  std::vector<std::uint64_t> kept;
  for (std::uint64_t m : maximal_) {
    bool dominated = false;
    for (std::uint64_t other : maximal_) {
      if (other != m && (m & other) == m) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(m);
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  maximal_ = std::move(kept);
  for (std::uint64_t m : maximal_) {
    full_rank_ = std::max(full_rank_, std::popcount(m));
  }
}

std::vector<ElementSet> ExplicitMatroid::maximal_sets() const {
  std::vector<ElementSet> out;
  for (std::uint64_t m : maximal_) {
    ElementSet s;
    for (int e = 0; e < n_; ++e) {
      if (m >> e & 1) s.push_back(e);
    }
    out.push_back(std::move(s));
  }
  return out;
}

bool ExplicitMatroid::is_independent(const ElementSet& s) const {
  check_ids(s, n_);
  std::uint64_t m = mask_of(s);
  for (std::uint64_t mx : maximal_) {
    if ((m & mx) == m) return true;
  }
  return false;
}

int ExplicitMatroid::rank(const ElementSet& s) const {
  check_ids(s, n_);
  // In a matroid, some maximum independent subset of S extends to a maximal
  // set, so rank(S) = max over maximal sets M of |S ∩ M|.
  std::uint64_t m = mask_of(s);
  int best = 0;
  for (std::uint64_t mx : maximal_) {
    best = std::max(best, std::popcount(m & mx));
  }
  return best;
}

std::unique_ptr<IndependenceScan> ExplicitMatroid::make_scan() const {
  return std::make_unique<ExplicitScan>(&maximal_);
}

// ---------------------------------------------------------------------------
// Parallel extension

namespace {
class ParallelScan final : public IndependenceScan {
 public:
  ParallelScan(const std::vector<int>* parent, std::unique_ptr<IndependenceScan> inner,
               int inner_size)
      : parent_(parent), used_(inner_size, 0), inner_(std::move(inner)) {}

  bool try_add(int e) override {
    int p = (*parent_)[e];
    if (used_[p]) return false;
    if (!inner_->try_add(p)) return false;
    used_[p] = 1;
    return true;
  }

 private:
  const std::vector<int>* parent_;
  std::vector<char> used_;
  std::unique_ptr<IndependenceScan> inner_;
};
}  // namespace

ParallelExtensionMatroid::ParallelExtensionMatroid(std::shared_ptr<const Matroid> inner,
                                                   std::vector<int> parent)
    : Matroid(static_cast<int>(parent.size())),
      inner_(std::move(inner)),
      parent_(std::move(parent)) {
  require(inner_ != nullptr, "inner matroid must not be null");
  check_ids(parent_, inner_->ground_size());
  ElementSet parents(parent_);
  std::sort(parents.begin(), parents.end());
  parents.erase(std::unique(parents.begin(), parents.end()), parents.end());
  full_rank_ = inner_->rank(parents);
}

std::unique_ptr<IndependenceScan> ParallelExtensionMatroid::make_scan() const {
  return std::make_unique<ParallelScan>(&parent_, inner_->make_scan(),
                                        inner_->ground_size());
}

// ---------------------------------------------------------------------------
// Restriction

namespace {
class RestrictionScan final : public IndependenceScan {
 public:
  RestrictionScan(const std::vector<char>* keep, std::unique_ptr<IndependenceScan> inner)
      : keep_(keep), inner_(std::move(inner)) {}

  bool try_add(int e) override {
    return (*keep_)[e] && inner_->try_add(e);
  }

 private:
  const std::vector<char>* keep_;
  std::unique_ptr<IndependenceScan> inner_;
};
}  // namespace

RestrictionMatroid::RestrictionMatroid(std::shared_ptr<const Matroid> inner,
                                       const ElementSet& keep)
    : Matroid(inner ? inner->ground_size() : 0), inner_(std::move(inner)) {
  require(inner_ != nullptr, "inner matroid must not be null");
  check_ids(keep, n_);
  keep_.assign(n_, 0);
  for (int e : keep) keep_[e] = 1;
  ElementSet kept;
  for (int e = 0; e < n_; ++e) {
    if (keep_[e]) kept.push_back(e);
  }
  full_rank_ = inner_->rank(kept);
}

std::unique_ptr<IndependenceScan> RestrictionMatroid::make_scan() const {
  return std::make_unique<RestrictionScan>(&keep_, inner_->make_scan());
}

// ---------------------------------------------------------------------------
// Free functions

ElementSet max_weight_base(const Matroid& m, const std::vector<double>& weights) {
  int n = m.ground_size();
  require(static_cast<int>(weights.size()) == n, "weight vector length must match ground size");
  for (double w : weights) require(std::isfinite(w), "weights must be finite");

  ElementSet order = all_elements(n);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (weights[a] != weights[b]) return weights[a] > weights[b];
    return a < b;
  });

  ElementSet base;
  auto scan = m.make_scan();
  for (int e : order) {
    if (scan->try_add(e)) base.push_back(e);
  }
  std::sort(base.begin(), base.end());
  return base;
}

int ExchangeBijection::image_of(int e) const {
  auto it = std::lower_bound(from_base.begin(), from_base.end(), e);
  if (it == from_base.end() || *it != e) {
    throw InvalidInput("element " + std::to_string(e) + " is not in from_base");
  }
  return map[it - from_base.begin()];
}

ExchangeBijection exchange_bijection(const Matroid& m, const ElementSet& from_base,
                                     const ElementSet& to_base) {
  int r = m.full_rank();
  ExchangeBijection out;
  out.from_base = from_base;
  out.to_base = to_base;
  std::sort(out.from_base.begin(), out.from_base.end());
  std::sort(out.to_base.begin(), out.to_base.end());
  require(static_cast<int>(out.from_base.size()) == r && m.is_independent(out.from_base),
          "from_base is not a base");
  require(static_cast<int>(out.to_base.size()) == r && m.is_independent(out.to_base),
          "to_base is not a base");

  out.map.assign(r, -1);
  std::vector<char> to_taken(r, 0);

  // Shared elements are fixed points; match only the symmetric difference.
  std::vector<int> open;  // indices into from_base still unmatched
  for (int i = 0; i < r; ++i) {
    auto it = std::lower_bound(out.to_base.begin(), out.to_base.end(), out.from_base[i]);
    if (it != out.to_base.end() && *it == out.from_base[i]) {
      int j = static_cast<int>(it - out.to_base.begin());
      out.map[i] = out.to_base[j];
      to_taken[j] = 1;
    } else {
      open.push_back(i);
    }
  }

  std::vector<int> open_to;  // indices into to_base
  for (int j = 0; j < r; ++j) {
    if (!to_taken[j]) open_to.push_back(j);
  }

  // allowed[a][b]: swapping to_base[open_to[b]] out for from_base[open[a]]
  // keeps a base.
  int a_n = static_cast<int>(open.size());
  std::vector<std::vector<char>> allowed(a_n, std::vector<char>(a_n, 0));
  for (int a = 0; a < a_n; ++a) {
    for (int b = 0; b < a_n; ++b) {
      ElementSet candidate;
      candidate.reserve(r);
      for (int j = 0; j < r; ++j) {
        if (j != open_to[b]) candidate.push_back(out.to_base[j]);
      }
      candidate.push_back(out.from_base[open[a]]);
      allowed[a][b] = m.is_independent(candidate);
    }
  }

  // Kuhn's augmenting-path matching; a perfect matching must exist.
  std::vector<int> match_b(a_n, -1);
  std::vector<char> visited;
  auto augment = [&](auto&& self, int a) -> bool {
    for (int b = 0; b < a_n; ++b) {
      if (!allowed[a][b] || visited[b]) continue;
      visited[b] = 1;
      if (match_b[b] < 0 || self(self, match_b[b])) {
        match_b[b] = a;
        return true;
      }
    }
    return false;
  };
  for (int a = 0; a < a_n; ++a) {
    visited.assign(a_n, 0);
    check_invariant(augment(augment, a),
                    "base-exchange matching is incomplete; independence oracle is inconsistent");
  }
  for (int b = 0; b < a_n; ++b) {
    out.map[open[match_b[b]]] = out.to_base[open_to[b]];
  }
  return out;
}

Padding pad_with_duplicates(std::shared_ptr<const Matroid> m,
                            const std::vector<double>& probs, int copies) {
  require(m != nullptr, "matroid must not be null");
  int n = m->ground_size();
  require(static_cast<int>(probs.size()) == n, "probability vector length must match ground size");
  require(copies >= 1, "copy count must be at least 1");

  Padding out;
  if (copies == 1) {
    out.matroid = std::move(m);
    out.probs = probs;
    out.parent.resize(n);
    std::iota(out.parent.begin(), out.parent.end(), 0);
    return out;
  }
  out.parent.resize(static_cast<std::size_t>(n) * copies);
  for (std::size_t i = 0; i < out.parent.size(); ++i) {
    out.parent[i] = static_cast<int>(i % n);
  }
  out.probs.assign(static_cast<std::size_t>(n) * copies, 0.0);
  std::copy(probs.begin(), probs.end(), out.probs.begin());
  out.matroid = std::make_shared<ParallelExtensionMatroid>(std::move(m), out.parent);
  return out;
}

std::shared_ptr<const Matroid> restrict_to(std::shared_ptr<const Matroid> m,
                                           const ElementSet& keep) {
  require(m != nullptr, "matroid must not be null");
  return std::make_shared<RestrictionMatroid>(std::move(m), keep);
}

}  // namespace portopt
