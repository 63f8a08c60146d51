#include "portopt/instance_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "portopt/errors.hpp"

namespace portopt {

namespace {

long long choose(int n, int r) {
  if (r < 0 || r > n) return 0;
  long long out = 1;
  for (int i = 0; i < r; ++i) out = out * (n - i) / (i + 1);
  return out;
}

}  // namespace

Instance gen_uniform_mixing(int k) {
  require(k >= 4, "mixing instance needs k >= 4");
  int n = k * k;
  int heavy = static_cast<int>(std::floor(k * std::log2(static_cast<double>(k))));
  std::vector<double> probs(n);
  double hi = 1.0 / k;
  double lo = 1.0 / static_cast<double>(n);
  for (int e = 0; e < n; ++e) probs[e] = e < heavy ? hi : lo;
  return {std::make_shared<UniformMatroid>(n, k), std::move(probs), k};
}

Portfolio gen_batch_portfolio(int k) {
  require(k >= 4, "batch portfolio needs k >= 4");
  double lk = std::log2(static_cast<double>(k));
  int b = std::max(1, static_cast<int>(std::ceil(lk / (2.0 * std::log2(lk)))));
  require(choose(b * b, b) <= k,
          "batch construction needs C(B^2, B) <= k, got C(" +
              std::to_string(b * b) + ", " + std::to_string(b) + ") = " +
              std::to_string(choose(b * b, b)) + " > " + std::to_string(k));
  require(k % b == 0, "batch construction needs B = " + std::to_string(b) +
                          " to divide k = " + std::to_string(k));

  int per_batch = k / b;
  int batches = b * b;

  Portfolio out;
  out.provenance.algorithm = "batch";
  std::vector<int> combo(b);
  std::iota(combo.begin(), combo.end(), 0);
  while (true) {
    ElementSet set;
    set.reserve(k);
    for (int bi : combo) {
      for (int e = bi * per_batch; e < (bi + 1) * per_batch; ++e) set.push_back(e);
    }
    std::sort(set.begin(), set.end());
    out.sets.push_back(std::move(set));
    // Next lexicographic B-combination of [0, batches).
    int pos = b - 1;
    while (pos >= 0 && combo[pos] == batches - b + pos) --pos;
    if (pos < 0) break;
    ++combo[pos];
    for (int j = pos + 1; j < b; ++j) combo[j] = combo[j - 1] + 1;
  }
  while (static_cast<int>(out.sets.size()) < k) out.sets.push_back(out.sets.front());
  return out;
}

Instance gen_graphic_clique_path(int n) {
  require(n >= 9, "clique-path instance needs n >= 9");
  int s = static_cast<int>(std::llround(std::sqrt(static_cast<double>(n))));
  require(s * s == n, "clique-path instance needs a perfect square, got " +
                          std::to_string(n));

  std::vector<std::pair<int, int>> edges;
  std::vector<double> probs;
  double p = 1.0 / s;
  for (int i = 0; i < s; ++i) {
    for (int j = i + 1; j < s; ++j) {
      edges.push_back({i, j});
      probs.push_back(p);
    }
  }
  for (int v = s; v + 1 < n; ++v) {
    edges.push_back({v, v + 1});
    probs.push_back(p - 1e-6);
  }
  return {std::make_shared<GraphicMatroid>(n, edges), std::move(probs), 2};
}

Instance gen_random(int n, int r, int k, const std::string& prob_law,
                    const std::string& kind, std::uint64_t seed) {
  require(n >= 1, "need at least one element");
  require(r >= 1 && r <= n, "rank must be in [1, n]");
  require(k >= 1, "portfolio size must be at least 1");
  Rng rng(derive_seed(seed, {0x6e57u}));

  std::shared_ptr<const Matroid> m;
  if (kind == "uniform") {
    m = std::make_shared<UniformMatroid>(n, r);
  } else if (kind == "graphic") {
    // Random spanning tree on r+1 vertices, then extra random edges.
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v <= r; ++v) {
      edges.push_back({static_cast<int>(next_below(rng, v)), v});
    }
    while (static_cast<int>(edges.size()) < n) {
      int u = static_cast<int>(next_below(rng, r + 1));
      int v = static_cast<int>(next_below(rng, r + 1));
      if (u != v) edges.push_back({std::min(u, v), std::max(u, v)});
    }
    m = std::make_shared<GraphicMatroid>(r + 1, edges);
  } else if (kind == "partition") {
    // r unit-capacity blocks, the first r elements pinning one block each.
    std::vector<int> blocks(n);
    for (int e = 0; e < n; ++e) {
      blocks[e] = e < r ? e : static_cast<int>(next_below(rng, r));
    }
    m = std::make_shared<PartitionMatroid>(blocks, std::vector<int>(r, 1));
  } else {
    throw InvalidInput("unknown matroid kind: " + kind);
  }

  std::vector<double> probs(n);
  if (prob_law == "uniform01") {
    for (auto& p : probs) p = next_double(rng);
  } else if (prob_law == "half") {
    for (auto& p : probs) p = 0.5;
  } else if (prob_law == "small") {
    double cap = std::min(1.0, 4.0 / r);
    for (auto& p : probs) p = cap * next_double(rng);
  } else {
    throw InvalidInput("unknown probability law: " + prob_law);
  }
  return {std::move(m), std::move(probs), k};
}

}  // namespace portopt
