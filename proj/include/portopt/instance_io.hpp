#pragma once

#include <optional>
#include <string>

#include "portopt/algorithms.hpp"
#include "portopt/errors.hpp"

namespace portopt {

// Raised when a document is not valid JSON at all; the message carries the
// 1-based line and column of the first offending byte.
class MalformedJson : public InvalidInput {
 public:
  MalformedJson(const std::string& what, int line, int column)
      : InvalidInput(what), line(line), column(column) {}
  int line;
  int column;
};

struct InstanceDoc {
  Instance instance;
  // Optional finite-support distribution riding along with the instance,
  // used by the explicit greedy solver.
  std::optional<ExplicitDistribution> support;
};

// Instance document:
//   {"matroid": {"kind": "uniform", "rank": r}
//             | {"kind": "graphic", "vertices": v, "edges": [[u,v], ...]}
//             | {"kind": "partition", "blocks": [b...], "capacities": [c...]}
//             | {"kind": "explicit", "independent_sets": [[ids], ...]},
//    "probs": [p...], "k": int,
//    "support": [{"active": [ids], "prob": p}, ...]  (optional)}
InstanceDoc parse_instance_text(const std::string& text);
std::string instance_to_json_text(const Instance& inst);

// Portfolio document: {"sets": [[ids]...], "provenance": {...}, "estimate": {...}}.
// The estimate block is written when an estimate is supplied and ignored on read.
std::string portfolio_to_json_text(const Portfolio& p, const ValueEstimate* estimate);
Portfolio parse_portfolio_text(const std::string& text);

}  // namespace portopt
