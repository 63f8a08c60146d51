#include "portopt/instance_io.hpp"

#include <cstddef>
#include <utility>
#include <vector>

#include "json.hpp"

namespace portopt {

namespace {

using nlohmann::json;

[[noreturn]] void throw_at_byte(const std::string& text, std::size_t byte,
                                const std::string& detail) {
  int line = 1, column = 1;
  std::size_t stop = byte > 0 ? byte - 1 : 0;
  for (std::size_t i = 0; i < stop && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  throw MalformedJson("malformed JSON at line " + std::to_string(line) +
                          ", column " + std::to_string(column) + ": " + detail,
                      line, column);
}

json parse_or_throw(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw_at_byte(text, e.byte, e.what());
  }
}

const json& field(const json& obj, const char* key, const char* where) {
  auto it = obj.find(key);
  require(it != obj.end(), std::string(where) + " is missing \"" + key + "\"");
  return *it;
}

std::vector<double> number_array(const json& j, const char* what) {
  require(j.is_array(), std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& v : j) {
    require(v.is_number(), std::string(what) + " must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

ElementSet id_array(const json& j, const char* what) {
  require(j.is_array(), std::string(what) + " must be an array");
  ElementSet out;
  for (const auto& v : j) {
    require(v.is_number_integer(), std::string(what) + " must contain integer ids");
    out.push_back(v.get<int>());
  }
  return out;
}

std::vector<int> int_array(const json& j, const char* what) {
  std::vector<int> out;
  for (int e : id_array(j, what)) out.push_back(e);
  return out;
}

std::shared_ptr<const Matroid> parse_matroid(const json& jm, int n) {
  require(jm.is_object(), "\"matroid\" must be an object");
  const json& jkind = field(jm, "kind", "matroid");
  require(jkind.is_string(), "matroid \"kind\" must be a string");
  std::string kind = jkind.get<std::string>();

  if (kind == "uniform") {
    const json& jr = field(jm, "rank", "uniform matroid");
    require(jr.is_number_integer(), "uniform \"rank\" must be an integer");
    return std::make_shared<UniformMatroid>(n, jr.get<int>());
  }
  if (kind == "graphic") {
    const json& jv = field(jm, "vertices", "graphic matroid");
    require(jv.is_number_integer(), "graphic \"vertices\" must be an integer");
    const json& je = field(jm, "edges", "graphic matroid");
    require(je.is_array(), "graphic \"edges\" must be an array");
    std::vector<std::pair<int, int>> edges;
    for (const auto& pair : je) {
      require(pair.is_array() && pair.size() == 2 && pair[0].is_number_integer() &&
                  pair[1].is_number_integer(),
              "each edge must be a [u, v] integer pair");
      edges.push_back({pair[0].get<int>(), pair[1].get<int>()});
    }
    require(static_cast<int>(edges.size()) == n,
            "edge count must match the probability count");
    return std::make_shared<GraphicMatroid>(jv.get<int>(), std::move(edges));
  }
  if (kind == "partition") {
    std::vector<int> blocks = int_array(field(jm, "blocks", "partition matroid"),
                                        "partition \"blocks\"");
    std::vector<int> caps = int_array(field(jm, "capacities", "partition matroid"),
                                      "partition \"capacities\"");
    require(static_cast<int>(blocks.size()) == n,
            "block count must match the probability count");
    return std::make_shared<PartitionMatroid>(std::move(blocks), std::move(caps));
  }
  if (kind == "explicit") {
    const json& js = field(jm, "independent_sets", "explicit matroid");
    require(js.is_array(), "\"independent_sets\" must be an array");
    std::vector<ElementSet> sets;
    for (const auto& s : js) sets.push_back(id_array(s, "independent set"));
    return std::make_shared<ExplicitMatroid>(n, sets);
  }
  throw InvalidInput("unknown matroid kind: \"" + kind + "\"");
}

}  // namespace

InstanceDoc parse_instance_text(const std::string& text) {
  json j = parse_or_throw(text);
  require(j.is_object(), "instance document must be a JSON object");

  InstanceDoc doc;
  doc.instance.probs = number_array(field(j, "probs", "instance"), "\"probs\"");
  const json& jk = field(j, "k", "instance");
  require(jk.is_number_integer(), "\"k\" must be an integer");
  doc.instance.k = jk.get<int>();
  doc.instance.matroid =
      parse_matroid(field(j, "matroid", "instance"),
                    static_cast<int>(doc.instance.probs.size()));

  if (auto it = j.find("support"); it != j.end()) {
    require(it->is_array(), "\"support\" must be an array");
    std::vector<std::pair<ElementSet, double>> rows;
    for (const auto& row : *it) {
      require(row.is_object(), "each support row must be an object");
      ElementSet active = id_array(field(row, "active", "support row"),
                                   "support \"active\"");
      const json& jp = field(row, "prob", "support row");
      require(jp.is_number(), "support \"prob\" must be a number");
      rows.push_back({std::move(active), jp.get<double>()});
    }
    doc.support.emplace(rows);
  }
  return doc;
}

std::string instance_to_json_text(const Instance& inst) {
  require(inst.matroid != nullptr, "matroid must not be null");
  json jm;
  if (auto* u = dynamic_cast<const UniformMatroid*>(inst.matroid.get())) {
    jm = {{"kind", "uniform"}, {"rank", u->rank_limit()}};
  } else if (auto* g = dynamic_cast<const GraphicMatroid*>(inst.matroid.get())) {
    json edges = json::array();
    for (const auto& [u, v] : g->edges()) edges.push_back({u, v});
    jm = {{"kind", "graphic"}, {"vertices", g->vertices()}, {"edges", std::move(edges)}};
  } else if (auto* p = dynamic_cast<const PartitionMatroid*>(inst.matroid.get())) {
    jm = {{"kind", "partition"},
          {"blocks", p->block_of()},
          {"capacities", p->capacities()}};
  } else if (auto* e = dynamic_cast<const ExplicitMatroid*>(inst.matroid.get())) {
    jm = {{"kind", "explicit"}, {"independent_sets", e->maximal_sets()}};
  } else {
    throw InvalidInput("this matroid kind has no JSON form");
  }
  json j{{"matroid", std::move(jm)}, {"probs", inst.probs}, {"k", inst.k}};
  return j.dump(2) + "\n";
}

std::string portfolio_to_json_text(const Portfolio& p, const ValueEstimate* estimate) {
  json j;
  j["sets"] = p.sets;
  j["provenance"] = {{"algorithm", p.provenance.algorithm},
                     {"prefix", p.provenance.prefix},
                     {"seed", p.provenance.seed}};
  if (estimate != nullptr) {
    j["estimate"] = {{"mean", estimate->mean},
                     {"ci", estimate->ci_half_width},
                     {"n", estimate->n_samples},
                     {"seed", estimate->seed}};
  }
  return j.dump(2) + "\n";
}

Portfolio parse_portfolio_text(const std::string& text) {
  json j = parse_or_throw(text);
  require(j.is_object(), "portfolio document must be a JSON object");
  Portfolio out;
  const json& js = field(j, "sets", "portfolio");
  require(js.is_array(), "\"sets\" must be an array");
  for (const auto& s : js) out.sets.push_back(id_array(s, "portfolio set"));
  if (auto it = j.find("provenance"); it != j.end() && it->is_object()) {
    if (auto f = it->find("algorithm"); f != it->end() && f->is_string()) {
      out.provenance.algorithm = f->get<std::string>();
    }
    if (auto f = it->find("prefix"); f != it->end() && f->is_number_integer()) {
      out.provenance.prefix = f->get<int>();
    }
    if (auto f = it->find("seed"); f != it->end() && f->is_number()) {
      out.provenance.seed = f->get<std::uint64_t>();
    }
  }
  return out;
}

}  // namespace portopt
