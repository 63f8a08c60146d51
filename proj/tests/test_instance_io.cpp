#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "portopt/instance_gen.hpp"
#include "portopt/instance_io.hpp"

using namespace portopt;

TEST_CASE("instance parsing") {
  SUBCASE("uniform instance") {
    InstanceDoc doc = parse_instance_text(R"({
      "matroid": {"kind": "uniform", "rank": 2},
      "probs": [0.9, 0.5, 0.1],
      "k": 2
    })");
    CHECK(doc.instance.k == 2);
    CHECK(doc.instance.matroid->ground_size() == 3);
    CHECK(doc.instance.matroid->full_rank() == 2);
    CHECK(doc.instance.probs == std::vector<double>{0.9, 0.5, 0.1});
    CHECK(!doc.support.has_value());
  }
  SUBCASE("graphic instance with edge ids in order") {
    InstanceDoc doc = parse_instance_text(R"({
      "matroid": {"kind": "graphic", "vertices": 3,
                  "edges": [[0,1],[1,2],[2,0]]},
      "probs": [0.5, 0.5, 0.5],
      "k": 1
    })");
    CHECK(doc.instance.matroid->full_rank() == 2);
    CHECK(doc.instance.matroid->is_independent({0, 1}));
    CHECK(!doc.instance.matroid->is_independent({0, 1, 2}));
  }
  SUBCASE("partition instance") {
    InstanceDoc doc = parse_instance_text(R"({
      "matroid": {"kind": "partition", "blocks": [0,0,1,1], "capacities": [1,2]},
      "probs": [0.1, 0.2, 0.3, 0.4],
      "k": 1
    })");
    CHECK(doc.instance.matroid->full_rank() == 3);
    CHECK(!doc.instance.matroid->is_independent({0, 1}));
    CHECK(doc.instance.matroid->is_independent({0, 2, 3}));
  }
  SUBCASE("explicit instance") {
    InstanceDoc doc = parse_instance_text(R"({
      "matroid": {"kind": "explicit", "independent_sets": [[0,1],[1,2]]},
      "probs": [0.5, 0.5, 0.5],
      "k": 1
    })");
    CHECK(doc.instance.matroid->is_independent({0, 1}));
    CHECK(!doc.instance.matroid->is_independent({0, 2}));
  }
  SUBCASE("support rides along") {
    InstanceDoc doc = parse_instance_text(R"({
      "matroid": {"kind": "uniform", "rank": 1},
      "probs": [0.5, 0.5],
      "k": 1,
      "support": [{"active": [0], "prob": 0.6}, {"active": [1], "prob": 0.4}]
    })");
    REQUIRE(doc.support.has_value());
    REQUIRE(doc.support->support.size() == 2);
    CHECK(doc.support->support[0].first == ElementSet{0});
    CHECK(doc.support->support[0].second == 0.6);
    CHECK(doc.support->support[1].second == 0.4);
  }
}

TEST_CASE("malformed documents") {
  SUBCASE("syntax errors carry line and column") {
    std::string bad = "{\n  \"matroid\": {\"kind\": \"uniform\", \"rank\": 1},\n  \"probs\": [0.5,,0.5],\n  \"k\": 1\n}";
    try {
      parse_instance_text(bad);
      FAIL("expected MalformedJson");
    } catch (const MalformedJson& e) {
      CHECK(e.line == 3);
      CHECK(e.column > 10);
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
  SUBCASE("missing fields are named") {
    CHECK_THROWS_WITH_AS(parse_instance_text(R"({"probs": [0.5], "k": 1})"),
                         doctest::Contains("matroid"), InvalidInput);
    CHECK_THROWS_WITH_AS(
        parse_instance_text(R"({"matroid": {"kind": "uniform", "rank": 1}, "k": 1})"),
        doctest::Contains("probs"), InvalidInput);
    CHECK_THROWS_WITH_AS(
        parse_instance_text(
            R"({"matroid": {"kind": "uniform"}, "probs": [0.5], "k": 1})"),
        doctest::Contains("rank"), InvalidInput);
  }
  SUBCASE("unknown kind rejected") {
    CHECK_THROWS_WITH_AS(
        parse_instance_text(
            R"({"matroid": {"kind": "transversal"}, "probs": [0.5], "k": 1})"),
        doctest::Contains("transversal"), InvalidInput);
  }
  SUBCASE("size mismatches rejected") {
    CHECK_THROWS_AS(parse_instance_text(R"({
      "matroid": {"kind": "graphic", "vertices": 3, "edges": [[0,1]]},
      "probs": [0.5, 0.5],
      "k": 1
    })"),
                    InvalidInput);
  }
}

TEST_CASE("round trips") {
  SUBCASE("every serializable kind survives a round trip") {
    std::vector<Instance> cases;
    cases.push_back(gen_uniform_mixing(4));
    cases.push_back(gen_graphic_clique_path(9));
    cases.push_back(gen_random(8, 3, 2, "uniform01", "partition", 11));
    {
      InstanceDoc doc = parse_instance_text(R"({
        "matroid": {"kind": "explicit", "independent_sets": [[0,1],[1,2]]},
        "probs": [0.25, 0.5, 0.75],
        "k": 2
      })");
      cases.push_back(doc.instance);
    }
    for (const Instance& inst : cases) {
      std::string text = instance_to_json_text(inst);
      InstanceDoc back = parse_instance_text(text);
      CHECK(back.instance.k == inst.k);
      CHECK(back.instance.probs == inst.probs);
      CHECK(back.instance.matroid->ground_size() == inst.matroid->ground_size());
      CHECK(back.instance.matroid->full_rank() == inst.matroid->full_rank());
      CHECK(instance_to_json_text(back.instance) == text);
    }
  }
  SUBCASE("portfolio round trip with provenance") {
    Portfolio p;
    p.sets = {{0, 2}, {1}};
    p.provenance = {"uniform", 3, 99};
    ValueEstimate est;
    est.mean = 1.25;
    est.ci_half_width = 0.1;
    est.n_samples = 4000;
    est.seed = 7;
    std::string text = portfolio_to_json_text(p, &est);
    Portfolio back = parse_portfolio_text(text);
    CHECK(back.sets == p.sets);
    CHECK(back.provenance.algorithm == "uniform");
    CHECK(back.provenance.prefix == 3);
    CHECK(back.provenance.seed == 99);
    CHECK(text.find("\"mean\"") != std::string::npos);
    std::string bare = portfolio_to_json_text(p, nullptr);
    CHECK(bare.find("estimate") == std::string::npos);
  }
}
