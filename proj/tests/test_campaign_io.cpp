#include <cmath>
#include <limits>
#include <string>

#include "doctest.h"
#include "entrocount/campaign.hpp"
#include "entrocount/errors.hpp"
#include "entrocount/io.hpp"

using namespace entrocount;
using nlohmann::json;

TEST_SUITE("io") {
  TEST_CASE("probability input") {
    const auto d = io::parse_probability_input(json::parse("[0.25, 0.75]"));
    CHECK(std::holds_alternative<DiscreteDistribution>(d));
    const auto t = io::parse_probability_input(
        json::parse(R"({"shape": [2, 2], "probs": [0.1, 0.2, 0.3, 0.4]})"));
    REQUIRE(std::holds_alternative<JointTable>(t));
    CHECK(std::get<JointTable>(t).probs()[3] == 0.4);
    CHECK_THROWS_AS(io::parse_probability_input(json::parse("[1, 1]")), IngestionError);
    CHECK_NOTHROW(io::parse_probability_input(json::parse("[1, 1]"), true));
    CHECK_THROWS(io::parse_probability_input(json::parse(R"({"probs": [1]})")));
  }

  TEST_CASE("joint table round trip") {
    const JointTable t({2, 3}, {0.1, 0.2, 0.1, 0.3, 0.2, 0.1});
    const auto back = io::parse_joint_table(io::to_json(t));
    CHECK(back.shape() == t.shape());
    CHECK(std::equal(back.probs().begin(), back.probs().end(), t.probs().begin()));
  }

  TEST_CASE("set family is 1-based on the wire") {
    const auto f = io::parse_set_family(json::parse(R"({"n": 3, "sets": [[1, 2], [1, 3], [2, 3]]})"));
    CHECK(f.sets() == std::vector<ElementMask>{0b011, 0b101, 0b110});
    CHECK(io::to_json(f) == json::parse(R"({"n": 3, "sets": [[1, 2], [1, 3], [2, 3]]})"));
    CHECK_THROWS_AS(io::parse_set_family(json::parse(R"({"n": 2, "sets": [[0]]})")), IngestionError);
    CHECK_THROWS_AS(io::parse_set_family(json::parse(R"({"n": 2, "sets": [[3]]})")), IngestionError);
  }

  TEST_CASE("cover") {
    const auto c = io::parse_cover(json::parse(R"({"n": 2, "groups": [[1], [2], [1, 2]]})"));
    CHECK(c.k() == 2);
    CHECK(io::to_json(c).at("k") == 2);
    CHECK(io::to_json(c).at("groups") == json::parse("[[1], [2], [1, 2]]"));
  }

  TEST_CASE("matrix text") {
    const auto a = io::parse_matrix_text("# example\n1 1 1\n0 1 0\n0 0 1\n");
    CHECK(a == BinaryMatrix::identity_with_full_first_row(3));
    const auto b = io::parse_matrix_text("111\n010\n001");
    CHECK(a == b);
    CHECK_THROWS_AS(io::parse_matrix_text("11\n1"), IngestionError);
    CHECK_THROWS_AS(io::parse_matrix_text("12\n11"), IngestionError);
    CHECK_THROWS_AS(io::parse_matrix_text("111\n111"), IngestionError);
    CHECK(io::parse_matrix_json(io::to_json(a)) == a);
  }

  TEST_CASE("graph") {
    const auto m = io::parse_graph(json::parse(R"({"n": 2, "edges": [[1, 1], [2, 2], [1, 2]]})"));
    CHECK(m == BinaryMatrix::from_rows({{1, 1}, {0, 1}}));
    CHECK_THROWS_AS(io::parse_graph(json::parse(R"({"n": 2, "edges": [[3, 1]]})")), IngestionError);
  }

  TEST_CASE("report json") {
    BoundReport r;
    r.alpha = AlphaParameter(3.0);
    r.rhs_entropy_space = 2.0;
    r.ceiling = std::numeric_limits<double>::infinity();
    r.vacuous = true;
    const auto j = io::to_json(r);
    CHECK(j.at("ceiling") == "inf");
    CHECK(j.at("integer_ceiling").is_null());
    CHECK(j.at("vacuous") == true);
    CHECK(std::isinf(io::parse_number(j.at("ceiling"))));

    const auto c = io::to_json(CheckResult{1.0, 1.5, true});
    CHECK(c.at("slack") == 0.5);
  }
}

TEST_SUITE("campaign") {
  TEST_CASE("suite names") {
    CHECK(parse_suite("permanent") == Suite::kPermanent);
    CHECK(to_string(Suite::kAll) == "all");
    CHECK_THROWS_AS(parse_suite("bogus"), ArgumentError);
  }

  TEST_CASE("config validation") {
    RunConfig c;
    c.instances = 0;
    CHECK_THROWS_AS(validate(c), ArgumentError);
    c.instances = 1;
    c.tolerance = 0;
    CHECK_THROWS_AS(validate(c), ArgumentError);
    c.tolerance = 1e-10;
    c.alphas = {1.0, -1.0};
    CHECK_THROWS(validate(c));
    CHECK_THROWS_AS(run_campaign(Suite::kEntropy, RunConfig{.instances = 0}), ArgumentError);
  }

  TEST_CASE("alpha grids") {
    const auto g = intersection_alpha_grid();
    REQUIRE(g.size() == 8);
    CHECK(g.front() == 1.0);
    CHECK(g.back() == doctest::Approx(3.67).epsilon(1e-15));
    CHECK(default_alphas(Suite::kPermanent).size() == 9);
  }

  TEST_CASE("every suite passes on a small run") {
    for (auto s : {Suite::kEntropy, Suite::kShearer, Suite::kFamily, Suite::kPermanent}) {
      const auto r = run_campaign(s, {.seed = 7, .instances = 30});
      CHECK(r.ok());
      CHECK(r.total_cases() > 0);
    }
  }

  TEST_CASE("determinism") {
    const RunConfig c{.seed = 99, .instances = 20, .record_all = true};
    const auto a = run_campaign(Suite::kAll, c).to_json().dump();
    const auto b = run_campaign(Suite::kAll, c).to_json().dump();
    CHECK(a == b);
    const auto other = run_campaign(Suite::kAll, {.seed = 100, .instances = 20, .record_all = true});
    CHECK(other.to_json().dump() != a);
  }

  TEST_CASE("replay reproduces recorded cases exactly") {
    const RunConfig c{.seed = 5, .instances = 10, .record_all = true, .max_records = 1000};
    for (auto s : {Suite::kEntropy, Suite::kShearer, Suite::kFamily, Suite::kPermanent}) {
      const auto summary = run_campaign(s, c);
      REQUIRE_FALSE(summary.records.empty());
      // Round-trip through text, as a dump file would.
      const auto dump = json::parse(summary.to_json().dump());
      const auto outcomes = replay(dump);
      REQUIRE(outcomes.size() == summary.records.size());
      for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const auto& rec = summary.records[i];
        CHECK(io::parse_number(outcomes[i].at("lhs")) == io::parse_number(rec.at("lhs")));
        CHECK(io::parse_number(outcomes[i].at("rhs")) == io::parse_number(rec.at("rhs")));
        CHECK(outcomes[i].at("holds") == rec.at("holds"));
      }
    }
  }

  TEST_CASE("evaluate_case on hand-written cases") {
    const auto chain = evaluate_case(json::parse(R"({
      "check": "chain_rule", "alpha": 2.0,
      "input": {"shape": [2, 2], "probs": [0.25, 0.25, 0.25, 0.25]},
      "params": {"order": [0, 1]}, "tolerance": 1e-10})"));
    CHECK(chain.holds);
    CHECK(chain.lhs == doctest::Approx(0.75));

    const auto validity = evaluate_case(json::parse(R"({
      "check": "bound_validity", "alpha": 2.0,
      "input": ["1111", "0100", "0010", "0001"], "params": {}, "tolerance": 1e-9})"));
    CHECK(validity.holds);
    CHECK(validity.lhs == 1.0);
    CHECK(validity.rhs == doctest::Approx(1.92));

    CHECK_THROWS(evaluate_case(json::parse(R"({"check": "nope", "alpha": 1.0, "input": [], "params": {}, "tolerance": 0})")));
  }

  TEST_CASE("summary rendering") {
    const auto r = run_campaign(Suite::kFamily, {.instances = 5});
    const auto j = r.to_json();
    for (const char* key : {"suite", "seed", "instances", "cases", "violations", "worst_slack", "checks"})
      CHECK(j.contains(key));
    CHECK(r.to_table().find("PASS") != std::string::npos);
  }
}
