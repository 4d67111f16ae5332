#include <doctest.h>

#include "qbsep/sweep.hpp"

using namespace qbsep;

namespace {

SweepSummary run(const json& config) { return summarize(verify_sweep(SweepConfig::from_json(config))); }

}  // namespace

TEST_CASE("empty instance list passes") {
  const auto reports = verify_sweep(SweepConfig::from_json(json{{"instances", json::array()}}));
  CHECK(reports.empty());
  CHECK(summarize(reports).passed());
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(SweepConfig::from_json(json{{"instance", json::array()}}), std::invalid_argument);
  CHECK_THROWS_AS(SweepConfig::from_json(json{{"instances", {{{"kind", "lattice"}}}}}), std::invalid_argument);
  CHECK_THROWS_AS(SweepConfig::from_json(json{{"jobs", 0}}), std::invalid_argument);
  CHECK_THROWS_AS(SweepConfig::from_json(json{{"arithmetic", "interval"}}), std::invalid_argument);
  const auto c = SweepConfig::from_json(json::parse(R"({"instances": [{"kind": "random", "n": 8, "seeds": [3, 7]}]})"));
  REQUIRE(c.instances.size() == 5);
  CHECK(c.instances[2].descriptor["seed"] == 5);
}

TEST_CASE("random sweep: every certificate passes") {
  const auto s = run(json::parse(R"({
    "instances": [{"kind": "random", "n": 16, "seeds": [0, 99]}],
    "ks": [2, 3, 4], "jobs": 4})"));
  CHECK(s.instances == 100);
  CHECK(s.passed());
  CHECK(s.verdicts > 500);
}

TEST_CASE("tightness sweep reproduces the bound exactly") {
  const auto reports = verify_sweep(SweepConfig::from_json(json::parse(R"({
    "instances": [{"kind": "tightness", "k": 3, "omega": 1, "omega_prime": 2},
                  {"kind": "tightness", "k": 4, "omega": 1, "omega_prime": 1},
                  {"kind": "tightness", "k": 5, "omega": 1, "omega_prime": 5}],
    "objectives": ["max-min"]})")));
  REQUIRE(reports.size() == 3);
  for (const auto& r : reports) {
    CHECK(r.passed());
    bool saw_tight = false;
    for (const auto& v : r.verdicts) saw_tight |= v.name.find("tight") != std::string::npos && v.pass;
    CHECK(saw_tight);
  }
}

TEST_CASE("float arithmetic sweep") {
  const auto s = run(json::parse(R"({
    "instances": [{"kind": "random", "n": 12, "seeds": [0, 19], "law": "uniform:1:10"},
                  {"kind": "named", "shape": "complete-binary", "size": 3}],
    "arithmetic": "float", "ks": [2, 3, 4, 5]})"));
  CHECK(s.passed());
}

TEST_CASE("report order follows the config") {
  const auto reports = verify_sweep(SweepConfig::from_json(json::parse(R"({
    "instances": [{"kind": "random", "n": 40, "seeds": [0, 11]}], "jobs": 6, "ks": [2, 3]})")));
  for (std::size_t i = 0; i < reports.size(); ++i) CHECK(reports[i].instance["seed"] == i);
}

TEST_CASE("an unreadable instance is a failed verdict, not an abort") {
  const auto reports = verify_sweep(SweepConfig::from_json(json::parse(R"({
    "instances": [{"kind": "file", "path": "/nonexistent/tree.txt"}, {"kind": "named", "shape": "path", "size": 5}]})")));
  REQUIRE(reports.size() == 2);
  CHECK_FALSE(reports[0].passed());
  CHECK(reports[1].passed());
  CHECK_FALSE(summarize(reports).passed());
}
