#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "plie/suites.hpp"

using namespace plie;
using nlohmann::json;

namespace {

std::string scenario_text(const std::string& name) {
  std::ifstream in(std::string(PLIE_SCENARIO_DIR) + "/" + name + ".json");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json scenario_json(const std::string& name) { return json::parse(scenario_text(name)); }

}  // namespace

TEST_CASE("shipped scenarios load") {
  for (const char* name : {"su2-torus", "semidirect-zero"}) {
    const ScenarioSpec s = load_scenario(std::string(PLIE_SCENARIO_DIR) + "/" + name + ".json");
    CHECK(s.name == name);
    CHECK(s.bialgebra.dim() == 3);
    CHECK(s.sub.has_value());
    CHECK(s.induction.has_value());
    CHECK(s.point_induction.has_value());
    CHECK(s.orbit_w.has_value());
    CHECK(s.samples.count("orbit") == 20);
  }
  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), ParseError);
}

TEST_CASE("scenario errors") {
  SUBCASE("malformed text") { CHECK_THROWS_AS(parse_scenario("{\"name\": "), ParseError); }

  SUBCASE("broken antisymmetry names the invariant and indices") {
    json j = scenario_json("su2-torus");
    auto& c = j["bialgebra"]["g_constants"];
    c.erase(c.begin() + 1);
    try {
      parse_scenario(j.dump());
      FAIL("expected InvariantFailure");
    } catch (const InvariantFailure& e) {
      const std::string msg = e.what();
      CHECK(msg.find("antisymmetry") != std::string::npos);
      CHECK(msg.find("(") != std::string::npos);
    }
  }

  SUBCASE("broken cocycle") {
    json j = scenario_json("su2-torus");
    for (auto& row : j["bialgebra"]["gstar_constants"])
      if (row[2] == 1) row[3] = row[3].get<double>() * 3.0;
    CHECK_THROWS_AS(parse_scenario(j.dump()), InvariantFailure);
  }

  SUBCASE("missing sample count") {
    json j = scenario_json("su2-torus");
    j["samples"].erase("bracket");
    const ScenarioSpec s = parse_scenario(j.dump());
    CHECK_THROWS_AS(s.samples.count("bracket"), ParseError);
  }

  SUBCASE("missing subgroup block") {
    json j = scenario_json("su2-torus");
    j.erase("subgroup");
    const ScenarioSpec s = parse_scenario(j.dump());
    CHECK_FALSE(s.sub.has_value());
    CHECK(run_suite(s, Suite::verify_bialgebra).all_pass());
    CHECK_THROWS_AS(run_suite(s, Suite::verify_induction), ParseError);
    CHECK_THROWS_AS(run_suite(s, Suite::induce_orbit), ParseError);
    CHECK_THROWS_AS(run_suite(s, Suite::point_induction), ParseError);
  }
}

TEST_CASE("tolerance precedence") {
  json j = scenario_json("su2-torus");
  j["tolerances"] = {{"fd_step", 1e-4}, {"newton_tol", 1e-11}};
  const ScenarioSpec s = parse_scenario(j.dump());
  SuiteOptions opts;
  CHECK(resolve_tolerances(s, opts).fd_step == 1e-4);
  CHECK(resolve_tolerances(s, opts).newton_tol == 1e-11);
  opts.env_tolerances = parse_tolerance_profile("{\"fd_step\": 2e-5}");
  CHECK(resolve_tolerances(s, opts).fd_step == 2e-5);
  CHECK(resolve_tolerances(s, opts).newton_tol == 1e-11);
  opts.cli_tolerances["fd_step"] = 3e-5;
  CHECK(resolve_tolerances(s, opts).fd_step == 3e-5);
  CHECK(resolve_tolerances(s, opts).seed == s.samples.seed);
  opts.seed = 99;
  CHECK(resolve_tolerances(s, opts).seed == 99);

  ToleranceConfig cfg;
  CHECK_THROWS_AS(apply_tolerances(cfg, {{"no_such_key", 1.0}}), ConfigError);
  CHECK_THROWS_AS(apply_tolerances(cfg, {{"fd_step", -1.0}}), ConfigError);
  CHECK_THROWS(parse_tolerance_profile("{\"fd_step\": "));
}

TEST_CASE("report serialization") {
  SUBCASE("empty report") {
    VerificationReport r;
    r.scenario = "empty";
    const std::string text = format_report(r, ReportFormat::json);
    const json j = json::parse(text);
    CHECK(j.at("checks").is_array());
    CHECK(j.at("checks").empty());
    CHECK(text.find("\"checks\": []") != std::string::npos);
    CHECK(parse_report(text) == r);
  }
  SUBCASE("roundtrip") {
    VerificationReport r{"x", 17, {{"a.b", "anchor", 3, 1.25e-7, 1e-6, true}, {"c", "", 0, 0.5, 0.0, false}}, 42};
    CHECK(parse_report(format_report(r, ReportFormat::json)) == r);
    const std::string table = format_report(r, ReportFormat::text);
    CHECK(table.find("a.b") != std::string::npos);
    CHECK(table.find("FAIL") != std::string::npos);
  }
  SUBCASE("field order") {
    const auto j = nlohmann::ordered_json::parse(format_report(VerificationReport{}, ReportFormat::json));
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"scenario", "seed", "checks", "wall_ms"});
  }
  SUBCASE("non-finite residual") {
    VerificationReport r{"x", 1, {{"a", "", 1, std::numeric_limits<double>::infinity(), 1.0, false}}, 0};
    const VerificationReport back = parse_report(format_report(r, ReportFormat::json));
    CHECK(std::isnan(back.checks[0].max_residual));
  }
  CHECK_THROWS_AS(parse_report("[1, 2"), ParseError);
  CHECK(report_format_from_string("json") == ReportFormat::json);
  CHECK_THROWS(report_format_from_string("xml"));
}

TEST_CASE("suite registry") {
  for (Suite s : all_suites()) CHECK(suite_from_string(to_string(s)) == s);
  CHECK_THROWS_AS(suite_from_string("verify-everything"), ConfigError);
  CHECK(prerequisites(Suite::verify_bialgebra).empty());
  CHECK(prerequisites(Suite::induce_orbit).size() == 3);
}

TEST_CASE("check ids belong to one suite and runs are deterministic") {
  const ScenarioSpec s = load_scenario(std::string(PLIE_SCENARIO_DIR) + "/su2-torus.json");
  std::map<std::string, int> owners;
  for (Suite suite : all_suites()) {
    const VerificationReport r = run_suite_only(s, suite);
    CHECK(r.all_pass());
    CHECK(r.wall_ms == 0);
    for (const auto& c : r.checks) ++owners[c.id];
  }
  for (const auto& [id, n] : owners) {
    INFO(id);
    CHECK(n == 1);
  }
  CHECK(owners.count("induction.bracket_jacobi") == 1);
  CHECK(owners.count("orbit.membership") == 1);

  const VerificationReport a = run_suite(s, Suite::verify_momentum);
  const VerificationReport b = run_suite(s, Suite::verify_momentum);
  CHECK(format_report(a, ReportFormat::json) == format_report(b, ReportFormat::json));
  CHECK(a.checks.front().id == "bialgebra.antisymmetry");

  SuiteOptions other;
  other.seed = s.samples.seed + 1;
  const VerificationReport c = run_suite(s, Suite::verify_momentum, other);
  CHECK(c.seed == s.samples.seed + 1);
  CHECK(format_report(a, ReportFormat::json) != format_report(c, ReportFormat::json));
}
