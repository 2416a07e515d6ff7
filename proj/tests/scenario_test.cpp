// Copyright 2026 The Chronicle Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "test_support.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace chronicle_test {
namespace {

std::string scenario_path(const std::string& file) {
  return std::string(CHRONICLE_SCENARIO_DIR) + "/" + file;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

const char* kInlineDoc = R"({
  "name": "inline",
  "spaces": [{"label": "q", "dim": 2}],
  "grid": [0, 1],
  "initial": {"amplitudes": [1, 0]},
  "dynamics": ["identity"],
  "slots": [{"product": [{"factor": "q", "spin": {"theta": 0}}]}],
  "queries": [
    {"type": "probability", "tokens": [{"slot": 1, "token": "q+"}]}
  ],
  "tolerance": 0.001
})";

TEST_CASE("documents parse into runnable scenarios", "[scenario]") {
  Scenario s = parse_scenario(kInlineDoc);
  REQUIRE(s.name == "inline");
  REQUIRE(s.prepared.family.slot_count() == 1);
  REQUIRE(s.prepared.space.total_dim() == 2);
  REQUIRE(s.queries.size() == 1);
  REQUIRE(s.tolerance.has_value());
  require_close(*s.tolerance, 0.001);

  Json report = run_scenario(s);
  REQUIRE(report["consistency"]["consistent"].get<bool>());
  require_close(report["queries"][0]["value"].get<double>(), 1.0);
  require_close(report["table"]["total"].get<double>(), 1.0);
}

TEST_CASE("parse failures name the offending location", "[scenario]") {
  auto location_of = [](const std::string& text) {
    try {
      parse_scenario(text);
      FAIL("expected ParseError");
      return std::string();
    } catch (const ParseError& e) {
      return e.location();
    }
  };

  REQUIRE(location_of("{ not json").find("byte") != std::string::npos);
  REQUIRE(location_of("[1, 2]") == "/");
  REQUIRE(location_of(R"({"grid": [0, 1]})") == "/");  // missing spaces

  std::string bad_grid = kInlineDoc;
  bad_grid.replace(bad_grid.find("[0, 1]"), 6, "[0]");
  REQUIRE(location_of(bad_grid) == "/grid");

  std::string bad_query = kInlineDoc;
  bad_query.replace(bad_query.find("probability"), 11, "histogram");
  REQUIRE(location_of(bad_query).find("/queries[0]") != std::string::npos);

  std::string bad_factor = kInlineDoc;
  bad_factor.replace(bad_factor.find("\"q\", \"spin\""), 11,
                     "\"r\", \"spin\"");
  REQUIRE_THROWS_AS(parse_scenario(bad_factor), ValidationError);
}

TEST_CASE("reports round-trip through canonical serialization",
          "[scenario]") {
  Scenario s = load_scenario(scenario_path("eq23.json"));
  Json report = run_scenario(s);
  std::string text = canonical_json(report);
  Json back = parse_report(text);
  REQUIRE(back == report);
  REQUIRE(canonical_json(back) == text);
  REQUIRE(text.back() == '\n');
  REQUIRE(report["engine_version"].get<std::string>() == kVersion);
}

TEST_CASE("queries answer from the family's probability table",
          "[scenario]") {
  Scenario s = load_scenario(scenario_path("eq23.json"));
  Json report = run_scenario(s);
  // Marginal over the later slot: two live entries at one half.
  const Json& entries = report["queries"][0]["table"]["entries"];
  double live = 0.0;
  for (const Json& e : entries) {
    double p = e["probability"].get<double>();
    if (p > 1e-12) {
      require_close(p, 0.5);
      live += 1.0;
    }
  }
  require_close(live, 2.0);
  require_close(report["queries"][1]["value"].get<double>(), 0.5);
  require_close(report["queries"][2]["value"].get<double>(), 1.0);
}

TEST_CASE("every bundled scenario runs clean", "[scenario]") {
  const std::vector<std::string> bundled = {
      "eq16.json", "eq20.json", "eq23.json", "eq26.json",
      "eq27.json", "eq31.json", "eq36.json", "eq40_theta_pi_3.json"};
  for (const std::string& file : bundled) {
    INFO(file);
    Scenario s = load_scenario(scenario_path(file));
    REQUIRE_FALSE(s.name.empty());
    Json report = run_scenario(s);
    REQUIRE(report["consistency"]["consistent"].get<bool>());
    require_close(report["table"]["total"].get<double>(), 1.0);
    // The report echoes the source document verbatim.
    REQUIRE(report["scenario"] == Json::parse(slurp(scenario_path(file))));
  }
}

TEST_CASE("missing files are reported as parse errors", "[scenario]") {
  REQUIRE_THROWS_AS(load_scenario(scenario_path("does_not_exist.json")),
                    ParseError);
}

}  // namespace
}  // namespace chronicle_test
