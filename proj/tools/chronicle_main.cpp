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

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "chronicle/chronicle.hpp"

namespace {

using chronicle::Json;

std::optional<double> env_tolerance() {
  const char* raw = std::getenv("CHRONICLE_TOL");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  double value = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(value > 0.0))
    throw chronicle::ValidationError(
        "CHRONICLE_TOL must be a positive number, got '" + std::string(raw) +
        "'");
  return value;
}

double resolve_tolerance(const std::optional<double>& flag,
                         const std::optional<double>& document) {
  if (flag) return *flag;
  if (std::optional<double> env = env_tolerance()) return *env;
  if (document) return *document;
  return chronicle::kDefaultTol;
}

std::string join_history(const Json& labels) {
  std::string out;
  for (const Json& label : labels) {
    if (!out.empty()) out += ", ";
    out += label.get<std::string>();
  }
  return "(" + out + ")";
}

void print_run_table(const Json& report) {
  const Json& consistency = report.at("consistency");
  std::printf("engine %s, tolerance %g\n",
              report.at("engine_version").get<std::string>().c_str(),
              report.at("tolerance").get<double>());
  std::printf("consistent: %s (worst overlap %.3e)\n",
              consistency.at("consistent").get<bool>() ? "yes" : "no",
              consistency.at("worst_overlap").get<double>());
  const Json& table = report.at("table");
  std::size_t width = 12;
  for (const Json& entry : table.at("entries"))
    width = std::max(width, join_history(entry.at("history")).size());
  std::printf("%-*s  %s\n", static_cast<int>(width), "history",
              "probability");
  for (const Json& entry : table.at("entries"))
    std::printf("%-*s  %.17g\n", static_cast<int>(width),
                join_history(entry.at("history")).c_str(),
                entry.at("probability").get<double>());
  std::printf("%-*s  %.17g\n", static_cast<int>(width), "total",
              table.at("total").get<double>());
  for (const Json& answer : report.at("queries")) {
    std::string question = answer.at("query").dump();
    if (answer.contains("value")) {
      std::printf("query %s -> %.17g\n", question.c_str(),
                  answer.at("value").get<double>());
    } else {
      std::printf("query %s ->\n", question.c_str());
      for (const Json& entry : answer.at("table").at("entries"))
        std::printf("  %-*s  %.17g\n", static_cast<int>(width),
                    join_history(entry.at("history")).c_str(),
                    entry.at("probability").get<double>());
    }
  }
}

int run_command(const std::string& path, const std::optional<double>& tol,
                const std::string& output) {
  chronicle::Scenario scenario = chronicle::load_scenario(path);
  double effective = resolve_tolerance(tol, scenario.tolerance);
  Json report = chronicle::run_scenario(scenario, effective);
  if (output == "json")
    std::cout << chronicle::canonical_json(report);
  else
    print_run_table(report);
  return 0;
}

int verify_command(const std::vector<std::string>& only,
                   const std::optional<double>& theta,
                   const std::optional<double>& tol,
                   const std::string& output) {
  chronicle::CheckOptions options;
  options.tol = resolve_tolerance(tol, std::nullopt);
  options.theta = theta;
  std::vector<chronicle::CheckResult> results =
      chronicle::verification_checks(options, only);
  bool all_pass = true;
  for (const chronicle::CheckResult& r : results) all_pass &= r.pass;
  if (output == "json") {
    Json checks = Json::array();
    for (const chronicle::CheckResult& r : results)
      checks.push_back(Json{{"id", r.id},
                            {"description", r.description},
                            {"pass", r.pass},
                            {"max_error", r.max_error},
                            {"tolerance", r.tolerance},
                            {"detail", r.detail}});
    Json report{{"all_pass", all_pass},
                {"checks", checks},
                {"engine_version", chronicle::kVersion}};
    std::cout << chronicle::canonical_json(report);
  } else {
    std::printf("%-12s %-6s %-11s %-9s %s\n", "check", "status", "max error",
                "tol", "description");
    for (const chronicle::CheckResult& r : results)
      std::printf("%-12s %-6s %-11.3e %-9.1e %s\n", r.id.c_str(),
                  r.pass ? "PASS" : "FAIL", r.max_error, r.tolerance,
                  r.description.c_str());
    std::size_t passed = 0;
    for (const chronicle::CheckResult& r : results) passed += r.pass;
    std::printf("%zu of %zu checks passed\n", passed, results.size());
    for (const chronicle::CheckResult& r : results)
      if (!r.pass)
        std::printf("  %s failed at %s\n", r.id.c_str(), r.detail.c_str());
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Consistent-histories engine for small quantum systems"};
  app.set_version_flag("--version", chronicle::kVersion);
  app.require_subcommand(1);

  std::string scenario_path;
  std::optional<double> run_tol;
  std::string run_output = "json";
  CLI::App* run = app.add_subcommand(
      "run", "Evaluate a scenario document and print its report");
  run->add_option("file", scenario_path, "scenario JSON document")
      ->required();
  run->add_option("--tol", run_tol,
                  "tolerance (overrides CHRONICLE_TOL and the document)");
  run->add_option("--output", run_output, "report form")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();

  std::vector<std::string> only;
  std::optional<double> verify_theta;
  std::optional<double> verify_tol;
  std::string verify_output = "table";
  CLI::App* verify = app.add_subcommand(
      "verify-paper", "Run the named golden checks and report pass/fail");
  verify->add_option("--only", only, "run just the named checks")
      ->expected(-1);
  verify->add_option("--theta", verify_theta,
                     "angle, in radians, replacing the default angle grid");
  verify->add_option("--tol", verify_tol,
                     "tolerance (overrides CHRONICLE_TOL)");
  verify->add_option("--output", verify_output, "report form")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_command(scenario_path, run_tol, run_output);
    return verify_command(only, verify_theta, verify_tol, verify_output);
  } catch (const chronicle::ParseError& e) {
    std::cerr << "parse error at " << e.location() << ": " << e.what()
              << "\n";
    return 2;
  } catch (const chronicle::InconsistentFamily& e) {
    std::cerr << "inconsistent family: " << e.what() << "\n";
    return 1;
  } catch (const chronicle::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
