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

// Acceptance gate: thirteen behavioral criteria, one verdict line each.
// Every criterion delegates to named checks from the verification
// registry; the tolerances are pinned here and nowhere else.

#include <cstdio>
#include <string>
#include <vector>

#include "chronicle/chronicle.hpp"

namespace {

struct Criterion {
  const char* description;
  std::vector<std::string> checks;
  double tol;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {"opposite-spin family: exactly two histories, each at one half",
       {"eq24"}, 1e-10},
      {"two-time marginals equal the single-time distribution",
       {"eq25"}, 1e-10},
      {"tilted analyses split weights by the half angle", {"eq28"}, 1e-10},
      {"pointer readings track system values through a measurement",
       {"eq17", "eq18", "eq19"}, 1e-10},
      {"a recorded outcome certifies the distant partner's spin",
       {"eq32", "eq33"}, 1e-10},
      {"the collapse shortcut reproduces conditional probabilities",
       {"eq35"}, 1e-10},
      {"recorded and unrecorded values persist across later times",
       {"eq37", "eq38"}, 1e-10},
      {"joint recordings on both sides follow the half-angle law",
       {"eq41", "eq42", "eq43"}, 1e-10},
      {"near-side apparatus choices leave far-side statistics unchanged",
       {"locality"}, 1e-10},
      {"a concrete noncommuting triple breaks the distributive law",
       {"eq2"}, 1e-10},
      {"interference is detected and framework compatibility classified",
       {"consistency", "incompat"}, 1e-10},
      {"forward and backward one-time weights agree", {"preprob"}, 1e-12},
      {"optimal settings reach the quantum correlation bound while every "
       "classical assignment stays below it",
       {"chsh"}, 1e-9},
  };
  return all;
}

}  // namespace

int main() {
  bool all_pass = true;
  const std::vector<Criterion>& list = criteria();
  for (std::size_t i = 0; i < list.size(); ++i) {
    const Criterion& criterion = list[i];
    chronicle::CheckOptions options;
    options.tol = criterion.tol;
    bool pass = true;
    double worst = 0.0;
    std::string failure;
    try {
      for (const chronicle::CheckResult& result :
           chronicle::verification_checks(options, criterion.checks)) {
        if (result.max_error > worst) worst = result.max_error;
        if (!result.pass) {
          pass = false;
          if (!failure.empty()) failure += "; ";
          failure += result.id + ": " + result.detail;
        }
      }
    } catch (const std::exception& e) {
      pass = false;
      failure = std::string("exception: ") + e.what();
    }
    all_pass = all_pass && pass;
    std::printf("[%2zu/13] %s  %s  (max err %.3e, tol %.0e)\n", i + 1,
                pass ? "PASS" : "FAIL", criterion.description, worst,
                criterion.tol);
    if (!pass) std::printf("        %s\n", failure.c_str());
  }
  std::printf("%s: %zu criteria\n", all_pass ? "ALL PASS" : "FAILED",
              list.size());
  return all_pass ? 0 : 1;
}
