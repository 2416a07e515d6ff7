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

#ifndef CHRONICLE_TESTS_TEST_SUPPORT_HPP
#define CHRONICLE_TESTS_TEST_SUPPORT_HPP

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstddef>
#include <vector>

#include "chronicle/chronicle.hpp"

namespace chronicle_test {

using namespace chronicle;

inline void require_close(double actual, double wanted, double tol = 1e-10) {
  REQUIRE_THAT(actual, Catch::Matchers::WithinAbs(wanted, tol));
}

inline void require_ket_close(const Ket& a, const Ket& b,
                              double tol = 1e-10) {
  REQUIRE(a.dim() == b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    INFO("component " << i);
    REQUIRE(std::abs(a[i] - b[i]) <= tol);
  }
}

inline void require_op_close(const Operator& a, const Operator& b,
                             double tol = 1e-10) {
  REQUIRE(max_abs_diff(a, b) <= tol);
}

/// |psi| rescaled to unit norm, for hand-built test states.
inline Ket unit(std::vector<Cx> amplitudes) {
  Ket k(std::move(amplitudes));
  return Cx(1.0 / k.norm(), 0.0) * k;
}

}  // namespace chronicle_test

#endif  // CHRONICLE_TESTS_TEST_SUPPORT_HPP
