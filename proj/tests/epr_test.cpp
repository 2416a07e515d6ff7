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

#include <cmath>
#include <numbers>
#include <vector>

namespace chronicle_test {
namespace {

constexpr double kPi = std::numbers::pi;

TEST_CASE("directions normalize onto the upper sphere", "[epr]") {
  Direction wrapped(3.0 * kPi / 2.0);
  require_close(wrapped.theta(), kPi / 2.0);
  require_close(wrapped.phi(), kPi);
  Direction negative(-kPi / 3.0);
  require_close(negative.theta(), kPi / 3.0);
  require_close(negative.phi(), kPi);
  require_close(Direction::z().theta(), 0.0);
  require_close(Direction::minus_z().theta(), kPi);
  require_close(Direction::x().theta(), kPi / 2.0);
  require_close(Direction::y().phi(), kPi / 2.0);
}

TEST_CASE("spin states follow the half-angle parameterization", "[epr]") {
  require_ket_close(spin_plus(Direction::z()), Ket::basis_vector(2, 0));
  require_ket_close(spin_minus(Direction::z()), Ket::basis_vector(2, 1));
  double r = 1.0 / std::sqrt(2.0);
  require_ket_close(spin_plus(Direction::x()), Ket({Cx(r, 0), Cx(r, 0)}));
  require_ket_close(spin_minus(Direction::x()), Ket({Cx(-r, 0), Cx(r, 0)}));

  Direction skew(2.0, 0.7);
  Ket up = spin_plus(skew);
  Ket down = spin_minus(skew);
  require_close(up.norm(), 1.0);
  require_close(down.norm(), 1.0);
  require_close(std::abs(inner(up, down)), 0.0);
  require_op_close(spin_projector(skew, Spin::kPlus).op() +
                       spin_projector(skew, Spin::kMinus).op(),
                   Operator::identity(2));
  REQUIRE(spin_projector(skew, Spin::kPlus).label() == "w+");
  REQUIRE(spin_projector(skew, Spin::kMinus).label() == "w-");
}

TEST_CASE("the paired state weights opposite outcomes equally", "[epr]") {
  Ket s = singlet();
  double r = 1.0 / std::sqrt(2.0);
  require_ket_close(s, Ket({Cx(0, 0), Cx(r, 0), Cx(-r, 0), Cx(0, 0)}));
  // No direction ever shows the same sign on both sides.
  for (const Direction& w : {Direction::z(), Direction::x(), Direction::y(),
                             Direction(2.0, 0.7)}) {
    require_close(
        std::abs(inner(tensor_ket(spin_plus(w), spin_plus(w)), s)), 0.0);
    require_close(
        std::abs(inner(tensor_ket(spin_minus(w), spin_minus(w)), s)), 0.0);
    require_close(
        std::abs(inner(tensor_ket(spin_plus(w), spin_minus(w)), s)), r);
  }
}

TEST_CASE("the paired state lands on the named factors of a larger space",
          "[epr]") {
  TensorSpace space{{"a", 2}, {"M", 3}, {"b", 2}};
  Ket psi = singlet_on(space, "a", "b");
  REQUIRE(psi.dim() == 12);
  double r = 1.0 / std::sqrt(2.0);
  // Flat index (ia * 3 + im) * 2 + ib; the unnamed factor sits at 0.
  require_close(std::abs(psi[1] - Cx(r, 0)), 0.0);
  require_close(std::abs(psi[6] - Cx(-r, 0)), 0.0);
  require_close(psi.norm(), 1.0);
  REQUIRE_THROWS_AS(singlet_on(space, "a", "M"), ValidationError);
  REQUIRE_THROWS_AS(singlet_on(space, "a", "a"), ValidationError);
}

TEST_CASE("paired spins anticorrelate along a shared axis", "[epr]") {
  PreparedFamily prepared =
      family_no_measurement(Direction::z(), Direction::z());
  REQUIRE(prepared.family.history_count() == 16);
  REQUIRE(check_consistency(prepared.family, prepared.dynamics).consistent);
  ProbabilityTable table = probabilities(prepared.family, prepared.dynamics);
  require_close(table.total(), 1.0);
  require_close(table.value_of({"a+&b-", "a+&b-"}), 0.5);
  require_close(table.value_of({"a-&b+", "a-&b+"}), 0.5);
  require_close(table.value_of({"a+&b+", "a+&b+"}), 0.0);
  require_close(table.value_of({"a+&b-", "a-&b+"}), 0.0);
}

TEST_CASE("tilted analyses split weights by the half angle", "[epr]") {
  PreparedFamily prepared =
      family_no_measurement(Direction::z(), Direction(kPi / 3.0));
  ProbabilityTable table = probabilities(prepared.family, prepared.dynamics);
  // cos^2(pi/6) / 2 and sin^2(pi/6) / 2.
  require_close(table.value_of({"a+&b-", "a+&b-"}), 0.375);
  require_close(table.value_of({"a+&b+", "a+&b+"}), 0.125);
  require_close(table.value_of({"a-&b+", "a-&b+"}), 0.375);
  require_close(table.value_of({"a-&b-", "a-&b-"}), 0.125);
}

TEST_CASE("a recorded near-side outcome certifies the far-side spin",
          "[epr]") {
  PreparedFamily prepared = family_measure_a(Direction::z());
  ProbabilityTable table = probabilities(prepared.family, prepared.dynamics);
  require_close(table.total(), 1.0);
  require_close(conditional(table, {{3, "M+"}}, {{3, "b-"}}), 1.0);
  require_close(conditional(table, {{3, "M-"}}, {{3, "b+"}}), 1.0);
  // The recorded value matches the particle's earlier spin.
  require_close(conditional(table, {{3, "M+"}}, {{1, "a+"}, {2, "a+"}}),
                1.0);
  require_close(event_probability(table, {{3, "M+"}}), 0.5);
  require_close(event_probability(table, {{3, "M0"}}), 0.0);
}

TEST_CASE("joint recordings follow the half-angle law", "[epr]") {
  PreparedFamily prepared = family_measure_both(kPi / 3.0);
  REQUIRE(prepared.space.total_dim() == 36);
  ProbabilityTable table = probabilities(prepared.family, prepared.dynamics);
  require_close(table.total(), 1.0);
  require_close(conditional(table, {{3, "M+"}}, {{3, "N+"}}), 0.25);
  require_close(conditional(table, {{3, "M-"}}, {{3, "N-"}}), 0.25);
  require_close(conditional(table, {{3, "M+"}}, {{3, "N-"}}), 0.75);
}

TEST_CASE("the scenario builder wires the optional apparatuses", "[epr]") {
  EprScenario bare;
  bare.b_analysis = Direction::x();
  PreparedFamily no_apparatus = build_epr_family(bare);
  REQUIRE(no_apparatus.family.slot_count() == 2);
  REQUIRE(no_apparatus.space.total_dim() == 4);

  EprScenario a_only;
  a_only.a_setting = Direction::z();
  PreparedFamily with_a = build_epr_family(a_only);
  REQUIRE(with_a.family.slot_count() == 3);
  REQUIRE(with_a.space.total_dim() == 12);

  EprScenario both;
  both.a_setting = Direction::z();
  both.b_setting = Direction(kPi / 3.0);
  REQUIRE(build_epr_family(both).space.total_dim() == 36);

  EprScenario b_only;
  b_only.b_setting = Direction::z();
  REQUIRE_THROWS_AS(build_epr_family(b_only), ValidationError);
}

TEST_CASE("the compatibility matrix flags refinement obstructions",
          "[epr]") {
  std::vector<HistoryFamily> families = {
      family_no_measurement(Direction::z(), Direction::z()).family,
      family_no_measurement(Direction::z(), Direction::x()).family,
      family_no_measurement(Direction::z(), Direction::z()).family};
  std::vector<std::vector<bool>> m = compatibility_matrix(families);
  REQUIRE(m.size() == 3);
  REQUIRE(m[0][0]);
  REQUIRE_FALSE(m[0][1]);
  REQUIRE(m[0][2]);
  REQUIRE(m[1][0] == m[0][1]);

  std::vector<HistoryFamily> mismatched = {
      families[0], family_measure_a(Direction::z()).family};
  REQUIRE_THROWS_AS(compatibility_matrix(mismatched), GridMismatch);
}

TEST_CASE("recorded correlations reproduce the negative cosine", "[epr]") {
  for (double theta : {0.0, kPi / 5.0, kPi / 2.0, 2.2}) {
    require_close(correlation(theta), -std::cos(theta), 1e-9);
  }
  require_close(correlation(Direction::z(), Direction(kPi / 3.0)), -0.5,
                1e-9);
}

TEST_CASE("optimal settings meet the quantum correlation bound", "[epr]") {
  double s = chsh(Direction::z(), Direction::x(), Direction(kPi / 4.0),
                  Direction(-kPi / 4.0));
  require_close(std::abs(s), 2.0 * std::sqrt(2.0), 1e-9);
  REQUIRE(std::abs(s) > 2.0 + 0.5);
}

}  // namespace
}  // namespace chronicle_test
