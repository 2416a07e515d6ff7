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

#include <vector>

namespace chronicle_test {
namespace {

MeasurementSpec two_level_spec() {
  return MeasurementSpec::standard(
      {Ket::basis_vector(2, 0), Ket::basis_vector(2, 1)});
}

TEST_CASE("measurement specs validate their states", "[measurement]") {
  MeasurementSpec spec = two_level_spec();
  REQUIRE(spec.outcome_count() == 2);
  REQUIRE(spec.system_dim() == 2);
  REQUIRE(spec.pointer_dim() == 3);
  REQUIRE(spec.nondestructive());
  require_ket_close(spec.pointer_ready(), Ket::basis_vector(3, 0));
  require_ket_close(spec.pointer_outcomes()[1], Ket::basis_vector(3, 2));

  // Non-orthonormal system basis.
  REQUIRE_THROWS_AS(
      MeasurementSpec::standard({Ket::basis_vector(2, 0),
                                 unit({Cx(1, 0), Cx(1, 0)})}),
      ValidationError);
  // Outcome count must match the basis.
  REQUIRE_THROWS_AS(
      MeasurementSpec({Ket::basis_vector(2, 0), Ket::basis_vector(2, 1)},
                      Ket::basis_vector(3, 0), {Ket::basis_vector(3, 1)}),
      ValidationError);
  // An outcome overlapping the ready state cannot record anything.
  REQUIRE_THROWS_AS(
      MeasurementSpec({Ket::basis_vector(2, 0), Ket::basis_vector(2, 1)},
                      Ket::basis_vector(3, 0),
                      {Ket::basis_vector(3, 0), Ket::basis_vector(3, 2)}),
      ValidationError);
}

TEST_CASE("the interaction pairs each basis state with its outcome",
          "[measurement]") {
  MeasurementSpec spec = two_level_spec();
  Operator u = build_measurement_unitary(spec);
  REQUIRE(is_unitary(u));
  Ket e0 = Ket::basis_vector(2, 0);
  Ket e1 = Ket::basis_vector(2, 1);
  Ket ready = Ket::basis_vector(3, 0);
  require_ket_close(u * tensor_ket(e0, ready),
                    tensor_ket(e0, Ket::basis_vector(3, 1)));
  require_ket_close(u * tensor_ket(e1, ready),
                    tensor_ket(e1, Ket::basis_vector(3, 2)));

  // Linearity on a superposition: the pointer entangles, nothing jumps.
  std::vector<Cx> c = {Cx(0.6, 0.0), Cx(0.0, 0.8)};
  Ket entangled = u * initial_state(spec, c);
  require_ket_close(entangled,
                    c[0] * tensor_ket(e0, Ket::basis_vector(3, 1)) +
                        c[1] * tensor_ket(e1, Ket::basis_vector(3, 2)));
}

TEST_CASE("completion order never changes the specified action",
          "[measurement]") {
  MeasurementSpec spec = two_level_spec();
  Operator forward = build_measurement_unitary(spec,
                                               CompletionOrder::kForward);
  Operator reversed = build_measurement_unitary(spec,
                                                CompletionOrder::kReversed);
  REQUIRE(is_unitary(forward));
  REQUIRE(is_unitary(reversed));
  for (std::size_t j = 0; j < spec.outcome_count(); ++j) {
    Ket in = tensor_ket(spec.system_basis()[j], spec.pointer_ready());
    require_ket_close(forward * in, reversed * in);
  }
}

TEST_CASE("destructive specs move the system while the pointer records",
          "[measurement]") {
  Ket e0 = Ket::basis_vector(2, 0);
  Ket e1 = Ket::basis_vector(2, 1);
  MeasurementSpec swapping({e0, e1}, Ket::basis_vector(3, 0),
                           {Ket::basis_vector(3, 1),
                            Ket::basis_vector(3, 2)},
                           {e1, e0});
  REQUIRE_FALSE(swapping.nondestructive());
  Operator u = build_measurement_unitary(swapping);
  require_ket_close(u * tensor_ket(e0, Ket::basis_vector(3, 0)),
                    tensor_ket(e1, Ket::basis_vector(3, 1)));
}

TEST_CASE("measurement families weight outcomes by squared amplitudes",
          "[measurement]") {
  MeasurementSpec spec = two_level_spec();
  std::vector<Cx> c = {Cx(0.6, 0.0), Cx(0.8, 0.0)};
  PreparedFamily prepared =
      measurement_family(spec, initial_state(spec, c), TimeGrid::uniform(3));
  ProbabilityTable table = probabilities(prepared.family, prepared.dynamics);
  require_close(table.total(), 1.0);
  require_close(table.value_of({"s1", "M1"}), 0.36);
  require_close(table.value_of({"s2", "M2"}), 0.64);
  require_close(table.value_of({"s1", "M2"}), 0.0);
  require_close(table.value_of({"s2", "M1"}), 0.0);
  require_close(table.value_of({"s1", "M0"}), 0.0);
  require_close(conditional(table, {{2, "M1"}}, {{1, "s1"}}), 1.0);
  require_close(conditional(table, {{1, "s2"}}, {{2, "M2"}}), 1.0);

  REQUIRE_THROWS_AS(
      measurement_family(spec, initial_state(spec, c), TimeGrid::uniform(4)),
      ValidationError);
}

TEST_CASE("nondestructive families certify the system after the reading",
          "[measurement]") {
  MeasurementSpec spec = two_level_spec();
  std::vector<Cx> c = {Cx(0.6, 0.0), Cx(0.8, 0.0)};
  PreparedFamily prepared = nondestructive_family(
      spec, initial_state(spec, c), TimeGrid::uniform(3));
  ProbabilityTable table = probabilities(prepared.family, prepared.dynamics);
  require_close(event_probability(table, {{2, "M1"}, {2, "s1"}}), 0.36);
  require_close(event_probability(table, {{2, "M2"}, {2, "s2"}}), 0.64);
  require_close(event_probability(table, {{2, "M1"}, {2, "s2"}}), 0.0);
  require_close(conditional(table, {{2, "M1"}}, {{1, "s1"}, {2, "s1"}}),
                1.0);
}

TEST_CASE("the evolving-state account keeps the superposition until the "
          "pointer is read",
          "[measurement]") {
  MeasurementSpec spec = two_level_spec();
  std::vector<Cx> c = {Cx(0.6, 0.0), Cx(0.8, 0.0)};
  PreparedFamily prepared =
      textbook_family(spec, initial_state(spec, c), TimeGrid::uniform(3));
  ProbabilityTable table = probabilities(prepared.family, prepared.dynamics);
  require_close(event_probability(table, {{1, "psi"}}), 1.0);
  require_close(event_probability(table, {{1, "perp"}}), 0.0);
  require_close(event_probability(table, {{2, "M1"}}), 0.36);
  require_close(event_probability(table, {{2, "M2"}}), 0.64);

  // Incompatible slot at t_1 with the value-tracking account whenever the
  // superposition is genuine.
  PreparedFamily values =
      measurement_family(spec, initial_state(spec, c), TimeGrid::uniform(3));
  REQUIRE_FALSE(compatible(prepared.family.slot(1), values.family.slot(1)));
}

TEST_CASE("collapse renormalizes onto a recorded outcome", "[measurement]") {
  MeasurementSpec spec = two_level_spec();
  std::vector<Cx> c = {Cx(0.6, 0.0), Cx(0.8, 0.0)};
  Ket after = build_measurement_unitary(spec) * initial_state(spec, c);
  TensorSpace space{{"s", 2}, {"M", 3}};
  Projector outcome1(lift(Operator::dyad(Ket::basis_vector(3, 1),
                                         Ket::basis_vector(3, 1)),
                          "M", space),
                     "M1");
  Ket collapsed = collapse(after, outcome1);
  require_ket_close(collapsed, tensor_ket(Ket::basis_vector(2, 0),
                                          Ket::basis_vector(3, 1)));
  require_ket_close(collapse(collapsed, outcome1), collapsed);

  Projector unreachable(lift(Operator::dyad(Ket::basis_vector(3, 0),
                                            Ket::basis_vector(3, 0)),
                             "M", space),
                        "M0");
  REQUIRE_THROWS_AS(collapse(collapsed, unreachable), NullProjection);
  REQUIRE_THROWS_AS(collapse(after, Projector::identity(2)),
                    DimensionMismatch);
}

}  // namespace
}  // namespace chronicle_test
