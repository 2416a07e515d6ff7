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

#include <limits>

namespace chronicle_test {
namespace {

TEST_CASE("kets validate their amplitudes", "[linalg]") {
  REQUIRE_THROWS_AS(Ket(std::vector<Cx>{}), ValidationError);
  double nan = std::numeric_limits<double>::quiet_NaN();
  REQUIRE_THROWS_AS(Ket({Cx(nan, 0.0)}), ValidationError);
  REQUIRE_THROWS_AS(Ket::basis_vector(2, 5), ValidationError);
  Ket e1 = Ket::basis_vector(3, 1);
  REQUIRE(e1.dim() == 3);
  require_close(std::abs(e1[1] - Cx(1.0, 0.0)), 0.0);
  require_close(e1.norm_squared(), 1.0);
}

TEST_CASE("the inner product conjugates its first argument", "[linalg]") {
  Ket a({Cx(0.5, 0.25), Cx(-0.3, 0.6)});
  Ket b({Cx(0.1, -0.7), Cx(0.4, 0.2)});
  Cx forward = inner(a, b);
  Cx backward = inner(b, a);
  require_close(std::abs(forward - std::conj(backward)), 0.0);
  Cx scale(0.3, -1.2);
  require_close(std::abs(inner(a, scale * b) - scale * forward), 0.0);
  require_close(std::abs(inner(scale * a, b) - std::conj(scale) * forward),
                0.0);
  REQUIRE_THROWS_AS(inner(a, Ket::basis_vector(3, 0)), DimensionMismatch);
}

TEST_CASE("tensor products lay the first factor out slowest", "[linalg]") {
  Ket left = Ket::basis_vector(2, 1);
  Ket right = Ket::basis_vector(3, 0);
  require_ket_close(tensor_ket(left, right), Ket::basis_vector(6, 3));

  Ket a({Cx(0.6, 0.0), Cx(0.0, 0.8)});
  Ket b({Cx(0.0, 1.0), Cx(0.0, 0.0)});
  Ket ab = tensor_ket(a, b);
  require_close(ab.norm(), a.norm() * b.norm());
  require_close(std::abs(ab[0] - a[0] * b[0]), 0.0);
  require_close(std::abs(ab[2] - a[1] * b[0]), 0.0);
}

TEST_CASE("operator tensor products are Kronecker products", "[linalg]") {
  Operator x(2, {Cx(0, 0), Cx(1, 0), Cx(1, 0), Cx(0, 0)});
  Operator d(2, {Cx(2, 0), Cx(0, 0), Cx(0, 0), Cx(3, 0)});
  Operator xd = tensor_op(x, d);
  REQUIRE(xd.dim() == 4);
  // Block (r, c) of the product is x(r, c) * d.
  require_close(std::abs(xd.at(0, 2) - Cx(2, 0)), 0.0);
  require_close(std::abs(xd.at(1, 3) - Cx(3, 0)), 0.0);
  require_close(std::abs(xd.at(0, 0)), 0.0);
  require_close(std::abs(xd.trace() - x.trace() * d.trace()), 0.0);

  Ket u = Ket::basis_vector(2, 0);
  Ket v({Cx(0.6, 0.0), Cx(0.8, 0.0)});
  require_ket_close(tensor_op(x, d) * tensor_ket(u, v),
                    tensor_ket(x * u, d * v));
}

TEST_CASE("the adjoint conjugate-transposes", "[linalg]") {
  sampling::Rng rng(sampling::kSeed + 100);
  Operator a = sampling::unitary(rng, 3);
  Operator b = sampling::unitary(rng, 3);
  require_op_close(adjoint(adjoint(a)), a);
  require_op_close(adjoint(a * b), adjoint(b) * adjoint(a));
  require_close(std::abs(adjoint(a).at(0, 2) - std::conj(a.at(2, 0))), 0.0);
  require_op_close(adjoint(a) * a, Operator::identity(3));
}

TEST_CASE("dyads build outer products", "[linalg]") {
  Ket u({Cx(0.3, 0.4), Cx(0.0, -1.0)});
  Ket v({Cx(1.0, 0.0), Cx(0.5, 0.5)});
  Operator d = Operator::dyad(u, v);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c)
      require_close(std::abs(d.at(r, c) - u[r] * std::conj(v[c])), 0.0);
  require_ket_close(d * v, Cx(v.norm_squared(), 0.0) * u);
}

TEST_CASE("projector and unitary predicates classify operators",
          "[linalg]") {
  REQUIRE(is_projector(Operator::identity(3)));
  REQUIRE(is_projector(Operator::zero(3)));
  Ket psi = unit({Cx(1, 0), Cx(0, 1)});
  REQUIRE(is_projector(Operator::dyad(psi, psi)));
  // Hermitian and idempotent fail separately.
  REQUIRE_FALSE(is_projector(Operator(2, {Cx(2, 0), Cx(0, 0),  //
                                          Cx(0, 0), Cx(0, 0)})));
  REQUIRE_FALSE(is_projector(Operator(2, {Cx(0, 0), Cx(1, 0),  //
                                          Cx(0, 0), Cx(0, 0)})));
  sampling::Rng rng(sampling::kSeed + 101);
  REQUIRE(is_unitary(sampling::unitary(rng, 4)));
  REQUIRE_FALSE(is_unitary(Cx(2, 0) * Operator::identity(2)));
}

TEST_CASE("commutation is detected at tolerance", "[linalg]") {
  Operator x(2, {Cx(0, 0), Cx(1, 0), Cx(1, 0), Cx(0, 0)});
  Operator z(2, {Cx(1, 0), Cx(0, 0), Cx(0, 0), Cx(-1, 0)});
  Operator d(2, {Cx(2, 0), Cx(0, 0), Cx(0, 0), Cx(3, 0)});
  REQUIRE(commutes(z, d));
  REQUIRE_FALSE(commutes(x, z));
  REQUIRE(commutes(x, Operator::identity(2)));
}

TEST_CASE("tensor spaces name factors and their dimensions", "[linalg]") {
  TensorSpace space{{"a", 2}, {"M", 3}, {"b", 2}};
  REQUIRE(space.total_dim() == 12);
  REQUIRE(space.index_of("M") == 1);
  REQUIRE(space.dim_of("b") == 2);
  REQUIRE_THROWS_AS(space.index_of("c"), ValidationError);
  REQUIRE_THROWS_AS(TensorSpace({{"a", 2}, {"a", 3}}), ValidationError);
  REQUIRE_THROWS_AS(TensorSpace({{"a", 0}}), ValidationError);
  REQUIRE_THROWS_AS(TensorSpace(std::vector<TensorSpace::Factor>{}),
                    ValidationError);
}

TEST_CASE("embedding places operators on the chosen factors", "[linalg]") {
  TensorSpace space{{"a", 2}, {"M", 3}, {"b", 2}};
  sampling::Rng rng(sampling::kSeed + 102);
  Operator ua = sampling::unitary(rng, 2);
  Operator ub = sampling::unitary(rng, 2);
  Operator um = sampling::unitary(rng, 3);

  // One factor: identity everywhere else.
  require_op_close(embed(ua, {"a"}, space),
                   tensor_op(ua, Operator::identity(6)));
  require_op_close(embed(um, {"M"}, space),
                   tensor_op(tensor_op(Operator::identity(2), um),
                             Operator::identity(2)));

  // Two non-adjacent factors: the embedding of a product factorizes.
  require_op_close(embed(tensor_op(ua, ub), {"a", "b"}, space),
                   embed(ua, {"a"}, space) * embed(ub, {"b"}, space));

  require_op_close(lift(um, "M", space), embed(um, {"M"}, space));
  REQUIRE_THROWS_AS(embed(ua, {"M"}, space), DimensionMismatch);
  REQUIRE_THROWS_AS(embed(ua, {"nope"}, space), ValidationError);
}

TEST_CASE("orthonormalization spans the input and drops dependents",
          "[linalg]") {
  Ket e0 = Ket::basis_vector(3, 0);
  Ket e1 = Ket::basis_vector(3, 1);
  std::vector<Ket> dependent = {e0, e0 + e1, Cx(2, 0) * e0};
  std::vector<Ket> basis = orthonormal_basis(dependent);
  REQUIRE(basis.size() == 2);
  for (const Ket& v : basis) require_close(v.norm(), 1.0);
  require_close(std::abs(inner(basis[0], basis[1])), 0.0);

  Operator p = span_projector(3, dependent);
  REQUIRE(is_projector(p));
  require_close(p.trace().real(), 2.0);
  require_ket_close(p * e0, e0);
  require_ket_close(p * Ket::basis_vector(3, 2), Ket::zero(3));
}

TEST_CASE("range columns regenerate their projector", "[linalg]") {
  sampling::Rng rng(sampling::kSeed + 103);
  Operator u = sampling::unitary(rng, 4);
  Operator p = sampling::span_of(u, {true, false, true, false});
  REQUIRE(is_projector(p));
  // Raw columns, not yet orthonormalized; their span is the range.
  require_op_close(span_projector(4, range_columns(p)), p);

  // Negligible columns are dropped.
  Ket e0 = Ket::basis_vector(4, 0);
  Ket e2 = Ket::basis_vector(4, 2);
  Operator diag = Operator::dyad(e0, e0) + Operator::dyad(e2, e2);
  REQUIRE(range_columns(diag).size() == 2);
  REQUIRE(range_columns(Operator::zero(4)).empty());
}

}  // namespace
}  // namespace chronicle_test
