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

#ifndef CHRONICLE_MEASUREMENT_HPP
#define CHRONICLE_MEASUREMENT_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "chronicle/errors.hpp"
#include "chronicle/framework.hpp"
#include "chronicle/histories.hpp"
#include "chronicle/linalg.hpp"

namespace chronicle {

/// Declarative description of an idealized measurement: the apparatus
/// starts in a ready state and ends in the outcome state paired with
/// whichever basis state the system held. Destructive variants send the
/// system to arbitrary normalized final states instead of preserving it.
class MeasurementSpec {
 public:
  MeasurementSpec(std::vector<Ket> system_basis, Ket pointer_ready,
                  std::vector<Ket> pointer_outcomes,
                  std::vector<Ket> final_states = {}, std::size_t interval = 2,
                  double tol = kDefaultTol)
      : system_basis_(std::move(system_basis)),
        pointer_ready_(std::move(pointer_ready)),
        pointer_outcomes_(std::move(pointer_outcomes)),
        final_states_(std::move(final_states)),
        interval_(interval) {
    if (system_basis_.empty())
      throw ValidationError("MeasurementSpec: empty system basis");
    if (pointer_outcomes_.size() != system_basis_.size())
      throw ValidationError(
          "MeasurementSpec: one pointer outcome per system basis state");
    if (final_states_.empty()) final_states_ = system_basis_;
    if (final_states_.size() != system_basis_.size())
      throw ValidationError(
          "MeasurementSpec: one final state per system basis state");
    std::size_t ds = system_basis_.front().dim();
    std::size_t dp = pointer_ready_.dim();
    for (const Ket& s : system_basis_)
      if (s.dim() != ds)
        throw DimensionMismatch("MeasurementSpec: system basis dim mismatch");
    for (const Ket& f : final_states_)
      if (f.dim() != ds)
        throw DimensionMismatch("MeasurementSpec: final state dim mismatch");
    for (const Ket& m : pointer_outcomes_)
      if (m.dim() != dp)
        throw DimensionMismatch("MeasurementSpec: pointer dim mismatch");
    for (std::size_t i = 0; i < system_basis_.size(); ++i)
      for (std::size_t j = i; j < system_basis_.size(); ++j) {
        Cx g = inner(system_basis_[i], system_basis_[j]);
        double want = i == j ? 1.0 : 0.0;
        if (std::abs(g - Cx(want, 0.0)) > tol)
          throw ValidationError(
              "MeasurementSpec: system basis is not orthonormal");
      }
    if (std::abs(pointer_ready_.norm() - 1.0) > tol)
      throw ValidationError("MeasurementSpec: ready state is not normalized");
    for (std::size_t i = 0; i < pointer_outcomes_.size(); ++i) {
      if (std::abs(inner(pointer_ready_, pointer_outcomes_[i])) > tol)
        throw ValidationError(
            "MeasurementSpec: outcome state overlaps the ready state");
      for (std::size_t j = i; j < pointer_outcomes_.size(); ++j) {
        Cx g = inner(pointer_outcomes_[i], pointer_outcomes_[j]);
        double want = i == j ? 1.0 : 0.0;
        if (std::abs(g - Cx(want, 0.0)) > tol)
          throw ValidationError(
              "MeasurementSpec: pointer outcomes are not orthonormal");
      }
    }
    for (const Ket& f : final_states_)
      if (std::abs(f.norm() - 1.0) > tol)
        throw ValidationError(
            "MeasurementSpec: final state is not normalized");
    if (interval_ < 1)
      throw ValidationError("MeasurementSpec: interval is 1-based");
  }

  /// Nondestructive spec with the smallest faithful pointer: dimension
  /// n + 1, ready state e_0, outcome j the basis vector e_{j+1}.
  static MeasurementSpec standard(std::vector<Ket> system_basis,
                                  std::size_t interval = 2) {
    std::size_t n = system_basis.size();
    Ket ready = Ket::basis_vector(n + 1, 0);
    std::vector<Ket> outcomes;
    outcomes.reserve(n);
    for (std::size_t j = 0; j < n; ++j)
      outcomes.push_back(Ket::basis_vector(n + 1, j + 1));
    return MeasurementSpec(std::move(system_basis), std::move(ready),
                           std::move(outcomes), {}, interval);
  }

  std::size_t outcome_count() const { return system_basis_.size(); }
  std::size_t system_dim() const { return system_basis_.front().dim(); }
  std::size_t pointer_dim() const { return pointer_ready_.dim(); }
  const std::vector<Ket>& system_basis() const { return system_basis_; }
  const Ket& pointer_ready() const { return pointer_ready_; }
  const std::vector<Ket>& pointer_outcomes() const {
    return pointer_outcomes_;
  }
  const std::vector<Ket>& final_states() const { return final_states_; }
  std::size_t interval() const { return interval_; }

  bool nondestructive(double tol = kDefaultTol) const {
    for (std::size_t j = 0; j < system_basis_.size(); ++j)
      if (norm(final_states_[j] - system_basis_[j]) > tol) return false;
    return true;
  }

 private:
  std::vector<Ket> system_basis_;
  Ket pointer_ready_;
  std::vector<Ket> pointer_outcomes_;
  std::vector<Ket> final_states_;
  std::size_t interval_;
};

/// Order in which standard basis vectors are offered when completing the
/// partially specified unitary. Any choice yields the same physics; two
/// orders exist so tests can demonstrate that.
enum class CompletionOrder { kForward, kReversed };

namespace detail {
/// Extends `specified` (assumed orthonormal) to a full orthonormal basis
/// by Gram-Schmidt over the standard basis in the given order.
inline std::vector<Ket> complete_basis(std::vector<Ket> specified,
                                       std::size_t dim,
                                       CompletionOrder order) {
  std::vector<Ket> basis = std::move(specified);
  for (std::size_t step = 0; step < dim && basis.size() < dim; ++step) {
    std::size_t i =
        order == CompletionOrder::kForward ? step : dim - 1 - step;
    std::vector<Cx> amps(dim, Cx(0.0, 0.0));
    amps[i] = Cx(1.0, 0.0);
    Ket candidate{std::vector<Cx>(amps)};
    for (int pass = 0; pass < 2; ++pass)
      for (const Ket& b : basis) candidate = candidate - inner(b, candidate) * b;
    double n = candidate.norm();
    if (n > kRankTol) basis.push_back((Cx(1.0 / n, 0.0)) * candidate);
  }
  if (basis.size() != dim)
    throw CompletionFailure("complete_basis: could not reach full rank");
  return basis;
}
}  // namespace detail

/// The unitary on system (x) pointer that carries |s^j> (x) |ready> to
/// |final^j> (x) |outcome^j>. The action off the specified subspace is a
/// deterministic orthonormal completion; nothing downstream depends on it.
inline Operator build_measurement_unitary(
    const MeasurementSpec& spec,
    CompletionOrder order = CompletionOrder::kForward) {
  std::size_t dim = spec.system_dim() * spec.pointer_dim();
  std::vector<Ket> domain;
  std::vector<Ket> range;
  domain.reserve(spec.outcome_count());
  range.reserve(spec.outcome_count());
  for (std::size_t j = 0; j < spec.outcome_count(); ++j) {
    domain.push_back(
        tensor_ket(spec.system_basis()[j], spec.pointer_ready()));
    range.push_back(
        tensor_ket(spec.final_states()[j], spec.pointer_outcomes()[j]));
  }
  std::vector<Ket> domain_full = detail::complete_basis(domain, dim, order);
  std::vector<Ket> range_full = detail::complete_basis(range, dim, order);
  Operator u = Operator::zero(dim);
  for (std::size_t k = 0; k < dim; ++k)
    u = u + Operator::dyad(range_full[k], domain_full[k]);
  if (!is_unitary(u))
    throw CompletionFailure("build_measurement_unitary: result not unitary");
  return u;
}

/// Sigma_j c_j |s^j> (x) |ready>, the standard pre-measurement state.
inline Ket initial_state(const MeasurementSpec& spec,
                         const std::vector<Cx>& coefficients) {
  if (coefficients.size() != spec.outcome_count())
    throw ValidationError("initial_state: one coefficient per basis state");
  std::size_t dim = spec.system_dim() * spec.pointer_dim();
  Ket sum = Ket::zero(dim);
  for (std::size_t j = 0; j < coefficients.size(); ++j)
    sum = sum + coefficients[j] *
                    tensor_ket(spec.system_basis()[j], spec.pointer_ready());
  return sum;
}

/// A family bundled with the dynamics and factor layout it was built for.
/// The three travel together through every evaluation call.
struct PreparedFamily {
  HistoryFamily family;
  Dynamics dynamics;
  TensorSpace space;
};

namespace detail {
/// Identity everywhere except the stated interval.
inline Dynamics interaction_dynamics(const Operator& interaction,
                                     std::size_t interval,
                                     std::size_t interval_count) {
  std::vector<Operator> us(interval_count,
                           Operator::identity(interaction.dim()));
  us.at(interval - 1) = interaction;
  return Dynamics(interaction.dim(), std::move(us));
}

/// Lifted system-basis decomposition {P_{s^j} (x) I}, labels "s1".."sn",
/// with an "s0" completer when the basis does not span the system factor.
inline Decomposition system_slot(const MeasurementSpec& spec,
                                 const TensorSpace& space) {
  std::vector<Projector> members;
  Operator sum = Operator::zero(space.total_dim());
  for (std::size_t j = 0; j < spec.outcome_count(); ++j) {
    Operator p = lift(Operator::dyad(spec.system_basis()[j],
                                     spec.system_basis()[j]),
                      "s", space);
    sum = sum + p;
    members.emplace_back(std::move(p), "s" + std::to_string(j + 1));
  }
  Operator rest = Operator::identity(space.total_dim()) - sum;
  if (max_abs_diff(rest, Operator::zero(rest.dim())) > kDefaultTol)
    members.emplace_back(std::move(rest), "s0");
  return Decomposition(std::move(members));
}

/// Lifted pointer decomposition {I (x) P_{M^k}}, labels "M1".."Mn", plus
/// the "M0" completer that holds the ready state (and any unused pointer
/// directions) so the members sum to the identity.
inline Decomposition pointer_slot(const MeasurementSpec& spec,
                                  const TensorSpace& space) {
  std::vector<Projector> members;
  Operator sum = Operator::zero(space.total_dim());
  for (std::size_t k = 0; k < spec.outcome_count(); ++k) {
    Operator p = lift(Operator::dyad(spec.pointer_outcomes()[k],
                                     spec.pointer_outcomes()[k]),
                      "M", space);
    sum = sum + p;
    members.emplace_back(std::move(p), "M" + std::to_string(k + 1));
  }
  members.emplace_back(Operator::identity(space.total_dim()) - sum, "M0");
  return Decomposition(std::move(members));
}

inline void require_canonical_grid(const MeasurementSpec& spec,
                                   const TimeGrid& grid,
                                   const char* who) {
  if (grid.size() != 3 || spec.interval() != 2)
    throw ValidationError(std::string(who) +
                          ": expects a three-time grid with the interaction "
                          "in the second interval");
}
}  // namespace detail

/// The family {system property at t_1} then {pointer outcome at t_2},
/// with the interaction during the second interval: outcome k pairs with
/// prior property k, each at weight |c_k|^2.
inline PreparedFamily measurement_family(const MeasurementSpec& spec,
                                         const Ket& psi0,
                                         const TimeGrid& grid) {
  detail::require_canonical_grid(spec, grid, "measurement_family");
  TensorSpace space{{"s", spec.system_dim()}, {"M", spec.pointer_dim()}};
  if (psi0.dim() != space.total_dim())
    throw DimensionMismatch("measurement_family: initial state dim mismatch");
  Dynamics dyn = detail::interaction_dynamics(build_measurement_unitary(spec),
                                              spec.interval(),
                                              grid.interval_count());
  std::vector<Decomposition> slots;
  slots.push_back(detail::system_slot(spec, space));
  slots.push_back(detail::pointer_slot(spec, space));
  return PreparedFamily{HistoryFamily(psi0, grid, std::move(slots)),
                        std::move(dyn), std::move(space)};
}

/// Nondestructive variant whose final slot refines pointer outcomes by
/// system properties: the system provably holds property k both before
/// and after the outcome-k pointer reading.
inline PreparedFamily nondestructive_family(const MeasurementSpec& spec,
                                            const Ket& psi0,
                                            const TimeGrid& grid) {
  detail::require_canonical_grid(spec, grid, "nondestructive_family");
  if (!spec.nondestructive())
    throw ValidationError(
        "nondestructive_family: spec moves the system basis");
  TensorSpace space{{"s", spec.system_dim()}, {"M", spec.pointer_dim()}};
  if (psi0.dim() != space.total_dim())
    throw DimensionMismatch(
        "nondestructive_family: initial state dim mismatch");
  Dynamics dyn = detail::interaction_dynamics(build_measurement_unitary(spec),
                                              spec.interval(),
                                              grid.interval_count());
  std::vector<Decomposition> slots;
  slots.push_back(detail::system_slot(spec, space));
  slots.push_back(common_refinement(detail::system_slot(spec, space),
                                    detail::pointer_slot(spec, space)));
  return PreparedFamily{HistoryFamily(psi0, grid, std::move(slots)),
                        std::move(dyn), std::move(space)};
}

/// The textbook story: follow the evolving state to t_1, then read
/// system-and-pointer at t_2. Consistent, and incompatible with
/// measurement_family whenever two or more coefficients are nonzero.
inline PreparedFamily textbook_family(const MeasurementSpec& spec,
                                      const Ket& psi0, const TimeGrid& grid) {
  detail::require_canonical_grid(spec, grid, "textbook_family");
  if (!spec.nondestructive())
    throw ValidationError("textbook_family: spec moves the system basis");
  TensorSpace space{{"s", spec.system_dim()}, {"M", spec.pointer_dim()}};
  if (psi0.dim() != space.total_dim())
    throw DimensionMismatch("textbook_family: initial state dim mismatch");
  Dynamics dyn = detail::interaction_dynamics(build_measurement_unitary(spec),
                                              spec.interval(),
                                              grid.interval_count());
  Ket evolved = dyn.propagate(psi0, 1);
  Projector onto = Projector::onto(evolved, "psi");
  Projector rest(Operator::identity(evolved.dim()) - onto.op(), "perp");
  std::vector<Decomposition> slots;
  slots.push_back(Decomposition({std::move(onto), std::move(rest)}));
  slots.push_back(common_refinement(detail::system_slot(spec, space),
                                    detail::pointer_slot(spec, space)));
  return PreparedFamily{HistoryFamily(psi0, grid, std::move(slots)),
                        std::move(dyn), std::move(space)};
}

/// P|psi> / ||P|psi>||. A calculational step for conditional
/// probabilities, not a physical process; refuses outcomes the state
/// does not reach.
inline Ket collapse(const Ket& psi, const Projector& outcome,
                    double tol = kDefaultTol) {
  if (outcome.dim() != psi.dim())
    throw DimensionMismatch("collapse: dim mismatch");
  Ket projected = outcome.op() * psi;
  double n = projected.norm();
  if (n <= tol)
    throw NullProjection("collapse: state has no component in '" +
                         outcome.label() + "'");
  return Cx(1.0 / n, 0.0) * projected;
}

}  // namespace chronicle

#endif  // CHRONICLE_MEASUREMENT_HPP
