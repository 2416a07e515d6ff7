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

#ifndef CHRONICLE_EPR_HPP
#define CHRONICLE_EPR_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chronicle/errors.hpp"
#include "chronicle/framework.hpp"
#include "chronicle/histories.hpp"
#include "chronicle/linalg.hpp"
#include "chronicle/measurement.hpp"

namespace chronicle {

/// A spatial direction in Bloch angles, normalized to theta in [0, pi] and
/// phi in [0, 2*pi). Out-of-range input is folded onto the sphere, so
/// (-theta, phi) and (theta, phi + pi) name the same direction.
class Direction {
 public:
  explicit Direction(double theta, double phi = 0.0) {
    constexpr double tau = 2.0 * std::numbers::pi;
    theta = std::fmod(theta, tau);
    if (theta < 0.0) theta += tau;
    if (theta > std::numbers::pi) {
      theta = tau - theta;
      phi += std::numbers::pi;
    }
    phi = std::fmod(phi, tau);
    if (phi < 0.0) phi += tau;
    theta_ = theta;
    phi_ = phi;
  }

  static Direction z() { return Direction(0.0); }
  static Direction minus_z() { return Direction(std::numbers::pi); }
  static Direction x() { return Direction(std::numbers::pi / 2.0); }
  static Direction y() {
    return Direction(std::numbers::pi / 2.0, std::numbers::pi / 2.0);
  }

  double theta() const { return theta_; }
  double phi() const { return phi_; }

 private:
  double theta_;
  double phi_;
};

enum class Spin { kPlus, kMinus };

/// |w+> = cos(theta/2)|z+> + e^{i phi} sin(theta/2)|z->.
inline Ket spin_plus(const Direction& d) {
  double half = d.theta() / 2.0;
  return Ket{Cx(std::cos(half), 0.0),
             std::polar(std::sin(half), d.phi())};
}

/// The state orthogonal to |w+>, i.e. spin opposite to w.
inline Ket spin_minus(const Direction& d) {
  double half = d.theta() / 2.0;
  return Ket{-std::polar(std::sin(half), -d.phi()),
             Cx(std::cos(half), 0.0)};
}

/// Rank-one projector onto spin +1/2 or -1/2 along d, labeled "w+"/"w-".
inline Projector spin_projector(const Direction& d, Spin sign) {
  if (sign == Spin::kPlus)
    return Projector::onto(spin_plus(d), "w+");
  return Projector::onto(spin_minus(d), "w-");
}

/// (|z+ z-> - |z- z+>)/sqrt(2) on a two-spin space, first factor slowest.
inline Ket singlet() {
  double r = 1.0 / std::sqrt(2.0);
  return Ket{Cx(0.0, 0.0), Cx(r, 0.0), Cx(-r, 0.0), Cx(0.0, 0.0)};
}

namespace detail {
/// {lifted |plus><plus|, lifted |minus><minus|} on the named two-level
/// factor, labels prefix+"+" and prefix+"-".
inline Decomposition spin_slot(const TensorSpace& space,
                               const std::string& factor, const Direction& d,
                               const std::string& prefix) {
  std::vector<Projector> members;
  Ket up = spin_plus(d);
  Ket down = spin_minus(d);
  members.emplace_back(lift(Operator::dyad(up, up), factor, space),
                       prefix + "+");
  members.emplace_back(lift(Operator::dyad(down, down), factor, space),
                       prefix + "-");
  return Decomposition(std::move(members));
}

/// Pointer decomposition for a three-level apparatus factor: outcome
/// states e_1, e_2 labeled prefix+"+", prefix+"-", and the completer
/// prefix+"0" holding the ready direction e_0.
inline Decomposition pointer_slot3(const TensorSpace& space,
                                   const std::string& factor,
                                   const std::string& prefix) {
  Ket plus = Ket::basis_vector(3, 1);
  Ket minus = Ket::basis_vector(3, 2);
  Operator p_plus = lift(Operator::dyad(plus, plus), factor, space);
  Operator p_minus = lift(Operator::dyad(minus, minus), factor, space);
  Operator rest =
      Operator::identity(space.total_dim()) - p_plus - p_minus;
  std::vector<Projector> members;
  members.emplace_back(std::move(p_plus), prefix + "+");
  members.emplace_back(std::move(p_minus), prefix + "-");
  members.emplace_back(std::move(rest), prefix + "0");
  return Decomposition(std::move(members));
}

/// The three-level apparatus unitary that records spin-along-d of one
/// two-level factor, embedded into the full space.
inline Operator recorder_unitary(const TensorSpace& space,
                                 const std::string& particle,
                                 const std::string& pointer,
                                 const Direction& d) {
  MeasurementSpec spec = MeasurementSpec::standard({spin_plus(d),
                                                    spin_minus(d)});
  Operator u = build_measurement_unitary(spec);
  return embed(u, {particle, pointer}, space);
}
}  // namespace detail

/// Singlet of the two named two-level factors, every other factor in its
/// first basis state (an apparatus's ready state).
inline Ket singlet_on(const TensorSpace& space, const std::string& first,
                      const std::string& second) {
  if (first == second)
    throw ValidationError("singlet_on: the two factors must differ");
  if (space.dim_of(first) != 2 || space.dim_of(second) != 2)
    throw ValidationError("singlet_on: both factors must be two-level");
  Ket state = Ket::zero(space.total_dim());
  Ket s = singlet();
  for (std::size_t ia = 0; ia < 2; ++ia)
    for (std::size_t ib = 0; ib < 2; ++ib) {
      Cx amp = s[2 * ia + ib];
      if (amp == Cx(0.0, 0.0)) continue;
      Ket piece{std::vector<Cx>{Cx(1.0, 0.0)}};
      for (std::size_t f = 0; f < space.factor_count(); ++f) {
        const auto& factor = space.factor(f);
        Ket part = Ket::basis_vector(factor.dim, 0);
        if (factor.label == first) part = Ket::basis_vector(2, ia);
        if (factor.label == second) part = Ket::basis_vector(2, ib);
        piece = tensor_ket(piece, part);
      }
      state = state + amp * piece;
    }
  return state;
}

/// Three-time family on the bare two-spin space: singlet start, then the
/// four products {spin of a along wa} x {spin of b along wb} at both later
/// times. Labels "a+"/"a-" and "b+"/"b-", joined with "&".
inline PreparedFamily family_no_measurement(const Direction& wa,
                                            const Direction& wb) {
  TensorSpace space{{"a", 2}, {"b", 2}};
  Decomposition slot = common_refinement(
      detail::spin_slot(space, "a", wa, "a"),
      detail::spin_slot(space, "b", wb, "b"));
  TimeGrid grid = TimeGrid::uniform(3);
  Dynamics dyn = Dynamics::trivial(space.total_dim(), 2);
  HistoryFamily family(singlet_on(space, "a", "b"), grid, {slot, slot});
  return PreparedFamily{std::move(family), std::move(dyn), std::move(space)};
}

namespace detail {
/// Four-time family with one apparatus recording spin-along-wa of
/// particle a during the last interval; b-side properties along wb at
/// every time.
inline PreparedFamily measure_a_family(const Direction& wa,
                                       const Direction& wb) {
  TensorSpace space{{"a", 2}, {"M", 3}, {"b", 2}};
  Decomposition particle_slot = common_refinement(
      spin_slot(space, "a", wa, "a"), spin_slot(space, "b", wb, "b"));
  Decomposition outcome_slot = common_refinement(
      pointer_slot3(space, "M", "M"), spin_slot(space, "b", wb, "b"));
  TimeGrid grid = TimeGrid::uniform(4);
  std::vector<Operator> us(3, Operator::identity(space.total_dim()));
  us[2] = recorder_unitary(space, "a", "M", wa);
  Dynamics dyn(space.total_dim(), std::move(us));
  HistoryFamily family(singlet_on(space, "a", "b"), grid,
                       {particle_slot, particle_slot, outcome_slot});
  return PreparedFamily{std::move(family), std::move(dyn), std::move(space)};
}
}  // namespace detail

/// The one-apparatus family: spin of a along z is recorded during the
/// final interval, b-side properties read along wb throughout. Slots at
/// t_1, t_2 carry "a±&b±"; the slot at t_3 carries "M±&b±" plus the
/// ready branch "M0&b±".
inline PreparedFamily family_measure_a(const Direction& wb) {
  return detail::measure_a_family(Direction::z(), wb);
}

/// Two apparatuses, both acting during the final interval: M records spin
/// of a along wa, N records spin of b along wb. Particle slots at t_1 and
/// t_2 carry "a±&b±" along the apparatus directions; the slot at t_3
/// carries the pointer pairs "M±&N±" with ready branches.
inline PreparedFamily family_measure_both(const Direction& wa,
                                          const Direction& wb) {
  TensorSpace space{{"a", 2}, {"M", 3}, {"b", 2}, {"N", 3}};
  Decomposition particle_slot = common_refinement(
      detail::spin_slot(space, "a", wa, "a"),
      detail::spin_slot(space, "b", wb, "b"));
  Decomposition outcome_slot = common_refinement(
      detail::pointer_slot3(space, "M", "M"),
      detail::pointer_slot3(space, "N", "N"));
  TimeGrid grid = TimeGrid::uniform(4);
  std::vector<Operator> us(3, Operator::identity(space.total_dim()));
  us[2] = detail::recorder_unitary(space, "a", "M", wa) *
          detail::recorder_unitary(space, "b", "N", wb);
  Dynamics dyn(space.total_dim(), std::move(us));
  HistoryFamily family(singlet_on(space, "a", "b"), grid,
                       {particle_slot, particle_slot, outcome_slot});
  return PreparedFamily{std::move(family), std::move(dyn), std::move(space)};
}

/// a measured along z, b measured along the direction at polar angle
/// theta in the x-z plane.
inline PreparedFamily family_measure_both(double theta) {
  return family_measure_both(Direction::z(), Direction(theta));
}

/// Declarative pick among the prebuilt families: an optional apparatus
/// per side, and the analysis direction for b-side properties.
struct EprScenario {
  std::optional<Direction> a_setting;  // apparatus on particle a
  std::optional<Direction> b_setting;  // apparatus on particle b
  Direction b_analysis = Direction::z();
};

inline PreparedFamily build_epr_family(const EprScenario& scenario) {
  if (scenario.a_setting && scenario.b_setting)
    return family_measure_both(*scenario.a_setting, *scenario.b_setting);
  if (scenario.a_setting)
    return detail::measure_a_family(*scenario.a_setting,
                                    scenario.b_analysis);
  if (scenario.b_setting)
    throw ValidationError(
        "build_epr_family: a b-side-only apparatus is not in the family "
        "set; measure a instead and relabel");
  return family_no_measurement(Direction::z(), scenario.b_analysis);
}

/// Entry (i, j) is true when every slot decomposition of family i
/// commutes with the corresponding slot of family j, i.e. the two
/// descriptions admit a common refinement slot by slot.
inline std::vector<std::vector<bool>> compatibility_matrix(
    const std::vector<HistoryFamily>& families, double tol = kDefaultTol) {
  for (const HistoryFamily& f : families) {
    if (f.initial().dim() != families.front().initial().dim() ||
        f.slot_count() != families.front().slot_count() ||
        f.grid().times() != families.front().grid().times())
      throw GridMismatch(
          "compatibility_matrix: families live on different grids");
  }
  std::size_t n = families.size();
  std::vector<std::vector<bool>> out(n, std::vector<bool>(n, true));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      bool ok = true;
      for (std::size_t slot = 1; slot <= families[i].slot_count(); ++slot)
        if (!compatible(families[i].slot(slot), families[j].slot(slot),
                        tol)) {
          ok = false;
          break;
        }
      out[i][j] = ok;
      out[j][i] = ok;
    }
  return out;
}

/// E(a, b) = Pr(pointers agree) - Pr(pointers disagree) from the
/// two-apparatus family's outcome slot. Analytically -cos(angle between).
inline double correlation(const Direction& wa, const Direction& wb) {
  PreparedFamily prepared = family_measure_both(wa, wb);
  ProbabilityTable table =
      probabilities(prepared.family, prepared.dynamics);
  double same = event_probability(table, {{3, "M+"}, {3, "N+"}}) +
                event_probability(table, {{3, "M-"}, {3, "N-"}});
  double differ = event_probability(table, {{3, "M+"}, {3, "N-"}}) +
                  event_probability(table, {{3, "M-"}, {3, "N+"}});
  return same - differ;
}

/// Correlation with a along z and b at polar angle theta in the x-z plane.
inline double correlation(double theta) {
  return correlation(Direction::z(), Direction(theta));
}

/// S = E(a1,b1) + E(a1,b2) + E(a2,b1) - E(a2,b2). Magnitudes above 2
/// separate the engine's statistics from every deterministic assignment.
inline double chsh(const Direction& a1, const Direction& a2,
                   const Direction& b1, const Direction& b2) {
  return correlation(a1, b1) + correlation(a1, b2) + correlation(a2, b1) -
         correlation(a2, b2);
}

}  // namespace chronicle

#endif  // CHRONICLE_EPR_HPP
