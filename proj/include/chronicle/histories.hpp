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

#ifndef CHRONICLE_HISTORIES_HPP
#define CHRONICLE_HISTORIES_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "chronicle/errors.hpp"
#include "chronicle/framework.hpp"
#include "chronicle/linalg.hpp"

namespace chronicle {

/// Strictly increasing times t_0 < t_1 < ... < t_f. Slot j of a history
/// family sits at time t_j; the values themselves are opaque labels.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> times) : times_(std::move(times)) {
    if (times_.size() < 2)
      throw ValidationError("TimeGrid: at least two times required");
    for (std::size_t i = 0; i + 1 < times_.size(); ++i)
      if (!(times_[i] < times_[i + 1]))
        throw ValidationError("TimeGrid: times must strictly increase");
  }

  /// 0, 1, ..., count-1.
  static TimeGrid uniform(std::size_t count) {
    std::vector<double> t(count);
    for (std::size_t i = 0; i < count; ++i) t[i] = static_cast<double>(i);
    return TimeGrid(std::move(t));
  }

  std::size_t size() const { return times_.size(); }
  /// Number of intervals, f.
  std::size_t interval_count() const { return times_.size() - 1; }
  double time(std::size_t i) const { return times_.at(i); }
  const std::vector<double>& times() const { return times_; }

 private:
  std::vector<double> times_;
};

/// Interval unitaries U_j carrying states at t_{j-1} to states at t_j,
/// j = 1..f. Validated unitary at construction.
class Dynamics {
 public:
  Dynamics(std::size_t space_dim, std::vector<Operator> interval_unitaries,
           double tol = kDefaultTol)
      : dim_(space_dim), unitaries_(std::move(interval_unitaries)) {
    if (unitaries_.empty())
      throw ValidationError("Dynamics: at least one interval required");
    for (const Operator& u : unitaries_) {
      if (u.dim() != dim_)
        throw DimensionMismatch("Dynamics: interval unitary has wrong dim");
      if (!is_unitary(u, tol))
        throw ValidationError("Dynamics: interval operator is not unitary");
    }
  }

  /// Identity on every interval.
  static Dynamics trivial(std::size_t space_dim, std::size_t intervals) {
    return Dynamics(space_dim, std::vector<Operator>(
                                   intervals, Operator::identity(space_dim)));
  }

  std::size_t space_dim() const { return dim_; }
  std::size_t interval_count() const { return unitaries_.size(); }
  /// U_j for interval j, 1-based.
  const Operator& unitary(std::size_t j) const { return unitaries_.at(j - 1); }

  /// U_j ... U_1 |psi>, the state carried from t_0 to t_j.
  Ket propagate(const Ket& psi, std::size_t j) const {
    if (j > unitaries_.size())
      throw ValidationError("Dynamics::propagate: interval out of range");
    Ket out = psi;
    for (std::size_t k = 1; k <= j; ++k) out = unitary(k) * out;
    return out;
  }

 private:
  std::size_t dim_;
  std::vector<Operator> unitaries_;
};

/// One member label per time slot t_1..t_f, identifying a single history.
using HistoryIndex = std::vector<std::string>;

/// "(l1, l2, ...)" for messages and reports.
inline std::string format_index(const HistoryIndex& index) {
  std::string out = "(";
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (i) out += ", ";
    out += index[i];
  }
  out += ")";
  return out;
}

/// An initial state plus one decomposition of the identity per later time.
/// The family's histories are all label combinations across the slots.
class HistoryFamily {
 public:
  HistoryFamily(Ket initial, TimeGrid grid, std::vector<Decomposition> slots,
                double tol = kDefaultTol)
      : initial_(std::move(initial)),
        grid_(std::move(grid)),
        slots_(std::move(slots)) {
    if (std::abs(initial_.norm() - 1.0) > tol)
      throw ValidationError("HistoryFamily: initial state is not normalized");
    if (slots_.size() != grid_.interval_count())
      throw ValidationError(
          "HistoryFamily: need exactly one decomposition per time after t_0");
    for (const Decomposition& d : slots_)
      if (d.space_dim() != initial_.dim())
        throw DimensionMismatch(
            "HistoryFamily: slot decomposition dim differs from state dim");
  }

  const Ket& initial() const { return initial_; }
  const TimeGrid& grid() const { return grid_; }
  std::size_t slot_count() const { return slots_.size(); }
  /// Decomposition at time t_j, 1-based.
  const Decomposition& slot(std::size_t j) const { return slots_.at(j - 1); }
  const std::vector<Decomposition>& slots() const { return slots_; }

  std::size_t history_count() const {
    std::size_t n = 1;
    for (const Decomposition& d : slots_) n *= d.size();
    return n;
  }

  /// Every history index, first slot most significant, members in
  /// decomposition order within each slot.
  std::vector<HistoryIndex> all_indices() const {
    std::vector<HistoryIndex> out;
    out.reserve(history_count());
    HistoryIndex current(slots_.size());
    enumerate(0, current, out);
    return out;
  }

  void validate_index(const HistoryIndex& index) const {
    if (index.size() != slots_.size())
      throw ValidationError("HistoryIndex: wrong number of slot labels");
    for (std::size_t j = 0; j < index.size(); ++j)
      if (!slots_[j].has_member(index[j]))
        throw ValidationError("HistoryIndex: slot " + std::to_string(j + 1) +
                              " has no member labeled '" + index[j] + "'");
  }

 private:
  void enumerate(std::size_t slot, HistoryIndex& current,
                 std::vector<HistoryIndex>& out) const {
    if (slot == slots_.size()) {
      out.push_back(current);
      return;
    }
    for (const Projector& m : slots_[slot].members()) {
      current[slot] = m.label();
      enumerate(slot + 1, current, out);
    }
  }

  Ket initial_;
  TimeGrid grid_;
  std::vector<Decomposition> slots_;
};

/// |alpha> = P_f U_f ... P_1 U_1 |Psi0>.
inline Ket chain_ket(const HistoryFamily& family, const Dynamics& dyn,
                     const HistoryIndex& index) {
  family.validate_index(index);
  if (dyn.space_dim() != family.initial().dim())
    throw DimensionMismatch("chain_ket: dynamics dim differs from state dim");
  if (dyn.interval_count() != family.slot_count())
    throw ValidationError("chain_ket: need one interval per time slot");
  Ket state = family.initial();
  for (std::size_t j = 1; j <= family.slot_count(); ++j) {
    state = dyn.unitary(j) * state;
    state = family.slot(j).member(index[j - 1]).op() * state;
  }
  return state;
}

/// Result of testing every pair of chain kets for orthogonality.
struct ConsistencyReport {
  bool consistent;
  double worst_overlap;   // largest |<alpha|beta>| over pairs alpha != beta
  HistoryIndex worst_a;   // empty when there are no pairs
  HistoryIndex worst_b;
};

/// A family admits probabilities only when distinct chain kets are mutually
/// orthogonal: |<alpha|beta>| <= tol * max(1, ||alpha|| * ||beta||) for all
/// pairs.
inline ConsistencyReport check_consistency(const HistoryFamily& family,
                                           const Dynamics& dyn,
                                           double tol = kDefaultTol) {
  if (tol <= 0.0) throw ValidationError("check_consistency: tol must be > 0");
  std::vector<HistoryIndex> indices = family.all_indices();
  std::vector<Ket> kets;
  kets.reserve(indices.size());
  for (const HistoryIndex& index : indices)
    kets.push_back(chain_ket(family, dyn, index));
  ConsistencyReport report{true, 0.0, {}, {}};
  for (std::size_t a = 0; a < kets.size(); ++a)
    for (std::size_t b = a + 1; b < kets.size(); ++b) {
      double overlap = std::abs(inner(kets[a], kets[b]));
      if (overlap > report.worst_overlap) {
        report.worst_overlap = overlap;
        report.worst_a = indices[a];
        report.worst_b = indices[b];
      }
      double scale = std::max(1.0, kets[a].norm() * kets[b].norm());
      if (overlap > tol * scale) report.consistent = false;
    }
  return report;
}

/// Probabilities for every history of a family, in enumeration order.
/// Zero-probability histories are kept as explicit entries.
class ProbabilityTable {
 public:
  ProbabilityTable(std::size_t slot_count, std::vector<HistoryIndex> indices,
                   std::vector<double> values)
      : slot_count_(slot_count),
        indices_(std::move(indices)),
        values_(std::move(values)) {
    if (indices_.size() != values_.size())
      throw ValidationError("ProbabilityTable: one value per index required");
    for (const HistoryIndex& index : indices_)
      if (index.size() != slot_count_)
        throw ValidationError("ProbabilityTable: index arity mismatch");
    for (double v : values_)
      if (!(v >= -kDefaultTol) || !std::isfinite(v))
        throw ValidationError("ProbabilityTable: negative or non-finite entry");
  }

  std::size_t slot_count() const { return slot_count_; }
  std::size_t size() const { return indices_.size(); }
  const HistoryIndex& index(std::size_t i) const { return indices_.at(i); }
  double value(std::size_t i) const { return values_.at(i); }
  const std::vector<HistoryIndex>& indices() const { return indices_; }
  const std::vector<double>& values() const { return values_; }

  double total() const {
    double sum = 0.0;
    for (double v : values_) sum += v;
    return sum;
  }

  double value_of(const HistoryIndex& index) const {
    for (std::size_t i = 0; i < indices_.size(); ++i)
      if (indices_[i] == index) return values_[i];
    throw ValidationError("ProbabilityTable: no entry " + format_index(index));
  }

 private:
  std::size_t slot_count_;
  std::vector<HistoryIndex> indices_;
  std::vector<double> values_;
};

/// Pr(alpha) = <alpha|alpha> for every history. Throws InconsistentFamily,
/// naming the worst pair, when the family fails the orthogonality test:
/// probabilities only make sense inside a single consistent family.
inline ProbabilityTable probabilities(const HistoryFamily& family,
                                      const Dynamics& dyn,
                                      double tol = kDefaultTol) {
  ConsistencyReport report = check_consistency(family, dyn, tol);
  if (!report.consistent)
    throw InconsistentFamily(
        "probabilities: chain kets " + format_index(report.worst_a) + " and " +
            format_index(report.worst_b) + " overlap by " +
            std::to_string(report.worst_overlap),
        format_index(report.worst_a), format_index(report.worst_b),
        report.worst_overlap);
  std::vector<HistoryIndex> indices = family.all_indices();
  std::vector<double> values;
  values.reserve(indices.size());
  for (const HistoryIndex& index : indices)
    values.push_back(chain_ket(family, dyn, index).norm_squared());
  return ProbabilityTable(family.slot_count(), std::move(indices),
                          std::move(values));
}

/// Sums probabilities over every slot not listed in keep_slots (1-based,
/// strictly increasing). Kept entries appear in first-occurrence order,
/// which under lexicographic enumeration is again lexicographic.
inline ProbabilityTable marginal(const ProbabilityTable& table,
                                 const std::vector<std::size_t>& keep_slots) {
  for (std::size_t i = 0; i < keep_slots.size(); ++i) {
    if (keep_slots[i] < 1 || keep_slots[i] > table.slot_count())
      throw ValidationError("marginal: slot out of range");
    if (i > 0 && keep_slots[i] <= keep_slots[i - 1])
      throw ValidationError("marginal: keep_slots must strictly increase");
  }
  std::vector<HistoryIndex> indices;
  std::vector<double> values;
  for (std::size_t i = 0; i < table.size(); ++i) {
    HistoryIndex kept;
    kept.reserve(keep_slots.size());
    for (std::size_t slot : keep_slots) kept.push_back(table.index(i)[slot - 1]);
    bool found = false;
    for (std::size_t k = 0; k < indices.size(); ++k)
      if (indices[k] == kept) {
        values[k] += table.value(i);
        found = true;
        break;
      }
    if (!found) {
      indices.push_back(std::move(kept));
      values.push_back(table.value(i));
    }
  }
  return ProbabilityTable(keep_slots.size(), std::move(indices),
                          std::move(values));
}

/// One conjunct of an event predicate: slot label (1-based) must carry the
/// given token. Members of refined decompositions have "&"-joined labels;
/// a token matches if it equals one of the "&"-separated pieces (or the
/// whole label when there is no "&").
struct SlotToken {
  std::size_t slot;
  std::string token;
};

namespace detail {
inline bool label_has_token(const std::string& label,
                            const std::string& token) {
  std::size_t start = 0;
  while (true) {
    std::size_t amp = label.find('&', start);
    std::string piece = label.substr(
        start, amp == std::string::npos ? std::string::npos : amp - start);
    if (piece == token) return true;
    if (amp == std::string::npos) return false;
    start = amp + 1;
  }
}

inline bool matches(const HistoryIndex& index,
                    const std::vector<SlotToken>& predicate,
                    std::size_t slot_count) {
  for (const SlotToken& st : predicate) {
    if (st.slot < 1 || st.slot > slot_count)
      throw ValidationError("event predicate: slot out of range");
    if (!label_has_token(index[st.slot - 1], st.token)) return false;
  }
  return true;
}
}  // namespace detail

/// Total probability of the conjunction described by the predicate.
inline double event_probability(const ProbabilityTable& table,
                                const std::vector<SlotToken>& predicate) {
  double sum = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i)
    if (detail::matches(table.index(i), predicate, table.slot_count()))
      sum += table.value(i);
  return sum;
}

/// Pr(target | given) = Pr(target and given) / Pr(given). Conditioning on
/// an event of probability below tol is refused.
inline double conditional(const ProbabilityTable& table,
                          const std::vector<SlotToken>& given,
                          const std::vector<SlotToken>& target,
                          double tol = kDefaultTol) {
  double denom = event_probability(table, given);
  if (denom <= tol)
    throw ConditionOnNullEvent(
        "conditional: conditioning event has probability " +
        std::to_string(denom));
  std::vector<SlotToken> both = given;
  both.insert(both.end(), target.begin(), target.end());
  return event_probability(table, both) / denom;
}

/// Single-time probabilities <Psi0| U_1^† P^k U_1 |Psi0> for each member
/// of the decomposition at t_1. Computed as a direct expectation, not via
/// chain kets, so it serves as an independent cross-check of the one-slot
/// family path.
inline ProbabilityTable born_rule(const Ket& initial, const Dynamics& dyn,
                                  const Decomposition& decomp,
                                  double tol = kDefaultTol) {
  if (std::abs(initial.norm() - 1.0) > tol)
    throw ValidationError("born_rule: initial state is not normalized");
  if (decomp.space_dim() != initial.dim())
    throw DimensionMismatch("born_rule: decomposition dim mismatch");
  Ket evolved = dyn.unitary(1) * initial;
  std::vector<HistoryIndex> indices;
  std::vector<double> values;
  indices.reserve(decomp.size());
  values.reserve(decomp.size());
  for (const Projector& m : decomp.members()) {
    indices.push_back({m.label()});
    values.push_back(inner(evolved, m.op() * evolved).real());
  }
  for (double& v : values)
    if (v < 0.0) v = 0.0;  // clamp roundoff, the expectation is >= 0
  return ProbabilityTable(1, std::move(indices), std::move(values));
}

/// The same one-time probability computed two ways: forward by evolving
/// the state to t_1, backward by pulling the target to t_0. The two are
/// equal for unitary dynamics; both are returned so callers can compare.
inline std::pair<double, double> pre_probability_pair(const Ket& initial,
                                                      const Dynamics& dyn,
                                                      const Ket& target,
                                                      double tol = kDefaultTol) {
  if (std::abs(target.norm() - 1.0) > tol)
    throw ValidationError("pre_probability_pair: target is not normalized");
  if (target.dim() != initial.dim())
    throw DimensionMismatch("pre_probability_pair: dim mismatch");
  Ket forward = dyn.unitary(1) * initial;
  double p_forward = std::norm(inner(target, forward));
  Ket backward = adjoint(dyn.unitary(1)) * target;
  double p_backward = std::norm(inner(backward, initial));
  return {p_forward, p_backward};
}

/// The family that tracks the unitarily evolving state itself: at each
/// time the decomposition is {|Psi(t_j)><Psi(t_j)| labeled "psi", its
/// complement labeled "perp"}. Always consistent; the all-"psi" history
/// carries probability 1.
inline HistoryFamily unitary_family(const Ket& initial, const Dynamics& dyn,
                                    const TimeGrid& grid,
                                    double tol = kDefaultTol) {
  if (std::abs(initial.norm() - 1.0) > tol)
    throw ValidationError("unitary_family: initial state is not normalized");
  if (grid.interval_count() != dyn.interval_count())
    throw ValidationError("unitary_family: grid and dynamics disagree");
  std::vector<Decomposition> slots;
  slots.reserve(grid.interval_count());
  for (std::size_t j = 1; j <= grid.interval_count(); ++j) {
    Ket evolved = dyn.propagate(initial, j);
    Projector onto = Projector::onto(evolved, "psi");
    Projector rest(Operator::identity(initial.dim()) - onto.op(), "perp");
    slots.push_back(Decomposition({std::move(onto), std::move(rest)}));
  }
  return HistoryFamily(initial, grid, std::move(slots), tol);
}

}  // namespace chronicle

#endif  // CHRONICLE_HISTORIES_HPP
