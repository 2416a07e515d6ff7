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

#ifndef CHRONICLE_FRAMEWORK_HPP
#define CHRONICLE_FRAMEWORK_HPP

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chronicle/errors.hpp"
#include "chronicle/linalg.hpp"

namespace chronicle {

/// Threshold for rank decisions when orthonormalizing subspace bases.
inline constexpr double kRankTol = 1e-8;

/// A labeled orthogonal projector, validated at construction.
class Projector {
 public:
  Projector(Operator op, std::string label, double tol = kDefaultTol)
      : op_(std::move(op)), label_(std::move(label)) {
    if (!is_projector(op_, tol))
      throw ValidationError("Projector '" + label_ +
                            "': not Hermitian idempotent within tolerance");
  }

  /// Reserved label "I".
  static Projector identity(std::size_t dim) {
    return Projector(Operator::identity(dim), "I");
  }

  /// Reserved label "0".
  static Projector zero(std::size_t dim) {
    return Projector(Operator::zero(dim), "0");
  }

  /// Rank-one projector |psi><psi| onto a normalized state.
  static Projector onto(const Ket& psi, std::string label,
                        double tol = kDefaultTol) {
    if (std::abs(psi.norm() - 1.0) > tol)
      throw ValidationError("Projector::onto: state is not normalized");
    return Projector(Operator::dyad(psi, psi), std::move(label), tol);
  }

  const Operator& op() const { return op_; }
  const std::string& label() const { return label_; }
  std::size_t dim() const { return op_.dim(); }

  /// Numerical rank, i.e. the rounded trace.
  std::size_t rank() const {
    return static_cast<std::size_t>(std::lround(op_.trace().real()));
  }

 private:
  Operator op_;
  std::string label_;
};

/// I - P. Negating the reserved "I"/"0" labels swaps them; anything else
/// gains or sheds a "!" prefix.
inline Projector negation(const Projector& p) {
  std::string label;
  if (p.label() == "I")
    label = "0";
  else if (p.label() == "0")
    label = "I";
  else if (p.label().starts_with("!"))
    label = p.label().substr(1);
  else
    label = "!" + p.label();
  return Projector(Operator::identity(p.dim()) - p.op(), std::move(label));
}

/// Projector onto the span of the union of the two ranges.
inline Projector join(const Projector& p, const Projector& q) {
  if (p.dim() != q.dim()) throw DimensionMismatch("join: dimension mismatch");
  std::vector<Ket> cols = range_columns(p.op());
  for (Ket& c : range_columns(q.op())) cols.push_back(std::move(c));
  Operator j = span_projector(p.dim(), cols, kRankTol);
  return Projector(std::move(j), "join(" + p.label() + "," + q.label() + ")");
}

/// Projector onto the intersection of the two ranges, computed through the
/// complement: range(P) meet range(Q) is the orthogonal complement of
/// span(range(I-P) union range(I-Q)).
inline Projector meet(const Projector& p, const Projector& q) {
  if (p.dim() != q.dim()) throw DimensionMismatch("meet: dimension mismatch");
  std::vector<Ket> cols = range_columns(Operator::identity(p.dim()) - p.op());
  for (Ket& c : range_columns(Operator::identity(q.dim()) - q.op()))
    cols.push_back(std::move(c));
  Operator complement = span_projector(p.dim(), cols, kRankTol);
  return Projector(Operator::identity(p.dim()) - complement,
                   "meet(" + p.label() + "," + q.label() + ")");
}

/// Both sides of the distributive law for a triple of projectors.
/// Classical logic expects lhs == rhs; noncommuting triples can break it.
struct DistributivityReport {
  Projector lhs;  // join(meet(P,Q), meet(P,R))
  Projector rhs;  // meet(P, join(Q,R))
  bool equal;
};

inline DistributivityReport check_distributivity(const Projector& p,
                                                 const Projector& q,
                                                 const Projector& r,
                                                 double tol = kDefaultTol) {
  Projector lhs = join(meet(p, q), meet(p, r));
  Projector rhs = meet(p, join(q, r));
  bool equal = approx_equal(lhs.op(), rhs.op(), tol);
  return DistributivityReport{std::move(lhs), std::move(rhs), equal};
}

/// A projective decomposition of the identity: mutually orthogonal
/// projectors summing to I. The sample space of one quantum description.
/// Construction validates everything and reports every violated condition
/// at once.
class Decomposition {
 public:
  explicit Decomposition(std::vector<Projector> members,
                         double tol = kDefaultTol)
      : members_(std::move(members)) {
    std::vector<std::string> violations;
    if (members_.empty())
      violations.push_back("Empty: a decomposition needs at least one member");
    if (violations.empty()) {
      dim_ = members_.front().dim();
      for (const Projector& m : members_)
        if (m.dim() != dim_) {
          violations.push_back("DimMismatch: member '" + m.label() +
                               "' has a different dimension");
        }
    }
    if (violations.empty()) {
      for (std::size_t i = 0; i < members_.size(); ++i)
        for (std::size_t j = i + 1; j < members_.size(); ++j)
          if (members_[i].label() == members_[j].label())
            violations.push_back("DuplicateLabel: '" + members_[i].label() +
                                 "'");
      // Projector-ness is certified by the Projector type; re-check so a
      // hand-built Operator snuck in via tolerance games still gets caught.
      for (const Projector& m : members_)
        if (!is_projector(m.op(), tol))
          violations.push_back("NotProjector: '" + m.label() + "'");
      for (std::size_t i = 0; i < members_.size(); ++i)
        for (std::size_t j = i + 1; j < members_.size(); ++j) {
          double dev = max_abs_diff(members_[i].op() * members_[j].op(),
                                    Operator::zero(dim_));
          if (dev > tol)
            violations.push_back("NotMutuallyOrthogonal: '" +
                                 members_[i].label() + "' vs '" +
                                 members_[j].label() + "'");
        }
      Operator sum = Operator::zero(dim_);
      for (const Projector& m : members_) sum = sum + m.op();
      if (!approx_equal(sum, Operator::identity(dim_), tol))
        violations.push_back("SumNotIdentity");
    }
    if (!violations.empty()) {
      std::string what = "invalid decomposition:";
      for (const std::string& v : violations) what += " " + v + ";";
      throw DecompositionError(std::move(what), std::move(violations));
    }
  }

  /// The one-member decomposition {I}.
  static Decomposition trivial(std::size_t dim) {
    return Decomposition({Projector::identity(dim)});
  }

  /// Rank-one members from an orthonormal basis, one label per vector.
  static Decomposition from_basis(const std::vector<Ket>& basis,
                                  const std::vector<std::string>& labels) {
    if (basis.size() != labels.size())
      throw ValidationError("from_basis: one label per basis vector required");
    std::vector<Projector> members;
    members.reserve(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
      members.push_back(Projector::onto(basis[i], labels[i]));
    return Decomposition(std::move(members));
  }

  std::size_t size() const { return members_.size(); }
  std::size_t space_dim() const { return dim_; }
  const Projector& member(std::size_t i) const { return members_[i]; }
  const std::vector<Projector>& members() const { return members_; }

  const Projector& member(const std::string& label) const {
    for (const Projector& m : members_)
      if (m.label() == label) return m;
    throw ValidationError("Decomposition: no member labeled '" + label + "'");
  }

  bool has_member(const std::string& label) const {
    for (const Projector& m : members_)
      if (m.label() == label) return true;
    return false;
  }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    out.reserve(members_.size());
    for (const Projector& m : members_) out.push_back(m.label());
    return out;
  }

 private:
  std::vector<Projector> members_;
  std::size_t dim_ = 0;
};

/// An element of the Boolean event algebra of one decomposition: a subset
/// of its members, standing for their sum.
struct Event {
  const Decomposition* decomposition;
  std::set<std::string> member_labels;

  Operator projector() const {
    Operator sum = Operator::zero(decomposition->space_dim());
    for (const std::string& label : member_labels)
      sum = sum + decomposition->member(label).op();
    return sum;
  }
};

inline Event make_event(const Decomposition& d,
                        std::set<std::string> member_labels) {
  for (const std::string& label : member_labels)
    if (!d.has_member(label))
      throw ValidationError("Event: no member labeled '" + label + "'");
  return Event{&d, std::move(member_labels)};
}

/// Two sample spaces are compatible when all their projectors commute;
/// only then do they admit a common refinement.
inline bool compatible(const Decomposition& f, const Decomposition& g,
                       double tol = kDefaultTol) {
  if (f.space_dim() != g.space_dim())
    throw DimensionMismatch("compatible: dimension mismatch");
  for (const Projector& p : f.members())
    for (const Projector& q : g.members())
      if (!commutes(p.op(), q.op(), tol)) return false;
  return true;
}

/// The decomposition generated by all nonzero products of members of two
/// compatible decompositions. Its event algebra contains both inputs.
inline Decomposition common_refinement(const Decomposition& f,
                                       const Decomposition& g,
                                       double tol = kDefaultTol) {
  if (!compatible(f, g, tol))
    throw IncompatibleFrameworks(
        "common_refinement: sample spaces do not commute");
  std::vector<Projector> members;
  for (const Projector& p : f.members())
    for (const Projector& q : g.members()) {
      Operator prod = p.op() * q.op();
      if (max_abs_diff(prod, Operator::zero(prod.dim())) <= tol) continue;
      members.emplace_back(std::move(prod), p.label() + "&" + q.label(), tol);
    }
  return Decomposition(std::move(members), tol);
}

}  // namespace chronicle

#endif  // CHRONICLE_FRAMEWORK_HPP
