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

#ifndef CHRONICLE_LINALG_HPP
#define CHRONICLE_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "chronicle/errors.hpp"

namespace chronicle {

using Cx = std::complex<double>;

/// Default absolute tolerance (max-entry norm) for all predicate checks.
/// Spaces stay small and the dynamics unitary, so rounding never gets
/// anywhere near this.
inline constexpr double kDefaultTol = 1e-10;

inline bool is_finite(Cx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

namespace detail {

inline void require_finite(const std::vector<Cx>& values, const char* what) {
  for (const Cx& z : values) {
    if (!is_finite(z)) {
      throw ValidationError(std::string(what) + ": non-finite entry");
    }
  }
}

}  // namespace detail

/// A state vector on a finite-dimensional Hilbert space. Amplitudes are
/// stored in row-major tensor order: the leftmost factor varies slowest.
/// Immutable after construction; constructors reject non-finite entries.
class Ket {
 public:
  explicit Ket(std::vector<Cx> amplitudes) : amp_(std::move(amplitudes)) {
    if (amp_.empty()) throw ValidationError("Ket: empty amplitude list");
    detail::require_finite(amp_, "Ket");
  }

  Ket(std::initializer_list<Cx> amplitudes)
      : Ket(std::vector<Cx>(amplitudes)) {}

  /// Standard basis vector |index> of the given dimension.
  static Ket basis_vector(std::size_t dim, std::size_t index) {
    if (index >= dim) throw ValidationError("Ket: basis index out of range");
    std::vector<Cx> a(dim, Cx(0.0, 0.0));
    a[index] = Cx(1.0, 0.0);
    return Ket(std::move(a));
  }

  static Ket zero(std::size_t dim) {
    if (dim == 0) throw ValidationError("Ket: zero dimension");
    return Ket(std::vector<Cx>(dim, Cx(0.0, 0.0)));
  }

  std::size_t dim() const { return amp_.size(); }
  const Cx& operator[](std::size_t i) const { return amp_[i]; }
  const std::vector<Cx>& amplitudes() const { return amp_; }

  double norm_squared() const {
    double s = 0.0;
    for (const Cx& z : amp_) s += std::norm(z);
    return s;
  }

  double norm() const { return std::sqrt(norm_squared()); }

 private:
  std::vector<Cx> amp_;
};

inline Ket operator+(const Ket& a, const Ket& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("Ket +: dimension mismatch");
  std::vector<Cx> out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] + b[i];
  return Ket(std::move(out));
}

inline Ket operator-(const Ket& a, const Ket& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("Ket -: dimension mismatch");
  std::vector<Cx> out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] - b[i];
  return Ket(std::move(out));
}

inline Ket operator*(Cx scale, const Ket& k) {
  std::vector<Cx> out(k.dim());
  for (std::size_t i = 0; i < k.dim(); ++i) out[i] = scale * k[i];
  return Ket(std::move(out));
}

/// <a|b>, conjugate-linear in the first argument.
inline Cx inner(const Ket& a, const Ket& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("inner: dimension mismatch");
  Cx s(0.0, 0.0);
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline double norm(const Ket& a) { return a.norm(); }

/// Kronecker product of states, left factor slowest.
inline Ket tensor_ket(const Ket& a, const Ket& b) {
  std::vector<Cx> out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
  return Ket(std::move(out));
}

/// A dense complex square matrix. Row-major storage, immutable after
/// construction; constructors reject non-finite entries.
class Operator {
 public:
  Operator(std::size_t dim, std::vector<Cx> row_major)
      : dim_(dim), m_(std::move(row_major)) {
    if (dim_ == 0) throw ValidationError("Operator: zero dimension");
    if (m_.size() != dim_ * dim_)
      throw ValidationError("Operator: entry count does not match dimension");
    detail::require_finite(m_, "Operator");
  }

  static Operator identity(std::size_t dim) {
    std::vector<Cx> m(dim * dim, Cx(0.0, 0.0));
    for (std::size_t i = 0; i < dim; ++i) m[i * dim + i] = Cx(1.0, 0.0);
    return Operator(dim, std::move(m));
  }

  static Operator zero(std::size_t dim) {
    return Operator(dim, std::vector<Cx>(dim * dim, Cx(0.0, 0.0)));
  }

  /// |u><v|
  static Operator dyad(const Ket& u, const Ket& v) {
    if (u.dim() != v.dim())
      throw DimensionMismatch("dyad: dimension mismatch");
    std::size_t n = u.dim();
    std::vector<Cx> m(n * n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m[r * n + c] = u[r] * std::conj(v[c]);
    return Operator(n, std::move(m));
  }

  std::size_t dim() const { return dim_; }
  const Cx& at(std::size_t r, std::size_t c) const { return m_[r * dim_ + c]; }
  const std::vector<Cx>& entries() const { return m_; }

  /// Column c as a state vector.
  Ket column(std::size_t c) const {
    std::vector<Cx> out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) out[r] = m_[r * dim_ + c];
    return Ket(std::move(out));
  }

  Cx trace() const {
    Cx s(0.0, 0.0);
    for (std::size_t i = 0; i < dim_; ++i) s += m_[i * dim_ + i];
    return s;
  }

 private:
  std::size_t dim_;
  std::vector<Cx> m_;
};

inline Operator operator+(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("Operator +: dimension mismatch");
  std::vector<Cx> out(a.entries());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.entries()[i];
  return Operator(a.dim(), std::move(out));
}

inline Operator operator-(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("Operator -: dimension mismatch");
  std::vector<Cx> out(a.entries());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b.entries()[i];
  return Operator(a.dim(), std::move(out));
}

inline Operator operator*(Cx scale, const Operator& a) {
  std::vector<Cx> out(a.entries());
  for (Cx& z : out) z *= scale;
  return Operator(a.dim(), std::move(out));
}

/// Matrix product.
inline Operator operator*(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("Operator *: dimension mismatch");
  std::size_t n = a.dim();
  std::vector<Cx> out(n * n, Cx(0.0, 0.0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      Cx ark = a.at(r, k);
      if (ark == Cx(0.0, 0.0)) continue;
      for (std::size_t c = 0; c < n; ++c) out[r * n + c] += ark * b.at(k, c);
    }
  return Operator(n, std::move(out));
}

/// Apply an operator to a state.
inline Ket operator*(const Operator& a, const Ket& k) {
  if (a.dim() != k.dim())
    throw DimensionMismatch("Operator apply: dimension mismatch");
  std::size_t n = a.dim();
  std::vector<Cx> out(n, Cx(0.0, 0.0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out[r] += a.at(r, c) * k[c];
  return Ket(std::move(out));
}

/// Conjugate transpose.
inline Operator adjoint(const Operator& a) {
  std::size_t n = a.dim();
  std::vector<Cx> out(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out[r * n + c] = std::conj(a.at(c, r));
  return Operator(n, std::move(out));
}

/// Largest entry-wise deviation between two operators.
inline double max_abs_diff(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("max_abs_diff: dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  return worst;
}

inline bool approx_equal(const Operator& a, const Operator& b,
                         double tol = kDefaultTol) {
  return max_abs_diff(a, b) <= tol;
}

/// Kronecker product, consistent with tensor_ket:
/// (A (x) B)(a (x) b) == (A a) (x) (B b).
inline Operator tensor_op(const Operator& a, const Operator& b) {
  std::size_t na = a.dim(), nb = b.dim(), n = na * nb;
  std::vector<Cx> out(n * n);
  for (std::size_t ra = 0; ra < na; ++ra)
    for (std::size_t rb = 0; rb < nb; ++rb)
      for (std::size_t ca = 0; ca < na; ++ca)
        for (std::size_t cb = 0; cb < nb; ++cb)
          out[(ra * nb + rb) * n + (ca * nb + cb)] = a.at(ra, ca) * b.at(rb, cb);
  return Operator(n, std::move(out));
}

/// Hermitian and idempotent, entrywise within tol.
inline bool is_projector(const Operator& a, double tol = kDefaultTol) {
  if (tol <= 0.0) throw ValidationError("is_projector: tol must be positive");
  return max_abs_diff(a, adjoint(a)) <= tol && max_abs_diff(a, a * a) <= tol;
}

/// adjoint(A) * A = I, entrywise within tol.
inline bool is_unitary(const Operator& a, double tol = kDefaultTol) {
  if (tol <= 0.0) throw ValidationError("is_unitary: tol must be positive");
  return max_abs_diff(adjoint(a) * a, Operator::identity(a.dim())) <= tol;
}

inline bool commutes(const Operator& a, const Operator& b,
                     double tol = kDefaultTol) {
  return max_abs_diff(a * b, b * a) <= tol;
}

/// An ordered list of labeled tensor factors. The full space is their
/// Kronecker product, leftmost factor slowest.
class TensorSpace {
 public:
  struct Factor {
    std::string label;
    std::size_t dim;
  };

  explicit TensorSpace(std::vector<Factor> factors)
      : factors_(std::move(factors)) {
    if (factors_.empty()) throw ValidationError("TensorSpace: no factors");
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (factors_[i].dim == 0)
        throw ValidationError("TensorSpace: zero-dimensional factor '" +
                              factors_[i].label + "'");
      for (std::size_t j = i + 1; j < factors_.size(); ++j)
        if (factors_[i].label == factors_[j].label)
          throw ValidationError("TensorSpace: duplicate factor label '" +
                                factors_[i].label + "'");
    }
  }

  TensorSpace(std::initializer_list<Factor> factors)
      : TensorSpace(std::vector<Factor>(factors)) {}

  std::size_t factor_count() const { return factors_.size(); }
  const Factor& factor(std::size_t i) const { return factors_[i]; }
  const std::vector<Factor>& factors() const { return factors_; }

  std::size_t index_of(const std::string& label) const {
    for (std::size_t i = 0; i < factors_.size(); ++i)
      if (factors_[i].label == label) return i;
    throw ValidationError("TensorSpace: unknown factor label '" + label + "'");
  }

  std::size_t dim_of(const std::string& label) const {
    return factors_[index_of(label)].dim;
  }

  std::size_t total_dim() const {
    std::size_t d = 1;
    for (const Factor& f : factors_) d *= f.dim;
    return d;
  }

 private:
  std::vector<Factor> factors_;
};

namespace detail {

// Mixed-radix digits of a flat index, leftmost factor slowest.
inline void decode_index(std::size_t flat, const TensorSpace& space,
                         std::vector<std::size_t>& digits) {
  std::size_t n = space.factor_count();
  digits.resize(n);
  for (std::size_t i = n; i-- > 0;) {
    digits[i] = flat % space.factor(i).dim;
    flat /= space.factor(i).dim;
  }
}

}  // namespace detail

/// Embed an operator that acts on the named factors (in the listed order,
/// their dimension product matching op.dim()) as identity on every other
/// factor of the space.
inline Operator embed(const Operator& op,
                      const std::vector<std::string>& factor_labels,
                      const TensorSpace& space) {
  std::vector<std::size_t> targets;
  targets.reserve(factor_labels.size());
  std::size_t sub_dim = 1;
  for (const std::string& label : factor_labels) {
    targets.push_back(space.index_of(label));
    sub_dim *= space.dim_of(label);
  }
  for (std::size_t i = 0; i < targets.size(); ++i)
    for (std::size_t j = i + 1; j < targets.size(); ++j)
      if (targets[i] == targets[j])
        throw ValidationError("embed: repeated factor label");
  if (op.dim() != sub_dim)
    throw DimensionMismatch("embed: operator dimension does not match factors");

  std::size_t total = space.total_dim();
  std::vector<Cx> out(total * total, Cx(0.0, 0.0));
  std::vector<std::size_t> rd, cd;
  for (std::size_t r = 0; r < total; ++r) {
    detail::decode_index(r, space, rd);
    for (std::size_t c = 0; c < total; ++c) {
      detail::decode_index(c, space, cd);
      bool spectator_match = true;
      for (std::size_t f = 0; f < space.factor_count(); ++f) {
        if (std::find(targets.begin(), targets.end(), f) != targets.end())
          continue;
        if (rd[f] != cd[f]) {
          spectator_match = false;
          break;
        }
      }
      if (!spectator_match) continue;
      std::size_t sub_r = 0, sub_c = 0;
      for (std::size_t t : targets) {
        sub_r = sub_r * space.factor(t).dim + rd[t];
        sub_c = sub_c * space.factor(t).dim + cd[t];
      }
      out[r * total + c] = op.at(sub_r, sub_c);
    }
  }
  return Operator(total, std::move(out));
}

/// Embed a single-factor operator, identity elsewhere.
inline Operator lift(const Operator& op, const std::string& factor_label,
                     const TensorSpace& space) {
  if (op.dim() != space.dim_of(factor_label))
    throw DimensionMismatch("lift: operator dimension does not match factor '" +
                            factor_label + "'");
  return embed(op, {factor_label}, space);
}

/// Modified Gram-Schmidt over the given vectors, dropping (numerically)
/// dependent ones. rank_tol is the residual-norm threshold below which a
/// vector counts as dependent.
inline std::vector<Ket> orthonormal_basis(const std::vector<Ket>& vectors,
                                          double rank_tol = 1e-8) {
  std::vector<Ket> basis;
  for (const Ket& v : vectors) {
    Ket r = v;
    // Two passes keep the basis orthonormal to machine precision.
    for (int pass = 0; pass < 2; ++pass)
      for (const Ket& u : basis) r = r - inner(u, r) * u;
    double n = r.norm();
    if (n > rank_tol) basis.push_back(Cx(1.0 / n, 0.0) * r);
  }
  return basis;
}

/// Projector onto the span of the given vectors.
inline Operator span_projector(std::size_t dim, const std::vector<Ket>& vectors,
                               double rank_tol = 1e-8) {
  Operator p = Operator::zero(dim);
  for (const Ket& u : orthonormal_basis(vectors, rank_tol))
    p = p + Operator::dyad(u, u);
  return p;
}

/// Non-negligible columns of an operator; the columns of a projector span
/// its range.
inline std::vector<Ket> range_columns(const Operator& a,
                                      double drop_tol = 1e-14) {
  std::vector<Ket> cols;
  for (std::size_t c = 0; c < a.dim(); ++c) {
    Ket col = a.column(c);
    if (col.norm() > drop_tol) cols.push_back(std::move(col));
  }
  return cols;
}

}  // namespace chronicle

#endif  // CHRONICLE_LINALG_HPP
