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

#ifndef CHRONICLE_CHECKS_HPP
#define CHRONICLE_CHECKS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "chronicle/epr.hpp"
#include "chronicle/errors.hpp"
#include "chronicle/framework.hpp"
#include "chronicle/histories.hpp"
#include "chronicle/linalg.hpp"
#include "chronicle/measurement.hpp"

namespace chronicle {

/// Deterministic random inputs for property-style verification. Seeded
/// generators only; two runs of any check see identical samples.
namespace sampling {

using Rng = std::mt19937;

inline constexpr std::uint32_t kSeed = 0x5eedu;

inline Cx gaussian(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  double re = n(rng);
  double im = n(rng);
  return Cx(re, im);
}

inline Ket ket(Rng& rng, std::size_t dim) {
  while (true) {
    std::vector<Cx> amps(dim);
    for (Cx& a : amps) a = gaussian(rng);
    Ket k{std::move(amps)};
    double n = k.norm();
    if (n > 1e-6) return Cx(1.0 / n, 0.0) * k;
  }
}

/// Normalized coefficient vector.
inline std::vector<Cx> coefficients(Rng& rng, std::size_t n) {
  return ket(rng, n).amplitudes();
}

/// Haar-ish unitary: orthonormalized Gaussian columns.
inline Operator unitary(Rng& rng, std::size_t dim) {
  while (true) {
    std::vector<Ket> cols;
    cols.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) cols.push_back(ket(rng, dim));
    std::vector<Ket> basis = orthonormal_basis(cols);
    if (basis.size() != dim) continue;
    std::vector<Cx> entries(dim * dim);
    for (std::size_t c = 0; c < dim; ++c)
      for (std::size_t r = 0; r < dim; ++r)
        entries[r * dim + c] = basis[c][r];
    return Operator(dim, std::move(entries));
  }
}

/// Projector onto the span of the columns of u selected by bits.
inline Operator span_of(const Operator& u, const std::vector<bool>& bits) {
  Operator p = Operator::zero(u.dim());
  for (std::size_t k = 0; k < u.dim(); ++k)
    if (bits[k]) {
      Ket col = u.column(k);
      p = p + Operator::dyad(col, col);
    }
  return p;
}

inline std::vector<bool> bits(Rng& rng, std::size_t dim) {
  std::bernoulli_distribution coin(0.5);
  std::vector<bool> out(dim);
  for (std::size_t i = 0; i < dim; ++i) out[i] = coin(rng);
  return out;
}

}  // namespace sampling

struct CheckResult {
  std::string id;
  std::string description;
  bool pass;
  double max_error;
  double tolerance;
  std::string detail;  // what produced the worst deviation
};

struct CheckOptions {
  double tol = kDefaultTol;
  std::optional<double> theta;  // overrides the angle grid where one applies
};

namespace detail {

inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

/// Tracks the worst deviation seen and what caused it.
struct ErrAcc {
  double max_error = 0.0;
  std::string worst = "all comparisons at zero error";

  void expect_near(double actual, double wanted, const std::string& what) {
    double err = std::abs(actual - wanted);
    if (err > max_error) {
      max_error = err;
      worst = what + ": got " + format_double(actual) + ", want " +
              format_double(wanted);
    }
  }

  void expect_small(double err, const std::string& what) {
    if (err > max_error) {
      max_error = err;
      worst = what + ": deviation " + format_double(err);
    }
  }

  void expect_true(bool ok, const std::string& what) {
    if (!ok && 1.0 > max_error) {
      max_error = 1.0;
      worst = what + ": condition failed";
    }
  }

  CheckResult done(std::string id, std::string description,
                   const CheckOptions& options) const {
    return CheckResult{std::move(id), std::move(description),
                       max_error <= options.tol, max_error, options.tol,
                       worst};
  }
};

inline std::vector<double> theta_grid(const CheckOptions& options) {
  if (options.theta) return {*options.theta};
  constexpr double pi = std::numbers::pi;
  return {0.0, pi / 6.0, pi / 3.0, pi / 2.0, 2.0 * pi / 3.0, pi};
}

inline std::string fmt_theta(double theta) {
  return "theta=" + std::to_string(theta);
}

/// Splits `total` trials across system sizes 2, 3, 4.
inline std::vector<std::pair<std::size_t, std::size_t>> size_split(
    std::size_t total) {
  std::size_t base = total / 3;
  return {{2, total - 2 * base}, {3, base}, {4, base}};
}

inline PreparedFamily random_measurement_setup(sampling::Rng& rng,
                                               std::size_t n,
                                               std::vector<Cx>& c_out) {
  Operator basis_source = sampling::unitary(rng, n);
  std::vector<Ket> basis;
  basis.reserve(n);
  for (std::size_t j = 0; j < n; ++j) basis.push_back(basis_source.column(j));
  MeasurementSpec spec = MeasurementSpec::standard(std::move(basis));
  c_out = sampling::coefficients(rng, n);
  Ket psi0 = initial_state(spec, c_out);
  return measurement_family(spec, psi0, TimeGrid::uniform(3));
}

}  // namespace detail

inline CheckResult check_eq2(const CheckOptions& options) {
  detail::ErrAcc acc;
  // Noncommuting witness: project onto spin-z+, spin-x+, spin-x-. The
  // join of the two meets is the zero projector, yet meeting with the
  // joined pair returns the whole spin-z+ ray.
  Projector p = spin_projector(Direction::z(), Spin::kPlus);
  Projector q = spin_projector(Direction::x(), Spin::kPlus);
  Projector r = spin_projector(Direction::x(), Spin::kMinus);
  DistributivityReport witness = check_distributivity(p, q, r, options.tol);
  acc.expect_true(!witness.equal, "spin triple should break distributivity");
  acc.expect_small(
      max_abs_diff(witness.lhs.op(), Operator::zero(2)),
      "join of meets should be the zero projector");
  acc.expect_small(max_abs_diff(witness.rhs.op(), p.op()),
                   "meet with joined pair should return the first ray");
  // Commuting triples obey the distributive law.
  sampling::Rng rng(sampling::kSeed);
  for (int trial = 0; trial < 100; ++trial) {
    Operator v = sampling::unitary(rng, 4);
    Projector cp(sampling::span_of(v, sampling::bits(rng, 4)), "P");
    Projector cq(sampling::span_of(v, sampling::bits(rng, 4)), "Q");
    Projector cr(sampling::span_of(v, sampling::bits(rng, 4)), "R");
    DistributivityReport rep = check_distributivity(cp, cq, cr, options.tol);
    acc.expect_small(max_abs_diff(rep.lhs.op(), rep.rhs.op()),
                     "commuting triple " + std::to_string(trial));
  }
  return acc.done("eq2",
                  "projector logic: distributivity fails for spin triples, "
                  "holds for commuting ones",
                  options);
}

inline CheckResult check_eq17(const CheckOptions& options) {
  detail::ErrAcc acc;
  sampling::Rng rng(sampling::kSeed + 17);
  for (auto [n, trials] : detail::size_split(100)) {
    for (std::size_t t = 0; t < trials; ++t) {
      std::vector<Cx> c;
      PreparedFamily pf = detail::random_measurement_setup(rng, n, c);
      ProbabilityTable table = probabilities(pf.family, pf.dynamics);
      std::string tag = "n=" + std::to_string(n) + " trial " +
                        std::to_string(t);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k <= n; ++k) {  // k = 0 is the ready branch
          double got = table.value_of(
              {"s" + std::to_string(j + 1), "M" + std::to_string(k)});
          double want = (j + 1 == k) ? std::norm(c[j]) : 0.0;
          acc.expect_near(got, want, tag + " outcome (" +
                                         std::to_string(j + 1) + "," +
                                         std::to_string(k) + ")");
        }
      acc.expect_near(table.total(), 1.0, tag + " total");
    }
  }
  return acc.done("eq17",
                  "recorded outcome matches prior property with the "
                  "property's squared weight",
                  options);
}

inline CheckResult check_eq18(const CheckOptions& options) {
  detail::ErrAcc acc;
  sampling::Rng rng(sampling::kSeed + 18);
  for (auto [n, trials] : detail::size_split(30)) {
    for (std::size_t t = 0; t < trials; ++t) {
      std::vector<Cx> c;
      PreparedFamily pf = detail::random_measurement_setup(rng, n, c);
      ProbabilityTable table = probabilities(pf.family, pf.dynamics);
      for (std::size_t k = 0; k < n; ++k) {
        if (std::norm(c[k]) < 1e-6) continue;
        for (std::size_t j = 0; j < n; ++j) {
          double got = conditional(
              table, {{2, "M" + std::to_string(k + 1)}},
              {{1, "s" + std::to_string(j + 1)}}, options.tol);
          acc.expect_near(got, j == k ? 1.0 : 0.0,
                          "n=" + std::to_string(n) + " Pr(s" +
                              std::to_string(j + 1) + "|M" +
                              std::to_string(k + 1) + ")");
        }
      }
    }
  }
  return acc.done("eq18",
                  "each outcome certifies exactly its matching prior "
                  "property",
                  options);
}

inline CheckResult check_eq19(const CheckOptions& options) {
  detail::ErrAcc acc;
  sampling::Rng rng(sampling::kSeed + 19);
  for (auto [n, trials] : detail::size_split(100)) {
    for (std::size_t t = 0; t < trials; ++t) {
      Operator basis_source = sampling::unitary(rng, n);
      std::vector<Ket> basis;
      for (std::size_t j = 0; j < n; ++j)
        basis.push_back(basis_source.column(j));
      MeasurementSpec spec = MeasurementSpec::standard(std::move(basis));
      std::vector<Cx> c = sampling::coefficients(rng, n);
      PreparedFamily pf = nondestructive_family(spec, initial_state(spec, c),
                                                TimeGrid::uniform(3));
      ProbabilityTable table = probabilities(pf.family, pf.dynamics);
      std::string tag = "n=" + std::to_string(n) + " trial " +
                        std::to_string(t);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) {
            double got = event_probability(
                table, {{1, "s" + std::to_string(j + 1)},
                        {2, "s" + std::to_string(l + 1)},
                        {2, "M" + std::to_string(k + 1)}});
            double want = (j == k && k == l) ? std::norm(c[j]) : 0.0;
            acc.expect_near(got, want,
                            tag + " triple (" + std::to_string(j + 1) + "," +
                                std::to_string(k + 1) + "," +
                                std::to_string(l + 1) + ")");
          }
      for (std::size_t k = 0; k < n; ++k) {
        if (std::norm(c[k]) < 1e-6) continue;
        double got = conditional(table, {{2, "M" + std::to_string(k + 1)}},
                                 {{2, "s" + std::to_string(k + 1)}},
                                 options.tol);
        acc.expect_near(got, 1.0,
                        tag + " property after outcome " +
                            std::to_string(k + 1));
      }
    }
  }
  return acc.done("eq19",
                  "nondestructive runs: property before, outcome, and "
                  "property after all agree",
                  options);
}

inline CheckResult check_eq24(const CheckOptions& options) {
  detail::ErrAcc acc;
  PreparedFamily pf = family_no_measurement(Direction::z(), Direction::z());
  ProbabilityTable table = probabilities(pf.family, pf.dynamics);
  acc.expect_true(table.size() == 16, "sixteen histories enumerated");
  for (std::size_t i = 0; i < table.size(); ++i) {
    const HistoryIndex& index = table.index(i);
    bool live = (index == HistoryIndex{"a+&b-", "a+&b-"}) ||
                (index == HistoryIndex{"a-&b+", "a-&b+"});
    acc.expect_near(table.value(i), live ? 0.5 : 0.0,
                    "entry " + format_index(index));
  }
  acc.expect_near(table.total(), 1.0, "total");
  return acc.done("eq24",
                  "opposite-spin alignment: exactly two equal-weight "
                  "histories survive",
                  options);
}

inline CheckResult check_eq25(const CheckOptions& options) {
  detail::ErrAcc acc;
  PreparedFamily pf = family_no_measurement(Direction::z(), Direction::z());
  ProbabilityTable table = probabilities(pf.family, pf.dynamics);
  ProbabilityTable late = marginal(table, {2});
  acc.expect_near(late.value_of({"a+&b-"}), 0.5, "late a+b-");
  acc.expect_near(late.value_of({"a-&b+"}), 0.5, "late a-b+");
  ProbabilityTable direct = born_rule(
      pf.family.initial(), Dynamics::trivial(4, 1), pf.family.slot(1));
  acc.expect_true(direct.size() == late.size(),
                  "same outcomes in both tables");
  for (std::size_t i = 0; i < direct.size(); ++i)
    acc.expect_near(late.value_of(direct.index(i)), direct.value(i),
                    "marginal vs direct weight " +
                        format_index(direct.index(i)));
  return acc.done("eq25",
                  "late-time marginals equal the direct single-time "
                  "weights entry by entry",
                  options);
}

inline CheckResult check_eq28(const CheckOptions& options) {
  detail::ErrAcc acc;
  for (double theta : detail::theta_grid(options)) {
    PreparedFamily pf =
        family_no_measurement(Direction::z(), Direction(theta));
    ProbabilityTable table = probabilities(pf.family, pf.dynamics);
    double cos2 = 0.5 * std::pow(std::cos(theta / 2.0), 2);
    double sin2 = 0.5 * std::pow(std::sin(theta / 2.0), 2);
    std::string tag = detail::fmt_theta(theta) + " ";
    for (std::size_t i = 0; i < table.size(); ++i) {
      const HistoryIndex& index = table.index(i);
      double want = 0.0;
      if (index[0] == index[1]) {
        bool opposite = index[0] == "a+&b-" || index[0] == "a-&b+";
        want = opposite ? cos2 : sin2;
      }
      acc.expect_near(table.value(i), want, tag + format_index(index));
    }
    acc.expect_near(table.total(), 1.0, tag + "total");
  }
  return acc.done("eq28",
                  "tilted second axis: weights follow the half-angle "
                  "cosine/sine split",
                  options);
}

inline CheckResult check_eq32(const CheckOptions& options) {
  detail::ErrAcc acc;
  PreparedFamily pf = family_measure_a(Direction::z());
  ProbabilityTable table = probabilities(pf.family, pf.dynamics);
  for (std::size_t i = 0; i < table.size(); ++i) {
    const HistoryIndex& index = table.index(i);
    bool live = (index == HistoryIndex{"a+&b-", "a+&b-", "M+&b-"}) ||
                (index == HistoryIndex{"a-&b+", "a-&b+", "M-&b+"});
    acc.expect_near(table.value(i), live ? 0.5 : 0.0,
                    "entry " + format_index(index));
  }
  acc.expect_near(table.total(), 1.0, "total");
  return acc.done("eq32",
                  "one recorded side: the two surviving histories pair "
                  "each outcome with its matching prior spins",
                  options);
}

inline CheckResult check_eq33(const CheckOptions& options) {
  detail::ErrAcc acc;
  PreparedFamily pf = family_measure_a(Direction::z());
  ProbabilityTable table = probabilities(pf.family, pf.dynamics);
  for (std::size_t slot = 1; slot <= 2; ++slot) {
    acc.expect_near(
        conditional(table, {{3, "M+"}}, {{slot, "a+"}}, options.tol), 1.0,
        "a+ at slot " + std::to_string(slot) + " given M+");
    acc.expect_near(
        conditional(table, {{3, "M-"}}, {{slot, "a-"}}, options.tol), 1.0,
        "a- at slot " + std::to_string(slot) + " given M-");
  }
  for (std::size_t slot = 1; slot <= 3; ++slot) {
    acc.expect_near(
        conditional(table, {{3, "M+"}}, {{slot, "b-"}}, options.tol), 1.0,
        "b- at slot " + std::to_string(slot) + " given M+");
    acc.expect_near(
        conditional(table, {{3, "M-"}}, {{slot, "b+"}}, options.tol), 1.0,
        "b+ at slot " + std::to_string(slot) + " given M-");
  }
  return acc.done("eq33",
                  "an outcome certifies the recorded spin at every time "
                  "and the opposite distant spin",
                  options);
}

inline CheckResult check_eq35(const CheckOptions& options) {
  detail::ErrAcc acc;
  std::vector<std::pair<std::string, Direction>> cases = {
      {"z", Direction::z()},
      {"x", Direction::x()},
      {"pi/5", Direction(std::numbers::pi / 5.0)}};
  for (const auto& [name, wb] : cases) {
    PreparedFamily pf = family_measure_a(wb);
    ProbabilityTable table = probabilities(pf.family, pf.dynamics);
    Ket end_state = pf.dynamics.propagate(pf.family.initial(), 3);
    for (const char* m : {"M+", "M-"}) {
      Ket after = collapse(
          end_state,
          Projector(lift(Operator::dyad(Ket::basis_vector(3, m[1] == '+' ? 1 : 2),
                                        Ket::basis_vector(3, m[1] == '+' ? 1 : 2)),
                         "M", pf.space),
                    m));
      for (const char* b : {"b+", "b-"}) {
        Ket bket = b[1] == '+' ? spin_plus(wb) : spin_minus(wb);
        Operator bproj = lift(Operator::dyad(bket, bket), "b", pf.space);
        double via_collapse = inner(after, bproj * after).real();
        double via_table =
            conditional(table, {{3, m}}, {{3, b}}, options.tol);
        acc.expect_near(via_collapse, via_table,
                        "wb=" + name + " Pr(" + b + "|" + m + ")");
      }
    }
  }
  return acc.done("eq35",
                  "project-and-renormalize reproduces the family's "
                  "conditional distant-spin statistics",
                  options);
}

inline CheckResult check_eq37(const CheckOptions& options) {
  detail::ErrAcc acc;
  for (double theta : detail::theta_grid(options)) {
    PreparedFamily pf = family_measure_a(Direction(theta));
    ProbabilityTable table = probabilities(pf.family, pf.dynamics);
    double want = std::pow(std::sin(theta / 2.0), 2);
    for (std::size_t slot = 1; slot <= 3; ++slot)
      acc.expect_near(
          conditional(table, {{3, "M+"}}, {{slot, "b+"}}, options.tol), want,
          detail::fmt_theta(theta) + " b+ at slot " + std::to_string(slot) +
              " given M+");
  }
  return acc.done("eq37",
                  "tilted distant axis: outcome-conditioned spin weight is "
                  "the half-angle sine squared",
                  options);
}

inline CheckResult check_eq38(const CheckOptions& options) {
  detail::ErrAcc acc;
  std::vector<Direction> dirs = {Direction::z(), Direction::x(),
                                 Direction(std::numbers::pi / 5.0),
                                 Direction(2.0, 0.7)};
  for (const Direction& wb : dirs) {
    PreparedFamily pf = family_measure_a(wb);
    ProbabilityTable table = probabilities(pf.family, pf.dynamics);
    std::string tag = detail::fmt_theta(wb.theta());
    for (std::size_t slot = 2; slot <= 3; ++slot) {
      acc.expect_near(
          conditional(table, {{1, "b+"}}, {{slot, "b+"}}, options.tol), 1.0,
          tag + " b+ persists to slot " + std::to_string(slot));
      acc.expect_near(
          conditional(table, {{1, "b-"}}, {{slot, "b-"}}, options.tol), 1.0,
          tag + " b- persists to slot " + std::to_string(slot));
    }
  }
  return acc.done("eq38",
                  "the unrecorded spin keeps its value across the other "
                  "side's interaction",
                  options);
}

inline CheckResult check_eq41(const CheckOptions& options) {
  detail::ErrAcc acc;
  for (double theta : detail::theta_grid(options)) {
    PreparedFamily pf = family_measure_both(theta);
    ProbabilityTable table = probabilities(pf.family, pf.dynamics);
    std::string tag = detail::fmt_theta(theta);
    for (std::size_t slot = 1; slot <= 2; ++slot) {
      acc.expect_near(
          conditional(table, {{3, "M+"}}, {{slot, "a+"}}, options.tol), 1.0,
          tag + " a+ at slot " + std::to_string(slot) + " given M+");
      acc.expect_near(
          conditional(table, {{3, "M-"}}, {{slot, "a-"}}, options.tol), 1.0,
          tag + " a- at slot " + std::to_string(slot) + " given M-");
    }
  }
  return acc.done("eq41",
                  "two recorders: the first outcome certifies its own "
                  "side's spin at both times",
                  options);
}

inline CheckResult check_eq42(const CheckOptions& options) {
  detail::ErrAcc acc;
  for (double theta : detail::theta_grid(options)) {
    PreparedFamily pf = family_measure_both(theta);
    ProbabilityTable table = probabilities(pf.family, pf.dynamics);
    std::string tag = detail::fmt_theta(theta);
    for (std::size_t slot = 1; slot <= 2; ++slot) {
      acc.expect_near(
          conditional(table, {{3, "N+"}}, {{slot, "b+"}}, options.tol), 1.0,
          tag + " b+ at slot " + std::to_string(slot) + " given N+");
      acc.expect_near(
          conditional(table, {{3, "N-"}}, {{slot, "b-"}}, options.tol), 1.0,
          tag + " b- at slot " + std::to_string(slot) + " given N-");
    }
  }
  return acc.done("eq42",
                  "two recorders: the second outcome certifies its own "
                  "side's spin at both times",
                  options);
}

inline CheckResult check_eq43(const CheckOptions& options) {
  detail::ErrAcc acc;
  for (double theta : detail::theta_grid(options)) {
    PreparedFamily pf = family_measure_both(theta);
    ProbabilityTable table = probabilities(pf.family, pf.dynamics);
    double want = std::pow(std::sin(theta / 2.0), 2);
    acc.expect_near(
        conditional(table, {{3, "M+"}}, {{3, "N+"}}, options.tol), want,
        detail::fmt_theta(theta) + " Pr(N+|M+)");
    acc.expect_near(
        conditional(table, {{3, "M-"}}, {{3, "N-"}}, options.tol), want,
        detail::fmt_theta(theta) + " Pr(N-|M-)");
  }
  return acc.done("eq43",
                  "joint outcomes: agreement probability is the half-angle "
                  "sine squared",
                  options);
}

inline CheckResult check_incompat(const CheckOptions& options) {
  detail::ErrAcc acc;
  {
    HistoryFamily zz =
        family_no_measurement(Direction::z(), Direction::z()).family;
    HistoryFamily zx =
        family_no_measurement(Direction::z(), Direction::x()).family;
    HistoryFamily zmz =
        family_no_measurement(Direction::z(), Direction::minus_z()).family;
    auto m = compatibility_matrix({zz, zx, zmz}, options.tol);
    acc.expect_true(m[0][0] && m[1][1] && m[2][2],
                    "every description agrees with itself");
    acc.expect_true(!m[0][1], "z vs x second axis must clash");
    acc.expect_true(m[0][2], "z vs -z second axis must agree");
    acc.expect_true(m[0][1] == m[1][0] && m[0][2] == m[2][0],
                    "symmetry of the pairwise table");
  }
  {
    MeasurementSpec spec = MeasurementSpec::standard(
        {Ket::basis_vector(2, 0), Ket::basis_vector(2, 1)});
    TimeGrid grid = TimeGrid::uniform(3);
    Ket spread = initial_state(spec, {Cx(0.6, 0.0), Cx(0.8, 0.0)});
    HistoryFamily meas = measurement_family(spec, spread, grid).family;
    HistoryFamily text = textbook_family(spec, spread, grid).family;
    auto m = compatibility_matrix({meas, text}, options.tol);
    acc.expect_true(!m[0][1],
                    "spread state: outcome story vs followed-state story "
                    "must clash");
    Ket lone = initial_state(spec, {Cx(1.0, 0.0), Cx(0.0, 0.0)});
    HistoryFamily meas1 = measurement_family(spec, lone, grid).family;
    HistoryFamily text1 = textbook_family(spec, lone, grid).family;
    auto m1 = compatibility_matrix({meas1, text1}, options.tol);
    acc.expect_true(m1[0][1],
                    "single-branch state: the two stories must agree");
  }
  {
    PreparedFamily pf = family_measure_a(Direction::z());
    HistoryFamily uf = unitary_family(pf.family.initial(), pf.dynamics,
                                      pf.family.grid());
    auto m = compatibility_matrix({pf.family, uf}, options.tol);
    acc.expect_true(!m[0][1],
                    "recorded-outcome story vs followed-state story must "
                    "clash for an entangled start");
  }
  return acc.done("incompat",
                  "pairwise framework agreement comes out exactly where "
                  "commutation puts it",
                  options);
}

inline CheckResult check_collapse(const CheckOptions& options) {
  detail::ErrAcc acc;
  TensorSpace space{{"a", 2}, {"b", 2}};
  Ket z_plus = Ket::basis_vector(2, 0);
  Projector pa(lift(Operator::dyad(z_plus, z_plus), "a", space), "a+");
  Ket after = collapse(singlet(), pa, options.tol);
  Ket want = tensor_ket(Ket::basis_vector(2, 0), Ket::basis_vector(2, 1));
  acc.expect_small(norm(after - want),
                   "projecting the singlet onto a+ leaves the a+b- product");
  Ket again = collapse(after, pa, options.tol);
  acc.expect_small(norm(again - after), "re-projecting changes nothing");
  bool refused = false;
  try {
    Projector opposite(
        lift(Operator::dyad(Ket::basis_vector(2, 1), Ket::basis_vector(2, 1)),
             "b", space),
        "b-");
    collapse(after, negation(opposite), options.tol);
  } catch (const NullProjection&) {
    refused = true;
  }
  acc.expect_true(refused, "projecting onto an unreachable outcome refuses");
  return acc.done("collapse",
                  "project-and-renormalize behaves as a calculational rule",
                  options);
}

inline CheckResult check_preprob(const CheckOptions& options) {
  detail::ErrAcc acc;
  sampling::Rng rng(sampling::kSeed + 10);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t dim = 2 + static_cast<std::size_t>(trial % 4);
    Ket psi0 = sampling::ket(rng, dim);
    Ket target = sampling::ket(rng, dim);
    Dynamics dyn(dim, {sampling::unitary(rng, dim)});
    auto [p_forward, p_backward] =
        pre_probability_pair(psi0, dyn, target, options.tol);
    std::string tag = "trial " + std::to_string(trial);
    acc.expect_near(p_forward, p_backward, tag + " forward vs backward");
    Projector onto = Projector::onto(target, "phi");
    Projector rest(Operator::identity(dim) - onto.op(), "rest");
    ProbabilityTable direct =
        born_rule(psi0, dyn, Decomposition({onto, rest}), options.tol);
    acc.expect_near(p_forward, direct.value_of({"phi"}),
                    tag + " against the direct weight");
  }
  return acc.done("preprob",
                  "forward-evolved and backward-evolved calculational "
                  "states give one probability",
                  options);
}

inline CheckResult check_locality(const CheckOptions& options) {
  detail::ErrAcc acc;
  constexpr double pi = std::numbers::pi;
  std::vector<double> thetas = {0.0,      pi / 6.0, pi / 3.0,
                                pi / 2.0, 2.0 * pi / 3.0, 5.0 * pi / 6.0};
  std::vector<double> phis = {0.0, pi / 4.0};
  for (double theta : thetas)
    for (double phi : phis) {
      Direction wb(theta, phi);
      ProbabilityTable bare = [&] {
        PreparedFamily pf = family_no_measurement(Direction::z(), wb);
        return probabilities(pf.family, pf.dynamics);
      }();
      ProbabilityTable recorded = [&] {
        PreparedFamily pf = family_measure_a(wb);
        return probabilities(pf.family, pf.dynamics);
      }();
      std::string tag =
          detail::fmt_theta(theta) + " phi=" + std::to_string(phi);
      for (std::size_t slot = 1; slot <= 2; ++slot) {
        double tv = 0.0;
        for (const char* b : {"b+", "b-"}) {
          double p_bare = event_probability(bare, {{slot, b}});
          double p_rec = event_probability(recorded, {{slot, b}});
          tv += std::abs(p_bare - p_rec);
          acc.expect_near(p_bare, 0.5,
                          tag + " bare " + b + " at slot " +
                              std::to_string(slot));
        }
        acc.expect_small(0.5 * tv, tag + " slot " + std::to_string(slot) +
                                       " distribution shift");
      }
      // After the recording interval the distant side still matches the
      // bare family's late-time statistics.
      double tv_late = 0.0;
      for (const char* b : {"b+", "b-"})
        tv_late += std::abs(event_probability(bare, {{2, b}}) -
                            event_probability(recorded, {{3, b}}));
      acc.expect_small(0.5 * tv_late, tag + " post-interaction shift");
    }
  return acc.done("locality",
                  "recording one side never moves the other side's "
                  "statistics",
                  options);
}

inline CheckResult check_consistency_suite(const CheckOptions& options) {
  detail::ErrAcc acc;
  auto expect_consistent = [&](const PreparedFamily& pf,
                               const std::string& what) {
    ConsistencyReport rep =
        check_consistency(pf.family, pf.dynamics, options.tol);
    acc.expect_true(rep.consistent, what);
    acc.expect_small(rep.worst_overlap, what + " worst overlap");
  };
  expect_consistent(family_no_measurement(Direction::z(), Direction::z()),
                    "aligned bare family");
  expect_consistent(family_no_measurement(Direction::z(), Direction::x()),
                    "tilted bare family");
  expect_consistent(family_measure_a(Direction::z()),
                    "one-recorder family, aligned");
  expect_consistent(family_measure_a(Direction(std::numbers::pi / 5.0)),
                    "one-recorder family, tilted");
  expect_consistent(family_measure_both(std::numbers::pi / 3.0),
                    "two-recorder family");
  sampling::Rng rng(sampling::kSeed + 7);
  {
    MeasurementSpec spec = MeasurementSpec::standard(
        {Ket::basis_vector(2, 0), Ket::basis_vector(2, 1)});
    TimeGrid grid = TimeGrid::uniform(3);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Cx> c = sampling::coefficients(rng, 2);
      Ket psi0 = initial_state(spec, c);
      expect_consistent(measurement_family(spec, psi0, grid),
                        "outcome family trial " + std::to_string(trial));
      expect_consistent(textbook_family(spec, psi0, grid),
                        "followed-state family trial " +
                            std::to_string(trial));
    }
  }
  // Any family with a single later time is consistent: the members of one
  // decomposition are orthogonal by definition.
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t dim = 2 + static_cast<std::size_t>(trial % 4);
    Ket psi0 = sampling::ket(rng, dim);
    Operator v = sampling::unitary(rng, dim);
    std::vector<Projector> members;
    for (std::size_t k = 0; k < dim; ++k) {
      Ket col = v.column(k);
      members.emplace_back(Operator::dyad(col, col),
                           "m" + std::to_string(k));
    }
    HistoryFamily family(psi0, TimeGrid::uniform(2),
                         {Decomposition(std::move(members))});
    Dynamics dyn(dim, {sampling::unitary(rng, dim)});
    ConsistencyReport rep = check_consistency(family, dyn, options.tol);
    acc.expect_true(rep.consistent,
                    "single-step family trial " + std::to_string(trial));
  }
  // An engineered clash: start along z+, ask the x question, then the z
  // question, with nothing evolving. The two z+ routes interfere with
  // overlap exactly 1/4.
  {
    Decomposition xs({spin_projector(Direction::x(), Spin::kPlus),
                      spin_projector(Direction::x(), Spin::kMinus)});
    Decomposition zs({spin_projector(Direction::z(), Spin::kPlus),
                      spin_projector(Direction::z(), Spin::kMinus)});
    HistoryFamily family(Ket::basis_vector(2, 0), TimeGrid::uniform(3),
                         {xs, zs});
    Dynamics dyn = Dynamics::trivial(2, 2);
    ConsistencyReport rep = check_consistency(family, dyn, options.tol);
    acc.expect_true(!rep.consistent, "interfering routes must be refused");
    acc.expect_near(rep.worst_overlap, 0.25,
                    "interfering routes worst overlap");
    bool threw = false;
    try {
      probabilities(family, dyn, options.tol);
    } catch (const InconsistentFamily& e) {
      threw = e.overlap() > options.tol;
    }
    acc.expect_true(threw, "probability assignment must throw");
  }
  return acc.done("consistency",
                  "orthogonality gate: passes every stock family, passes "
                  "single-step families, rejects interfering routes",
                  options);
}

inline CheckResult check_chsh(const CheckOptions& options) {
  detail::ErrAcc acc;
  constexpr double pi = std::numbers::pi;
  Direction a1 = Direction::z();
  Direction a2(pi / 2.0);
  Direction b1(pi / 4.0);
  Direction b2(-pi / 4.0);
  double s = chsh(a1, a2, b1, b2);
  acc.expect_near(std::abs(s), 2.0 * std::sqrt(2.0),
                  "optimal settings magnitude");
  acc.expect_near(s, -2.0 * std::sqrt(2.0), "optimal settings sign");
  double s_eq = chsh(a1, a1, a1, a1);
  acc.expect_near(std::abs(s_eq), 2.0, "equal settings magnitude");
  // Every deterministic answer table obeys the bound of 2.
  double best = 0.0;
  for (int mask = 0; mask < 16; ++mask) {
    double ra1 = (mask & 1) ? 1.0 : -1.0;
    double ra2 = (mask & 2) ? 1.0 : -1.0;
    double rb1 = (mask & 4) ? 1.0 : -1.0;
    double rb2 = (mask & 8) ? 1.0 : -1.0;
    best = std::max(best, std::abs(ra1 * rb1 + ra1 * rb2 + ra2 * rb1 -
                                   ra2 * rb2));
  }
  acc.expect_near(best, 2.0, "deterministic-assignment ceiling");
  acc.expect_true(std::abs(s) > best + 0.5,
                  "engine statistics must clear the deterministic ceiling");
  return acc.done("chsh",
                  "four-correlation combination reaches 2*sqrt(2), beyond "
                  "every deterministic assignment",
                  options);
}

/// Every named check, in reporting order.
inline const std::vector<
    std::pair<std::string, std::function<CheckResult(const CheckOptions&)>>>&
check_registry() {
  static const std::vector<
      std::pair<std::string,
                std::function<CheckResult(const CheckOptions&)>>>
      registry = {
          {"eq2", check_eq2},
          {"eq17", check_eq17},
          {"eq18", check_eq18},
          {"eq19", check_eq19},
          {"eq24", check_eq24},
          {"eq25", check_eq25},
          {"eq28", check_eq28},
          {"eq32", check_eq32},
          {"eq33", check_eq33},
          {"eq35", check_eq35},
          {"eq37", check_eq37},
          {"eq38", check_eq38},
          {"eq41", check_eq41},
          {"eq42", check_eq42},
          {"eq43", check_eq43},
          {"incompat", check_incompat},
          {"collapse", check_collapse},
          {"preprob", check_preprob},
          {"locality", check_locality},
          {"consistency", check_consistency_suite},
          {"chsh", check_chsh},
      };
  return registry;
}

/// Runs all checks, or only the named ones. Unknown names are refused.
inline std::vector<CheckResult> verification_checks(
    const CheckOptions& options = {},
    const std::vector<std::string>& only = {}) {
  for (const std::string& name : only) {
    bool known = false;
    for (const auto& [id, fn] : check_registry())
      if (id == name) known = true;
    if (!known) throw ValidationError("no check named '" + name + "'");
  }
  std::vector<CheckResult> results;
  for (const auto& [id, fn] : check_registry()) {
    if (!only.empty() &&
        std::find(only.begin(), only.end(), id) == only.end())
      continue;
    results.push_back(fn(options));
  }
  return results;
}

}  // namespace chronicle

#endif  // CHRONICLE_CHECKS_HPP
