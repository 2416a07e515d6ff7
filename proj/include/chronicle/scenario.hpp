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

#ifndef CHRONICLE_SCENARIO_HPP
#define CHRONICLE_SCENARIO_HPP

#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "chronicle/epr.hpp"
#include "chronicle/errors.hpp"
#include "chronicle/framework.hpp"
#include "chronicle/histories.hpp"
#include "chronicle/linalg.hpp"
#include "chronicle/measurement.hpp"
#include "chronicle/version.hpp"

namespace chronicle {

using Json = nlohmann::json;

/// One query from a scenario document, kept with its original JSON so
/// reports can echo it verbatim.
struct Query {
  enum class Kind { kMarginal, kConditional, kProbability };
  Kind kind;
  std::vector<std::size_t> keep_slots;  // marginal
  std::vector<SlotToken> given;         // conditional
  std::vector<SlotToken> target;        // conditional / probability
  Json echo;
};

/// A parsed, validated scenario: the prepared family plus the queries to
/// answer and the document itself for echoing.
struct Scenario {
  std::string name;
  std::string description;
  PreparedFamily prepared;
  std::vector<Query> queries;
  std::optional<double> tolerance;
  Json echo;
};

namespace detail {

inline const Json& field(const Json& j, const char* key,
                         const std::string& loc) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError("missing field '" + std::string(key) + "'", loc);
  return j.at(key);
}

inline double number_at(const Json& j, const std::string& loc) {
  if (!j.is_number()) throw ParseError("expected a number", loc);
  return j.get<double>();
}

/// A scalar amplitude: either a plain number (real) or [re, im].
inline Cx complex_at(const Json& j, const std::string& loc) {
  if (j.is_number()) return Cx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Cx(j[0].get<double>(), j[1].get<double>());
  throw ParseError("expected a number or [re, im] pair", loc);
}

inline Ket ket_at(const Json& j, std::size_t dim, const std::string& loc) {
  if (!j.is_array() || j.size() != dim)
    throw ParseError("expected " + std::to_string(dim) + " amplitudes", loc);
  std::vector<Cx> amps;
  amps.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i)
    amps.push_back(complex_at(j[i], loc + "[" + std::to_string(i) + "]"));
  return Ket{std::move(amps)};
}

inline Operator matrix_at(const Json& j, std::size_t dim,
                          const std::string& loc) {
  if (!j.is_array() || j.size() != dim)
    throw ParseError("expected a " + std::to_string(dim) + "x" +
                         std::to_string(dim) + " matrix",
                     loc);
  std::vector<Cx> entries;
  entries.reserve(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const Json& row = j[r];
    std::string row_loc = loc + "[" + std::to_string(r) + "]";
    if (!row.is_array() || row.size() != dim)
      throw ParseError("expected a row of " + std::to_string(dim) +
                           " entries",
                       row_loc);
    for (std::size_t c = 0; c < dim; ++c)
      entries.push_back(
          complex_at(row[c], row_loc + "[" + std::to_string(c) + "]"));
  }
  return Operator(dim, std::move(entries));
}

inline TensorSpace spaces_at(const Json& j, const std::string& loc) {
  if (!j.is_array() || j.empty())
    throw ParseError("expected a non-empty array of factors", loc);
  std::vector<TensorSpace::Factor> factors;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string floc = loc + "[" + std::to_string(i) + "]";
    const Json& label = field(j[i], "label", floc);
    const Json& dim = field(j[i], "dim", floc);
    if (!label.is_string()) throw ParseError("factor label must be a string", floc);
    if (!dim.is_number_unsigned() || dim.get<std::size_t>() < 1)
      throw ParseError("factor dim must be a positive integer", floc);
    factors.push_back({label.get<std::string>(), dim.get<std::size_t>()});
  }
  return TensorSpace(std::move(factors));
}

inline Direction direction_at(const Json& j, const std::string& loc) {
  double theta = number_at(field(j, "theta", loc), loc + ".theta");
  double phi = j.contains("phi")
                   ? number_at(j.at("phi"), loc + ".phi")
                   : 0.0;
  return Direction(theta, phi);
}

inline Ket initial_at(const Json& j, const TensorSpace& space,
                      const std::string& loc) {
  if (j.is_object() && j.contains("singlet")) {
    const Json& pair = j.at("singlet");
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
        !pair[1].is_string())
      throw ParseError("'singlet' takes two factor labels",
                       loc + ".singlet");
    return singlet_on(space, pair[0].get<std::string>(),
                      pair[1].get<std::string>());
  }
  if (j.is_object() && j.contains("amplitudes"))
    return ket_at(j.at("amplitudes"), space.total_dim(),
                  loc + ".amplitudes");
  throw ParseError("initial state needs 'singlet' or 'amplitudes'", loc);
}

inline Dynamics dynamics_at(const Json& j, const TensorSpace& space,
                            const std::string& loc) {
  if (!j.is_array() || j.empty())
    throw ParseError("expected one dynamics entry per interval", loc);
  std::vector<Operator> us;
  us.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& entry = j[i];
    std::string eloc = loc + "[" + std::to_string(i) + "]";
    if (entry.is_string() && entry.get<std::string>() == "identity") {
      us.push_back(Operator::identity(space.total_dim()));
      continue;
    }
    if (entry.is_object() && entry.contains("measurements")) {
      const Json& list = entry.at("measurements");
      std::string mloc = eloc + ".measurements";
      if (!list.is_array() || list.empty())
        throw ParseError("expected a non-empty array", mloc);
      Operator u = Operator::identity(space.total_dim());
      for (std::size_t m = 0; m < list.size(); ++m) {
        std::string one = mloc + "[" + std::to_string(m) + "]";
        const Json& system = field(list[m], "system", one);
        const Json& pointer = field(list[m], "pointer", one);
        if (!system.is_string() || !pointer.is_string())
          throw ParseError("'system' and 'pointer' are factor labels", one);
        if (space.dim_of(system.get<std::string>()) != 2)
          throw ParseError("measured factor must be two-level", one);
        if (space.dim_of(pointer.get<std::string>()) != 3)
          throw ParseError("pointer factor must be three-level", one);
        Direction d = list[m].contains("theta")
                          ? direction_at(list[m], one)
                          : Direction::z();
        u = u * detail::recorder_unitary(space, system.get<std::string>(),
                                         pointer.get<std::string>(), d);
      }
      us.push_back(std::move(u));
      continue;
    }
    if (entry.is_object() && entry.contains("unitary")) {
      us.push_back(matrix_at(entry.at("unitary"), space.total_dim(),
                             eloc + ".unitary"));
      continue;
    }
    throw ParseError(
        "dynamics entry must be \"identity\", {\"measurements\": ...}, or "
        "{\"unitary\": ...}",
        eloc);
  }
  return Dynamics(space.total_dim(), std::move(us));
}

/// One slot: a product of per-factor decompositions, the evolved-state
/// pair, or explicit projector matrices.
inline Decomposition slot_at(const Json& j, const TensorSpace& space,
                             const Ket& evolved, const std::string& loc) {
  if (j.is_object() && j.contains("product")) {
    const Json& list = j.at("product");
    std::string ploc = loc + ".product";
    if (!list.is_array() || list.empty())
      throw ParseError("expected a non-empty array", ploc);
    std::optional<Decomposition> result;
    for (std::size_t i = 0; i < list.size(); ++i) {
      std::string one = ploc + "[" + std::to_string(i) + "]";
      const Json& factor = field(list[i], "factor", one);
      if (!factor.is_string())
        throw ParseError("'factor' must be a label", one);
      std::string label = factor.get<std::string>();
      Decomposition part = [&]() {
        if (list[i].contains("spin")) {
          if (space.dim_of(label) != 2)
            throw ParseError("spin factor must be two-level", one);
          return detail::spin_slot(
              space, label,
              direction_at(list[i].at("spin"), one + ".spin"), label);
        }
        if (list[i].contains("pointer")) {
          if (space.dim_of(label) != 3)
            throw ParseError("pointer factor must be three-level", one);
          return detail::pointer_slot3(space, label, label);
        }
        throw ParseError("factor entry needs 'spin' or 'pointer'", one);
      }();
      result = result ? common_refinement(*result, part) : std::move(part);
    }
    return *result;
  }
  if (j.is_object() && j.contains("evolved_initial")) {
    Projector onto = Projector::onto(evolved, "psi");
    Projector rest(Operator::identity(evolved.dim()) - onto.op(), "perp");
    return Decomposition({std::move(onto), std::move(rest)});
  }
  if (j.is_object() && j.contains("members")) {
    const Json& list = j.at("members");
    std::string mloc = loc + ".members";
    if (!list.is_array() || list.empty())
      throw ParseError("expected a non-empty array", mloc);
    std::vector<Projector> members;
    for (std::size_t i = 0; i < list.size(); ++i) {
      std::string one = mloc + "[" + std::to_string(i) + "]";
      const Json& label = field(list[i], "label", one);
      if (!label.is_string())
        throw ParseError("'label' must be a string", one);
      members.emplace_back(matrix_at(field(list[i], "matrix", one),
                                     space.total_dim(), one + ".matrix"),
                           label.get<std::string>());
    }
    return Decomposition(std::move(members));
  }
  throw ParseError(
      "slot must be {\"product\": ...}, {\"evolved_initial\": true}, or "
      "{\"members\": ...}",
      loc);
}

inline std::vector<SlotToken> tokens_at(const Json& j,
                                        const std::string& loc) {
  if (!j.is_array())
    throw ParseError("expected an array of {slot, token}", loc);
  std::vector<SlotToken> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string one = loc + "[" + std::to_string(i) + "]";
    const Json& slot = field(j[i], "slot", one);
    const Json& token = field(j[i], "token", one);
    if (!slot.is_number_unsigned() || slot.get<std::size_t>() < 1)
      throw ParseError("'slot' is a 1-based index", one);
    if (!token.is_string())
      throw ParseError("'token' must be a string", one);
    out.push_back({slot.get<std::size_t>(), token.get<std::string>()});
  }
  return out;
}

inline Query query_at(const Json& j, const std::string& loc) {
  const Json& type = field(j, "type", loc);
  Query q;
  q.echo = j;
  if (type == "marginal") {
    q.kind = Query::Kind::kMarginal;
    const Json& keep = field(j, "keep_slots", loc);
    if (!keep.is_array() || keep.empty())
      throw ParseError("'keep_slots' must be a non-empty array",
                       loc + ".keep_slots");
    for (const Json& s : keep) {
      if (!s.is_number_unsigned() || s.get<std::size_t>() < 1)
        throw ParseError("slots are 1-based indices", loc + ".keep_slots");
      q.keep_slots.push_back(s.get<std::size_t>());
    }
    return q;
  }
  if (type == "conditional") {
    q.kind = Query::Kind::kConditional;
    q.given = tokens_at(field(j, "given", loc), loc + ".given");
    q.target = tokens_at(field(j, "target", loc), loc + ".target");
    return q;
  }
  if (type == "probability") {
    q.kind = Query::Kind::kProbability;
    q.target = tokens_at(field(j, "tokens", loc), loc + ".tokens");
    return q;
  }
  throw ParseError("unknown query type", loc + ".type");
}

inline Json table_json(const ProbabilityTable& table) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < table.size(); ++i) {
    Json history = Json::array();
    for (const std::string& label : table.index(i)) history.push_back(label);
    entries.push_back(
        Json{{"history", history}, {"probability", table.value(i)}});
  }
  return Json{{"entries", entries},
              {"slot_count", table.slot_count()},
              {"total", table.total()}};
}

}  // namespace detail

/// Parses and validates a scenario document. Structural problems raise
/// ParseError naming the offending location; semantic problems raise the
/// validation errors of the types involved.
inline Scenario parse_scenario(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(e.what(), "byte " + std::to_string(e.byte));
  }
  if (!doc.is_object()) throw ParseError("document must be an object", "/");
  TensorSpace space =
      detail::spaces_at(detail::field(doc, "spaces", "/"), "/spaces");
  const Json& grid_json = detail::field(doc, "grid", "/");
  if (!grid_json.is_array() || grid_json.size() < 2)
    throw ParseError("'grid' needs at least two times", "/grid");
  std::vector<double> times;
  for (std::size_t i = 0; i < grid_json.size(); ++i)
    times.push_back(detail::number_at(
        grid_json[i], "/grid[" + std::to_string(i) + "]"));
  TimeGrid grid(std::move(times));
  Ket initial = detail::initial_at(detail::field(doc, "initial", "/"), space,
                                   "/initial");
  Dynamics dynamics = detail::dynamics_at(
      detail::field(doc, "dynamics", "/"), space, "/dynamics");
  if (dynamics.interval_count() != grid.interval_count())
    throw ParseError("'dynamics' needs one entry per grid interval",
                     "/dynamics");
  const Json& slots_json = detail::field(doc, "slots", "/");
  if (!slots_json.is_array() ||
      slots_json.size() != grid.interval_count())
    throw ParseError("'slots' needs one entry per time after the first",
                     "/slots");
  std::vector<Decomposition> slots;
  for (std::size_t i = 0; i < slots_json.size(); ++i)
    slots.push_back(detail::slot_at(slots_json[i], space,
                                    dynamics.propagate(initial, i + 1),
                                    "/slots[" + std::to_string(i) + "]"));
  std::vector<Query> queries;
  if (doc.contains("queries")) {
    const Json& list = doc.at("queries");
    if (!list.is_array()) throw ParseError("'queries' must be an array", "/queries");
    for (std::size_t i = 0; i < list.size(); ++i)
      queries.push_back(
          detail::query_at(list[i], "/queries[" + std::to_string(i) + "]"));
  }
  std::optional<double> tolerance;
  if (doc.contains("tolerance"))
    tolerance = detail::number_at(doc.at("tolerance"), "/tolerance");
  std::string name = doc.contains("name") && doc.at("name").is_string()
                         ? doc.at("name").get<std::string>()
                         : "";
  std::string description =
      doc.contains("description") && doc.at("description").is_string()
          ? doc.at("description").get<std::string>()
          : "";
  HistoryFamily family(std::move(initial), grid, std::move(slots));
  return Scenario{std::move(name),
                  std::move(description),
                  PreparedFamily{std::move(family), std::move(dynamics),
                                 std::move(space)},
                  std::move(queries),
                  tolerance,
                  std::move(doc)};
}

/// Reads and parses a scenario file.
inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file", path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

/// Runs a scenario: consistency check, full probability table, query
/// answers. The result is plain JSON whose canonical serialization is
/// deterministic. Inconsistent families are refused, as everywhere else.
inline Json run_scenario(const Scenario& scenario, double tol = kDefaultTol) {
  const HistoryFamily& family = scenario.prepared.family;
  const Dynamics& dynamics = scenario.prepared.dynamics;
  ConsistencyReport consistency = check_consistency(family, dynamics, tol);
  ProbabilityTable table = probabilities(family, dynamics, tol);
  Json queries = Json::array();
  for (const Query& q : scenario.queries) {
    Json answer{{"query", q.echo}};
    switch (q.kind) {
      case Query::Kind::kMarginal:
        answer["table"] = detail::table_json(marginal(table, q.keep_slots));
        break;
      case Query::Kind::kConditional:
        answer["value"] = conditional(table, q.given, q.target, tol);
        break;
      case Query::Kind::kProbability:
        answer["value"] = event_probability(table, q.target);
        break;
    }
    queries.push_back(std::move(answer));
  }
  Json consistency_json{{"consistent", consistency.consistent},
                        {"worst_overlap", consistency.worst_overlap}};
  if (!consistency.worst_a.empty()) {
    consistency_json["worst_pair"] =
        Json::array({consistency.worst_a, consistency.worst_b});
  } else {
    consistency_json["worst_pair"] = nullptr;
  }
  return Json{{"consistency", consistency_json},
              {"engine_version", kVersion},
              {"queries", queries},
              {"scenario", scenario.echo},
              {"table", detail::table_json(table)},
              {"tolerance", tol}};
}

/// Canonical serialization: keys in sorted order (the parser's storage
/// order), two-space indent, shortest round-trip numbers. Equal documents
/// serialize identically.
inline std::string canonical_json(const Json& j) { return j.dump(2) + "\n"; }

/// Parses report text back to JSON; round-trips canonical_json exactly.
inline Json parse_report(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(e.what(), "byte " + std::to_string(e.byte));
  }
}

}  // namespace chronicle

#endif  // CHRONICLE_SCENARIO_HPP
