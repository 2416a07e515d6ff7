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

#ifndef CHRONICLE_ERRORS_HPP
#define CHRONICLE_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chronicle {

/// Base class of every exception thrown by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands with incompatible dimensions.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A value failed a construction-time invariant (non-finite entry,
/// unnormalized state, bad time grid, unresolved reference, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A candidate set of projectors is not a decomposition of the identity.
/// Carries one entry per violated condition.
class DecompositionError : public Error {
 public:
  DecompositionError(std::string what, std::vector<std::string> violations)
      : Error(std::move(what)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Raised when a common refinement of non-commuting sample spaces is
/// requested. Results from such spaces must not be combined.
class IncompatibleFrameworks : public Error {
 public:
  using Error::Error;
};

/// A history family whose chain kets fail mutual orthogonality. Probabilities
/// are refused; the offending pair and its overlap are reported.
class InconsistentFamily : public Error {
 public:
  InconsistentFamily(std::string what, std::string first, std::string second,
                     double overlap)
      : Error(std::move(what)),
        first_(std::move(first)),
        second_(std::move(second)),
        overlap_(overlap) {}

  const std::string& first_history() const { return first_; }
  const std::string& second_history() const { return second_; }
  double overlap() const { return overlap_; }

 private:
  std::string first_;
  std::string second_;
  double overlap_;
};

/// Projecting a state onto an (almost) orthogonal subspace leaves nothing
/// to renormalize.
class NullProjection : public Error {
 public:
  using Error::Error;
};

/// Conditioning on an event of (numerically) zero probability.
class ConditionOnNullEvent : public Error {
 public:
  using Error::Error;
};

/// Families that are supposed to share a time grid and space do not.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// Orthonormal completion ran out of independent vectors.
class CompletionFailure : public Error {
 public:
  using Error::Error;
};

/// A scenario document that could not be parsed. `location` points at the
/// offending file/field.
class ParseError : public Error {
 public:
  ParseError(std::string what, std::string location)
      : Error(std::move(what)), location_(std::move(location)) {}

  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

}  // namespace chronicle

#endif  // CHRONICLE_ERRORS_HPP
