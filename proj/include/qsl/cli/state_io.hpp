// Copyright 2026 The QSL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON input format for states and Hamiltonians:
//
//   {
//     "dims": [2, 2],
//     "amplitudes": [[re, im], ...],        // pure state, or
//     "matrix": [[re, im], ...],            // density matrix, row-major
//     "hamiltonian": [[re, im], ...]        // row-major
//   }
//
// Exactly one of "amplitudes" / "matrix" must be present.

#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include <json.hpp>

#include "qsl/qcore.hpp"

namespace qsl::cli {

/// The input does not match the JSON schema; `field()` names the culprit.
class SchemaError : public InvalidArgument {
 public:
  SchemaError(std::string field, const std::string& message)
      : InvalidArgument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

using AnyState = std::variant<PureState, DensityMatrix>;

struct StateFile {
  AnyState state;
  Hamiltonian hamiltonian;
};

/// Shape errors raise SchemaError; physical invariant failures (norm,
/// Hermiticity, positivity) raise InvariantViolation. When `ground_shift`
/// is set the Hamiltonian is shifted to a zero ground energy.
StateFile parse_state_file(const nlohmann::json& doc, bool ground_shift = false);
StateFile load_state_file(const std::filesystem::path& path, bool ground_shift = false);

nlohmann::json to_json(const PureState& state, const Hamiltonian& h);
nlohmann::json to_json(const DensityMatrix& rho, const Hamiltonian& h);

}  // namespace qsl::cli
