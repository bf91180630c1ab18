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

#include "qsl/cli/state_io.hpp"

#include <fstream>

namespace qsl::cli {

using nlohmann::json;

namespace {

std::vector<std::size_t> parse_dims(const json& doc) {
  if (!doc.contains("dims")) throw SchemaError("dims", "missing");
  const json& dims = doc.at("dims");
  if (!dims.is_array() || dims.empty()) {
    throw SchemaError("dims", "must be a nonempty array of positive integers");
  }
  std::vector<std::size_t> out;
  for (const auto& d : dims) {
    if (!d.is_number_integer() || d.get<long long>() < 1) {
      throw SchemaError("dims", "must be a nonempty array of positive integers");
    }
    out.push_back(d.get<std::size_t>());
  }
  return out;
}

Complex parse_complex(const json& pair, const std::string& field) {
  if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
    throw SchemaError(field, "entries must be [re, im] number pairs");
  }
  return {pair[0].get<double>(), pair[1].get<double>()};
}

CVector parse_vector(const json& doc, const std::string& field, std::size_t n) {
  const json& arr = doc.at(field);
  if (!arr.is_array()) throw SchemaError(field, "must be an array of [re, im] pairs");
  if (arr.size() != n) {
    throw SchemaError(field, "expected " + std::to_string(n) + " entries, got " +
                                 std::to_string(arr.size()));
  }
  CVector out(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    out(static_cast<Eigen::Index>(i)) = parse_complex(arr[i], field);
  }
  return out;
}

CMatrix parse_matrix(const json& doc, const std::string& field, std::size_t n) {
  const CVector flat = parse_vector(doc, field, n * n);
  const auto side = static_cast<Eigen::Index>(n);
  CMatrix out(side, side);
  for (Eigen::Index r = 0; r < side; ++r) {
    for (Eigen::Index c = 0; c < side; ++c) out(r, c) = flat(r * side + c);
  }
  return out;
}

json complex_array(const Complex* data, std::size_t n) {
  json arr = json::array();
  for (std::size_t i = 0; i < n; ++i) arr.push_back({data[i].real(), data[i].imag()});
  return arr;
}

json matrix_array(const CMatrix& m) {
  // Row-major on the wire, column-major in memory.
  const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = m;
  return complex_array(rm.data(), static_cast<std::size_t>(rm.size()));
}

json base_json(const SubsystemLayout& layout, const Hamiltonian& h) {
  json doc;
  doc["dims"] = layout.dims();
  doc["hamiltonian"] = matrix_array(h.matrix());
  return doc;
}

}  // namespace

StateFile parse_state_file(const json& doc, bool ground_shift) {
  if (!doc.is_object()) throw SchemaError("<root>", "must be a JSON object");
  SubsystemLayout layout(parse_dims(doc));
  const std::size_t n = layout.total_dim();

  const bool has_amps = doc.contains("amplitudes");
  const bool has_matrix = doc.contains("matrix");
  if (has_amps == has_matrix) {
    throw SchemaError("amplitudes", "exactly one of \"amplitudes\" or \"matrix\" is required");
  }
  if (!doc.contains("hamiltonian")) throw SchemaError("hamiltonian", "missing");
  CMatrix hm = parse_matrix(doc, "hamiltonian", n);

  AnyState state = has_amps ? AnyState(PureState(layout, parse_vector(doc, "amplitudes", n)))
                            : AnyState(DensityMatrix(layout, parse_matrix(doc, "matrix", n)));
  Hamiltonian h(layout, std::move(hm));
  if (ground_shift) h = qsl::ground_shift(h);
  return StateFile{std::move(state), std::move(h)};
}

StateFile load_state_file(const std::filesystem::path& path, bool ground_shift) {
  std::ifstream in(path);
  if (!in) throw SchemaError("<file>", "cannot open " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw SchemaError("<file>", std::string("invalid JSON: ") + e.what());
  }
  return parse_state_file(doc, ground_shift);
}

json to_json(const PureState& state, const Hamiltonian& h) {
  json doc = base_json(state.layout(), h);
  doc["amplitudes"] = complex_array(state.amplitudes().data(), state.dim());
  return doc;
}

json to_json(const DensityMatrix& rho, const Hamiltonian& h) {
  json doc = base_json(rho.layout(), h);
  doc["matrix"] = matrix_array(rho.matrix());
  return doc;
}

}  // namespace qsl::cli
