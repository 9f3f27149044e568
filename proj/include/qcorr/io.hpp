// Copyright 2026 The qcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qcorr/error.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/measures.hpp"

// JSON state files and machine-readable reports.
//
// State file:  {"dims": [2, 2], "matrix": [[[re, im], ...], ...]}
// The matrix is the full square array, row-major.

namespace qcorr::io {

// Malformed input: bad JSON, wrong structure, or a dims/matrix size mismatch.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StateFile {
  Dims dims;
  ComplexMatrix matrix;
};

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline ComplexMatrix matrix_from_json(const nlohmann::json& rows) {
  if (!rows.is_array()) throw ParseError("\"matrix\" must be an array of rows");
  const std::size_t n = rows.size();
  std::vector<Complex> entries;
  entries.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || row.size() != n) {
      throw ParseError("row " + std::to_string(i) + " must hold " + std::to_string(n) + " entries");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const auto& e = row[j];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw ParseError("entry (" + std::to_string(i) + "," + std::to_string(j) + ") must be [re, im]");
      }
      entries.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
  }
  return ComplexMatrix(n, std::move(entries));
}

inline StateFile parse_state_file(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("invalid JSON at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
  if (!doc.is_object() || !doc.contains("dims") || !doc.contains("matrix")) {
    throw ParseError("expected an object with \"dims\" and \"matrix\"");
  }
  StateFile sf;
  const auto& dims = doc["dims"];
  if (!dims.is_array() || dims.empty()) throw ParseError("\"dims\" must be a non-empty array");
  for (const auto& d : dims) {
    if (!d.is_number_unsigned() || d.get<std::size_t>() == 0) {
      throw ParseError("\"dims\" entries must be positive integers");
    }
    sf.dims.push_back(d.get<std::size_t>());
  }
  sf.matrix = matrix_from_json(doc["matrix"]);
  if (total_dim(sf.dims) != sf.matrix.dim()) {
    throw ParseError("dims product " + std::to_string(total_dim(sf.dims)) + " does not match matrix size " +
                     std::to_string(sf.matrix.dim()));
  }
  return sf;
}

inline std::string serialize_state_file(const Dims& dims, const ComplexMatrix& m) {
  return nlohmann::json{{"dims", dims}, {"matrix", matrix_to_json(m)}}.dump() + "\n";
}

struct Report {
  std::optional<std::string> input_sha256;
  Dims dims;
  struct Measures {
    double mutual_information = 0.0;
    double discord = 0.0;
    double classical_correlation = 0.0;
    double oneway_deficit = 0.0;
    double quantum_deficit = 0.0;
  };
  std::optional<Measures> measures;
  struct Angles {
    double theta = 0.0;
    double phi = 0.0;
  };
  std::optional<Angles> optimal_measurement;
  struct BMapResult {
    ComplexMatrix matrix;
    std::vector<double> eigenvalues;
    std::string verdict;
    double insensitivity_residual = 0.0;
  };
  std::optional<BMapResult> bmap;
  struct Quantumness {
    double upper_bound = 0.0;
    double marginal_residual = 0.0;
    int restarts_used = 0;
  };
  std::optional<Quantumness> quantumness;
  std::vector<std::string> warnings;
};

inline Report::Measures measures_block(const MeasureReport& r) {
  return {r.mutual_information, r.discord, r.classical_correlation, r.oneway_deficit, r.quantum_deficit};
}

inline nlohmann::json to_json(const Report& r) {
  nlohmann::json j;
  j["input_sha256"] = r.input_sha256 ? nlohmann::json(*r.input_sha256) : nlohmann::json(nullptr);
  j["dims"] = r.dims;
  if (r.measures) {
    j["measures"] = {{"mutual_information", r.measures->mutual_information},
                     {"discord", r.measures->discord},
                     {"classical_correlation", r.measures->classical_correlation},
                     {"oneway_deficit", r.measures->oneway_deficit},
                     {"quantum_deficit", r.measures->quantum_deficit}};
  }
  if (r.optimal_measurement) {
    j["optimal_measurement"] = {{"theta", r.optimal_measurement->theta}, {"phi", r.optimal_measurement->phi}};
  }
  if (r.bmap) {
    j["bmap"] = {{"matrix", matrix_to_json(r.bmap->matrix)},
                 {"eigenvalues", r.bmap->eigenvalues},
                 {"verdict", r.bmap->verdict},
                 {"insensitivity_residual", r.bmap->insensitivity_residual}};
  }
  if (r.quantumness) {
    j["quantumness"] = {{"upper_bound", r.quantumness->upper_bound},
                        {"marginal_residual", r.quantumness->marginal_residual},
                        {"restarts_used", r.quantumness->restarts_used}};
  }
  j["warnings"] = r.warnings;
  return j;
}

inline Report report_from_json(const nlohmann::json& j) {
  Report r;
  if (!j.at("input_sha256").is_null()) r.input_sha256 = j.at("input_sha256").get<std::string>();
  r.dims = j.at("dims").get<Dims>();
  if (j.contains("measures")) {
    const auto& m = j["measures"];
    r.measures = Report::Measures{m.at("mutual_information").get<double>(), m.at("discord").get<double>(),
                                  m.at("classical_correlation").get<double>(), m.at("oneway_deficit").get<double>(),
                                  m.at("quantum_deficit").get<double>()};
  }
  if (j.contains("optimal_measurement")) {
    const auto& a = j["optimal_measurement"];
    r.optimal_measurement = Report::Angles{a.at("theta").get<double>(), a.at("phi").get<double>()};
  }
  if (j.contains("bmap")) {
    const auto& b = j["bmap"];
    r.bmap = Report::BMapResult{matrix_from_json(b.at("matrix")), b.at("eigenvalues").get<std::vector<double>>(),
                                b.at("verdict").get<std::string>(), b.at("insensitivity_residual").get<double>()};
  }
  if (j.contains("quantumness")) {
    const auto& q = j["quantumness"];
    r.quantumness = Report::Quantumness{q.at("upper_bound").get<double>(), q.at("marginal_residual").get<double>(),
                                        q.at("restarts_used").get<int>()};
  }
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

}  // namespace qcorr::io
