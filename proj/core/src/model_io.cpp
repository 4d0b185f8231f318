// Copyright 2026 The rotcd Authors
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

#include "rotcd/model_io.hpp"

#include <fstream>

#include "rotcd/errors.hpp"

namespace rotcd {

using nlohmann::json;

json to_json(const ModelSpec& spec) {
  json doc;
  doc["kind"] = std::string(to_string(spec.kind));
  doc[spec.kind == ModelKind::kLhz ? "n" : "N"] = spec.size;
  if (spec.kind == ModelKind::kQubo) {
    json rows = json::array();
    for (Eigen::Index j = 0; j < spec.qubo_couplings.rows(); ++j) {
      json row = json::array();
      for (Eigen::Index k = 0; k < spec.qubo_couplings.cols(); ++k)
        row.push_back(spec.qubo_couplings(j, k));
      rows.push_back(std::move(row));
    }
    doc["couplings"] = std::move(rows);
  } else if (spec.kind == ModelKind::kLhz) {
    doc["couplings"] = spec.lhz_couplings;
  }
  if (!spec.constraints.empty()) doc["constraints"] = spec.constraints;
  if (spec.seed) doc["seed"] = *spec.seed;
  return doc;
}

ModelSpec model_spec_from_json(const json& doc) {
  if (!doc.is_object()) throw DomainError("model spec must be a JSON object");
  ModelSpec spec;
  spec.kind = parse_model_kind(doc.at("kind").get<std::string>());
  if (doc.contains("n") && doc.contains("N") && doc["n"] != doc["N"])
    throw DomainError("model spec gives conflicting \"n\" and \"N\"");
  if (doc.contains("n"))
    spec.size = doc["n"].get<int>();
  else if (doc.contains("N"))
    spec.size = doc["N"].get<int>();
  else if (spec.kind != ModelKind::kTwoSpin)
    throw DomainError("model spec needs a size field \"n\" or \"N\"");
  if (doc.contains("seed")) spec.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("constraints"))
    spec.constraints = doc["constraints"].get<std::vector<std::vector<int>>>();

  const bool has_couplings = doc.contains("couplings");
  if (spec.kind == ModelKind::kQubo) {
    if (has_couplings) {
      const auto rows =
          doc["couplings"].get<std::vector<std::vector<double>>>();
      const auto n = static_cast<Eigen::Index>(rows.size());
      spec.qubo_couplings = Eigen::MatrixXd::Zero(n, n);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (static_cast<Eigen::Index>(rows[j].size()) != n)
          throw DimensionError("QUBO coupling matrix must be square");
        for (Eigen::Index k = 0; k < n; ++k)
          spec.qubo_couplings(j, k) = rows[j][k];
      }
    } else if (spec.seed) {
      return random_instance(spec.kind, spec.size, *spec.seed);
    } else {
      throw DomainError("QUBO spec needs \"couplings\" or \"seed\"");
    }
  } else if (spec.kind == ModelKind::kLhz) {
    if (has_couplings) {
      spec.lhz_couplings = doc["couplings"].get<std::vector<double>>();
    } else if (spec.seed) {
      auto generated = random_instance(spec.kind, spec.size, *spec.seed);
      if (!spec.constraints.empty())
        generated.constraints = spec.constraints;
      return generated;
    } else {
      throw DomainError("LHZ spec needs \"couplings\" or \"seed\"");
    }
  }
  return spec;
}

ModelSpec load_model_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model spec '" + path + "'");
  return model_spec_from_json(json::parse(in));
}

void save_model_spec(const ModelSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model spec '" + path + "'");
  out << to_json(spec).dump(2) << '\n';
}

}  // namespace rotcd
