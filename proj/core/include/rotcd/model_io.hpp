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

// JSON form of a model instance:
//   {"kind": "two-spin"|"chain"|"qubo"|"lhz", "N" or "n": size,
//    "couplings": ..., "constraints": [[...], ...], "seed": integer}
// QUBO couplings are the full (N+1) x (N+1) matrix as nested arrays; LHZ
// couplings are a flat array with one entry per physical qubit and "n" is the
// logical spin count.

#pragma once

#include <string>

#include "json.hpp"
#include "rotcd/models.hpp"

namespace rotcd {

nlohmann::json to_json(const ModelSpec& spec);
ModelSpec model_spec_from_json(const nlohmann::json& doc);

ModelSpec load_model_spec(const std::string& path);
void save_model_spec(const ModelSpec& spec, const std::string& path);

}  // namespace rotcd
