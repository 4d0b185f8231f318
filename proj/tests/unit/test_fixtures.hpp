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

#pragma once

#include "rotcd/models.hpp"

namespace rotcd::testing {

// Hand-written instances shared with the reference values below.
inline ModelSpec qubo_three() {
  ModelSpec s;
  s.kind = ModelKind::kQubo;
  s.size = 3;
  s.qubo_couplings.resize(4, 4);
  s.qubo_couplings << 0, 0.5, -0.25, 0.75,  //
      0.5, 0, -1.0, 0.3,                    //
      -0.25, -1.0, 0, 0.6,                  //
      0.75, 0.3, 0.6, 0;
  return s;
}

inline ModelSpec lhz_four() {
  ModelSpec s;
  s.kind = ModelKind::kLhz;
  s.size = 4;
  s.lhz_couplings = {0.3, -0.7, 0.5, 0.9, -0.2, 0.65};
  s.constraints = {{0, 3, 1}, {1, 4, 2}, {3, 5, 1, 4}};
  return s;
}

inline FieldSet fields_of(std::initializer_list<double> values,
                          std::initializer_list<double> rates) {
  FieldSet f;
  auto r = rates.begin();
  for (double v : values) f.push_back({v, *r++});
  return f;
}

// Reference values: Tr(G_t^2) from an independent dense evaluation with
// matrix exponentials (scipy), at the inputs listed next to each value.
struct Reference {
  FieldSet fields;
  double beta, gamma, phi;
  double raw_action;
};

inline Reference two_spin_reference() {
  return {fields_of({3.1, -1.0}, {-2.3, 0.4}), 0.37, -0.21, 0.0,
          208.3536606241653};
}
inline Reference chain_reference(int n) {
  return {fields_of({0.6, 0.7, 0.12}, {1.3, -0.65, 0.26}), -0.4, 0.3, -0.15,
          n == 4 ? 152.80271459463688 : 382.00678648659215};
}
inline Reference qubo_reference() {
  return {fields_of({0.4, 0.6}, {1.1, -1.1}), 0.2, 0.45, 0.0,
          42.599910611439014};
}
inline Reference lhz_reference() {
  return {fields_of({0.5, 0.5, 1.5}, {1.2, -1.2, 3.6}), -0.3, 0.25, 0.1,
          3544.4264247427705};
}

}  // namespace rotcd::testing
