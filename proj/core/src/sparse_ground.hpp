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

#include <optional>

#include <Eigen/Dense>

#include "rotcd/operators.hpp"

namespace rotcd::detail {

struct LowLevels {
  Eigen::VectorXd energies;   // ascending
  Eigen::MatrixXd vectors;    // real orthonormal columns
};

// Lowest eigenpairs of a Hermitian operator with real weights, enough of
// them to contain every level within degeneracy_tol of the minimum. Empty
// when the weights are not real or the Lanczos iteration fails.
std::optional<LowLevels> sparse_low_levels(const SpinOperator& h,
                                           double degeneracy_tol);

}  // namespace rotcd::detail
