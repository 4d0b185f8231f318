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

// Quasi-Newton minimization with finite-difference gradients.

#pragma once

#include <functional>

#include <Eigen/Dense>

namespace rotcd {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct BfgsOptions {
  double gtol = 1e-10;
  int max_iter = 500;
  // Relative central-difference step: h_i = fd_step * max(1, |x_i|).
  double fd_step = 1e-6;
  // Upper bound on the Euclidean length of one step; <= 0 disables it.
  double max_step = 0.25;
  // Consecutive iterations with no decrease beyond ftol_stall * max(1, |f|)
  // before giving up.
  int stall_iter = 4;
  double ftol_stall = 1e-15;
  double wolfe_c1 = 1e-4;
  double wolfe_c2 = 0.9;
};

enum class BfgsStatus { kConverged, kMaxIterations, kStalled, kNonFinite };

const char* to_string(BfgsStatus status);

struct BfgsResult {
  Eigen::VectorXd x;
  double f = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  int evaluations = 0;
  BfgsStatus status = BfgsStatus::kConverged;
};

Eigen::VectorXd fd_gradient(const Objective& f, const Eigen::VectorXd& x,
                            double rel_step = 1e-6);

// Central second differences with h_i = rel_step * max(1, |x_i|).
Eigen::MatrixXd fd_hessian(const Objective& f, const Eigen::VectorXd& x,
                           double rel_step = 1e-4);

BfgsResult bfgs_minimize(const Objective& f, const Eigen::VectorXd& x0,
                         const BfgsOptions& opts = {});

}  // namespace rotcd
