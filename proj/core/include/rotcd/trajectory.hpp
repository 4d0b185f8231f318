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

// Time-gridded rotated-ansatz parameters and the warm-started sequential
// optimizer that produces them.

#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rotcd/agp.hpp"
#include "rotcd/bfgs.hpp"
#include "rotcd/closed_form.hpp"
#include "rotcd/models.hpp"
#include "rotcd/spline.hpp"

namespace rotcd {

enum class ParamName { kBeta, kGamma, kPhi };

ParamName parse_param_name(std::string_view name);
std::string_view to_string(ParamName name);

class ParamTrajectory {
 public:
  ParamTrajectory(std::vector<double> times, std::vector<RaParams> values,
                  SplineEnd end = SplineEnd::kClampedZero);

  const std::vector<double>& times() const { return times_; }
  const std::vector<RaParams>& values() const { return values_; }
  bool has_phi() const { return has_phi_; }
  SplineEnd end_condition() const { return end_; }
  double t_begin() const { return times_.front(); }
  double t_end() const { return times_.back(); }

  RaParams at(double t) const;
  // Time derivatives of each parameter, packed in the same struct.
  RaParams rate(double t) const;
  const CubicSpline& spline(ParamName name) const;

 private:
  std::vector<double> times_;
  std::vector<RaParams> values_;
  bool has_phi_;
  SplineEnd end_;
  std::vector<CubicSpline> splines_;
};

// Zero parameters on the uniform grid t_m = m tau / M, m = 0..M.
ParamTrajectory zero_trajectory(const Model& model, double tau, int m_points);

std::function<double(double)> differentiate(const ParamTrajectory& traj,
                                            ParamName name);

struct SequentialOptions {
  int m_points = 100;
  BfgsOptions bfgs;
  SplineEnd end = SplineEnd::kClampedZero;
  // The zero ansatz is kept whenever it is within this relative margin of
  // the optimizer's value.
  double zero_tie_tol = 1e-12;
  // Finite-difference Newton steps taken after BFGS while the Hessian is
  // positive definite and the action keeps decreasing.
  int newton_steps = 3;
  double hessian_step = 1e-4;
};

struct SequentialStats {
  int total_iterations = 0;
  int total_evaluations = 0;
  int stalled_points = 0;
  int max_iter_points = 0;
  double max_grad_norm = 0.0;
};

ParamTrajectory sequential_optimize(const ActionEvaluator& action,
                                    const Ramp& ramp,
                                    const SequentialOptions& opts = {},
                                    SequentialStats* stats = nullptr);

// Header t,beta,gamma,phi (phi only when present).
void write_trajectory_csv(std::ostream& out, const ParamTrajectory& traj);

}  // namespace rotcd
