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

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "rotcd/closed_form.hpp"
#include "rotcd/trajectory.hpp"

namespace rotcd::cli {

struct SuiteReport {
  std::string name;
  bool passed = true;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::size_t checks = 0;
  std::vector<std::string> failures;

  // Records one measured deviation; fails the suite above tol, which
  // defaults to the suite tolerance.
  void record(double deviation, const std::string& what, double tol = -1.0);
};

// Replaces the closed-form evaluator for fault-injection runs.
using ActionOverride =
    std::function<double(const Model&, const FieldSet&, const RaParams&)>;

SuiteReport check_closed_forms(int draws = 100, std::uint64_t seed = 11,
                               const ActionOverride& override_action = {});
SuiteReport check_chain_size_independence(int draws = 20,
                                          std::uint64_t seed = 12);
SuiteReport check_decomposition(int operators = 40, std::uint64_t seed = 13);
SuiteReport check_two_level_sequential(int m_points = 100);
SuiteReport check_cd_limitations(int grid = 101, std::uint64_t seed = 14);

struct BoundaryDeviation {
  double ramp_rate = 0.0;  // max |dlambda/dt| at both ends
  double params = 0.0;     // max |beta|, |gamma|, |phi| at both ends
  double fields = 0.0;     // max |RA field - UA field| at both ends
};
BoundaryDeviation boundary_deviation(const ParamTrajectory& traj,
                                     std::shared_ptr<const Model> model,
                                     const Ramp& ramp);
SuiteReport check_boundary_conditions(int m_points = 100);

std::vector<SuiteReport> run_all_suites();
void print_reports(std::ostream& out, const std::vector<SuiteReport>& reports);

}  // namespace rotcd::cli
