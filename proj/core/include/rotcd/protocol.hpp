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

// Time-dependent control fields for the four driving schemes.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rotcd/agp.hpp"
#include "rotcd/models.hpp"
#include "rotcd/trajectory.hpp"

namespace rotcd {

enum class ProtocolKind { kUa, kLocalCd, kRa, kExactCd };

std::string_view to_string(ProtocolKind kind);
ProtocolKind parse_protocol_kind(std::string_view name);

struct ProtocolMetadata {
  int m_points = 0;
  std::optional<std::uint64_t> seed;
};

class Protocol {
 public:
  ProtocolKind kind() const { return kind_; }
  const Model& model() const { return *model_; }
  std::shared_ptr<const Model> model_ptr() const { return model_; }
  const Ramp& ramp() const { return ramp_; }
  double tau() const { return ramp_.tau(); }
  const ProtocolMetadata& metadata() const { return meta_; }
  const std::optional<ParamTrajectory>& trajectory() const { return traj_; }

  // Values of the model-term fields at time t.
  std::vector<double> fields(double t) const;
  // Unassisted fields with their time derivatives.
  FieldSet ua_fields(double t) const;
  // Per-site sigma^y amplitudes (local CD only; empty otherwise).
  Eigen::VectorXd y_fields(double t) const;
  // Diagonal entries of the rotation generator Q(t) (zero unless RA).
  Eigen::VectorXd rotation_phases(double t) const;
  SpinOperator rotation_generator(double t) const;
  bool rotated() const { return kind_ == ProtocolKind::kRa; }

  // Column names for the field CSV: model terms, then y_<site> for local CD.
  std::vector<std::string> field_names() const;
  std::vector<double> all_fields(double t) const;

 private:
  friend Protocol assemble_protocol(std::shared_ptr<const Model>, const Ramp&,
                                    ProtocolKind,
                                    std::optional<ParamTrajectory>,
                                    ProtocolMetadata);
  Protocol(std::shared_ptr<const Model> model, Ramp ramp, ProtocolKind kind);

  std::shared_ptr<const Model> model_;
  Ramp ramp_;
  ProtocolKind kind_;
  ProtocolMetadata meta_;
  std::optional<ParamTrajectory> traj_;
  std::shared_ptr<const LocalCdSolver> local_;
  Eigen::VectorXd rot_diag_, rot2_diag_;
};

// RA needs a trajectory spanning [0, tau]; other kinds ignore it.
Protocol assemble_protocol(std::shared_ptr<const Model> model,
                           const Ramp& ramp, ProtocolKind kind,
                           std::optional<ParamTrajectory> traj = std::nullopt,
                           ProtocolMetadata meta = {});

}  // namespace rotcd
