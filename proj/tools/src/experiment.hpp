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
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rotcd/closed_form.hpp"
#include "rotcd/dynamics.hpp"
#include "rotcd/protocol.hpp"
#include "rotcd/trajectory.hpp"

namespace rotcd::cli {

struct RunConfig {
  ModelKind model = ModelKind::kTwoSpin;
  std::optional<int> n;          // chain sites or QUBO spins
  std::optional<int> n_logical;  // LHZ logical spins
  double tau = 1.0;
  int m_points = 100;
  int steps = 2000;
  std::vector<ProtocolKind> protocols;  // empty: command default
  std::uint64_t seed = 1;
  std::optional<int> instances;  // default depends on --full
  std::string out = ".";
  ActionBackend backend = ActionBackend::kClosedForm;
  bool full = false;
  std::vector<int> sizes;  // scaling sweep; empty: default for the model
  int samples = 101;       // output times per fidelity trace
  int max_refinements = 3;
  int threads = 0;  // 0: hardware concurrency
  // Explicit instance; overrides size and seed when present.
  std::optional<ModelSpec> model_spec;
};

// Reads keys named after the long flags ("m-points" or "m_points").
void apply_config_json(const nlohmann::json& doc, RunConfig& cfg);
RunConfig load_config_file(const std::string& path);
nlohmann::json to_json(const RunConfig& cfg);

std::string_view to_string(ActionBackend backend);
ActionBackend parse_backend(std::string_view name);
std::vector<ProtocolKind> parse_protocol_list(const std::string& csv);

int model_size(const RunConfig& cfg);
ModelSpec make_model_spec(ModelKind kind, int size, std::uint64_t seed);
std::vector<ProtocolKind> run_protocols(const RunConfig& cfg);
std::vector<int> scaling_sizes(const RunConfig& cfg);
int scaling_instances(const RunConfig& cfg);

// Throws DomainError or CapacityError for configurations that cannot run.
void check_protocols(const Model& model, const std::vector<ProtocolKind>& ps);

struct ProtocolOutcome {
  ProtocolKind kind = ProtocolKind::kUa;
  FidelityTrace trace;
  std::vector<std::string> field_names;
  std::vector<std::vector<double>> field_rows;  // one per trace time
};

struct RunOutcome {
  ModelSpec spec;
  std::optional<ParamTrajectory> trajectory;
  SequentialStats optimizer;
  std::vector<ProtocolOutcome> protocols;
};

SequentialOptions sequential_options(const RunConfig& cfg);
TraceOptions trace_options(const RunConfig& cfg);

// Optimizes (when RA is requested) and propagates every protocol.
RunOutcome execute_run(const RunConfig& cfg, const ModelSpec& spec,
                       const std::vector<ProtocolKind>& protocols,
                       bool record_fields = true);

// Writes fields_*.csv, fidelity_*.csv, params_ra.csv and run.json to cfg.out.
void write_run(const RunConfig& cfg, const RunOutcome& run);

struct InstanceOutcome {
  int size = 0;
  std::uint64_t seed = 0;
  std::vector<double> final_F;  // aligned with the protocol list
};

struct ScalingRow {
  int size = 0;
  ProtocolKind protocol = ProtocolKind::kUa;
  double mean_F = 0.0;
  double p25_F = 0.0;
  double p75_F = 0.0;
  double mean_rel_improvement = 0.0;
};

struct ScalingOutcome {
  std::vector<ProtocolKind> protocols;
  std::vector<InstanceOutcome> instances;
  std::vector<ScalingRow> rows;
};

using ProgressFn = std::function<void(const InstanceOutcome&)>;

// Instance i of every size uses seed cfg.seed + i.
ScalingOutcome execute_scaling(const RunConfig& cfg,
                               const ProgressFn& progress = {});
void write_scaling_csv(std::ostream& out, const ScalingOutcome& s);

// Linear interpolation between order statistics.
double percentile(std::vector<double> v, double q);

}  // namespace rotcd::cli
