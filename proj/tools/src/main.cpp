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

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <unistd.h>

#include "CLI11.hpp"
#include "experiment.hpp"
#include "validate.hpp"

namespace {

using namespace rotcd;
using namespace rotcd::cli;

struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> model;
  std::optional<int> n, n_logical, m_points, steps, instances, samples,
      max_refinements, threads;
  std::optional<double> tau;
  std::optional<std::string> protocols, out, backend;
  std::optional<std::uint64_t> seed;
  std::vector<int> sizes;
  bool full = false;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "JSON config; flags override it");
  app->add_option("--model", f.model, "two-spin, chain, qubo or lhz")
      ->check(CLI::IsMember({"two-spin", "chain", "qubo", "lhz"}));
  app->add_option("--n", f.n, "chain sites or QUBO spins");
  app->add_option("--n-logical", f.n_logical, "LHZ logical spins");
  app->add_option("--tau", f.tau, "ramp duration");
  app->add_option("--m-points", f.m_points, "optimizer grid intervals (100)");
  app->add_option("--steps", f.steps, "RK4 steps (2000)");
  app->add_option("--protocols", f.protocols,
                  "comma list of ua, local-cd, ra, exact-cd");
  app->add_option("--seed", f.seed, "instance seed");
  app->add_option("--instances", f.instances, "instances per size");
  app->add_option("--out", f.out, "output directory");
  app->add_option("--backend", f.backend, "closed-form or oracle")
      ->check(CLI::IsMember({"closed-form", "oracle"}));
  app->add_flag("--full", f.full, "long scaling study (100 instances)");
  app->add_option("--sizes", f.sizes, "scaling sizes")->delimiter(',');
  app->add_option("--samples", f.samples, "output times per trace (101)");
  app->add_option("--max-refinements", f.max_refinements,
                  "step doublings allowed on norm drift (3)");
  app->add_option("--threads", f.threads, "worker threads for scaling");
}

RunConfig resolve(const Flags& f) {
  RunConfig cfg = f.config ? load_config_file(*f.config) : RunConfig{};
  if (f.model) {
    cfg.model = parse_model_kind(*f.model);
    if (cfg.model_spec && cfg.model_spec->kind != cfg.model)
      cfg.model_spec.reset();
  }
  if (f.n) cfg.n = f.n;
  if (f.n_logical) cfg.n_logical = f.n_logical;
  if ((f.n || f.n_logical || f.seed) && cfg.model_spec) cfg.model_spec.reset();
  if (f.tau) cfg.tau = *f.tau;
  if (f.m_points) cfg.m_points = *f.m_points;
  if (f.steps) cfg.steps = *f.steps;
  if (f.protocols) cfg.protocols = parse_protocol_list(*f.protocols);
  if (f.seed) cfg.seed = *f.seed;
  if (f.instances) cfg.instances = f.instances;
  if (f.out) cfg.out = *f.out;
  if (f.backend) cfg.backend = parse_backend(*f.backend);
  if (f.full) cfg.full = true;
  if (!f.sizes.empty()) cfg.sizes = f.sizes;
  if (f.samples) cfg.samples = *f.samples;
  if (f.max_refinements) cfg.max_refinements = *f.max_refinements;
  if (f.threads) cfg.threads = *f.threads;
  return cfg;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

int cmd_run(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const ModelSpec spec = cfg.model_spec
                             ? *cfg.model_spec
                             : make_model_spec(cfg.model, model_size(cfg),
                                               cfg.seed);
  const RunOutcome run = execute_run(cfg, spec, run_protocols(cfg));
  write_run(cfg, run);
  for (const auto& po : run.protocols) {
    double min_ft = 1.0;
    for (double v : po.trace.F_tilde) min_ft = std::min(min_ft, v);
    std::printf("%-9s F(tau)=%.6f  F_tilde(tau)=%.6f  min F_tilde=%.6f  "
                "steps=%d\n",
                std::string(to_string(po.kind)).c_str(), po.trace.F.back(),
                po.trace.F_tilde.back(), min_ft, po.trace.steps);
  }
  std::printf("wrote %s (%.2f s)\n", cfg.out.c_str(), seconds_since(t0));
  return 0;
}

int cmd_scaling(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const int total = static_cast<int>(scaling_sizes(cfg).size()) *
                    scaling_instances(cfg);
  int done = 0;
  const bool tty = ::isatty(::fileno(stderr)) != 0;
  const ScalingOutcome s = execute_scaling(cfg, [&](const InstanceOutcome&) {
    if (tty) std::fprintf(stderr, "\r%d/%d instances", ++done, total);
  });
  if (tty) std::fprintf(stderr, "\n");
  std::filesystem::create_directories(cfg.out);
  const auto path = std::filesystem::path(cfg.out) / "scaling.csv";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  write_scaling_csv(out, s);
  std::ofstream meta(std::filesystem::path(cfg.out) / "scaling.json",
                     std::ios::binary);
  nlohmann::json doc{{"command", "scaling"},
                     {"config", to_json(cfg)},
                     {"instances", scaling_instances(cfg)},
                     {"seed_rule", "instance i uses seed + i"}};
  meta << doc.dump(2) << '\n';
  for (const auto& r : s.rows)
    std::printf("size %-3d %-9s mean_F=%.4f  p25=%.4f  p75=%.4f  rel=%.3f\n",
                r.size, std::string(to_string(r.protocol)).c_str(), r.mean_F,
                r.p25_F, r.p75_F, r.mean_rel_improvement);
  std::printf("wrote %s (%.1f s)\n", path.string().c_str(), seconds_since(t0));
  return 0;
}

int cmd_validate() {
  const auto reports = run_all_suites();
  print_reports(std::cout, reports);
  for (const auto& r : reports)
    if (!r.passed) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotated-ansatz counterdiabatic driving: synthesis and checks"};
  app.require_subcommand(1);
  Flags run_flags, scaling_flags;
  add_common(app.add_subcommand("run", "optimize and propagate protocols"),
             run_flags);
  add_common(app.add_subcommand("scaling", "disorder-averaged size sweep"),
             scaling_flags);
  app.add_subcommand("validate", "closed-form, identity and boundary suites");
  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("run")) return cmd_run(resolve(run_flags));
    if (app.got_subcommand("scaling"))
      return cmd_scaling(resolve(scaling_flags));
    return cmd_validate();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
