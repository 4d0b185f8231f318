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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "experiment.hpp"
#include "json.hpp"
#include "rotcd/errors.hpp"
#include "validate.hpp"

namespace rotcd::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("rotcd_cli_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

TEST(Config, JsonKeysAcceptDashesAndUnderscores) {
  RunConfig cfg;
  apply_config_json(json::parse(R"({"model":"chain","n":6,"m-points":40,
      "max_refinements":1,"protocols":"ua,ra","backend":"oracle","tau":2.5})"),
                    cfg);
  EXPECT_EQ(cfg.model, ModelKind::kChain);
  EXPECT_EQ(cfg.n.value(), 6);
  EXPECT_EQ(cfg.m_points, 40);
  EXPECT_EQ(cfg.max_refinements, 1);
  EXPECT_EQ(cfg.backend, ActionBackend::kOracle);
  EXPECT_DOUBLE_EQ(cfg.tau, 2.5);
  ASSERT_EQ(cfg.protocols.size(), 2u);
  EXPECT_EQ(cfg.protocols[1], ProtocolKind::kRa);

  // Later documents override earlier ones key by key.
  apply_config_json(json::parse(R"({"n":7})"), cfg);
  EXPECT_EQ(cfg.n.value(), 7);
  EXPECT_EQ(cfg.m_points, 40);
}

TEST(Config, RejectsBadInput) {
  RunConfig cfg;
  EXPECT_THROW(apply_config_json(json::array(), cfg), DomainError);
  EXPECT_ANY_THROW(apply_config_json(json::parse(R"({"model":"ising"})"), cfg));
  EXPECT_ANY_THROW(parse_backend("dense"));
  EXPECT_ANY_THROW(parse_protocol_list(""));
  EXPECT_ANY_THROW(load_config_file("/nonexistent/rotcd.json"));
}

TEST(Config, InlineModelSpecSetsModel) {
  RunConfig cfg;
  apply_config_json(json::parse(R"({"model-spec":{"kind":"qubo","N":2,
      "couplings":[[0,0.5,-0.25],[0.5,0,1.0],[-0.25,1.0,0]]}})"),
                    cfg);
  EXPECT_EQ(cfg.model, ModelKind::kQubo);
  ASSERT_TRUE(cfg.model_spec.has_value());
  EXPECT_EQ(cfg.model_spec->size, 2);
  EXPECT_DOUBLE_EQ(cfg.model_spec->qubo_couplings(1, 2), 1.0);
}

TEST(Defaults, SizesAndInstances) {
  RunConfig cfg;
  cfg.model = ModelKind::kQubo;
  EXPECT_EQ(scaling_sizes(cfg), (std::vector<int>{3, 4, 5, 6, 7, 8}));
  EXPECT_EQ(scaling_instances(cfg), 20);
  cfg.full = true;
  EXPECT_EQ(scaling_sizes(cfg).back(), 12);
  EXPECT_EQ(scaling_instances(cfg), 100);
  cfg.model = ModelKind::kChain;
  EXPECT_ANY_THROW(scaling_sizes(cfg));
  cfg.model = ModelKind::kLhz;
  cfg.full = false;
  EXPECT_EQ(model_size(cfg), 4);
  EXPECT_EQ(run_protocols(cfg).size(), 3u);
}

TEST(Capacity, ExactCdIsRefusedBeyondItsCap) {
  EXPECT_THROW(check_protocols(Model(chain_spec(12)), {ProtocolKind::kExactCd}),
               CapacityError);
  EXPECT_NO_THROW(check_protocols(Model(chain_spec(12)), {ProtocolKind::kUa}));
}

TEST(Percentile, LinearInterpolation) {
  EXPECT_DOUBLE_EQ(percentile({4.0}, 0.25), 4.0);
  EXPECT_DOUBLE_EQ(percentile({3.0, 1.0, 2.0, 4.0}, 0.25), 1.75);
  EXPECT_DOUBLE_EQ(percentile({3.0, 1.0, 2.0, 4.0}, 0.75), 3.25);
  EXPECT_DOUBLE_EQ(percentile({3.0, 1.0, 2.0, 4.0}, 0.5), 2.5);
  EXPECT_THROW(percentile({}, 0.5), DomainError);
}

TEST(Scaling, SingleInstanceGivesOneRowPerProtocol) {
  RunConfig cfg;
  cfg.model = ModelKind::kQubo;
  cfg.sizes = {3};
  cfg.instances = 1;
  cfg.m_points = 20;
  cfg.protocols = {ProtocolKind::kRa};
  const ScalingOutcome s = execute_scaling(cfg);
  ASSERT_EQ(s.protocols.size(), 2u);
  EXPECT_EQ(s.protocols.front(), ProtocolKind::kUa);
  ASSERT_EQ(s.rows.size(), 2u);
  for (const ScalingRow& r : s.rows) {
    EXPECT_EQ(r.size, 3);
    EXPECT_DOUBLE_EQ(r.p25_F, r.mean_F);
    EXPECT_DOUBLE_EQ(r.p75_F, r.mean_F);
  }
  EXPECT_DOUBLE_EQ(s.rows[0].mean_rel_improvement, 1.0);
  std::ostringstream out;
  write_scaling_csv(out, s);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')),
            "size,protocol,mean_F,p25_F,p75_F,mean_rel_improvement");
}

TEST(Scaling, ThreadCountDoesNotChangeResults) {
  RunConfig cfg;
  cfg.model = ModelKind::kQubo;
  cfg.sizes = {3, 4};
  cfg.instances = 3;
  cfg.m_points = 20;
  cfg.threads = 1;
  const ScalingOutcome a = execute_scaling(cfg);
  cfg.threads = 4;
  const ScalingOutcome b = execute_scaling(cfg);
  std::ostringstream sa, sb;
  write_scaling_csv(sa, a);
  write_scaling_csv(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
  ASSERT_EQ(a.instances.size(), 6u);
  EXPECT_EQ(a.instances[4].seed, cfg.seed + 1);
}

TEST(Run, RepeatedRunsWriteIdenticalFiles) {
  RunConfig cfg;
  cfg.model = ModelKind::kLhz;
  cfg.n_logical = 3;
  cfg.seed = 7;
  cfg.m_points = 30;
  cfg.samples = 11;
  const ModelSpec spec = make_model_spec(cfg.model, model_size(cfg), cfg.seed);
  const auto protocols = run_protocols(cfg);
  const fs::path a = scratch_dir("a"), b = scratch_dir("b");
  cfg.out = a.string();
  write_run(cfg, execute_run(cfg, spec, protocols));
  cfg.out = b.string();
  write_run(cfg, execute_run(cfg, spec, protocols));

  for (const char* f : {"fields_ua.csv", "fields_local-cd.csv", "fields_ra.csv",
                        "fidelity_ua.csv", "fidelity_ra.csv", "params_ra.csv"}) {
    ASSERT_TRUE(fs::exists(a / f)) << f;
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
  json ja = json::parse(slurp(a / "run.json"));
  json jb = json::parse(slurp(b / "run.json"));
  ja["config"].erase("out");
  jb["config"].erase("out");
  EXPECT_EQ(ja, jb);
  EXPECT_EQ(ja["seed"], 7);
  EXPECT_EQ(slurp(a / "params_ra.csv").substr(0, 19), "t,beta,gamma,phi\n0,");
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Validate, AllSuitesPass) {
  const std::vector<SuiteReport> reports = run_all_suites();
  ASSERT_EQ(reports.size(), 6u);
  for (const SuiteReport& r : reports) {
    EXPECT_TRUE(r.passed) << r.name;
    EXPECT_GT(r.checks, 0u) << r.name;
  }
  std::ostringstream out;
  print_reports(out, reports);
  EXPECT_NE(out.str().find("PASS"), std::string::npos);
}

TEST(Validate, CorruptedChainFormulaIsCaught) {
  const auto corrupt = [](const Model& m, const FieldSet& f, const RaParams& p) {
    const ActionEvaluator closed(std::make_shared<const Model>(m.spec()),
                                 ActionBackend::kClosedForm);
    if (m.kind() != ModelKind::kChain) return closed(f, p);
    return closed(f, {-p.beta, p.gamma, p.phi});
  };
  const SuiteReport r = check_closed_forms(10, 11, corrupt);
  EXPECT_FALSE(r.passed);
  EXPECT_GT(r.max_deviation, 1e-8);
  EXPECT_FALSE(r.failures.empty());
  EXPECT_NE(r.failures.front().find("chain"), std::string::npos);
}

TEST(Validate, BoundaryDeviationVanishesForOptimizedTrajectory) {
  auto m = std::make_shared<const Model>(chain_spec(6));
  const Ramp ramp(1.0);
  SequentialOptions o;
  o.m_points = 40;
  const ParamTrajectory t =
      sequential_optimize(ActionEvaluator(m, ActionBackend::kClosedForm), ramp, o);
  const BoundaryDeviation d = boundary_deviation(t, m, ramp);
  EXPECT_LE(d.ramp_rate, 1e-14);
  EXPECT_LE(d.params, 1e-6);
  EXPECT_LE(d.fields, 1e-6);
}

}  // namespace
}  // namespace rotcd::cli
