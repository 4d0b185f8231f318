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

#include "experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "rotcd/csv.hpp"
#include "rotcd/errors.hpp"
#include "rotcd/model_io.hpp"

namespace rotcd::cli {

using nlohmann::json;

namespace {

const json* find_key(const json& doc, std::string_view dashed) {
  std::string key(dashed);
  if (doc.contains(key)) return &doc[key];
  std::replace(key.begin(), key.end(), '-', '_');
  if (doc.contains(key)) return &doc[key];
  return nullptr;
}

std::vector<ProtocolKind> protocols_from_json(const json& v) {
  if (v.is_string()) return parse_protocol_list(v.get<std::string>());
  std::vector<ProtocolKind> out;
  for (const auto& p : v) out.push_back(parse_protocol_kind(p.get<std::string>()));
  return out;
}

std::string join_protocols(const std::vector<ProtocolKind>& ps) {
  std::string s;
  for (auto p : ps) {
    if (!s.empty()) s += ',';
    s += to_string(p);
  }
  return s;
}

void write_text(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  body(out);
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

json bfgs_json(const BfgsOptions& o) {
  return {{"gtol", o.gtol},           {"max_iter", o.max_iter},
          {"fd_step", o.fd_step},     {"max_step", o.max_step},
          {"stall_iter", o.stall_iter}, {"ftol_stall", o.ftol_stall},
          {"wolfe_c1", o.wolfe_c1},   {"wolfe_c2", o.wolfe_c2}};
}

}  // namespace

std::string_view to_string(ActionBackend backend) {
  return backend == ActionBackend::kOracle ? "oracle" : "closed-form";
}

ActionBackend parse_backend(std::string_view name) {
  if (name == "closed-form") return ActionBackend::kClosedForm;
  if (name == "oracle") return ActionBackend::kOracle;
  throw DomainError("unknown action backend '" + std::string(name) + "'");
}

std::vector<ProtocolKind> parse_protocol_list(const std::string& csv) {
  std::vector<ProtocolKind> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const ProtocolKind k = parse_protocol_kind(item);
    if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
  }
  if (out.empty()) throw DomainError("empty protocol list");
  return out;
}

void apply_config_json(const json& doc, RunConfig& cfg) {
  if (!doc.is_object()) throw DomainError("config must be a JSON object");
  if (auto* v = find_key(doc, "model"))
    cfg.model = parse_model_kind(v->get<std::string>());
  if (auto* v = find_key(doc, "n")) cfg.n = v->get<int>();
  if (auto* v = find_key(doc, "n-logical")) cfg.n_logical = v->get<int>();
  if (auto* v = find_key(doc, "tau")) cfg.tau = v->get<double>();
  if (auto* v = find_key(doc, "m-points")) cfg.m_points = v->get<int>();
  if (auto* v = find_key(doc, "steps")) cfg.steps = v->get<int>();
  if (auto* v = find_key(doc, "protocols")) cfg.protocols = protocols_from_json(*v);
  if (auto* v = find_key(doc, "seed")) cfg.seed = v->get<std::uint64_t>();
  if (auto* v = find_key(doc, "instances")) cfg.instances = v->get<int>();
  if (auto* v = find_key(doc, "out")) cfg.out = v->get<std::string>();
  if (auto* v = find_key(doc, "backend"))
    cfg.backend = parse_backend(v->get<std::string>());
  if (auto* v = find_key(doc, "full")) cfg.full = v->get<bool>();
  if (auto* v = find_key(doc, "sizes")) cfg.sizes = v->get<std::vector<int>>();
  if (auto* v = find_key(doc, "samples")) cfg.samples = v->get<int>();
  if (auto* v = find_key(doc, "max-refinements"))
    cfg.max_refinements = v->get<int>();
  if (auto* v = find_key(doc, "threads")) cfg.threads = v->get<int>();
  if (auto* v = find_key(doc, "model-spec")) {
    cfg.model_spec = v->is_string() ? load_model_spec(v->get<std::string>())
                                    : model_spec_from_json(*v);
    cfg.model = cfg.model_spec->kind;
  }
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  RunConfig cfg;
  apply_config_json(json::parse(in), cfg);
  return cfg;
}

json to_json(const RunConfig& cfg) {
  json doc{{"model", std::string(to_string(cfg.model))},
           {"tau", cfg.tau},
           {"m_points", cfg.m_points},
           {"steps", cfg.steps},
           {"seed", cfg.seed},
           {"out", cfg.out},
           {"backend", std::string(to_string(cfg.backend))},
           {"full", cfg.full},
           {"samples", cfg.samples},
           {"max_refinements", cfg.max_refinements}};
  if (cfg.n) doc["n"] = *cfg.n;
  if (cfg.n_logical) doc["n_logical"] = *cfg.n_logical;
  if (!cfg.protocols.empty()) doc["protocols"] = join_protocols(cfg.protocols);
  if (cfg.instances) doc["instances"] = *cfg.instances;
  if (!cfg.sizes.empty()) doc["sizes"] = cfg.sizes;
  if (cfg.model_spec) doc["model_spec"] = rotcd::to_json(*cfg.model_spec);
  return doc;
}

int model_size(const RunConfig& cfg) {
  if (cfg.model_spec) return cfg.model_spec->size;
  switch (cfg.model) {
    case ModelKind::kTwoSpin: return 2;
    case ModelKind::kChain: return cfg.n.value_or(8);
    case ModelKind::kQubo: return cfg.n.value_or(5);
    case ModelKind::kLhz: return cfg.n_logical.value_or(cfg.n.value_or(4));
  }
  return 2;
}

ModelSpec make_model_spec(ModelKind kind, int size, std::uint64_t seed) {
  switch (kind) {
    case ModelKind::kTwoSpin: return two_spin_spec();
    case ModelKind::kChain: return chain_spec(size);
    case ModelKind::kQubo:
    case ModelKind::kLhz: return random_instance(kind, size, seed);
  }
  return two_spin_spec();
}

std::vector<ProtocolKind> run_protocols(const RunConfig& cfg) {
  if (!cfg.protocols.empty()) return cfg.protocols;
  return {ProtocolKind::kUa, ProtocolKind::kLocalCd, ProtocolKind::kRa};
}

std::vector<int> scaling_sizes(const RunConfig& cfg) {
  if (!cfg.sizes.empty()) return cfg.sizes;
  if (cfg.model == ModelKind::kQubo) {
    if (cfg.n) return {*cfg.n};
    std::vector<int> s;
    for (int n = 3; n <= (cfg.full ? 12 : 8); ++n) s.push_back(n);
    return s;
  }
  if (cfg.model == ModelKind::kLhz) {
    if (cfg.n_logical) return {*cfg.n_logical};
    if (cfg.full) return {3, 4, 5, 6};
    return {4, 5};
  }
  throw DomainError("scaling needs a random model family (qubo or lhz)");
}

int scaling_instances(const RunConfig& cfg) {
  return cfg.instances.value_or(cfg.full ? 100 : 20);
}

void check_protocols(const Model& model, const std::vector<ProtocolKind>& ps) {
  if (model.n_qubits() > kStateVectorQubitCap)
    throw CapacityError("state vector of " + std::to_string(model.n_qubits()) +
                        " qubits exceeds the cap of " +
                        std::to_string(kStateVectorQubitCap));
  for (auto p : ps)
    if (p == ProtocolKind::kExactCd && model.n_qubits() > kExactCdQubitCap)
      throw CapacityError("exact-cd is limited to " +
                          std::to_string(kExactCdQubitCap) + " qubits");
}

SequentialOptions sequential_options(const RunConfig& cfg) {
  SequentialOptions o;
  o.m_points = cfg.m_points;
  return o;
}

TraceOptions trace_options(const RunConfig& cfg) {
  TraceOptions o;
  o.evolve.steps = cfg.steps;
  o.samples = cfg.samples;
  o.max_refinements = cfg.max_refinements;
  return o;
}

RunOutcome execute_run(const RunConfig& cfg, const ModelSpec& spec,
                       const std::vector<ProtocolKind>& protocols,
                       bool record_fields) {
  if (cfg.tau <= 0.0) throw RangeError("tau must be positive");
  auto model = std::make_shared<const Model>(spec);
  check_protocols(*model, protocols);
  const Ramp ramp(cfg.tau);

  RunOutcome run;
  run.spec = spec;
  if (std::find(protocols.begin(), protocols.end(), ProtocolKind::kRa) !=
      protocols.end()) {
    const ActionEvaluator action(model, cfg.backend);
    run.trajectory = sequential_optimize(action, ramp, sequential_options(cfg),
                                         &run.optimizer);
  }
  const ProtocolMetadata meta{cfg.m_points, spec.seed};
  const TraceOptions topts = trace_options(cfg);
  for (auto kind : protocols) {
    const Protocol proto = assemble_protocol(
        model, ramp, kind,
        kind == ProtocolKind::kRa ? run.trajectory : std::nullopt, meta);
    ProtocolOutcome po;
    po.kind = kind;
    po.trace = fidelity_trace(proto, topts);
    if (record_fields) {
      po.field_names = proto.field_names();
      for (double t : po.trace.t) po.field_rows.push_back(proto.all_fields(t));
    }
    run.protocols.push_back(std::move(po));
  }
  return run;
}

void write_run(const RunConfig& cfg, const RunOutcome& run) {
  namespace fs = std::filesystem;
  const fs::path dir(cfg.out);
  fs::create_directories(dir);

  json files = json::array();
  json results = json::array();
  for (const auto& po : run.protocols) {
    const std::string name(to_string(po.kind));
    const std::string fields_file = "fields_" + name + ".csv";
    const std::string fid_file = "fidelity_" + name + ".csv";
    write_text(dir / fields_file, [&](std::ostream& out) {
      std::vector<std::string> header{"t"};
      header.insert(header.end(), po.field_names.begin(), po.field_names.end());
      CsvWriter w(out, header);
      for (std::size_t i = 0; i < po.field_rows.size(); ++i) {
        std::vector<double> row{po.trace.t[i]};
        row.insert(row.end(), po.field_rows[i].begin(), po.field_rows[i].end());
        w.row(row);
      }
    });
    write_text(dir / fid_file,
               [&](std::ostream& out) { write_fidelity_csv(out, po.trace); });
    files.push_back(fields_file);
    files.push_back(fid_file);
    results.push_back(
        {{"protocol", name},
         {"final_F", po.trace.F.back()},
         {"final_F_tilde", po.trace.F_tilde.back()},
         {"min_F_tilde",
          *std::min_element(po.trace.F_tilde.begin(), po.trace.F_tilde.end())},
         {"max_norm_drift", po.trace.max_norm_drift},
         {"steps_used", po.trace.steps}});
  }
  if (run.trajectory) {
    write_text(dir / "params_ra.csv", [&](std::ostream& out) {
      write_trajectory_csv(out, *run.trajectory);
    });
    files.push_back("params_ra.csv");
  }

  const SequentialOptions so = sequential_options(cfg);
  const TraceOptions to = trace_options(cfg);
  json meta{
      {"command", "run"},
      {"config", to_json(cfg)},
      {"model", rotcd::to_json(run.spec)},
      {"seed", run.spec.seed ? json(*run.spec.seed) : json(nullptr)},
      {"action_backend", std::string(to_string(cfg.backend))},
      {"ramp", "sin^2((pi/2) sin^2(pi t / (2 tau)))"},
      {"optimizer",
       {{"method", "bfgs"},
        {"m_points", so.m_points},
        {"interpolation", "cubic spline, zero end slopes"},
        {"zero_tie_tol", so.zero_tie_tol},
        {"bfgs", bfgs_json(so.bfgs)}}},
      {"integrator",
       {{"method", "rk4"},
        {"steps", to.evolve.steps},
        {"norm_tol", to.evolve.norm_tol},
        {"max_refinements", to.max_refinements},
        {"gap_tol", to.evolve.gap_tol},
        {"degeneracy_tol", to.degeneracy_tol},
        {"samples", to.samples}}},
      {"results", results},
      {"files", files}};
  if (run.trajectory)
    meta["optimizer"]["stats"] = {
        {"iterations", run.optimizer.total_iterations},
        {"evaluations", run.optimizer.total_evaluations},
        {"stalled_points", run.optimizer.stalled_points},
        {"max_iter_points", run.optimizer.max_iter_points},
        {"max_grad_norm", run.optimizer.max_grad_norm}};
  write_text(dir / "run.json",
             [&](std::ostream& out) { out << meta.dump(2) << '\n'; });
}

double percentile(std::vector<double> v, double q) {
  if (v.empty()) throw DomainError("percentile of an empty sample");
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

ScalingOutcome execute_scaling(const RunConfig& cfg,
                               const ProgressFn& progress) {
  const std::vector<int> sizes = scaling_sizes(cfg);
  const int n_inst = scaling_instances(cfg);
  if (n_inst < 1) throw DomainError("instances must be >= 1");

  ScalingOutcome s;
  s.protocols = run_protocols(cfg);
  if (std::find(s.protocols.begin(), s.protocols.end(), ProtocolKind::kUa) ==
      s.protocols.end())
    s.protocols.insert(s.protocols.begin(), ProtocolKind::kUa);
  for (int size : sizes)
    check_protocols(Model(make_model_spec(cfg.model, size, cfg.seed)),
                    s.protocols);

  RunConfig per = cfg;
  per.samples = 2;
  s.instances.resize(sizes.size() * static_cast<std::size_t>(n_inst));
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= s.instances.size()) return;
      {
        std::lock_guard lock(mu);
        if (failure) return;
      }
      try {
        InstanceOutcome io;
        io.size = sizes[task / n_inst];
        io.seed = cfg.seed + task % n_inst;
        const RunOutcome r = execute_run(
            per, make_model_spec(cfg.model, io.size, io.seed), s.protocols,
            false);
        for (const auto& po : r.protocols) io.final_F.push_back(po.trace.F.back());
        std::lock_guard lock(mu);
        s.instances[task] = io;
        if (progress) progress(io);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  unsigned n_threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                       : std::thread::hardware_concurrency();
  n_threads = std::clamp<unsigned>(
      n_threads, 1u, static_cast<unsigned>(s.instances.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  const auto ua = static_cast<std::size_t>(
      std::find(s.protocols.begin(), s.protocols.end(), ProtocolKind::kUa) -
      s.protocols.begin());
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    for (std::size_t p = 0; p < s.protocols.size(); ++p) {
      std::vector<double> F, rel;
      for (int i = 0; i < n_inst; ++i) {
        const auto& io = s.instances[si * n_inst + i];
        F.push_back(io.final_F[p]);
        rel.push_back(io.final_F[p] / io.final_F[ua]);
      }
      ScalingRow row;
      row.size = sizes[si];
      row.protocol = s.protocols[p];
      for (double f : F) row.mean_F += f / n_inst;
      for (double r : rel) row.mean_rel_improvement += r / n_inst;
      row.p25_F = percentile(F, 0.25);
      row.p75_F = percentile(F, 0.75);
      s.rows.push_back(row);
    }
  }
  return s;
}

void write_scaling_csv(std::ostream& out, const ScalingOutcome& s) {
  out << "size,protocol,mean_F,p25_F,p75_F,mean_rel_improvement\n";
  for (const auto& r : s.rows)
    out << r.size << ',' << to_string(r.protocol) << ','
        << format_number(r.mean_F) << ',' << format_number(r.p25_F) << ','
        << format_number(r.p75_F) << ','
        << format_number(r.mean_rel_improvement) << '\n';
}

}  // namespace rotcd::cli
