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

#include "rotcd/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "rotcd/errors.hpp"

namespace rotcd {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kConstraintScale = 3.0;

double uniform_pm1(std::mt19937_64& gen) {
  return std::ldexp(static_cast<double>(gen() >> 11), -53) * 2.0 - 1.0;
}

SpinOperator sum_single(int n, char axis, double sign) {
  SpinOperator out(n);
  for (int j = 0; j < n; ++j)
    out += SpinOperator(PauliString::single(n, j, axis), sign);
  return out;
}

void validate_qubo(const Eigen::MatrixXd& J, int size) {
  if (J.rows() != size + 1 || J.cols() != size + 1)
    throw DimensionError("QUBO coupling matrix must be (N+1) x (N+1)");
  for (int j = 0; j <= size; ++j) {
    if (J(j, j) != 0.0)
      throw DomainError("QUBO coupling matrix must have a zero diagonal");
    for (int k = j + 1; k <= size; ++k)
      if (J(j, k) != J(k, j))
        throw DomainError("QUBO coupling matrix must be symmetric");
  }
}

}  // namespace

RampValue ramp_eval(double t, double tau) {
  if (!(tau > 0.0)) throw DomainError("ramp duration must be positive");
  const double slack = 1e-12 * tau;
  if (!(t >= -slack && t <= tau + slack))
    throw RangeError("ramp time " + std::to_string(t) + " outside [0, " +
                     std::to_string(tau) + "]");
  t = std::clamp(t, 0.0, tau);
  const double v = kPi * t / (2.0 * tau);
  const double u = 0.5 * kPi * std::sin(v) * std::sin(v);
  const double s = std::sin(u);
  return {s * s, std::sin(2.0 * u) * 0.5 * kPi * std::sin(2.0 * v) * kPi /
                     (2.0 * tau)};
}

Ramp::Ramp(double tau) : tau_(tau) {
  if (!(tau > 0.0)) throw DomainError("ramp duration must be positive");
}

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kTwoSpin: return "two-spin";
    case ModelKind::kChain: return "chain";
    case ModelKind::kQubo: return "qubo";
    case ModelKind::kLhz: return "lhz";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "two-spin") return ModelKind::kTwoSpin;
  if (name == "chain") return ModelKind::kChain;
  if (name == "qubo") return ModelKind::kQubo;
  if (name == "lhz") return ModelKind::kLhz;
  throw DomainError("unknown model kind '" + std::string(name) + "'");
}

int lhz_physical_qubits(int n_logical) {
  return n_logical * (n_logical - 1) / 2;
}

int lhz_qubit(int n_logical, int i, int j) {
  if (!(0 <= i && i < j && j < n_logical))
    throw RangeError("LHZ pair must satisfy 0 <= i < j < n");
  const int d = j - i;
  // Diagonals 1..d-1 hold n-1, n-2, ... qubits.
  const int offset = (d - 1) * n_logical - (d - 1) * d / 2;
  return offset + i;
}

std::vector<std::vector<int>> lhz_default_constraints(int n_logical) {
  if (n_logical < 3)
    throw DomainError("LHZ layout needs at least 3 logical spins");
  const int n = n_logical;
  std::vector<std::vector<int>> out;
  for (int i = 0; i + 2 < n; ++i)
    out.push_back({lhz_qubit(n, i, i + 1), lhz_qubit(n, i, i + 2),
                   lhz_qubit(n, i + 1, i + 2)});
  for (int i = 0; i + 3 < n; ++i)
    for (int j = i + 2; j + 1 < n; ++j)
      out.push_back({lhz_qubit(n, i, j), lhz_qubit(n, i, j + 1),
                     lhz_qubit(n, i + 1, j), lhz_qubit(n, i + 1, j + 1)});
  return out;
}

ModelSpec two_spin_spec() { return ModelSpec{}; }

ModelSpec chain_spec(int sites) {
  ModelSpec s;
  s.kind = ModelKind::kChain;
  s.size = sites;
  return s;
}

Model::Model(ModelSpec spec) : spec_(std::move(spec)) {
  const int size = spec_.size;
  switch (spec_.kind) {
    case ModelKind::kTwoSpin: {
      if (size != 2) throw DimensionError("two-spin model has exactly 2 sites");
      n_qubits_ = 2;
      terms_.push_back(sum_single(2, 'Z', -1.0));
      terms_.push_back(
          SpinOperator(PauliString::from_string("XX")) +
          SpinOperator(PauliString::from_string("ZZ")));
      names_ = {"longitudinal", "exchange"};
      break;
    }
    case ModelKind::kChain: {
      if (size < 3)
        throw DimensionError("periodic chain needs at least 3 sites");
      n_qubits_ = size;
      SpinOperator bonds(size);
      for (int j = 0; j < size; ++j)
        bonds -= z_string(size, {j, (j + 1) % size});
      terms_.push_back(bonds);
      terms_.push_back(sum_single(size, 'X', -1.0));
      terms_.push_back(sum_single(size, 'Z', -1.0));
      names_ = {"coupling", "transverse", "longitudinal"};
      break;
    }
    case ModelKind::kQubo: {
      if (size < 1) throw DimensionError("QUBO needs at least 1 spin");
      validate_qubo(spec_.qubo_couplings, size);
      n_qubits_ = size;
      const auto& J = spec_.qubo_couplings;
      SpinOperator problem(size);
      for (int j = 1; j <= size; ++j) {
        if (J(j, 0) != 0.0) problem -= J(j, 0) * sigma_z(size, j - 1);
        for (int k = j + 1; k <= size; ++k)
          if (J(j, k) != 0.0)
            problem -= J(j, k) * z_string(size, {j - 1, k - 1});
      }
      terms_.push_back(problem);
      terms_.push_back(sum_single(size, 'X', -1.0));
      names_ = {"problem", "driver"};
      break;
    }
    case ModelKind::kLhz: {
      if (size < 3) throw DimensionError("LHZ needs at least 3 logical spins");
      n_qubits_ = lhz_physical_qubits(size);
      if (static_cast<int>(spec_.lhz_couplings.size()) != n_qubits_)
        throw DimensionError("LHZ needs one coupling per physical qubit");
      if (spec_.constraints.empty())
        spec_.constraints = lhz_default_constraints(size);
      SpinOperator problem(n_qubits_);
      for (int k = 0; k < n_qubits_; ++k)
        if (spec_.lhz_couplings[k] != 0.0)
          problem -= spec_.lhz_couplings[k] * sigma_z(n_qubits_, k);
      SpinOperator parity(n_qubits_);
      for (const auto& c : spec_.constraints) {
        if (c.empty()) throw DomainError("empty LHZ constraint");
        parity -= z_string(n_qubits_, c);
      }
      terms_.push_back(problem);
      terms_.push_back(sum_single(n_qubits_, 'X', -1.0));
      terms_.push_back(parity);
      names_ = {"problem", "driver", "constraint"};
      break;
    }
  }
}

AnsatzLayout Model::layout() const {
  AnsatzLayout l;
  if (has_secondary_rotation()) l.secondary_rotation_term = 2;
  return l;
}

SpinOperator Model::hamiltonian(std::span<const double> fields) const {
  if (static_cast<int>(fields.size()) != n_terms())
    throw DimensionError("expected " + std::to_string(n_terms()) +
                         " fields, got " + std::to_string(fields.size()));
  SpinOperator h(n_qubits_);
  for (int i = 0; i < n_terms(); ++i)
    if (fields[i] != 0.0) h += fields[i] * terms_[i];
  return h;
}

FieldSet Model::ua_fields(double lambda, double lambda_dot) const {
  const double l = lambda, ld = lambda_dot;
  switch (spec_.kind) {
    case ModelKind::kTwoSpin:
      return {{5.0 * (1.0 - l), -5.0 * ld}, {-1.0, 0.0}};
    case ModelKind::kChain:
      return {{l, ld}, {1.0 - 0.5 * l, -0.5 * ld}, {0.2 * l, 0.2 * ld}};
    case ModelKind::kQubo:
      return {{l, ld}, {1.0 - l, -ld}};
    case ModelKind::kLhz:
      return {{l, ld},
              {1.0 - l, -ld},
              {kConstraintScale * l, kConstraintScale * ld}};
  }
  return {};
}

SpinOperator build_hamiltonian(const Model& model,
                               std::span<const double> fields) {
  return model.hamiltonian(fields);
}

FieldSet ua_fields(const Model& model, double lambda, double lambda_dot) {
  return model.ua_fields(lambda, lambda_dot);
}

ModelSpec random_instance(ModelKind kind, int size, std::uint64_t seed) {
  ModelSpec s;
  s.kind = kind;
  s.size = size;
  s.seed = seed;
  std::mt19937_64 gen(seed);
  switch (kind) {
    case ModelKind::kTwoSpin:
      s.size = 2;
      break;
    case ModelKind::kChain:
      break;
    case ModelKind::kQubo: {
      if (size < 1) throw DimensionError("QUBO needs at least 1 spin");
      s.qubo_couplings = Eigen::MatrixXd::Zero(size + 1, size + 1);
      for (int j = 0; j <= size; ++j)
        for (int k = j + 1; k <= size; ++k)
          s.qubo_couplings(j, k) = s.qubo_couplings(k, j) = uniform_pm1(gen);
      break;
    }
    case ModelKind::kLhz: {
      if (size < 3) throw DimensionError("LHZ needs at least 3 logical spins");
      const int n = lhz_physical_qubits(size);
      s.lhz_couplings.resize(n);
      for (auto& v : s.lhz_couplings) v = uniform_pm1(gen);
      s.constraints = lhz_default_constraints(size);
      break;
    }
  }
  return s;
}

}  // namespace rotcd
