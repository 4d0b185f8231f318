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

// The four benchmark Hamiltonian families, their unassisted schedules and the
// smooth ramp.
//
// A model is a sum of signed term operators weighted by control fields,
// H = sum_i f_i T_i. The rotated ansatz always places the primary rotation
// angle on term 0, the auxiliary shift on term 1 and, when the model has a
// third term, the secondary rotation angle on term 2.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include "rotcd/operators.hpp"

namespace rotcd {

struct RampValue {
  double lambda = 0.0;
  double lambda_dot = 0.0;
};

// lambda(t) = sin^2((pi/2) sin^2(pi t / (2 tau)))
RampValue ramp_eval(double t, double tau);

class Ramp {
 public:
  explicit Ramp(double tau);
  double tau() const { return tau_; }
  RampValue operator()(double t) const { return ramp_eval(t, tau_); }

 private:
  double tau_;
};

enum class ModelKind { kTwoSpin, kChain, kQubo, kLhz };

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

// Plain description of a problem instance. `size` is the number of chain
// sites, QUBO spins or LHZ logical spins; it is 2 for the two-spin model.
struct ModelSpec {
  ModelKind kind = ModelKind::kTwoSpin;
  int size = 2;
  // QUBO: (size+1) x (size+1) symmetric, zero diagonal, row 0 = local fields.
  Eigen::MatrixXd qubo_couplings;
  // LHZ: one local field per physical qubit.
  std::vector<double> lhz_couplings;
  std::vector<std::vector<int>> constraints;
  std::optional<std::uint64_t> seed;
};

struct FieldValue {
  double value = 0.0;
  double rate = 0.0;  // time derivative
};
using FieldSet = std::vector<FieldValue>;

struct AnsatzLayout {
  int rotation_term = 0;
  int auxiliary_term = 1;
  std::optional<int> secondary_rotation_term;
};

class Model {
 public:
  explicit Model(ModelSpec spec);

  const ModelSpec& spec() const { return spec_; }
  ModelKind kind() const { return spec_.kind; }
  int n_qubits() const { return n_qubits_; }
  int n_terms() const { return static_cast<int>(terms_.size()); }
  const std::vector<SpinOperator>& terms() const { return terms_; }
  const std::vector<std::string>& field_names() const { return names_; }
  AnsatzLayout layout() const;
  bool has_secondary_rotation() const { return n_terms() == 3; }

  SpinOperator hamiltonian(std::span<const double> fields) const;
  FieldSet ua_fields(double lambda, double lambda_dot) const;

 private:
  ModelSpec spec_;
  int n_qubits_ = 0;
  std::vector<SpinOperator> terms_;
  std::vector<std::string> names_;
};

SpinOperator build_hamiltonian(const Model& model,
                               std::span<const double> fields);
FieldSet ua_fields(const Model& model, double lambda, double lambda_dot);

// Couplings are i.i.d. uniform on [-1, 1] drawn from std::mt19937_64 seeded
// with `seed`; each draw is ((g() >> 11) * 2^-53) * 2 - 1. QUBO draws fill the
// upper triangle row by row starting with the local-field row.
ModelSpec random_instance(ModelKind kind, int size, std::uint64_t seed);

// Logical pair (i, j), i < j, of an n-spin LHZ layout maps to a physical
// qubit; qubits are numbered diagonal by diagonal (j - i = 1, 2, ...).
int lhz_qubit(int n_logical, int i, int j);
int lhz_physical_qubits(int n_logical);
std::vector<std::vector<int>> lhz_default_constraints(int n_logical);

ModelSpec two_spin_spec();
ModelSpec chain_spec(int sites);

}  // namespace rotcd
