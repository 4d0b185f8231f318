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

// Polynomial-cost evaluators of the time-scaled rotated-ansatz action.
//
// Field sets follow each model's term order (see models.hpp). Normalizations:
// the two-spin action is the full trace, the chain action is per site
// (S / (N 2^N)), and the QUBO and LHZ actions are S / 2^N.

#pragma once

#include <memory>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rotcd/agp.hpp"
#include "rotcd/models.hpp"

namespace rotcd {

// fields = {longitudinal h, exchange J}
double action_two_level(const FieldSet& fields, double beta, double gamma);

// (J hdot - Jdot h) / (4 h^2 + J^2); the exact potential is
// -(angle/2) (XY + YX) up to the ramp speed.
double two_level_mixing_rate(const FieldSet& fields);

enum class TwoLevelBranch {
  // Angle stays in (-pi/8, pi/8) and vanishes with the mixing rate, so the
  // parameters return to zero whenever the ramp stops.
  kContinuous,
  // 4 gamma = atan2(-rate, J) and beta + J = sqrt(J^2 + rate^2) > 0.
  kPrincipal,
};

RaParams two_level_optimum(const FieldSet& fields,
                           TwoLevelBranch branch = TwoLevelBranch::kContinuous);

// fields = {coupling J, transverse h, longitudinal b}; valid for N >= 4.
double action_chain(const FieldSet& fields, double beta, double gamma,
                    double phi);

// J is the (N+1) x (N+1) coupling matrix with the local fields in row 0;
// fields = {problem A, driver B}. Cost O(N^3).
double action_qubo(const Eigen::MatrixXd& J, const FieldSet& fields,
                   double beta, double gamma);

struct LhzPair {
  int mu = 0;
  int nu = 0;
  int shared = 0;
};

struct LhzCounts {
  int n_qubits = 0;
  int total = 0;                  // number of constraints
  std::vector<int> per_site;      // constraints containing each qubit
  std::vector<LhzPair> pairs;     // qubit pairs sharing >= 1 constraint
  // The site and constraint parities around every qubit and every pair are
  // linearly independent over GF(2); the closed form relies on it.
  bool independent = true;

  int shared(int mu, int nu) const;
  int exclusive(int mu, int nu) const { return per_site[mu] - shared(mu, nu); }
};

LhzCounts lhz_counts(const std::vector<std::vector<int>>& constraints,
                     int n_qubits);

// fields = {problem A, driver B, constraint C}. Cost O(N + pairs).
double action_lhz(const LhzCounts& counts, const std::vector<double>& J,
                  const FieldSet& fields, double beta, double gamma,
                  double phi);

// Two-operator ansatz A = a_a H_a + a_b H_b for H0 = A0 H_a + B0 H_b,
// with lambda-derivatives dA0, dB0.
class TwoOperatorCd {
 public:
  TwoOperatorCd(SpinOperator h_a, SpinOperator h_b);

  // Tr((i [H_a, H_b])^2) >= 0
  double commutator_weight() const { return weight_; }
  double action(double a0, double b0, double da0, double db0, double alpha_a,
                double alpha_b) const;

 private:
  double aa_, ab_, bb_;  // Gram entries Tr(H_a H_a), Tr(H_a H_b), Tr(H_b H_b)
  double weight_;
};

enum class ActionBackend { kClosedForm, kOracle };

// Normalization applied to a full-trace action so it matches the model's
// closed form.
double action_normalization(const Model& model);

// Normalized time-scaled action of a model as a function of (fields, params).
class ActionEvaluator {
 public:
  ActionEvaluator(std::shared_ptr<const Model> model, ActionBackend backend);

  const Model& model() const { return *model_; }
  ActionBackend backend() const { return backend_; }
  // Factor applied to Tr(G_t^2) by this evaluator.
  double normalization() const { return norm_; }
  double operator()(const FieldSet& fields, const RaParams& p) const;

 private:
  std::shared_ptr<const Model> model_;
  ActionBackend backend_;
  double norm_;
  std::shared_ptr<const LhzCounts> lhz_;
};

}  // namespace rotcd
