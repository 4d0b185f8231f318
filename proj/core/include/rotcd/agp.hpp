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

// Gauge potentials and the variational action.
//
// Everything here uses the time-scaled convention: the potential handed
// around is lambda_dot * A, and the action is Tr(G_t^2) with
// G_t = dH0/dt - i [H0, lambda_dot * A]. This stays finite where the ramp
// speed vanishes.

#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "rotcd/models.hpp"
#include "rotcd/operators.hpp"

namespace rotcd {

// Rotation angles multiply the rotation terms of the model; beta shifts the
// auxiliary term. phi is present exactly when the model has a secondary
// rotation term.
struct RaParams {
  double beta = 0.0;
  double gamma = 0.0;
  std::optional<double> phi;
};

class GaugeContext {
 public:
  GaugeContext(const Model& model, const FieldSet& fields);

  int n_qubits() const { return h0_.n_qubits(); }
  const SpinOperator& h0() const { return h0_; }
  const SpinOperator& dh0_dt() const { return dh0_dt_; }
  const SpinOperator& rotation_term() const { return rotation_; }
  const std::optional<SpinOperator>& secondary_rotation_term() const {
    return secondary_;
  }
  const SpinOperator& auxiliary_term() const { return auxiliary_; }

  // Q = gamma * rotation + phi * secondary.
  SpinOperator rotation_generator(const RaParams& p) const;

 private:
  SpinOperator h0_;
  SpinOperator dh0_dt_;
  SpinOperator rotation_;
  std::optional<SpinOperator> secondary_;
  SpinOperator auxiliary_;
};

inline constexpr double kDefaultGapTol = 1e-10;

// i sum_{m != l} <m|dH|l> / (e_l - e_m) |m><l| in the eigenbasis of H0;
// nearly degenerate pairs are skipped.
DenseMatrix exact_agp(const DenseMatrix& h0, const DenseMatrix& dh0,
                      double gap_tol = kDefaultGapTol);

// exp(iQ) (H0 + K) exp(-iQ) - H0 for diagonal Q, as a dense matrix.
DenseMatrix ra_agp(const GaugeContext& ctx, const RaParams& p);

DenseMatrix g_operator(const GaugeContext& ctx, const DenseMatrix& scaled_agp);

// Tr(G_t^2) over the full Hilbert space.
double action_oracle(const GaugeContext& ctx, const RaParams& p);
double action_oracle(const GaugeContext& ctx, const DenseMatrix& scaled_agp);

// Per-site sigma^y amplitudes a_j minimizing the time-scaled action for the
// ansatz sum_j a_j sigma^y_j. The result already includes the ramp speed.
Eigen::VectorXd local_cd_coeffs(const GaugeContext& ctx);

// Same minimization with the normal equations precomputed as quadratic forms
// in the control fields, so repeated solves along a protocol are cheap.
class LocalCdSolver {
 public:
  explicit LocalCdSolver(const Model& model);
  Eigen::VectorXd solve(const FieldSet& fields) const;
  int n_sites() const { return n_sites_; }

 private:
  int n_sites_;
  int n_terms_;
  // normal_[i][l](j, k) = Tr(C_ij C_lk), C_ij = -i [T_i, Y_j]
  std::vector<std::vector<Eigen::MatrixXd>> normal_;
  // linear_[i][l](j) = Tr(T_i C_lj)
  std::vector<std::vector<Eigen::VectorXd>> linear_;
};

}  // namespace rotcd
