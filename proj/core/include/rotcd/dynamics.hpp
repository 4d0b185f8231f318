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

// State-vector propagation and ground-state fidelities.

#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "rotcd/agp.hpp"
#include "rotcd/operators.hpp"
#include "rotcd/protocol.hpp"

namespace rotcd {

inline constexpr double kDefaultDegeneracyTol = 1e-10;
inline constexpr int kExactCdQubitCap = 8;
// Above this size a ground space with real weights comes from Lanczos.
inline constexpr int kDenseGroundQubits = 8;

struct GroundSpace {
  double energy = 0.0;
  Eigen::MatrixXcd basis;  // orthonormal columns
};

GroundSpace ground_space(const DenseMatrix& h,
                         double degeneracy_tol = kDefaultDegeneracyTol);
// Operators that are diagonal in the Z or the X product basis are solved
// without forming a dense matrix.
GroundSpace ground_space(const SpinOperator& h,
                         double degeneracy_tol = kDefaultDegeneracyTol);

double fidelity(const StateVector& psi, const GroundSpace& ground);
// Overlap with exp(-iQ) times the ground space, for diagonal Q given by its
// diagonal entries.
double rotated_fidelity(const StateVector& psi, const GroundSpace& ground,
                        const Eigen::VectorXd& q_diagonal);
double rotated_fidelity(const StateVector& psi, const GroundSpace& ground,
                        const SpinOperator& q);

// A Hamiltonian that can be set to any time and then applied to states.
class HamiltonianPath {
 public:
  virtual ~HamiltonianPath() = default;
  virtual int n_qubits() const = 0;
  virtual void set_time(double t) = 0;
  // y = H x at the current time.
  virtual void apply(const StateVector& x, StateVector& y) const = 0;
};

// H(t) = sum_k c_k(t) O_k, applied without dense matrices. Words are grouped
// by their X mask so each group costs one pass over the state.
class OperatorPath : public HamiltonianPath {
 public:
  using Schedule = std::function<std::vector<double>(double)>;

  OperatorPath(std::vector<SpinOperator> ops, Schedule schedule);

  int n_qubits() const override { return n_qubits_; }
  void set_time(double t) override;
  void apply(const StateVector& x, StateVector& y) const override;

 private:
  struct Group {
    std::uint64_t x_mask;
    std::vector<int> ops;
    std::vector<Eigen::VectorXcd> diagonals;
  };
  int n_qubits_;
  std::size_t n_ops_;
  Schedule schedule_;
  std::vector<Group> groups_;
  std::vector<Eigen::VectorXcd> combined_;
};

// Driving Hamiltonian of a protocol; exact CD adds the spectral gauge
// potential recomputed at every time it is set to.
std::unique_ptr<HamiltonianPath> make_path(const Protocol& protocol,
                                           double gap_tol = kDefaultGapTol);

struct EvolveOptions {
  int steps = 2000;
  double norm_tol = 1e-6;
  double gap_tol = kDefaultGapTol;
};

// Called with (step index, time, state) at the requested steps.
using Observer = std::function<void(int, double, const StateVector&)>;

struct EvolveResult {
  StateVector psi;
  double max_norm_drift = 0.0;
};

// Fixed-step RK4 from t0 to t1. `observe_steps` must be sorted; step 0 is the
// initial state.
EvolveResult evolve(HamiltonianPath& path, const StateVector& psi0, double t0,
                    double t1, const EvolveOptions& opts,
                    const std::vector<int>& observe_steps = {},
                    const Observer& observer = {});

EvolveResult evolve(const Protocol& protocol, const StateVector& psi0,
                    const EvolveOptions& opts,
                    const std::vector<int>& observe_steps = {},
                    const Observer& observer = {});

struct FidelityTrace {
  std::vector<double> t;
  std::vector<double> lambda;
  std::vector<double> F;
  std::vector<double> F_tilde;
  double max_norm_drift = 0.0;
  int steps = 0;  // integrator steps actually used
};

struct TraceOptions {
  EvolveOptions evolve;
  // Number of evenly spaced output times including both ends (>= 2).
  int samples = 101;
  double degeneracy_tol = kDefaultDegeneracyTol;
  // On a norm-drift failure, retry with twice the steps up to this many
  // times. Zero keeps the failure.
  int max_refinements = 0;
};

// Starts in the ground space of H0 at t = 0 and records F and F_tilde.
FidelityTrace fidelity_trace(const Protocol& protocol,
                             const TraceOptions& opts = {});

void write_fidelity_csv(std::ostream& out, const FidelityTrace& trace);

}  // namespace rotcd
