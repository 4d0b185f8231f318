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

#include "rotcd/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>

#include "rotcd/csv.hpp"
#include "rotcd/errors.hpp"
#include "sparse_ground.hpp"

namespace rotcd {
namespace {

constexpr Complex kI{0.0, 1.0};

int parity(std::uint64_t v) { return std::popcount(v) & 1; }

void check_state_qubits(int n) {
  if (n > kStateVectorQubitCap)
    throw CapacityError("state vector of " + std::to_string(n) +
                        " qubits exceeds cap of " +
                        std::to_string(kStateVectorQubitCap));
}

GroundSpace from_levels(const Eigen::VectorXd& levels, Eigen::Index dim,
                        double tol,
                        const std::function<Eigen::VectorXcd(Eigen::Index)>&
                            basis_vector) {
  GroundSpace g;
  g.energy = levels.minCoeff();
  std::vector<Eigen::Index> idx;
  for (Eigen::Index k = 0; k < levels.size(); ++k)
    if (levels(k) <= g.energy + tol) idx.push_back(k);
  g.basis.resize(dim, static_cast<Eigen::Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c)
    g.basis.col(static_cast<Eigen::Index>(c)) = basis_vector(idx[c]);
  return g;
}

class ExactCdPath : public HamiltonianPath {
 public:
  ExactCdPath(const Protocol& p, double gap_tol)
      : protocol_(p), gap_tol_(gap_tol),
        inner_(p.model().terms(),
               [q = p](double t) { return q.fields(t); }) {
    const int n = p.model().n_qubits();
    if (n > kExactCdQubitCap)
      throw CapacityError("exact CD is limited to " +
                          std::to_string(kExactCdQubitCap) + " qubits");
    for (const auto& term : p.model().terms()) dense_.push_back(to_dense(term));
  }

  int n_qubits() const override { return inner_.n_qubits(); }

  void set_time(double t) override {
    inner_.set_time(t);
    const FieldSet f = protocol_.ua_fields(t);
    DenseMatrix h = DenseMatrix::Zero(dense_[0].rows(), dense_[0].cols());
    DenseMatrix dh = h;
    for (std::size_t i = 0; i < f.size(); ++i) {
      h += f[i].value * dense_[i];
      dh += f[i].rate * dense_[i];
    }
    agp_ = exact_agp(h, dh, gap_tol_);
  }

  void apply(const StateVector& x, StateVector& y) const override {
    inner_.apply(x, y);
    y.noalias() += agp_ * x;
  }

 private:
  Protocol protocol_;
  double gap_tol_;
  OperatorPath inner_;
  std::vector<DenseMatrix> dense_;
  DenseMatrix agp_;
};

}  // namespace

GroundSpace ground_space(const DenseMatrix& h, double degeneracy_tol) {
  if (h.rows() != h.cols()) throw DimensionError("Hamiltonian must be square");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (!is_hermitian(h, 1e-12 * scale))
    throw DomainError("ground_space needs a Hermitian matrix");
  Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(h);
  const DenseMatrix& v = eig.eigenvectors();
  return from_levels(eig.eigenvalues(), h.rows(), degeneracy_tol,
                     [&](Eigen::Index k) { return v.col(k); });
}

GroundSpace ground_space(const SpinOperator& h, double degeneracy_tol) {
  if (!h.is_hermitian()) throw DomainError("ground_space needs a Hermitian operator");
  const int n = h.n_qubits();
  const Eigen::Index dim = Eigen::Index{1} << n;
  bool z_only = true, x_only = true;
  for (const auto& [key, w] : h.terms()) {
    z_only = z_only && key.x == 0;
    x_only = x_only && key.z == 0;
  }
  if (z_only) {
    check_state_qubits(n);
    const Eigen::VectorXd levels = diagonal_entries(h).real();
    return from_levels(levels, dim, degeneracy_tol, [dim](Eigen::Index k) {
      Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
      e(k) = 1.0;
      return e;
    });
  }
  if (x_only) {
    // In the Hadamard basis X^x acts as Z^x.
    check_state_qubits(n);
    Eigen::VectorXd levels = Eigen::VectorXd::Zero(dim);
    for (const auto& [key, w] : h.terms())
      for (Eigen::Index k = 0; k < dim; ++k)
        levels(k) += parity(key.x & static_cast<std::uint64_t>(k))
                         ? -w.real()
                         : w.real();
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
    return from_levels(levels, dim, degeneracy_tol, [dim, amp](Eigen::Index k) {
      Eigen::VectorXcd v(dim);
      for (Eigen::Index c = 0; c < dim; ++c)
        v(c) = parity(static_cast<std::uint64_t>(k & c)) ? -amp : amp;
      return v;
    });
  }
  if (n > kDenseGroundQubits) {
    check_state_qubits(n);
    if (auto low = detail::sparse_low_levels(h, degeneracy_tol))
      return from_levels(low->energies, dim, degeneracy_tol, [&](Eigen::Index k) {
        return Eigen::VectorXcd(low->vectors.col(k).cast<Complex>());
      });
  }
  return ground_space(to_dense(h), degeneracy_tol);
}

double fidelity(const StateVector& psi, const GroundSpace& ground) {
  if (psi.size() != ground.basis.rows())
    throw DimensionError("state and ground space dimensions differ");
  return (ground.basis.adjoint() * psi).squaredNorm();
}

double rotated_fidelity(const StateVector& psi, const GroundSpace& ground,
                        const Eigen::VectorXd& q_diagonal) {
  if (q_diagonal.size() != psi.size())
    throw DimensionError("rotation and state dimensions differ");
  StateVector r(psi.size());
  for (Eigen::Index c = 0; c < psi.size(); ++c)
    r(c) = std::polar(1.0, q_diagonal(c)) * psi(c);
  return fidelity(r, ground);
}

double rotated_fidelity(const StateVector& psi, const GroundSpace& ground,
                        const SpinOperator& q) {
  if (!q.is_diagonal())
    throw DomainError("rotated fidelity needs a diagonal generator");
  return rotated_fidelity(psi, ground, diagonal_entries(q).real());
}

OperatorPath::OperatorPath(std::vector<SpinOperator> ops, Schedule schedule)
    : n_ops_(ops.size()), schedule_(std::move(schedule)) {
  if (ops.empty()) throw DimensionError("operator path needs operators");
  n_qubits_ = ops.front().n_qubits();
  check_state_qubits(n_qubits_);
  const Eigen::Index dim = Eigen::Index{1} << n_qubits_;
  std::map<std::uint64_t, std::map<int, Eigen::VectorXcd>> by_mask;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    if (ops[k].n_qubits() != n_qubits_)
      throw DimensionError("path operators differ in qubit count");
    for (const auto& [key, w] : ops[k].terms()) {
      auto [it, fresh] = by_mask[key.x].try_emplace(static_cast<int>(k));
      if (fresh) it->second = Eigen::VectorXcd::Zero(dim);
      for (Eigen::Index c = 0; c < dim; ++c)
        it->second(c) += parity(key.z & static_cast<std::uint64_t>(c)) ? -w : w;
    }
  }
  for (auto& [mask, per_op] : by_mask) {
    Group g{mask, {}, {}};
    for (auto& [k, d] : per_op) {
      g.ops.push_back(k);
      g.diagonals.push_back(std::move(d));
    }
    groups_.push_back(std::move(g));
  }
  combined_.assign(groups_.size(), Eigen::VectorXcd::Zero(dim));
}

void OperatorPath::set_time(double t) {
  const std::vector<double> c = schedule_(t);
  if (c.size() != n_ops_)
    throw DimensionError("schedule returned " + std::to_string(c.size()) +
                         " coefficients for " + std::to_string(n_ops_) +
                         " operators");
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    auto& d = combined_[g];
    d.setZero();
    for (std::size_t i = 0; i < groups_[g].ops.size(); ++i) {
      const double ck = c[groups_[g].ops[i]];
      if (ck != 0.0) d += ck * groups_[g].diagonals[i];
    }
  }
}

void OperatorPath::apply(const StateVector& x, StateVector& y) const {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits_;
  if (x.size() != dim) throw DimensionError("state has the wrong dimension");
  y.setZero(dim);
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    const auto mask = static_cast<Eigen::Index>(groups_[g].x_mask);
    const auto& d = combined_[g];
    if (mask == 0) {
      y += d.cwiseProduct(x);
    } else {
      for (Eigen::Index c = 0; c < dim; ++c) y(c ^ mask) += d(c) * x(c);
    }
  }
}

std::unique_ptr<HamiltonianPath> make_path(const Protocol& protocol,
                                           double gap_tol) {
  const Model& m = protocol.model();
  switch (protocol.kind()) {
    case ProtocolKind::kUa:
    case ProtocolKind::kRa:
      return std::make_unique<OperatorPath>(
          m.terms(), [p = protocol](double t) { return p.fields(t); });
    case ProtocolKind::kLocalCd: {
      std::vector<SpinOperator> ops = m.terms();
      for (int j = 0; j < m.n_qubits(); ++j)
        ops.push_back(sigma_y(m.n_qubits(), j));
      return std::make_unique<OperatorPath>(
          std::move(ops), [p = protocol](double t) { return p.all_fields(t); });
    }
    case ProtocolKind::kExactCd:
      return std::make_unique<ExactCdPath>(protocol, gap_tol);
  }
  throw DomainError("unknown protocol kind");
}

EvolveResult evolve(HamiltonianPath& path, const StateVector& psi0, double t0,
                    double t1, const EvolveOptions& opts,
                    const std::vector<int>& observe_steps,
                    const Observer& observer) {
  if (opts.steps < 100) throw DomainError("evolution needs at least 100 steps");
  const Eigen::Index dim = Eigen::Index{1} << path.n_qubits();
  if (psi0.size() != dim) throw DimensionError("initial state has the wrong dimension");
  const double h = (t1 - t0) / opts.steps;
  auto time_at = [&](int half_steps) {
    return half_steps == 2 * opts.steps ? t1 : t0 + 0.5 * half_steps * h;
  };

  EvolveResult r;
  r.psi = psi0;
  const double norm0 = psi0.norm();
  StateVector k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
  auto next_obs = observe_steps.begin();
  auto notify = [&](int step) {
    while (next_obs != observe_steps.end() && *next_obs < step) ++next_obs;
    if (next_obs != observe_steps.end() && *next_obs == step) {
      if (observer) observer(step, time_at(2 * step), r.psi);
      ++next_obs;
    }
  };
  notify(0);
  path.set_time(t0);
  for (int s = 0; s < opts.steps; ++s) {
    path.apply(r.psi, k1);
    k1 *= -kI;
    path.set_time(time_at(2 * s + 1));
    tmp = r.psi + (0.5 * h) * k1;
    path.apply(tmp, k2);
    k2 *= -kI;
    tmp = r.psi + (0.5 * h) * k2;
    path.apply(tmp, k3);
    k3 *= -kI;
    path.set_time(time_at(2 * s + 2));
    tmp = r.psi + h * k3;
    path.apply(tmp, k4);
    k4 *= -kI;
    r.psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double drift = std::abs(r.psi.norm() - norm0);
    r.max_norm_drift = std::max(r.max_norm_drift, drift);
    if (!(drift <= opts.norm_tol))
      throw NumericalError("norm drift " + std::to_string(drift) +
                           " exceeds " + std::to_string(opts.norm_tol) +
                           " at step " + std::to_string(s + 1) +
                           "; increase the step count");
    notify(s + 1);
  }
  return r;
}

EvolveResult evolve(const Protocol& protocol, const StateVector& psi0,
                    const EvolveOptions& opts,
                    const std::vector<int>& observe_steps,
                    const Observer& observer) {
  auto path = make_path(protocol, opts.gap_tol);
  return evolve(*path, psi0, 0.0, protocol.tau(), opts, observe_steps,
                observer);
}

FidelityTrace fidelity_trace(const Protocol& protocol,
                             const TraceOptions& opts) {
  if (opts.samples < 2) throw DomainError("trace needs at least 2 samples");
  const Model& model = protocol.model();
  auto h0_at = [&](double t) {
    const FieldSet f = protocol.ua_fields(t);
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) v[i] = f[i].value;
    return model.hamiltonian(v);
  };
  const GroundSpace g0 = ground_space(h0_at(0.0), opts.degeneracy_tol);
  const StateVector psi0 = g0.basis.col(0);

  std::vector<int> steps;
  for (int k = 0; k < opts.samples; ++k) {
    const int s = static_cast<int>(std::lround(
        static_cast<double>(k) * opts.evolve.steps / (opts.samples - 1)));
    if (steps.empty() || s != steps.back()) steps.push_back(s);
  }
  FidelityTrace trace;
  EvolveOptions eo = opts.evolve;
  auto observe = [&](int, double t, const StateVector& psi) {
    const GroundSpace g = ground_space(h0_at(t), opts.degeneracy_tol);
    const double f = fidelity(psi, g);
    trace.t.push_back(t);
    trace.lambda.push_back(protocol.ramp()(t).lambda);
    trace.F.push_back(f);
    trace.F_tilde.push_back(
        protocol.rotated()
            ? rotated_fidelity(psi, g, protocol.rotation_phases(t))
            : f);
  };
  for (int attempt = 0;; ++attempt) {
    try {
      trace.max_norm_drift =
          evolve(protocol, psi0, eo, steps, observe).max_norm_drift;
      trace.steps = eo.steps;
      return trace;
    } catch (const NumericalError&) {
      if (attempt >= opts.max_refinements) throw;
    }
    trace = FidelityTrace{};
    eo.steps *= 2;
    for (auto& s : steps) s *= 2;
  }
}

void write_fidelity_csv(std::ostream& out, const FidelityTrace& trace) {
  CsvWriter w(out, {"t", "lambda", "F", "F_tilde"});
  for (std::size_t i = 0; i < trace.t.size(); ++i)
    w.row({trace.t[i], trace.lambda[i], trace.F[i], trace.F_tilde[i]});
}

}  // namespace rotcd
