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

#include "rotcd/agp.hpp"

#include <cmath>

#include "rotcd/errors.hpp"

namespace rotcd {
namespace {

constexpr Complex kI{0.0, 1.0};

SpinOperator field_sum(const Model& model, const FieldSet& fields,
                       bool rates) {
  if (static_cast<int>(fields.size()) != model.n_terms())
    throw DimensionError("expected " + std::to_string(model.n_terms()) +
                         " fields, got " + std::to_string(fields.size()));
  SpinOperator out(model.n_qubits());
  for (int i = 0; i < model.n_terms(); ++i) {
    const double f = rates ? fields[i].rate : fields[i].value;
    if (f != 0.0) out += f * model.terms()[i];
  }
  return out;
}

Eigen::VectorXd solve_normal(const Eigen::MatrixXd& m,
                             const Eigen::VectorXd& v) {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(m);
  Eigen::VectorXd a = cod.solve(-v);
  if (!a.allFinite())
    throw NumericalError("local CD normal system is ill-conditioned (rank " +
                         std::to_string(cod.rank()) + " of " +
                         std::to_string(m.rows()) + ")");
  return a;
}

}  // namespace

GaugeContext::GaugeContext(const Model& model, const FieldSet& fields)
    : h0_(field_sum(model, fields, false)),
      dh0_dt_(field_sum(model, fields, true)),
      rotation_(model.terms()[model.layout().rotation_term]),
      auxiliary_(model.terms()[model.layout().auxiliary_term]) {
  if (auto s = model.layout().secondary_rotation_term)
    secondary_ = model.terms()[*s];
}

SpinOperator GaugeContext::rotation_generator(const RaParams& p) const {
  if (p.phi.has_value() != secondary_.has_value())
    throw DomainError(secondary_ ? "model needs a secondary rotation angle"
                                 : "model has no secondary rotation term");
  SpinOperator q = p.gamma * rotation_;
  if (secondary_) q += *p.phi * *secondary_;
  return q;
}

DenseMatrix exact_agp(const DenseMatrix& h0, const DenseMatrix& dh0,
                      double gap_tol) {
  if (h0.rows() != dh0.rows() || h0.cols() != dh0.cols())
    throw DimensionError("Hamiltonian and its derivative differ in shape");
  if (!(gap_tol > 0.0)) throw DomainError("gap tolerance must be positive");
  const double scale = std::max(1.0, h0.cwiseAbs().maxCoeff());
  if (!is_hermitian(h0, 1e-12 * scale))
    throw DomainError("exact_agp needs a Hermitian Hamiltonian");
  if (h0.imag().isZero(0.0) && dh0.imag().isZero(0.0)) {
    // Real symmetric input: the potential is i times a real antisymmetric
    // matrix, and the real eigensolver is several times faster.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h0.real());
    const auto& e = eig.eigenvalues();
    const Eigen::MatrixXd& v = eig.eigenvectors();
    Eigen::MatrixXd a = v.transpose() * dh0.real() * v;
    for (Eigen::Index l = 0; l < a.cols(); ++l) {
      for (Eigen::Index m = 0; m < a.rows(); ++m) {
        const double gap = e(l) - e(m);
        a(m, l) = (m == l || std::abs(gap) < gap_tol) ? 0.0 : a(m, l) / gap;
      }
    }
    return kI * (v * a * v.transpose()).cast<Complex>();
  }
  Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(h0);
  const auto& e = eig.eigenvalues();
  const DenseMatrix& v = eig.eigenvectors();
  DenseMatrix a = v.adjoint() * dh0 * v;
  for (Eigen::Index l = 0; l < a.cols(); ++l) {
    for (Eigen::Index m = 0; m < a.rows(); ++m) {
      const double gap = e(l) - e(m);
      a(m, l) = (m == l || std::abs(gap) < gap_tol) ? Complex{}
                                                    : kI * a(m, l) / gap;
    }
  }
  return v * a * v.adjoint();
}

DenseMatrix ra_agp(const GaugeContext& ctx, const RaParams& p) {
  const SpinOperator q = ctx.rotation_generator(p);
  if (!q.is_diagonal())
    throw DomainError("rotated ansatz needs a diagonal rotation generator");
  const Eigen::VectorXd phase = diagonal_entries(q).real();
  const DenseMatrix h0 = to_dense(ctx.h0());
  DenseMatrix out = h0 + p.beta * to_dense(ctx.auxiliary_term());
  for (Eigen::Index c = 0; c < out.cols(); ++c)
    for (Eigen::Index r = 0; r < out.rows(); ++r)
      out(r, c) *= std::polar(1.0, phase(r) - phase(c));
  return out - h0;
}

DenseMatrix g_operator(const GaugeContext& ctx, const DenseMatrix& scaled_agp) {
  const DenseMatrix h0 = to_dense(ctx.h0());
  if (scaled_agp.rows() != h0.rows() || scaled_agp.cols() != h0.cols())
    throw DimensionError("gauge potential shape does not match H0");
  return to_dense(ctx.dh0_dt()) - kI * (h0 * scaled_agp - scaled_agp * h0);
}

double action_oracle(const GaugeContext& ctx, const DenseMatrix& scaled_agp) {
  // G is Hermitian, so Tr(G^2) is its squared Frobenius norm.
  return g_operator(ctx, scaled_agp).squaredNorm();
}

double action_oracle(const GaugeContext& ctx, const RaParams& p) {
  return action_oracle(ctx, ra_agp(ctx, p));
}

Eigen::VectorXd local_cd_coeffs(const GaugeContext& ctx) {
  const int n = ctx.n_qubits();
  std::vector<SpinOperator> c;
  c.reserve(n);
  for (int j = 0; j < n; ++j)
    c.push_back(-kI * commutator(ctx.h0(), sigma_y(n, j)));
  Eigen::MatrixXd m(n, n);
  Eigen::VectorXd v(n);
  for (int j = 0; j < n; ++j) {
    v(j) = trace_product(ctx.dh0_dt(), c[j]).real();
    for (int k = j; k < n; ++k)
      m(j, k) = m(k, j) = trace_product(c[j], c[k]).real();
  }
  return solve_normal(m, v);
}

LocalCdSolver::LocalCdSolver(const Model& model)
    : n_sites_(model.n_qubits()), n_terms_(model.n_terms()) {
  const int n = n_sites_;
  std::vector<std::vector<SpinOperator>> c(n_terms_);
  for (int i = 0; i < n_terms_; ++i)
    for (int j = 0; j < n; ++j)
      c[i].push_back(-kI * commutator(model.terms()[i], sigma_y(n, j)));
  normal_.assign(n_terms_, std::vector<Eigen::MatrixXd>(n_terms_));
  linear_.assign(n_terms_, std::vector<Eigen::VectorXd>(n_terms_));
  for (int i = 0; i < n_terms_; ++i) {
    for (int l = 0; l < n_terms_; ++l) {
      auto& m = normal_[i][l];
      auto& v = linear_[i][l];
      m.resize(n, n);
      v.resize(n);
      for (int j = 0; j < n; ++j) {
        v(j) = trace_product(model.terms()[i], c[l][j]).real();
        for (int k = 0; k < n; ++k)
          m(j, k) = trace_product(c[i][j], c[l][k]).real();
      }
    }
  }
}

Eigen::VectorXd LocalCdSolver::solve(const FieldSet& fields) const {
  if (static_cast<int>(fields.size()) != n_terms_)
    throw DimensionError("expected " + std::to_string(n_terms_) + " fields");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_sites_, n_sites_);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n_sites_);
  for (int i = 0; i < n_terms_; ++i) {
    for (int l = 0; l < n_terms_; ++l) {
      m += fields[i].value * fields[l].value * normal_[i][l];
      v += fields[i].rate * fields[l].value * linear_[i][l];
    }
  }
  return solve_normal(m, v);
}

}  // namespace rotcd
