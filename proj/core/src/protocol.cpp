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

#include "rotcd/protocol.hpp"

#include <cmath>

#include "rotcd/errors.hpp"

namespace rotcd {

std::string_view to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::kUa: return "ua";
    case ProtocolKind::kLocalCd: return "local-cd";
    case ProtocolKind::kRa: return "ra";
    case ProtocolKind::kExactCd: return "exact-cd";
  }
  return "unknown";
}

ProtocolKind parse_protocol_kind(std::string_view name) {
  if (name == "ua") return ProtocolKind::kUa;
  if (name == "local-cd") return ProtocolKind::kLocalCd;
  if (name == "ra") return ProtocolKind::kRa;
  if (name == "exact-cd") return ProtocolKind::kExactCd;
  throw DomainError("unknown protocol '" + std::string(name) + "'");
}

Protocol::Protocol(std::shared_ptr<const Model> model, Ramp ramp,
                   ProtocolKind kind)
    : model_(std::move(model)), ramp_(ramp), kind_(kind) {}

Protocol assemble_protocol(std::shared_ptr<const Model> model,
                           const Ramp& ramp, ProtocolKind kind,
                           std::optional<ParamTrajectory> traj,
                           ProtocolMetadata meta) {
  if (!model) throw DomainError("protocol needs a model");
  Protocol p(std::move(model), ramp, kind);
  p.meta_ = meta;
  const Model& m = *p.model_;
  switch (kind) {
    case ProtocolKind::kRa: {
      if (!traj) throw DomainError("RA protocol needs a parameter trajectory");
      const double tol = 1e-9 * std::max(1.0, ramp.tau());
      if (std::abs(traj->t_begin()) > tol ||
          std::abs(traj->t_end() - ramp.tau()) > tol)
        throw DomainError("trajectory does not span [0, tau]");
      if (traj->has_phi() != m.has_secondary_rotation())
        throw DomainError("trajectory parameters do not match the model");
      const AnsatzLayout l = m.layout();
      p.rot_diag_ = diagonal_entries(m.terms()[l.rotation_term]).real();
      if (l.secondary_rotation_term)
        p.rot2_diag_ =
            diagonal_entries(m.terms()[*l.secondary_rotation_term]).real();
      if (p.meta_.m_points == 0)
        p.meta_.m_points = static_cast<int>(traj->times().size()) - 1;
      p.traj_ = std::move(traj);
      break;
    }
    case ProtocolKind::kLocalCd:
      p.local_ = std::make_shared<LocalCdSolver>(m);
      break;
    case ProtocolKind::kUa:
    case ProtocolKind::kExactCd:
      break;
  }
  return p;
}

FieldSet Protocol::ua_fields(double t) const {
  const RampValue rv = ramp_(t);
  return model_->ua_fields(rv.lambda, rv.lambda_dot);
}

std::vector<double> Protocol::fields(double t) const {
  const FieldSet ua = ua_fields(t);
  std::vector<double> f(ua.size());
  for (std::size_t i = 0; i < ua.size(); ++i) f[i] = ua[i].value;
  if (kind_ == ProtocolKind::kRa) {
    const RaParams p = traj_->at(t);
    const RaParams r = traj_->rate(t);
    const AnsatzLayout l = model_->layout();
    f[l.rotation_term] += r.gamma;
    f[l.auxiliary_term] += p.beta;
    if (l.secondary_rotation_term) f[*l.secondary_rotation_term] += *r.phi;
  }
  return f;
}

Eigen::VectorXd Protocol::y_fields(double t) const {
  if (kind_ != ProtocolKind::kLocalCd) return {};
  return local_->solve(ua_fields(t));
}

Eigen::VectorXd Protocol::rotation_phases(double t) const {
  if (kind_ != ProtocolKind::kRa)
    return Eigen::VectorXd::Zero(Eigen::Index{1} << model_->n_qubits());
  const RaParams p = traj_->at(t);
  Eigen::VectorXd q = p.gamma * rot_diag_;
  if (p.phi) q += *p.phi * rot2_diag_;
  return q;
}

SpinOperator Protocol::rotation_generator(double t) const {
  const AnsatzLayout l = model_->layout();
  SpinOperator q(model_->n_qubits());
  if (kind_ != ProtocolKind::kRa) return q;
  const RaParams p = traj_->at(t);
  q += p.gamma * model_->terms()[l.rotation_term];
  if (p.phi) q += *p.phi * model_->terms()[*l.secondary_rotation_term];
  return q;
}

std::vector<std::string> Protocol::field_names() const {
  std::vector<std::string> names = model_->field_names();
  if (kind_ == ProtocolKind::kLocalCd)
    for (int j = 0; j < model_->n_qubits(); ++j)
      names.push_back("y_" + std::to_string(j));
  return names;
}

std::vector<double> Protocol::all_fields(double t) const {
  std::vector<double> f = fields(t);
  if (kind_ == ProtocolKind::kLocalCd) {
    const Eigen::VectorXd y = y_fields(t);
    f.insert(f.end(), y.data(), y.data() + y.size());
  }
  return f;
}

}  // namespace rotcd
