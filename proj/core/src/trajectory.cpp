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

#include "rotcd/trajectory.hpp"

#include <cmath>
#include <ostream>

#include "rotcd/csv.hpp"
#include "rotcd/errors.hpp"

namespace rotcd {
namespace {

std::vector<double> column(const std::vector<RaParams>& v, ParamName name) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& p : v) {
    switch (name) {
      case ParamName::kBeta: out.push_back(p.beta); break;
      case ParamName::kGamma: out.push_back(p.gamma); break;
      case ParamName::kPhi: out.push_back(p.phi.value_or(0.0)); break;
    }
  }
  return out;
}

Eigen::VectorXd pack(const RaParams& p) {
  Eigen::VectorXd x(p.phi ? 3 : 2);
  x(0) = p.beta;
  x(1) = p.gamma;
  if (p.phi) x(2) = *p.phi;
  return x;
}

RaParams unpack(const Eigen::VectorXd& x) {
  RaParams p{x(0), x(1), std::nullopt};
  if (x.size() == 3) p.phi = x(2);
  return p;
}

}  // namespace

ParamName parse_param_name(std::string_view name) {
  if (name == "beta") return ParamName::kBeta;
  if (name == "gamma") return ParamName::kGamma;
  if (name == "phi") return ParamName::kPhi;
  throw DomainError("unknown parameter '" + std::string(name) + "'");
}

std::string_view to_string(ParamName name) {
  switch (name) {
    case ParamName::kBeta: return "beta";
    case ParamName::kGamma: return "gamma";
    case ParamName::kPhi: return "phi";
  }
  return "unknown";
}

ParamTrajectory::ParamTrajectory(std::vector<double> times,
                                 std::vector<RaParams> values, SplineEnd end)
    : times_(std::move(times)), values_(std::move(values)), end_(end) {
  if (times_.size() < 3 || times_.size() != values_.size())
    throw DimensionError("trajectory needs >= 3 grid points with values");
  has_phi_ = values_.front().phi.has_value();
  for (const auto& p : values_) {
    if (p.phi.has_value() != has_phi_)
      throw DomainError("trajectory mixes points with and without phi");
    if (!std::isfinite(p.beta) || !std::isfinite(p.gamma) ||
        !std::isfinite(p.phi.value_or(0.0)))
      throw DomainError("trajectory values must be finite");
  }
  splines_.emplace_back(times_, column(values_, ParamName::kBeta), end_);
  splines_.emplace_back(times_, column(values_, ParamName::kGamma), end_);
  if (has_phi_)
    splines_.emplace_back(times_, column(values_, ParamName::kPhi), end_);
}

const CubicSpline& ParamTrajectory::spline(ParamName name) const {
  if (name == ParamName::kPhi && !has_phi_)
    throw DomainError("trajectory has no phi parameter");
  return splines_[static_cast<std::size_t>(name)];
}

RaParams ParamTrajectory::at(double t) const {
  RaParams p{splines_[0].value(t), splines_[1].value(t), std::nullopt};
  if (has_phi_) p.phi = splines_[2].value(t);
  return p;
}

RaParams ParamTrajectory::rate(double t) const {
  RaParams p{splines_[0].derivative(t), splines_[1].derivative(t),
             std::nullopt};
  if (has_phi_) p.phi = splines_[2].derivative(t);
  return p;
}

ParamTrajectory zero_trajectory(const Model& model, double tau, int m_points) {
  if (m_points < 2) throw DomainError("grid needs M >= 2");
  std::vector<double> t(m_points + 1);
  for (int m = 0; m <= m_points; ++m) t[m] = tau * m / m_points;
  RaParams zero;
  if (model.has_secondary_rotation()) zero.phi = 0.0;
  return ParamTrajectory(std::move(t),
                         std::vector<RaParams>(m_points + 1, zero));
}

std::function<double(double)> differentiate(const ParamTrajectory& traj,
                                            ParamName name) {
  const CubicSpline s = traj.spline(name);
  return [s](double t) { return s.derivative(t); };
}

ParamTrajectory sequential_optimize(const ActionEvaluator& action,
                                    const Ramp& ramp,
                                    const SequentialOptions& opts,
                                    SequentialStats* stats) {
  if (opts.m_points < 10) throw DomainError("sequential grid needs M >= 10");
  const Model& model = action.model();
  const int M = opts.m_points;
  RaParams zero;
  if (model.has_secondary_rotation()) zero.phi = 0.0;
  const Eigen::VectorXd x_zero = pack(zero);

  SequentialStats local;
  std::vector<double> times(M + 1);
  std::vector<RaParams> values(M + 1);
  Eigen::VectorXd x = x_zero;
  for (int m = 0; m <= M; ++m) {
    const double t = ramp.tau() * m / M;
    times[m] = t;
    const RampValue rv = ramp(t);
    const FieldSet fields = model.ua_fields(rv.lambda, rv.lambda_dot);
    const Objective f = [&](const Eigen::VectorXd& v) {
      return action(fields, unpack(v));
    };
    const BfgsResult r = bfgs_minimize(f, x, opts.bfgs);
    if (r.status == BfgsStatus::kNonFinite)
      throw NumericalError("optimizer hit a non-finite action at grid index " +
                           std::to_string(m) + " (t = " + std::to_string(t) +
                           ")");
    local.total_iterations += r.iterations;
    local.total_evaluations += r.evaluations + 1;
    local.stalled_points += r.status == BfgsStatus::kStalled;
    local.max_iter_points += r.status == BfgsStatus::kMaxIterations;
    local.max_grad_norm = std::max(local.max_grad_norm, r.grad_norm);
    x = r.x;
    double fx = r.f;
    for (int k = 0; k < opts.newton_steps; ++k) {
      const Eigen::LLT<Eigen::MatrixXd> llt(fd_hessian(f, x, opts.hessian_step));
      if (llt.info() != Eigen::Success) break;
      const Eigen::VectorXd trial =
          x - llt.solve(fd_gradient(f, x, opts.bfgs.fd_step));
      const double ft = f(trial);
      local.total_evaluations += 2 * static_cast<int>(x.size() * x.size()) + 2;
      if (!(ft < fx)) break;
      x = trial;
      fx = ft;
    }
    if (f(x_zero) <= fx + opts.zero_tie_tol * std::max(1.0, std::abs(fx)))
      x = x_zero;
    values[m] = unpack(x);
  }
  if (stats) *stats = local;
  return ParamTrajectory(std::move(times), std::move(values), opts.end);
}

void write_trajectory_csv(std::ostream& out, const ParamTrajectory& traj) {
  std::vector<std::string> header{"t", "beta", "gamma"};
  if (traj.has_phi()) header.push_back("phi");
  CsvWriter w(out, header);
  for (std::size_t i = 0; i < traj.times().size(); ++i) {
    const auto& p = traj.values()[i];
    if (traj.has_phi())
      w.row({traj.times()[i], p.beta, p.gamma, *p.phi});
    else
      w.row({traj.times()[i], p.beta, p.gamma});
  }
}

}  // namespace rotcd
