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

#include <gtest/gtest.h>

#include <clocale>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

#include "rotcd/bfgs.hpp"
#include "rotcd/closed_form.hpp"
#include "rotcd/csv.hpp"
#include "rotcd/errors.hpp"
#include "rotcd/protocol.hpp"
#include "rotcd/spline.hpp"
#include "rotcd/trajectory.hpp"

namespace rotcd {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> grid(double t0, double t1, int m) {
  std::vector<double> x(m + 1);
  for (int i = 0; i <= m; ++i) x[i] = t0 + (t1 - t0) * i / m;
  return x;
}

TEST(Bfgs, QuadraticBowl) {
  const Eigen::Vector3d a(1.5, -2.0, 0.25);
  const BfgsResult r = bfgs_minimize(
      [&](const Eigen::VectorXd& x) { return (x - a).squaredNorm(); },
      Eigen::Vector3d::Zero());
  EXPECT_LT((r.x - a).norm(), 1e-8);
  EXPECT_LE(r.f, a.squaredNorm());
}

TEST(Bfgs, Rosenbrock) {
  const Objective f = [](const Eigen::VectorXd& x) {
    return 100 * std::pow(x(1) - x(0) * x(0), 2) + std::pow(1 - x(0), 2);
  };
  const BfgsResult r = bfgs_minimize(f, Eigen::Vector2d(-1.2, 1.0));
  EXPECT_NEAR(r.x(0), 1.0, 1e-6);
  EXPECT_NEAR(r.x(1), 1.0, 1e-6);
  EXPECT_LE(r.f, f(Eigen::Vector2d(-1.2, 1.0)));
}

TEST(Bfgs, TwoLevelActionFromOrigin) {
  const Model m(two_spin_spec());
  const Ramp ramp(1.0);
  for (double t : {0.2, 0.5, 0.8}) {
    const RampValue rv = ramp(t);
    const FieldSet f = m.ua_fields(rv.lambda, rv.lambda_dot);
    const BfgsResult r = bfgs_minimize(
        [&](const Eigen::VectorXd& x) { return action_two_level(f, x(0), x(1)); },
        Eigen::Vector2d::Zero());
    const RaParams p = two_level_optimum(f);
    EXPECT_NEAR(r.x(0), p.beta, 1e-6);
    EXPECT_NEAR(r.x(1), p.gamma, 1e-6);
  }
}

TEST(Bfgs, NonFiniteObjectiveIsFlagged) {
  const Objective f = [](const Eigen::VectorXd& x) {
    return x.norm() == 0.0 ? 1.0 : std::numeric_limits<double>::quiet_NaN();
  };
  const BfgsResult r = bfgs_minimize(f, Eigen::Vector2d::Zero());
  EXPECT_EQ(r.status, BfgsStatus::kNonFinite);
  EXPECT_EQ(r.f, 1.0);
  EXPECT_THROW(bfgs_minimize(f, Eigen::Vector2d(1, 0)), NumericalError);
}

TEST(FdHessian, ExactOnQuadratics) {
  Eigen::Matrix3d a;
  a << 4, 1, -2, 1, 3, 0.5, -2, 0.5, 6;
  const Objective f = [&](const Eigen::VectorXd& x) {
    return 0.5 * x.dot(a * x) + 3 * x(0) - 7.0;
  };
  const Eigen::MatrixXd h = fd_hessian(f, Eigen::Vector3d(0.3, -1.2, 2.5));
  EXPECT_LT((h - a).cwiseAbs().maxCoeff(), 1e-5);
  EXPECT_LT((h - h.transpose()).norm(), 1e-15);
}

TEST(Spline, InterpolatesKnotsAndReproducesLines) {
  const std::vector<double> x = grid(0, 2, 20);
  std::vector<double> y;
  for (double t : x) y.push_back(0.5 - 1.75 * t);
  const CubicSpline s(x, y, SplineEnd::kNatural);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(s.value(x[i]), y[i], 1e-14);
  for (double t : {0.0, 0.33, 1.0, 1.97, 2.0}) EXPECT_NEAR(s.derivative(t), -1.75, 1e-12);
  EXPECT_THROW(s.value(2.5), RangeError);
  EXPECT_THROW(CubicSpline({0, 0}, {1, 1}), DomainError);
}

TEST(Spline, ClampedEndsHaveZeroSlope) {
  const std::vector<double> x = grid(0, 1, 30);
  std::vector<double> y;
  for (double t : x) y.push_back(std::sin(3 * t));
  const CubicSpline s(x, y, SplineEnd::kClampedZero);
  EXPECT_NEAR(s.derivative(0.0), 0.0, 1e-14);
  EXPECT_NEAR(s.derivative(1.0), 0.0, 1e-14);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(s.value(x[i]), y[i], 1e-14);
}

TEST(Differentiate, ConstantLinearAndSine) {
  const double tau = 1.3;
  const std::vector<double> x = grid(0, tau, 200);
  std::vector<RaParams> c, l, s;
  for (double t : x) {
    c.push_back({0.7, 0.7, std::nullopt});
    l.push_back({2.0 * t - 1.0, -0.5 * t, std::nullopt});
    s.push_back({std::sin(2 * kPi * t / tau), 0.0, std::nullopt});
  }
  const auto dc = differentiate(ParamTrajectory(x, c, SplineEnd::kNatural),
                                ParamName::kBeta);
  const auto dl = differentiate(ParamTrajectory(x, l, SplineEnd::kNatural),
                                ParamName::kGamma);
  const auto ds = differentiate(ParamTrajectory(x, s, SplineEnd::kNatural),
                                ParamName::kBeta);
  double worst = 0.0;
  for (int k = 0; k <= 1000; ++k) {
    const double t = tau * k / 1000;
    EXPECT_NEAR(dc(t), 0.0, 1e-12);
    EXPECT_NEAR(dl(t), -0.5, 1e-12);
    worst = std::max(worst,
                     std::abs(ds(t) - 2 * kPi / tau * std::cos(2 * kPi * t / tau)));
  }
  EXPECT_LE(worst, 1e-4);
  EXPECT_THROW(differentiate(ParamTrajectory(x, c), ParamName::kPhi), DomainError);
  EXPECT_THROW(parse_param_name("delta"), DomainError);
}

class SequentialTwoSpin : public ::testing::Test {
 protected:
  std::shared_ptr<const Model> model =
      std::make_shared<const Model>(two_spin_spec());
  Ramp ramp{1.0};
  ParamTrajectory traj = sequential_optimize(
      ActionEvaluator(model, ActionBackend::kClosedForm), ramp);
};

TEST_F(SequentialTwoSpin, MatchesAnalyticOptimum) {
  ASSERT_EQ(traj.times().size(), 101u);
  for (std::size_t m = 0; m < traj.times().size(); ++m) {
    const RampValue rv = ramp(traj.times()[m]);
    const RaParams p = two_level_optimum(model->ua_fields(rv.lambda, rv.lambda_dot));
    EXPECT_NEAR(traj.values()[m].beta, p.beta, 1e-3);
    EXPECT_NEAR(traj.values()[m].gamma, p.gamma, 1e-3);
  }
}

TEST_F(SequentialTwoSpin, EndpointsVanishAndSmooth) {
  for (const RaParams& p : {traj.values().front(), traj.values().back()}) {
    EXPECT_LE(std::abs(p.beta), 1e-6);
    EXPECT_LE(std::abs(p.gamma), 1e-6);
  }
  for (std::size_t m = 1; m < traj.values().size(); ++m) {
    EXPECT_LE(std::abs(traj.values()[m].beta - traj.values()[m - 1].beta), 0.5);
    EXPECT_LE(std::abs(traj.values()[m].gamma - traj.values()[m - 1].gamma), 0.5);
  }
}

TEST_F(SequentialTwoSpin, DeterministicAndSerializable) {
  const ParamTrajectory again = sequential_optimize(
      ActionEvaluator(model, ActionBackend::kClosedForm), ramp);
  std::ostringstream a, b;
  write_trajectory_csv(a, traj);
  write_trajectory_csv(b, again);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "t,beta,gamma");
}

TEST(Sequential, NeverWorseThanZeroAnsatz) {
  for (const ModelSpec& s : {chain_spec(8), random_instance(ModelKind::kQubo, 5, 2),
                             random_instance(ModelKind::kLhz, 4, 2)}) {
    auto m = std::make_shared<const Model>(s);
    const Ramp ramp(1.0);
    const ActionEvaluator action(m, ActionBackend::kClosedForm);
    const ParamTrajectory traj = sequential_optimize(action, ramp);
    EXPECT_EQ(traj.has_phi(), m->has_secondary_rotation());
    RaParams zero;
    if (traj.has_phi()) zero.phi = 0.0;
    for (std::size_t k = 0; k < traj.times().size(); ++k) {
      const RampValue rv = ramp(traj.times()[k]);
      const FieldSet f = m->ua_fields(rv.lambda, rv.lambda_dot);
      EXPECT_LE(action(f, traj.values()[k]), action(f, zero) * (1 + 1e-12));
    }
  }
}

TEST(Sequential, ChainGridRefinementConverges) {
  auto m = std::make_shared<const Model>(chain_spec(8));
  const Ramp ramp(1.0);
  const ActionEvaluator action(m, ActionBackend::kClosedForm);
  SequentialOptions fine;
  fine.m_points = 200;
  const ParamTrajectory a = sequential_optimize(action, ramp);
  const ParamTrajectory b = sequential_optimize(action, ramp, fine);
  double worst = 0.0;
  for (int k = 0; k <= 1000; ++k) {
    const RaParams p = a.at(k / 1000.0), q = b.at(k / 1000.0);
    worst = std::max({worst, std::abs(p.beta - q.beta), std::abs(p.gamma - q.gamma),
                      std::abs(*p.phi - *q.phi)});
  }
  EXPECT_LE(worst, 1e-3);
}

TEST(Sequential, RejectsCoarseGrid) {
  auto m = std::make_shared<const Model>(two_spin_spec());
  SequentialOptions o;
  o.m_points = 5;
  EXPECT_THROW(sequential_optimize(ActionEvaluator(m, ActionBackend::kClosedForm),
                                   Ramp(1.0), o),
               DomainError);
}

TEST(Protocol, ZeroTrajectoryEqualsUa) {
  auto m = std::make_shared<const Model>(random_instance(ModelKind::kLhz, 4, 3));
  const Ramp ramp(1.0);
  const Protocol ra =
      assemble_protocol(m, ramp, ProtocolKind::kRa, zero_trajectory(*m, 1.0, 100));
  const Protocol ua = assemble_protocol(m, ramp, ProtocolKind::kUa);
  for (double t : {0.0, 0.13, 0.5, 0.77, 1.0}) {
    EXPECT_EQ(ra.fields(t), ua.fields(t));
    EXPECT_EQ(ra.rotation_phases(t).cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(Protocol, RaFieldsArePinnedAtTheEnds) {
  for (const ModelSpec& s : {two_spin_spec(), chain_spec(8)}) {
    auto m = std::make_shared<const Model>(s);
    const Ramp ramp(1.0);
    const ParamTrajectory traj =
        sequential_optimize(ActionEvaluator(m, ActionBackend::kClosedForm), ramp);
    const Protocol ra = assemble_protocol(m, ramp, ProtocolKind::kRa, traj);
    const Protocol ua = assemble_protocol(m, ramp, ProtocolKind::kUa);
    for (double t : {0.0, 1.0})
      for (int i = 0; i < m->n_terms(); ++i)
        EXPECT_NEAR(ra.fields(t)[i], ua.fields(t)[i], 1e-6);
    // Interior: the rotated term picks up the angle rate, the auxiliary term
    // the shift.
    const double t = 0.4;
    const RaParams p = traj.at(t), r = traj.rate(t);
    EXPECT_NEAR(ra.fields(t)[0], ua.fields(t)[0] + r.gamma, 1e-12);
    EXPECT_NEAR(ra.fields(t)[1], ua.fields(t)[1] + p.beta, 1e-12);
  }
}

TEST(Protocol, LocalCdAddsSiteFieldsAndRejectsMismatch) {
  auto m = std::make_shared<const Model>(chain_spec(4));
  const Ramp ramp(1.0);
  const Protocol lcd = assemble_protocol(m, ramp, ProtocolKind::kLocalCd);
  EXPECT_EQ(lcd.field_names().size(), 7u);
  EXPECT_EQ(lcd.y_fields(0.5).size(), 4);
  EXPECT_NEAR(lcd.y_fields(0.0).cwiseAbs().maxCoeff(), 0.0, 1e-15);
  EXPECT_THROW(assemble_protocol(m, ramp, ProtocolKind::kRa), DomainError);
  auto other = std::make_shared<const Model>(two_spin_spec());
  EXPECT_THROW(assemble_protocol(m, ramp, ProtocolKind::kRa,
                                 zero_trajectory(*other, 1.0, 100)),
               DomainError);
  EXPECT_THROW(parse_protocol_kind("adiabatic"), DomainError);
}

TEST(Csv, RoundTripPrecisionAndLocale) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-17, 123456.789012345, 0.6485476999801533}) {
    const std::string s = format_number(v);
    EXPECT_EQ(std::stod(s), v);
    EXPECT_EQ(s.find(','), std::string::npos);
  }
  EXPECT_EQ(format_number(-0.0), "0");
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8")) {
    EXPECT_EQ(format_number(0.5), "0.5");
    std::setlocale(LC_NUMERIC, "C");
  }
  std::ostringstream out;
  CsvWriter w(out, {"a", "b"});
  EXPECT_THROW(w.row({1.0}), DimensionError);
}

}  // namespace
}  // namespace rotcd
