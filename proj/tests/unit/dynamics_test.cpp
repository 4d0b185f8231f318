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

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "rotcd/errors.hpp"
#include "rotcd/dynamics.hpp"
#include "rotcd/protocol.hpp"

namespace rotcd {
namespace {

const Complex kI{0.0, 1.0};

StateVector plus_state(int n) {
  return StateVector::Constant(1 << n, std::pow(2.0, -0.5 * n));
}

Protocol make(const ModelSpec& spec, ProtocolKind kind, double tau = 1.0) {
  auto m = std::make_shared<const Model>(spec);
  const Ramp ramp(tau);
  std::optional<ParamTrajectory> traj;
  if (kind == ProtocolKind::kRa)
    traj = sequential_optimize(ActionEvaluator(m, ActionBackend::kClosedForm), ramp);
  return assemble_protocol(m, ramp, kind, traj);
}

TEST(GroundSpace, Examples) {
  const GroundSpace g = ground_space(-1.0 * sigma_z(1, 0));
  EXPECT_NEAR(g.energy, -1.0, 1e-15);
  ASSERT_EQ(g.basis.cols(), 1);
  EXPECT_NEAR(std::abs(g.basis(0, 0)), 1.0, 1e-15);

  const Model chain(chain_spec(4));
  const SpinOperator h0 = chain.hamiltonian(std::vector<double>{0.0, 1.0, 0.0});
  const GroundSpace gc = ground_space(h0);
  ASSERT_EQ(gc.basis.cols(), 1);
  EXPECT_NEAR(std::abs(gc.basis.col(0).dot(plus_state(4))), 1.0, 1e-12);

  const GroundSpace deg = ground_space(sigma_z(2, 0));
  EXPECT_EQ(deg.basis.cols(), 2);

  DenseMatrix bad(2, 2);
  bad << 0, 1, 0, 0;
  EXPECT_THROW(ground_space(bad), DomainError);
}

TEST(GroundSpace, DenseAndFastPathsAgree) {
  const Model m(random_instance(ModelKind::kLhz, 4, 5));
  for (const std::vector<double>& f :
       {std::vector<double>{1.0, 0.0, 3.0}, std::vector<double>{0.0, 1.0, 0.0},
        std::vector<double>{0.4, 0.6, 1.2}}) {
    const SpinOperator h = m.hamiltonian(f);
    const GroundSpace a = ground_space(h);
    const GroundSpace b = ground_space(to_dense(h));
    EXPECT_NEAR(a.energy, b.energy, 1e-10);
    ASSERT_EQ(a.basis.cols(), b.basis.cols());
    const DenseMatrix pa = a.basis * a.basis.adjoint();
    const DenseMatrix pb = b.basis * b.basis.adjoint();
    EXPECT_LT((pa - pb).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((pa * pa - pa).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_GE(a.basis.cols(), 1);
  }
}

TEST(GroundSpace, LanczosMatchesDenseAboveEightQubits) {
  const Model chain(chain_spec(9));
  SpinOperator degenerate = -1.0 * sigma_x(9, 0) - sigma_z(9, 1) * sigma_z(9, 2);
  for (int j = 3; j < 9; ++j) degenerate -= 0.3 * j * sigma_z(9, j);
  for (const auto& [h, dim] :
       {std::pair{chain.hamiltonian(std::vector<double>{1.0, 0.8, 0.2}), 1},
        std::pair{degenerate, 2}}) {
    const GroundSpace a = ground_space(h);
    const GroundSpace b = ground_space(to_dense(h));
    EXPECT_NEAR(a.energy, b.energy, 1e-10);
    ASSERT_EQ(a.basis.cols(), dim);
    ASSERT_EQ(b.basis.cols(), dim);
    const DenseMatrix pa = a.basis * a.basis.adjoint();
    const DenseMatrix pb = b.basis * b.basis.adjoint();
    EXPECT_LT((pa - pb).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Fidelity, InsideOutsideAndMismatch) {
  const GroundSpace g = ground_space(-1.0 * sigma_z(1, 0));
  StateVector up(2), down(2);
  up << 1, 0;
  down << 0, 1;
  EXPECT_NEAR(fidelity(up, g), 1.0, 1e-15);
  EXPECT_NEAR(fidelity(down, g), 0.0, 1e-15);
  EXPECT_THROW(fidelity(plus_state(2), g), DimensionError);
  EXPECT_NEAR(rotated_fidelity(up, g, SpinOperator(1)), fidelity(up, g), 1e-15);
  EXPECT_THROW(rotated_fidelity(up, g, sigma_x(1, 0)), DomainError);
}

TEST(Evolve, ZeroHamiltonianKeepsState) {
  OperatorPath path({sigma_z(2, 0)}, [](double) { return std::vector<double>{0.0}; });
  const StateVector psi0 = plus_state(2);
  const EvolveResult r = evolve(path, psi0, 0.0, 1.0, {});
  EXPECT_LT((r.psi - psi0).norm(), 1e-15);
}

TEST(Evolve, PrecessionMatchesAnalyticPhases) {
  OperatorPath path({sigma_z(1, 0)}, [](double) { return std::vector<double>{1.0}; });
  const double tau = 1.7;
  const EvolveResult r = evolve(path, plus_state(1), 0.0, tau, {});
  StateVector expect(2);
  expect << std::exp(-kI * tau), std::exp(kI * tau);
  expect /= std::sqrt(2.0);
  EXPECT_GE(std::norm(expect.dot(r.psi)), 1 - 1e-8);
}

TEST(Evolve, RejectsFewStepsAndReportsDrift) {
  OperatorPath path({sigma_x(1, 0)}, [](double) { return std::vector<double>{200.0}; });
  EvolveOptions o;
  o.steps = 50;
  EXPECT_THROW(evolve(path, plus_state(1), 0.0, 1.0, o), DomainError);
  o.steps = 100;
  StateVector up(2);
  up << 1, 0;
  EXPECT_THROW(evolve(path, up, 0.0, 1.0, o), NumericalError);
}

TEST(Evolve, TimeReversalReturnsInitialState) {
  const Protocol p = make(two_spin_spec(), ProtocolKind::kRa);
  const Model& m = p.model();
  const StateVector psi0 = ground_space(m.hamiltonian(p.fields(0.0))).basis.col(0);
  OperatorPath fwd(m.terms(), [&](double t) { return p.fields(t); });
  OperatorPath back(m.terms(), [&](double t) {
    std::vector<double> f = p.fields(1.0 - t);
    for (double& v : f) v = -v;
    return f;
  });
  const StateVector mid = evolve(fwd, psi0, 0.0, 1.0, {}).psi;
  const StateVector end = evolve(back, mid, 0.0, 1.0, {}).psi;
  EXPECT_GE(std::norm(psi0.dot(end)), 1 - 1e-5);
}

TEST(Evolve, HalvingStepBarelyMovesFinalState) {
  const Protocol p = make(two_spin_spec(), ProtocolKind::kRa);
  const StateVector psi0 =
      ground_space(p.model().hamiltonian(p.fields(0.0))).basis.col(0);
  EvolveOptions a, b;
  b.steps = 4000;
  EXPECT_LE((evolve(p, psi0, a).psi - evolve(p, psi0, b).psi).norm(), 1e-6);
}

TEST(FidelityTrace, TwoSpinUnassistedMatchesReference) {
  const FidelityTrace tr = fidelity_trace(make(two_spin_spec(), ProtocolKind::kUa));
  // Independent RK4 propagation with 2000 steps (numpy).
  EXPECT_NEAR(tr.F.back(), 0.6485476999801533, 1e-9);
  EXPECT_NEAR(tr.F.back(), 0.66, 0.02);
  EXPECT_NEAR(tr.F.front(), 1.0, 1e-9);
  EXPECT_LE(tr.max_norm_drift, 1e-6);
  EXPECT_EQ(tr.t.size(), 101u);
}

TEST(FidelityTrace, ChainUnassistedMatchesReference) {
  TraceOptions o;
  o.samples = 2;
  const FidelityTrace tr = fidelity_trace(make(chain_spec(8), ProtocolKind::kUa), o);
  EXPECT_NEAR(tr.F.back(), 0.03621795443488724, 1e-9);
}

TEST(FidelityTrace, TwoSpinRotatedFidelityStaysPerfect) {
  const FidelityTrace tr = fidelity_trace(make(two_spin_spec(), ProtocolKind::kRa));
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    EXPECT_GE(tr.F_tilde[i], 1 - 1e-3) << tr.t[i];
    EXPECT_LE(tr.F_tilde[i], 1 + 1e-9);
  }
  EXPECT_NEAR(tr.F_tilde.back(), tr.F.back(), 1e-6);
  EXPECT_GE(tr.F.back(), 0.999);
}

TEST(FidelityTrace, ExactCdIsPerfectOnSmallSystems) {
  for (double tau : {0.1, 1.0, 10.0})
    for (const ModelSpec& s :
         {two_spin_spec(), chain_spec(4), random_instance(ModelKind::kQubo, 3, 1),
          random_instance(ModelKind::kQubo, 4, 2),
          random_instance(ModelKind::kLhz, 3, 3)}) {
      TraceOptions o;
      o.samples = 21;
      o.max_refinements = 3;
      const FidelityTrace tr = fidelity_trace(make(s, ProtocolKind::kExactCd, tau), o);
      for (double f : tr.F) EXPECT_GE(f, 1 - 1e-6) << to_string(s.kind) << " " << tau;
    }
}

TEST(FidelityTrace, ExactCdRefusesLargeSystems) {
  EXPECT_THROW(fidelity_trace(make(chain_spec(9), ProtocolKind::kExactCd)),
               CapacityError);
}

TEST(FidelityTrace, AllProtocolsStartInTheGroundState) {
  TraceOptions o;
  o.samples = 11;
  for (const ModelSpec& s : {chain_spec(6), random_instance(ModelKind::kLhz, 4, 4)})
    for (auto k : {ProtocolKind::kUa, ProtocolKind::kLocalCd, ProtocolKind::kRa}) {
      const FidelityTrace tr = fidelity_trace(make(s, k), o);
      EXPECT_NEAR(tr.F.front(), 1.0, 1e-9);
      EXPECT_NEAR(tr.F_tilde.front(), 1.0, 1e-9);
      EXPECT_NEAR(tr.F_tilde.back(), tr.F.back(), 1e-6);
      for (std::size_t i = 0; i < tr.F.size(); ++i) {
        EXPECT_GE(tr.F[i], 0.0);
        EXPECT_LE(tr.F[i], 1 + 1e-9);
        EXPECT_LE(tr.F_tilde[i], 1 + 1e-9);
      }
    }
}

TEST(FidelityTrace, RefinementDoublesStepsOnDrift) {
  const Protocol p = make(two_spin_spec(), ProtocolKind::kUa, 4.0);
  const StateVector psi0 =
      ground_space(p.model().hamiltonian(p.fields(0.0))).basis.col(0);
  EvolveOptions coarse, fine;
  coarse.steps = 100;
  fine.steps = 200;
  coarse.norm_tol = fine.norm_tol = 1.0;
  const double d1 = evolve(p, psi0, coarse).max_norm_drift;
  const double d2 = evolve(p, psi0, fine).max_norm_drift;
  ASSERT_GT(d1, d2);
  TraceOptions o;
  o.samples = 5;
  o.evolve.steps = 100;
  o.evolve.norm_tol = std::sqrt(d1 * d2);
  EXPECT_THROW(fidelity_trace(p, o), NumericalError);
  o.max_refinements = 1;
  const FidelityTrace tr = fidelity_trace(p, o);
  EXPECT_EQ(tr.steps, 200);
  EXPECT_EQ(tr.t.size(), 5u);
  EXPECT_NEAR(tr.t.back(), 4.0, 1e-12);
}

TEST(FidelityTrace, CsvHeader) {
  TraceOptions o;
  o.samples = 3;
  std::ostringstream out;
  write_fidelity_csv(out, fidelity_trace(make(two_spin_spec(), ProtocolKind::kUa), o));
  const std::string s = out.str();
  EXPECT_EQ(s.substr(0, s.find('\n')), "t,lambda,F,F_tilde");
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 4);
}

}  // namespace
}  // namespace rotcd
