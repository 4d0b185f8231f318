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

#include "rotcd/bfgs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rotcd/errors.hpp"

namespace rotcd {
namespace {

struct Counted {
  const Objective& f;
  int calls = 0;
  double operator()(const Eigen::VectorXd& x) {
    ++calls;
    return f(x);
  }
};

Eigen::VectorXd gradient(Counted& f, const Eigen::VectorXd& x, double rel) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = rel * std::max(1.0, std::abs(x(i)));
    probe(i) = x(i) + h;
    const double fp = f(probe);
    probe(i) = x(i) - h;
    const double fm = f(probe);
    probe(i) = x(i);
    g(i) = (fp - fm) / (2.0 * h);
  }
  return g;
}

struct LineResult {
  bool ok = false;
  double alpha = 0.0;
  double f = 0.0;
  Eigen::VectorXd g;
};

class LineSearch {
 public:
  LineSearch(Counted& f, const Eigen::VectorXd& x, const Eigen::VectorXd& p,
             double f0, double d0, const BfgsOptions& o)
      : f_(f), x_(x), p_(p), f0_(f0), d0_(d0), o_(o) {}

  LineResult run(double a0, double a_max) {
    double a_prev = 0.0, f_prev = f0_, d_prev = d0_;
    double a = a0;
    for (int i = 0; i < 40; ++i) {
      const double fa = phi(a);
      if (!std::isfinite(fa) || fa > f0_ + o_.wolfe_c1 * a * d0_ ||
          (i > 0 && fa >= f_prev))
        return zoom(a_prev, f_prev, d_prev, a, fa);
      const double da = dphi(a);
      if (std::abs(da) <= -o_.wolfe_c2 * d0_) return accept(a, fa);
      if (da >= 0.0) return zoom(a, fa, da, a_prev, f_prev);
      if (a >= a_max) return accept(a, fa);
      a_prev = a;
      f_prev = fa;
      d_prev = da;
      a = std::min(2.0 * a, a_max);
    }
    return {};
  }

 private:
  double phi(double a) { return f_(x_ + a * p_); }
  double dphi(double a) {
    last_g_ = gradient(f_, x_ + a * p_, o_.fd_step);
    return last_g_.dot(p_);
  }
  LineResult accept(double a, double fa) {
    return {true, a, fa, last_g_};
  }

  LineResult zoom(double lo, double f_lo, double d_lo, double hi,
                  double f_hi) {
    for (int i = 0; i < 60; ++i) {
      double a = 0.5 * (lo + hi);
      if (std::isfinite(f_hi)) {
        // Minimizer of the quadratic through (lo, f_lo, d_lo) and (hi, f_hi).
        const double w = hi - lo;
        const double curv = f_hi - f_lo - d_lo * w;
        if (curv > 0.0) {
          const double q = lo - d_lo * w * w / (2.0 * curv);
          const double lo_b = std::min(lo, hi) + 0.1 * std::abs(w);
          const double hi_b = std::max(lo, hi) - 0.1 * std::abs(w);
          if (q >= lo_b && q <= hi_b) a = q;
        }
      }
      if (std::abs(hi - lo) <= 1e-14 * std::max(1.0, std::abs(lo))) break;
      const double fa = phi(a);
      if (!std::isfinite(fa) || fa > f0_ + o_.wolfe_c1 * a * d0_ ||
          fa >= f_lo) {
        hi = a;
        f_hi = fa;
        continue;
      }
      const double da = dphi(a);
      if (std::abs(da) <= -o_.wolfe_c2 * d0_) return accept(a, fa);
      if (da * (hi - lo) >= 0.0) {
        hi = lo;
        f_hi = f_lo;
      }
      lo = a;
      f_lo = fa;
      d_lo = da;
    }
    // Sufficient decrease without the curvature condition.
    if (lo > 0.0 && f_lo < f0_) {
      last_g_ = gradient(f_, x_ + lo * p_, o_.fd_step);
      return {true, lo, f_lo, last_g_};
    }
    return {};
  }

  Counted& f_;
  const Eigen::VectorXd& x_;
  const Eigen::VectorXd& p_;
  double f0_, d0_;
  const BfgsOptions& o_;
  Eigen::VectorXd last_g_;
};

}  // namespace

const char* to_string(BfgsStatus status) {
  switch (status) {
    case BfgsStatus::kConverged: return "converged";
    case BfgsStatus::kMaxIterations: return "max-iterations";
    case BfgsStatus::kStalled: return "stalled";
    case BfgsStatus::kNonFinite: return "non-finite";
  }
  return "unknown";
}

Eigen::VectorXd fd_gradient(const Objective& f, const Eigen::VectorXd& x,
                            double rel_step) {
  Counted c{f};
  return gradient(c, x, rel_step);
}

Eigen::MatrixXd fd_hessian(const Objective& f, const Eigen::VectorXd& x,
                           double rel_step) {
  const Eigen::Index n = x.size();
  Eigen::VectorXd h(n);
  for (Eigen::Index i = 0; i < n; ++i)
    h(i) = rel_step * std::max(1.0, std::abs(x(i)));
  const double f0 = f(x);
  Eigen::MatrixXd hess(n, n);
  Eigen::VectorXd y = x;
  for (Eigen::Index i = 0; i < n; ++i) {
    y(i) = x(i) + h(i);
    const double fp = f(y);
    y(i) = x(i) - h(i);
    const double fm = f(y);
    y(i) = x(i);
    hess(i, i) = (fp - 2.0 * f0 + fm) / (h(i) * h(i));
    for (Eigen::Index j = 0; j < i; ++j) {
      double acc = 0.0;
      for (int si : {1, -1})
        for (int sj : {1, -1}) {
          y(i) = x(i) + si * h(i);
          y(j) = x(j) + sj * h(j);
          acc += si * sj * f(y);
        }
      y(i) = x(i);
      y(j) = x(j);
      hess(i, j) = hess(j, i) = acc / (4.0 * h(i) * h(j));
    }
  }
  return hess;
}

BfgsResult bfgs_minimize(const Objective& objective, const Eigen::VectorXd& x0,
                         const BfgsOptions& opts) {
  Counted f{objective};
  BfgsResult r;
  r.x = x0;
  r.f = f(x0);
  if (!std::isfinite(r.f))
    throw NumericalError("objective is not finite at the starting point");
  const Eigen::Index n = x0.size();
  Eigen::VectorXd g = gradient(f, r.x, opts.fd_step);
  if (!g.allFinite()) {
    r.status = BfgsStatus::kNonFinite;
    r.evaluations = f.calls;
    return r;
  }
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  bool fresh = true;
  int stalls = 0;
  r.status = BfgsStatus::kMaxIterations;
  for (r.iterations = 0; r.iterations < opts.max_iter; ++r.iterations) {
    if (g.norm() <= opts.gtol) {
      r.status = BfgsStatus::kConverged;
      break;
    }
    Eigen::VectorXd p = -hinv * g;
    double d0 = p.dot(g);
    if (!(d0 < 0.0)) {
      hinv.setIdentity();
      fresh = true;
      p = -g;
      d0 = p.dot(g);
    }
    const double a_max = opts.max_step > 0.0
                             ? opts.max_step / p.norm()
                             : std::numeric_limits<double>::infinity();
    LineSearch ls(f, r.x, p, r.f, d0, opts);
    LineResult step = ls.run(std::min(1.0, a_max), a_max);
    if (!step.ok || !step.g.allFinite()) {
      if (!fresh) {
        hinv.setIdentity();
        fresh = true;
        continue;
      }
      r.status = step.ok ? BfgsStatus::kNonFinite : BfgsStatus::kStalled;
      break;
    }
    const Eigen::VectorXd s = step.alpha * p;
    const Eigen::VectorXd y = step.g - g;
    const double sy = s.dot(y);
    if (sy > 1e-300) {
      if (fresh) hinv *= sy / y.squaredNorm();
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
      hinv = (I - rho * s * y.transpose()) * hinv *
                 (I - rho * y * s.transpose()) +
             rho * s * s.transpose();
      fresh = false;
    }
    const double decrease = r.f - step.f;
    r.x += s;
    r.f = step.f;
    g = step.g;
    stalls = decrease <= opts.ftol_stall * std::max(1.0, std::abs(r.f))
                 ? stalls + 1
                 : 0;
    if (stalls >= opts.stall_iter) {
      r.status = g.norm() <= opts.gtol ? BfgsStatus::kConverged
                                       : BfgsStatus::kStalled;
      ++r.iterations;
      break;
    }
  }
  r.grad_norm = g.norm();
  r.evaluations = f.calls;
  return r;
}

}  // namespace rotcd
