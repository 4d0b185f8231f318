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

#include "rotcd/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>

#include "rotcd/errors.hpp"

namespace rotcd {
namespace {

void check_arity(const FieldSet& fields, std::size_t n, const char* what) {
  if (fields.size() != n)
    throw DimensionError(std::string(what) + " expects " + std::to_string(n) +
                         " fields, got " + std::to_string(fields.size()));
}

// <E^p exp(i kappa E)>, p = 0, 1, 2, for E = c0 + sum_m w_m z_m with
// independent uniform signs z_m.
struct Moments {
  std::complex<double> m0, m1, m2;
};

Moments sign_moments(double c0, const std::vector<double>& w, double kappa) {
  using C = std::complex<double>;
  C t0 = 1.0, t1 = 0.0, t2 = 0.0;
  for (double x : w) {
    const double c = std::cos(kappa * x);
    const C s{0.0, std::sin(kappa * x)};
    const C n2 = t2 * c + 2.0 * t1 * x * s + t0 * x * x * c;
    const C n1 = t1 * c + t0 * x * s;
    t0 *= c;
    t1 = n1;
    t2 = n2;
  }
  const C e = std::polar(1.0, kappa * c0);
  return {e * t0, e * (t1 + c0 * t0), e * (t2 + 2.0 * c0 * t1 + c0 * c0 * t0)};
}

// x^k with x^k := 0 for k < 0 (such terms always carry a zero multiplier).
double ipow(double x, int k) { return k < 0 ? 0.0 : std::pow(x, k); }

int gf2_rank(std::vector<std::uint64_t> rows) {
  int rank = 0;
  for (int bit = 0; bit < 64; ++bit) {
    const std::uint64_t b = std::uint64_t{1} << bit;
    auto pivot = std::find_if(rows.begin() + rank, rows.end(),
                              [b](std::uint64_t r) { return r & b; });
    if (pivot == rows.end()) continue;
    std::iter_swap(rows.begin() + rank, pivot);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (static_cast<int>(r) != rank && (rows[r] & b)) rows[r] ^= rows[rank];
    ++rank;
  }
  return rank;
}

}  // namespace

double action_two_level(const FieldSet& fields, double beta, double gamma) {
  check_arity(fields, 2, "two-level action");
  const double h = fields[0].value, dh = fields[0].rate;
  const double J = fields[1].value, dJ = fields[1].rate;
  const double axx = ((beta + J) * std::cos(4.0 * gamma) - J) / 2.0;
  const double axy = (beta + J) / 2.0 * std::sin(4.0 * gamma);
  const double u = dJ + 8.0 * h * axy;
  const double w = 2.0 * J * axy - dh;
  return 6.0 * dJ * dJ + 2.0 * u * u + 128.0 * h * h * axx * axx +
         8.0 * w * w;
}

double two_level_mixing_rate(const FieldSet& fields) {
  check_arity(fields, 2, "two-level mixing rate");
  const double h = fields[0].value, dh = fields[0].rate;
  const double J = fields[1].value, dJ = fields[1].rate;
  const double den = 4.0 * h * h + J * J;
  if (den == 0.0) throw DomainError("two-level gap closes: h = J = 0");
  return (dJ * h - J * dh) / den;
}

RaParams two_level_optimum(const FieldSet& fields, TwoLevelBranch branch) {
  const double rate = two_level_mixing_rate(fields);
  const double J = fields[1].value;
  if (J == 0.0 && rate == 0.0)
    throw DomainError("optimal angle undefined when J and the rate vanish");
  const double r = std::hypot(J, rate);
  RaParams p;
  if (branch == TwoLevelBranch::kContinuous && J != 0.0) {
    p.gamma = -0.25 * std::atan(rate / J);
    p.beta = std::copysign(r, J) - J;
  } else {
    p.gamma = 0.25 * std::atan2(rate == 0.0 ? 0.0 : -rate, J);
    p.beta = r - J;
  }
  return p;
}

double action_chain(const FieldSet& fields, double beta, double gamma,
                    double phi) {
  check_arity(fields, 3, "chain action");
  const double J = fields[0].value, dJ = fields[0].rate;
  const double h = fields[1].value, dh = fields[1].rate;
  const double b = fields[2].value, db = fields[2].rate;
  const double c = (h + beta) / 2.0;
  const double c4 = std::cos(4.0 * gamma), s4 = std::sin(4.0 * gamma);
  const double c2 = std::cos(2.0 * phi), s2 = std::sin(2.0 * phi);

  const double ax = h - c * c2 * (c4 + 1.0);
  const double ay = -c * s2 * (c4 + 1.0);
  const double axz = c * s2 * s4;
  const double ayz = -c * c2 * s4;
  const double azxz = -c * c2 * (c4 - 1.0);
  const double azyz = -c * s2 * (c4 - 1.0);

  const double J2 = J * J, h2 = h * h, b2 = b * b;
  double s = dJ * dJ + db * db + dh * dh;
  s += 32.0 * J * axz * azxz * b;
  s += ax * ax * (8.0 * J2 + 4.0 * b2);
  s += ax * (16.0 * J2 * azxz + 32.0 * J * axz * b);
  s += axz * axz * (32.0 * J2 + 8.0 * b2 + 8.0 * h2);
  s += ay * ay * (8.0 * J2 + 4.0 * b2 + 4.0 * h2);
  s += ay * (16.0 * J2 * azyz + 32.0 * J * ayz * b - 4.0 * b * dh +
             4.0 * db * h);
  s += ayz * ayz * (32.0 * J2 + 8.0 * b2 + 32.0 * h2);
  s += ayz * (32.0 * J * azyz * b - 8.0 * J * dh + 8.0 * dJ * h);
  s += azxz * azxz * (8.0 * J2 + 4.0 * b2 + 8.0 * h2);
  s += azyz * azyz * (8.0 * J2 + 4.0 * b2 + 12.0 * h2);
  return s;
}

double action_qubo(const Eigen::MatrixXd& J, const FieldSet& fields,
                   double beta, double gamma) {
  check_arity(fields, 2, "QUBO action");
  const Eigen::Index n = J.rows() - 1;
  if (n < 1 || J.cols() != J.rows())
    throw DimensionError("QUBO coupling matrix must be (N+1) x (N+1)");
  if ((J - J.transpose()).cwiseAbs().maxCoeff() != 0.0)
    throw DomainError("QUBO coupling matrix must be symmetric");
  const double A = fields[0].value, dA = fields[0].rate;
  const double B = fields[1].value, dB = fields[1].rate;
  const double bt = B + beta;

  double s = 0.5 * dA * dA * J.squaredNorm() + static_cast<double>(n) * dB * dB;
  std::vector<double> w;
  w.reserve(n);
  for (Eigen::Index j = 1; j <= n; ++j) {
    w.clear();
    for (Eigen::Index m = 1; m <= n; ++m)
      if (m != j) w.push_back(J(j, m));
    const double c0 = J(j, 0);
    const Moments half = sign_moments(c0, w, 2.0 * gamma);
    const Moments full = sign_moments(c0, w, 4.0 * gamma);
    double e2 = c0 * c0;
    for (double x : w) e2 += x * x;
    s += 4.0 * bt * (dB * A - dA * B) * half.m1.imag() +
         4.0 * A * A * (B * B + bt * bt) * e2 -
         8.0 * A * A * B * bt * half.m2.real() +
         2.0 * B * B * bt * bt * (1.0 - full.m0.real());
  }

  const double pair_scale = 4.0 * B * B * bt * bt;
  if (pair_scale != 0.0) {
    for (Eigen::Index j = 1; j <= n; ++j) {
      for (Eigen::Index k = j + 1; k <= n; ++k) {
        const double sj = std::sin(2.0 * gamma * J(j, k));
        if (sj == 0.0) continue;
        double plus = 1.0, minus = 1.0;
        for (Eigen::Index m = 1; m <= n; ++m) {
          if (m == j || m == k) continue;
          plus *= std::cos(2.0 * gamma * (J(j, m) + J(k, m)));
          minus *= std::cos(2.0 * gamma * (J(j, m) - J(k, m)));
        }
        const double gp = std::cos(2.0 * gamma * (J(j, 0) + J(k, 0))) * plus;
        const double gm = std::cos(2.0 * gamma * (J(j, 0) - J(k, 0))) * minus;
        s += pair_scale * sj * sj * (2.0 + 2.0 * gp + 2.0 * gm);
      }
    }
  }
  return s;
}

int LhzCounts::shared(int mu, int nu) const {
  for (const auto& p : pairs)
    if ((p.mu == mu && p.nu == nu) || (p.mu == nu && p.nu == mu))
      return p.shared;
  return 0;
}

LhzCounts lhz_counts(const std::vector<std::vector<int>>& constraints,
                     int n_qubits) {
  if (n_qubits < 1 || n_qubits > 64)
    throw CapacityError("LHZ counts support 1..64 physical qubits");
  LhzCounts out;
  out.n_qubits = n_qubits;
  out.total = static_cast<int>(constraints.size());
  out.per_site.assign(n_qubits, 0);
  std::vector<std::uint64_t> masks;
  std::vector<std::vector<int>> touching(n_qubits);
  std::map<std::pair<int, int>, int> shared;
  for (std::size_t l = 0; l < constraints.size(); ++l) {
    std::uint64_t mask = 0;
    for (int q : constraints[l]) {
      if (q < 0 || q >= n_qubits)
        throw RangeError("constraint member " + std::to_string(q) +
                         " outside [0, " + std::to_string(n_qubits) + ")");
      const std::uint64_t bit = std::uint64_t{1} << q;
      if (mask & bit) throw DomainError("constraint lists a qubit twice");
      mask |= bit;
    }
    masks.push_back(mask);
    const auto& c = constraints[l];
    for (std::size_t a = 0; a < c.size(); ++a) {
      ++out.per_site[c[a]];
      touching[c[a]].push_back(static_cast<int>(l));
      for (std::size_t b = a + 1; b < c.size(); ++b)
        ++shared[{std::min(c[a], c[b]), std::max(c[a], c[b])}];
    }
  }
  for (const auto& [key, count] : shared)
    out.pairs.push_back({key.first, key.second, count});

  auto independent = [&](std::vector<int> sites) {
    std::vector<std::uint64_t> rows;
    std::vector<int> seen;
    for (int q : sites) {
      rows.push_back(std::uint64_t{1} << q);
      for (int l : touching[q]) {
        if (std::find(seen.begin(), seen.end(), l) != seen.end()) continue;
        seen.push_back(l);
        rows.push_back(masks[l]);
      }
    }
    return gf2_rank(rows) == static_cast<int>(rows.size());
  };
  for (int q = 0; q < n_qubits && out.independent; ++q)
    out.independent = independent({q});
  for (const auto& p : out.pairs) {
    if (!out.independent) break;
    out.independent = independent({p.mu, p.nu});
  }
  return out;
}

double action_lhz(const LhzCounts& counts, const std::vector<double>& J,
                  const FieldSet& fields, double beta, double gamma,
                  double phi) {
  check_arity(fields, 3, "LHZ action");
  const int n = counts.n_qubits;
  if (static_cast<int>(J.size()) != n ||
      static_cast<int>(counts.per_site.size()) != n)
    throw DimensionError("LHZ couplings and counts disagree on qubit count");
  if (!counts.independent)
    throw DomainError(
        "LHZ closed form needs GF(2)-independent local constraints");
  const double A = fields[0].value, dA = fields[0].rate;
  const double B = fields[1].value, dB = fields[1].rate;
  const double C = fields[2].value, dC = fields[2].rate;
  const double bt = B + beta;
  const double th = 2.0 * phi;
  const double c = std::cos(th), s = std::sin(th), cc = std::cos(2.0 * th);

  double sum_j2 = 0.0;
  for (double x : J) sum_j2 += x * x;
  double out = dA * dA * sum_j2 + dC * dC * counts.total +
               static_cast<double>(n) * dB * dB;
  for (int m = 0; m < n; ++m) {
    const double j = J[m];
    const int L = counts.per_site[m];
    const double sj = std::sin(2.0 * gamma * j), cj = std::cos(2.0 * gamma * j);
    const double cL = ipow(c, L), cL1 = ipow(c, L - 1), cL2 = ipow(c, L - 2);
    out += 4.0 * bt * (dB * A - dA * B) * j * sj * cL;
    out += 4.0 * bt * (dB * C - dC * B) * L * cj * s * cL1;
    out += 4.0 * (B * B + bt * bt) * (A * A * j * j + C * C * L);
    out -= 8.0 * B * bt *
           (cj * (A * A * j * j * cL +
                  C * C * (L * cL - L * (L - 1.0) * s * s * cL2)) -
            2.0 * A * C * j * L * sj * s * cL1);
    out += 2.0 * B * B * bt * bt *
           (1.0 - std::cos(4.0 * gamma * j) * ipow(cc, L));
  }
  const double pair_scale = 4.0 * B * B * bt * bt;
  for (const auto& p : counts.pairs) {
    const int K = p.shared;
    const int e = counts.per_site[p.mu] + counts.per_site[p.nu] - 2 * K;
    out += pair_scale * (1.0 - ipow(cc, K)) *
           (1.0 + 2.0 * std::cos(2.0 * gamma * J[p.mu]) *
                      std::cos(2.0 * gamma * J[p.nu]) * ipow(c, e));
  }
  return out;
}

TwoOperatorCd::TwoOperatorCd(SpinOperator h_a, SpinOperator h_b) {
  aa_ = trace_product(h_a, h_a).real();
  ab_ = trace_product(h_a, h_b).real();
  bb_ = trace_product(h_b, h_b).real();
  const SpinOperator c = Complex{0.0, 1.0} * commutator(h_a, h_b);
  weight_ = trace_product(c, c).real();
}

double TwoOperatorCd::action(double a0, double b0, double da0, double db0,
                             double alpha_a, double alpha_b) const {
  const double d = a0 * alpha_b - b0 * alpha_a;
  return da0 * da0 * aa_ + 2.0 * da0 * db0 * ab_ + db0 * db0 * bb_ +
         weight_ * d * d;
}

double action_normalization(const Model& model) {
  const double dim = std::ldexp(1.0, model.n_qubits());
  switch (model.kind()) {
    case ModelKind::kTwoSpin: return 1.0;
    case ModelKind::kChain: return 1.0 / (model.n_qubits() * dim);
    case ModelKind::kQubo:
    case ModelKind::kLhz: return 1.0 / dim;
  }
  return 1.0;
}

ActionEvaluator::ActionEvaluator(std::shared_ptr<const Model> model,
                                 ActionBackend backend)
    : model_(std::move(model)), backend_(backend),
      norm_(action_normalization(*model_)) {
  if (backend_ != ActionBackend::kClosedForm) return;
  if (model_->kind() == ModelKind::kChain && model_->n_qubits() < 4)
    throw DomainError("chain closed form needs N >= 4");
  if (model_->kind() == ModelKind::kLhz) {
    auto counts = std::make_shared<LhzCounts>(
        lhz_counts(model_->spec().constraints, model_->n_qubits()));
    if (!counts->independent)
      throw DomainError(
          "LHZ closed form needs GF(2)-independent local constraints");
    lhz_ = std::move(counts);
  }
}

double ActionEvaluator::operator()(const FieldSet& fields,
                                   const RaParams& p) const {
  if (backend_ == ActionBackend::kOracle)
    return norm_ * action_oracle(GaugeContext(*model_, fields), p);
  const double phi = p.phi.value_or(0.0);
  switch (model_->kind()) {
    case ModelKind::kTwoSpin:
      return action_two_level(fields, p.beta, p.gamma);
    case ModelKind::kChain:
      return action_chain(fields, p.beta, p.gamma, phi);
    case ModelKind::kQubo:
      return action_qubo(model_->spec().qubo_couplings, fields, p.beta,
                         p.gamma);
    case ModelKind::kLhz:
      return action_lhz(*lhz_, model_->spec().lhz_couplings, fields, p.beta,
                        p.gamma, phi);
  }
  return 0.0;
}

}  // namespace rotcd
