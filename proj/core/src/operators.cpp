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

#include "rotcd/operators.hpp"

#include <bit>
#include <cmath>

#include "rotcd/errors.hpp"

namespace rotcd {
namespace {

int parity(std::uint64_t v) { return std::popcount(v) & 1; }

std::uint64_t site_mask(int n_qubits) {
  return n_qubits == 64 ? ~std::uint64_t{0}
                        : ((std::uint64_t{1} << n_qubits) - 1);
}

void check_qubits(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxSymbolicQubits)
    throw DimensionError("qubit count must lie in [1, 64], got " +
                         std::to_string(n_qubits));
}

void check_same(int a, int b) {
  if (a != b)
    throw DimensionError("operand qubit counts differ: " + std::to_string(a) +
                         " vs " + std::to_string(b));
}

void check_site(int n_qubits, int site) {
  if (site < 0 || site >= n_qubits)
    throw RangeError("site " + std::to_string(site) + " outside [0, " +
                     std::to_string(n_qubits) + ")");
}

const Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

PauliString::PauliString(int n_qubits) : n_qubits_(n_qubits) {
  check_qubits(n_qubits);
}

PauliString::PauliString(int n_qubits, std::uint64_t x_mask,
                         std::uint64_t z_mask, int phase)
    : n_qubits_(n_qubits), x_mask_(x_mask), z_mask_(z_mask),
      phase_(((phase % 4) + 4) % 4) {
  check_qubits(n_qubits);
  const std::uint64_t m = site_mask(n_qubits);
  if ((x_mask & ~m) || (z_mask & ~m))
    throw DimensionError("Pauli masks exceed " + std::to_string(n_qubits) +
                         " qubits");
}

PauliString PauliString::from_string(std::string_view word) {
  const int n = static_cast<int>(word.size());
  check_qubits(n);
  std::uint64_t x = 0, z = 0;
  int phase = 0;
  for (int j = 0; j < n; ++j) {
    const std::uint64_t bit = std::uint64_t{1} << j;
    switch (word[j]) {
      case 'I': case 'i': break;
      case 'X': case 'x': x |= bit; break;
      case 'Z': case 'z': z |= bit; break;
      case 'Y': case 'y': x |= bit; z |= bit; ++phase; break;
      default:
        throw DomainError(std::string("invalid Pauli letter '") + word[j] +
                          "'");
    }
  }
  return PauliString(n, x, z, phase);
}

PauliString PauliString::single(int n_qubits, int site, char axis) {
  check_qubits(n_qubits);
  check_site(n_qubits, site);
  std::string word(n_qubits, 'I');
  word[site] = axis;
  return from_string(word);
}

Complex PauliString::phase_factor() const { return kIPowers[phase_]; }

std::string PauliString::to_string() const {
  // Letters absorb one factor of i per Y, so print the residual phase.
  int residual = phase_ - std::popcount(x_mask_ & z_mask_);
  residual = ((residual % 4) + 4) % 4;
  static const char* prefixes[4] = {"+", "+i", "-", "-i"};
  std::string out = prefixes[residual];
  for (int j = 0; j < n_qubits_; ++j) {
    const bool x = (x_mask_ >> j) & 1, z = (z_mask_ >> j) & 1;
    out += x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
  }
  return out;
}

PauliString pauli_mul(const PauliString& a, const PauliString& b) {
  check_same(a.n_qubits(), b.n_qubits());
  // Z^za X^xb = (-1)^{|za & xb|} X^xb Z^za
  const int sign = parity(a.z_mask() & b.x_mask()) ? 2 : 0;
  return PauliString(a.n_qubits(), a.x_mask() ^ b.x_mask(),
                     a.z_mask() ^ b.z_mask(), a.phase() + b.phase() + sign);
}

SpinOperator::SpinOperator(int n_qubits) : n_qubits_(n_qubits) {
  check_qubits(n_qubits);
}

SpinOperator::SpinOperator(const PauliString& word, Complex weight)
    : n_qubits_(word.n_qubits()) {
  add_term(word, weight);
}

SpinOperator SpinOperator::identity(int n_qubits) {
  return SpinOperator(PauliString(n_qubits), 1.0);
}

Complex SpinOperator::weight(std::uint64_t x_mask,
                             std::uint64_t z_mask) const {
  auto it = terms_.find(WordKey{x_mask, z_mask});
  return it == terms_.end() ? Complex{} : it->second;
}

void SpinOperator::accumulate(WordKey key, Complex weight) {
  auto [it, inserted] = terms_.try_emplace(key, weight);
  if (!inserted) it->second += weight;
  if (std::abs(it->second) < kPruneThreshold) terms_.erase(it);
}

void SpinOperator::add_term(const PauliString& word, Complex weight) {
  check_same(n_qubits_, word.n_qubits());
  accumulate(WordKey{word.x_mask(), word.z_mask()},
             weight * word.phase_factor());
}

void SpinOperator::prune() {
  std::erase_if(terms_, [](const auto& kv) {
    return std::abs(kv.second) < kPruneThreshold;
  });
}

SpinOperator& SpinOperator::operator+=(const SpinOperator& other) {
  check_same(n_qubits_, other.n_qubits_);
  for (const auto& [key, w] : other.terms_) accumulate(key, w);
  return *this;
}

SpinOperator& SpinOperator::operator-=(const SpinOperator& other) {
  check_same(n_qubits_, other.n_qubits_);
  for (const auto& [key, w] : other.terms_) accumulate(key, -w);
  return *this;
}

SpinOperator& SpinOperator::operator*=(Complex scale) {
  for (auto& kv : terms_) kv.second *= scale;
  prune();
  return *this;
}

SpinOperator operator*(const SpinOperator& a, const SpinOperator& b) {
  check_same(a.n_qubits_, b.n_qubits_);
  SpinOperator out(a.n_qubits_);
  for (const auto& [ka, wa] : a.terms_) {
    for (const auto& [kb, wb] : b.terms_) {
      const double s = parity(ka.z & kb.x) ? -1.0 : 1.0;
      auto [it, inserted] =
          out.terms_.try_emplace(WordKey{ka.x ^ kb.x, ka.z ^ kb.z}, 0.0);
      it->second += s * wa * wb;
    }
  }
  out.prune();
  return out;
}

SpinOperator SpinOperator::adjoint() const {
  SpinOperator out(n_qubits_);
  for (const auto& [key, w] : terms_) {
    const double s = parity(key.x & key.z) ? -1.0 : 1.0;
    out.terms_.emplace(key, s * std::conj(w));
  }
  return out;
}

bool SpinOperator::is_hermitian(double tol) const {
  for (const auto& [key, w] : terms_) {
    const double s = parity(key.x & key.z) ? -1.0 : 1.0;
    if (std::abs(w - s * std::conj(w)) > tol) return false;
  }
  return true;
}

bool SpinOperator::is_diagonal() const {
  for (const auto& kv : terms_)
    if (kv.first.x != 0) return false;
  return true;
}

double SpinOperator::max_abs_difference(const SpinOperator& other) const {
  check_same(n_qubits_, other.n_qubits_);
  double worst = 0.0;
  for (const auto& [key, w] : terms_)
    worst = std::max(worst, std::abs(w - other.weight(key.x, key.z)));
  for (const auto& [key, w] : other.terms_)
    if (!terms_.contains(key)) worst = std::max(worst, std::abs(w));
  return worst;
}

SpinOperator sigma_x(int n_qubits, int site) {
  return SpinOperator(PauliString::single(n_qubits, site, 'X'));
}
SpinOperator sigma_y(int n_qubits, int site) {
  return SpinOperator(PauliString::single(n_qubits, site, 'Y'));
}
SpinOperator sigma_z(int n_qubits, int site) {
  return SpinOperator(PauliString::single(n_qubits, site, 'Z'));
}

SpinOperator z_string(int n_qubits, const std::vector<int>& sites) {
  check_qubits(n_qubits);
  std::uint64_t z = 0;
  for (int s : sites) {
    check_site(n_qubits, s);
    z ^= std::uint64_t{1} << s;
  }
  return SpinOperator(PauliString(n_qubits, 0, z));
}

SpinOperator z_string(int n_qubits, std::initializer_list<int> sites) {
  return z_string(n_qubits, std::vector<int>(sites));
}

SpinOperator commutator(const SpinOperator& a, const SpinOperator& b) {
  return a * b - b * a;
}

Complex trace_product(const SpinOperator& a, const SpinOperator& b) {
  check_same(a.n_qubits(), b.n_qubits());
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  Complex acc{};
  for (const auto& [key, w] : small.terms()) {
    const Complex v = large.weight(key.x, key.z);
    if (v == Complex{}) continue;
    acc += (parity(key.x & key.z) ? -1.0 : 1.0) * w * v;
  }
  return std::ldexp(1.0, a.n_qubits()) * acc;
}

Complex trace(const SpinOperator& a) {
  return std::ldexp(1.0, a.n_qubits()) * a.weight(0, 0);
}

DenseMatrix to_dense(const SpinOperator& a, int max_qubits) {
  const int n = a.n_qubits();
  if (n > max_qubits)
    throw CapacityError("dense matrix of " + std::to_string(n) +
                        " qubits exceeds cap of " +
                        std::to_string(max_qubits));
  const Eigen::Index dim = Eigen::Index{1} << n;
  DenseMatrix m = DenseMatrix::Zero(dim, dim);
  for (const auto& [key, w] : a.terms()) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      const auto uc = static_cast<std::uint64_t>(c);
      m(static_cast<Eigen::Index>(uc ^ key.x), c) +=
          parity(key.z & uc) ? -w : w;
    }
  }
  return m;
}

void apply(const SpinOperator& a, const StateVector& x, StateVector& y) {
  const Eigen::Index dim = Eigen::Index{1} << a.n_qubits();
  if (x.size() != dim || y.size() != dim)
    throw DimensionError("state length does not match 2^" +
                         std::to_string(a.n_qubits()));
  for (const auto& [key, w] : a.terms()) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      const auto uc = static_cast<std::uint64_t>(c);
      y(static_cast<Eigen::Index>(uc ^ key.x)) +=
          (parity(key.z & uc) ? -w : w) * x(c);
    }
  }
}

Eigen::VectorXcd diagonal_entries(const SpinOperator& d, int max_qubits) {
  if (!d.is_diagonal())
    throw DomainError("operator has off-diagonal Pauli words");
  const int n = d.n_qubits();
  if (n > max_qubits)
    throw CapacityError("diagonal of " + std::to_string(n) +
                        " qubits exceeds cap of " +
                        std::to_string(max_qubits));
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
  for (const auto& [key, w] : d.terms())
    for (Eigen::Index c = 0; c < dim; ++c)
      out(c) += parity(key.z & static_cast<std::uint64_t>(c)) ? -w : w;
  return out;
}

SpinOperator diag_component(const SpinOperator& d, int site, DiagPart part) {
  if (!d.is_diagonal())
    throw DomainError("diag_component requires a diagonal operator");
  check_site(d.n_qubits(), site);
  const std::uint64_t bit = std::uint64_t{1} << site;
  SpinOperator out(d.n_qubits());
  for (const auto& [key, w] : d.terms()) {
    const bool has = key.z & bit;
    if (part == DiagPart::kKeep && has)
      out.add_term(PauliString(d.n_qubits(), 0, key.z ^ bit), w);
    else if (part == DiagPart::kDrop && !has)
      out.add_term(PauliString(d.n_qubits(), 0, key.z), w);
  }
  return out;
}

bool is_hermitian(const DenseMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace rotcd
