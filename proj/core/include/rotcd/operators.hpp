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

// Symbolic Pauli-string algebra on up to 64 qubits.
//
// A PauliString is stored as i^phase * X^x_mask * Z^z_mask with all X
// factors ordered before the Z factors on every site, so Y_j is the word
// (x_j = 1, z_j = 1) carrying one factor of i. Site j corresponds to bit j
// of the masks and to bit j of a computational-basis index; bit value 0 is
// the sigma^z = +1 eigenstate.

#pragma once

#include <Eigen/Dense>

#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <initializer_list>
#include <vector>

namespace rotcd {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

inline constexpr int kMaxSymbolicQubits = 64;
// Dense matrices are capped lower than state vectors: one 2^15 x 2^15
// complex matrix would need 16 GiB.
inline constexpr int kDenseMatrixQubitCap = 12;
inline constexpr int kStateVectorQubitCap = 15;
inline constexpr double kPruneThreshold = 1e-14;

class PauliString {
 public:
  explicit PauliString(int n_qubits);
  PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask,
              int phase = 0);

  // Parses a word such as "XIZY"; character k acts on site k.
  static PauliString from_string(std::string_view word);
  static PauliString single(int n_qubits, int site, char axis);

  int n_qubits() const { return n_qubits_; }
  std::uint64_t x_mask() const { return x_mask_; }
  std::uint64_t z_mask() const { return z_mask_; }
  // Power of i multiplying the X-then-Z ordered word, in [0, 4).
  int phase() const { return phase_; }
  Complex phase_factor() const;
  bool is_identity() const { return x_mask_ == 0 && z_mask_ == 0; }

  std::string to_string() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  int n_qubits_;
  std::uint64_t x_mask_ = 0;
  std::uint64_t z_mask_ = 0;
  int phase_ = 0;
};

PauliString pauli_mul(const PauliString& a, const PauliString& b);

struct WordKey {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  friend auto operator<=>(const WordKey&, const WordKey&) = default;
};

// Weighted sum of X-then-Z ordered Pauli words. The weight stored for a word
// multiplies X^x Z^z directly, so a Hermitian operator has real weights on
// words with an even number of Y sites and imaginary weights otherwise.
class SpinOperator {
 public:
  using TermMap = std::map<WordKey, Complex>;

  explicit SpinOperator(int n_qubits);
  SpinOperator(const PauliString& word, Complex weight = 1.0);

  static SpinOperator identity(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  Complex weight(std::uint64_t x_mask, std::uint64_t z_mask) const;

  void add_term(const PauliString& word, Complex weight);

  SpinOperator& operator+=(const SpinOperator& other);
  SpinOperator& operator-=(const SpinOperator& other);
  SpinOperator& operator*=(Complex scale);

  friend SpinOperator operator+(SpinOperator a, const SpinOperator& b) {
    return a += b;
  }
  friend SpinOperator operator-(SpinOperator a, const SpinOperator& b) {
    return a -= b;
  }
  friend SpinOperator operator*(SpinOperator a, Complex s) { return a *= s; }
  friend SpinOperator operator*(Complex s, SpinOperator a) { return a *= s; }
  friend SpinOperator operator*(const SpinOperator& a, const SpinOperator& b);

  SpinOperator adjoint() const;
  bool is_hermitian(double tol = 1e-12) const;
  // True when every word is a product of sigma^z factors.
  bool is_diagonal() const;
  // Largest |weight| difference against another operator.
  double max_abs_difference(const SpinOperator& other) const;

 private:
  void accumulate(WordKey key, Complex weight);
  void prune();

  int n_qubits_;
  TermMap terms_;
};

SpinOperator sigma_x(int n_qubits, int site);
SpinOperator sigma_y(int n_qubits, int site);
SpinOperator sigma_z(int n_qubits, int site);
// Product of sigma^z over the given sites.
SpinOperator z_string(int n_qubits, std::initializer_list<int> sites);
SpinOperator z_string(int n_qubits, const std::vector<int>& sites);

SpinOperator commutator(const SpinOperator& a, const SpinOperator& b);

// Tr(A B) over the full 2^N space, evaluated on matching word pairs only.
Complex trace_product(const SpinOperator& a, const SpinOperator& b);
Complex trace(const SpinOperator& a);

DenseMatrix to_dense(const SpinOperator& a,
                     int max_qubits = kDenseMatrixQubitCap);

// y += A x without forming A.
void apply(const SpinOperator& a, const StateVector& x, StateVector& y);

// Diagonal entries of a diagonal operator, indexed by basis state.
Eigen::VectorXcd diagonal_entries(const SpinOperator& d,
                                  int max_qubits = kStateVectorQubitCap);

enum class DiagPart { kKeep, kDrop };

// For diagonal D and site j, D = D^[j] sigma^z_j + D^[-j] where neither part
// involves site j. kKeep returns D^[j], kDrop returns D^[-j].
SpinOperator diag_component(const SpinOperator& d, int site, DiagPart part);

bool is_hermitian(const DenseMatrix& m, double tol = 1e-12);

}  // namespace rotcd
