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

#include "sparse_ground.hpp"

#include <algorithm>
#include <bit>
#include <mutex>

#include <armadillo>

namespace rotcd::detail {
namespace {

std::mutex arpack_mutex;

}  // namespace

std::optional<LowLevels> sparse_low_levels(const SpinOperator& h,
                                           double degeneracy_tol) {
  const auto dim = arma::uword{1} << h.n_qubits();
  for (const auto& [key, w] : h.terms())
    if (w.imag() != 0.0) return std::nullopt;

  arma::umat loc(2, h.size() * dim);
  arma::vec val(h.size() * dim);
  arma::uword k = 0;
  for (const auto& [key, w] : h.terms())
    for (arma::uword c = 0; c < dim; ++c, ++k) {
      loc(0, k) = c ^ key.x;
      loc(1, k) = c;
      val(k) = std::popcount(key.z & c) % 2 ? -w.real() : w.real();
    }
  const arma::sp_mat a(true, loc, val, dim, dim, true, true);

  for (arma::uword nev = 4; nev + 1 < dim; nev *= 2) {
    arma::vec e;
    arma::mat v;
    bool ok;
    {
      std::lock_guard lock(arpack_mutex);
      ok = arma::eigs_sym(e, v, a, nev, "sa");
    }
    if (!ok || e.n_elem != nev) return std::nullopt;
    const arma::uvec order = arma::sort_index(e);
    const double lo = e(order(0));
    arma::uword within = 0;
    while (within < nev && e(order(within)) <= lo + degeneracy_tol) ++within;
    if (within == nev) continue;
    LowLevels out;
    out.energies.resize(static_cast<Eigen::Index>(nev));
    out.vectors.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(nev));
    for (arma::uword j = 0; j < nev; ++j) {
      out.energies(static_cast<Eigen::Index>(j)) = e(order(j));
      out.vectors.col(static_cast<Eigen::Index>(j)) =
          Eigen::Map<const Eigen::VectorXd>(v.colptr(order(j)),
                                            static_cast<Eigen::Index>(dim));
    }
    return out;
  }
  return std::nullopt;
}

}  // namespace rotcd::detail
