// Copyright 2026 The loqsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "loqsim/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace loqsim {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return result;
}

double factorial(int n) {
  double result = 1.0;
  for (int i = 2; i <= n; ++i) result *= i;
  return result;
}

namespace {

void fill_basis(int modes, int photons, Occupation& prefix, std::vector<Occupation>& out) {
  if (modes == 1) {
    prefix.push_back(photons);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int k = photons; k >= 0; --k) {
    prefix.push_back(k);
    fill_basis(modes - 1, photons - k, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Occupation> fock_basis(int modes, int photons) {
  if (modes < 1) throw std::invalid_argument("fock_basis: need at least one mode");
  if (photons < 0) throw std::invalid_argument("fock_basis: negative photon number");
  std::vector<Occupation> out;
  out.reserve(binomial(modes + photons - 1, photons));
  Occupation prefix;
  prefix.reserve(modes);
  fill_basis(modes, photons, prefix, out);
  return out;
}

std::size_t fock_index(const std::vector<Occupation>& basis, const Occupation& occ) {
  // Basis is in descending lexicographic order.
  auto it = std::lower_bound(basis.begin(), basis.end(), occ,
                             [](const Occupation& a, const Occupation& b) { return a > b; });
  if (it == basis.end() || *it != occ) {
    throw std::invalid_argument("fock_index: occupation not in basis");
  }
  return static_cast<std::size_t>(it - basis.begin());
}

Complex permanent(const Eigen::MatrixXcd& m) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n) throw std::invalid_argument("permanent: matrix must be square");
  switch (n) {
    case 0:
      return Complex(1.0);
    case 1:
      return m(0, 0);
    case 2:
      return m(0, 0) * m(1, 1) + m(0, 1) * m(1, 0);
    case 3:
      return m(0, 0) * (m(1, 1) * m(2, 2) + m(1, 2) * m(2, 1)) +
             m(0, 1) * (m(1, 0) * m(2, 2) + m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) + m(1, 1) * m(2, 0));
    default:
      break;
  }
  // Ryser with Gray-code subset updates over column sets.
  std::vector<Complex> row_sums(static_cast<std::size_t>(n), Complex(0.0));
  Complex total(0.0);
  std::uint64_t gray_prev = 0;
  const std::uint64_t limit = std::uint64_t(1) << n;
  for (std::uint64_t k = 1; k < limit; ++k) {
    const std::uint64_t gray = k ^ (k >> 1);
    const std::uint64_t diff = gray ^ gray_prev;
    const int j = std::countr_zero(diff);
    const double sign = (gray & diff) ? 1.0 : -1.0;
    for (int i = 0; i < n; ++i) row_sums[static_cast<std::size_t>(i)] += sign * m(i, j);
    Complex prod(1.0);
    for (int i = 0; i < n; ++i) prod *= row_sums[static_cast<std::size_t>(i)];
    const int bits = std::popcount(gray);
    total += ((n - bits) % 2 == 0 ? 1.0 : -1.0) * prod;
    gray_prev = gray;
  }
  return total;
}

bool is_unitary(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const Eigen::MatrixXcd delta =
      m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  return delta.cwiseAbs().maxCoeff() <= tol;
}

Eigen::MatrixXcd lift_unitary(const ModeUnitary& u, int photons) {
  if (!is_unitary(u)) throw std::invalid_argument("lift_unitary: mode matrix is not unitary");
  const int modes = static_cast<int>(u.rows());
  const auto basis = fock_basis(modes, photons);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd lifted(dim, dim);

  std::vector<int> rows, cols;
  rows.reserve(static_cast<std::size_t>(photons));
  cols.reserve(static_cast<std::size_t>(photons));
  for (Eigen::Index a = 0; a < dim; ++a) {
    const Occupation& out = basis[static_cast<std::size_t>(a)];
    rows.clear();
    double out_fact = 1.0;
    for (int i = 0; i < modes; ++i) {
      out_fact *= factorial(out[static_cast<std::size_t>(i)]);
      for (int r = 0; r < out[static_cast<std::size_t>(i)]; ++r) rows.push_back(i);
    }
    for (Eigen::Index b = 0; b < dim; ++b) {
      const Occupation& in = basis[static_cast<std::size_t>(b)];
      cols.clear();
      double in_fact = 1.0;
      for (int j = 0; j < modes; ++j) {
        in_fact *= factorial(in[static_cast<std::size_t>(j)]);
        for (int c = 0; c < in[static_cast<std::size_t>(j)]; ++c) cols.push_back(j);
      }
      Eigen::MatrixXcd sub(photons, photons);
      for (int r = 0; r < photons; ++r) {
        for (int c = 0; c < photons; ++c) {
          sub(r, c) = u(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
        }
      }
      lifted(a, b) = permanent(sub) / std::sqrt(out_fact * in_fact);
    }
  }
  return lifted;
}

ModeUnitary embed_pair(const Eigen::Matrix2cd& u, int i, int j, int modes) {
  if (i < 0 || j < 0 || i >= modes || j >= modes || i == j) {
    throw std::invalid_argument("embed_pair: mode indices out of range or equal");
  }
  ModeUnitary full = ModeUnitary::Identity(modes, modes);
  full(i, i) = u(0, 0);
  full(i, j) = u(0, 1);
  full(j, i) = u(1, 0);
  full(j, j) = u(1, 1);
  return full;
}

void KetState::add(const Occupation& occ, Complex amp) {
  if (static_cast<int>(occ.size()) != mode_count_) {
    throw std::invalid_argument("KetState::add: occupation has wrong mode count");
  }
  int total = std::accumulate(occ.begin(), occ.end(), 0);
  if (total != photon_count_) {
    throw std::invalid_argument("KetState::add: occupation has wrong photon number");
  }
  amps_[occ] += amp;
}

double KetState::norm_squared() const {
  double total = 0.0;
  for (const auto& [occ, amp] : amps_) total += std::norm(amp);
  return total;
}

void KetState::prune(double eps) {
  for (auto it = amps_.begin(); it != amps_.end();) {
    if (std::abs(it->second) < eps) {
      it = amps_.erase(it);
    } else {
      ++it;
    }
  }
}

KetState& KetState::operator*=(Complex scale) {
  for (auto& [occ, amp] : amps_) amp *= scale;
  return *this;
}

KetState apply_unitary(const KetState& state, const ModeUnitary& u) {
  if (u.rows() != state.mode_count()) {
    throw std::invalid_argument("apply_unitary: mode count mismatch");
  }
  if (state.photon_count() == 0) return state;

  const auto basis = fock_basis(state.mode_count(), state.photon_count());
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::VectorXcd vec = Eigen::VectorXcd::Zero(dim);
  for (const auto& [occ, amp] : state.amplitudes()) {
    vec(static_cast<Eigen::Index>(fock_index(basis, occ))) = amp;
  }
  const Eigen::VectorXcd out = lift_unitary(u, state.photon_count()) * vec;
  KetState result(state.mode_count(), state.photon_count());
  for (Eigen::Index k = 0; k < dim; ++k) {
    if (std::abs(out(k)) >= kAmplitudeEpsilon) {
      result.add(basis[static_cast<std::size_t>(k)], out(k));
    }
  }
  return result;
}

}  // namespace loqsim
