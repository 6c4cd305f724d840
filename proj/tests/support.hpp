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

#ifndef LOQSIM_TESTS_SUPPORT_HPP
#define LOQSIM_TESTS_SUPPORT_HPP

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "loqsim/noise.hpp"

namespace loqsim::testing {

// Permanent by brute-force sum over all permutations.  Exponential, so only
// for small matrices; used as an independent check of the production code.
inline Complex permanent_by_permutations(const Eigen::MatrixXcd& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Complex sum = 0.0;
  do {
    Complex term = 1.0;
    for (int i = 0; i < n; ++i) term *= m(i, perm[static_cast<std::size_t>(i)]);
    sum += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

// Two-photon output amplitudes straight from the creation-operator algebra,
// bypassing the permanent machinery.  Expanding a_p^dag a_q^dag in output
// operators gives, for input |1_p 1_q> (p != q):
//   pair (i, j), i != j:  u_ip u_jq + u_iq u_jp
//   doubled mode i:       sqrt2 u_ip u_iq
// and for input |2_p>:
//   pair (i, j), i != j:  sqrt2 u_ip u_jp
//   doubled mode i:       u_ip^2
inline Complex oracle_pair_amplitude(const ModeUnitary& u, int p, int q, int i, int j) {
  const double root2 = std::sqrt(2.0);
  if (p != q) {
    if (i != j) return u(i, p) * u(j, q) + u(i, q) * u(j, p);
    return root2 * u(i, p) * u(i, q);
  }
  if (i != j) return root2 * u(i, p) * u(j, p);
  return u(i, p) * u(i, p);
}

inline ModeUnitary random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

inline Eigen::Vector2cd random_qubit(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::Vector2cd v(Complex(normal(rng), normal(rng)), Complex(normal(rng), normal(rng)));
  return v.normalized();
}

// Random full-rank density matrix (normalized G G^dagger for Gaussian G).
inline DensityMatrix random_density(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::Matrix4cd g;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  }
  const Eigen::Matrix4cd rho = g * g.adjoint();
  return rho / rho.trace().real();
}

// Mixed-run oracle built from first principles rather than the doubled-mode
// evolution: the coincidence output at overlap xi splits into a coherent
// branch (both photons in the same wavepacket sector, weight xi) and two
// orthogonally labeled distinguishable branches where the control-rail and
// target-rail photons came from specific inputs (weight 1 - xi):
//   rho ~ xi F F^dag + (1 - xi) (psi1 psi1^dag + psi2 psi2^dag)
// with F the coherent coincidence amplitudes and psi1/psi2 products of
// single-photon transfer amplitudes.
inline MixedResult oracle_mixed_run(const Circuit& circuit, const Eigen::Vector2cd& control,
                                    const Eigen::Vector2cd& target, double xi) {
  const ModeUnitary u = circuit_unitary(circuit);
  const int m = circuit.mode_count;

  Eigen::VectorXcd control_in = Eigen::VectorXcd::Zero(m);
  control_in(circuit.control_in.zero) = control(0);
  control_in(circuit.control_in.one) = control(1);
  Eigen::VectorXcd target_in = Eigen::VectorXcd::Zero(m);
  target_in(circuit.target_in.zero) = target(0);
  target_in(circuit.target_in.one) = target(1);

  const Eigen::VectorXcd from_control = u * control_in;
  const Eigen::VectorXcd from_target = u * target_in;

  const int c_rails[2] = {circuit.control_out.zero, circuit.control_out.one};
  const int t_rails[2] = {circuit.target_out.zero, circuit.target_out.one};

  const Eigen::Vector4cd coherent = run_pure(circuit, control, target).amplitudes;
  Eigen::Vector4cd straight, swapped;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      straight(2 * a + b) = from_control(c_rails[a]) * from_target(t_rails[b]);
      swapped(2 * a + b) = from_target(c_rails[a]) * from_control(t_rails[b]);
    }
  }

  Eigen::Matrix4cd rho = xi * coherent * coherent.adjoint() +
                         (1.0 - xi) * (straight * straight.adjoint() +
                                       swapped * swapped.adjoint());
  MixedResult result;
  result.success_probability = rho.trace().real();
  if (result.success_probability > 0.0) {
    result.rho = rho / result.success_probability;
    result.defined = true;
  }
  return result;
}

// Werner state: p |psi-><psi-| + (1 - p) I/4.
inline DensityMatrix werner_state(double p) {
  Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
  const double s = 1.0 / std::sqrt(2.0);
  psi(1) = s;
  psi(2) = -s;
  return p * psi * psi.adjoint() + (1.0 - p) * 0.25 * Eigen::Matrix4cd::Identity();
}

}  // namespace loqsim::testing

#endif  // LOQSIM_TESTS_SUPPORT_HPP
