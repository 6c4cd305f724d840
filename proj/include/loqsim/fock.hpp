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

#ifndef LOQSIM_FOCK_HPP
#define LOQSIM_FOCK_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

namespace loqsim {

using Complex = std::complex<double>;
using ModeUnitary = Eigen::MatrixXcd;

// Photon occupation numbers, one entry per optical mode.
using Occupation = std::vector<int>;

// Amplitudes below this magnitude are dropped when states are pruned.
inline constexpr double kAmplitudeEpsilon = 1e-14;

// Tolerance for accepting a mode matrix as unitary.
inline constexpr double kUnitaryTolerance = 1e-10;

std::uint64_t binomial(int n, int k);
double factorial(int n);

// All occupations of `photons` photons over `modes` modes, in descending
// lexicographic order: (n,0,...,0) first, (0,...,0,n) last.  The order is the
// canonical basis order used by lift_unitary and KetState consumers.
std::vector<Occupation> fock_basis(int modes, int photons);

// Index of an occupation within fock_basis(modes, photons) order.
std::size_t fock_index(const std::vector<Occupation>& basis, const Occupation& occ);

// Matrix permanent.  Direct expansion for n <= 3, Ryser's formula with
// Gray-code subset updates for larger matrices.
Complex permanent(const Eigen::MatrixXcd& m);

bool is_unitary(const Eigen::MatrixXcd& m, double tol = kUnitaryTolerance);

// Multi-photon transition matrix of a mode unitary on the n-photon sector,
// ordered like fock_basis(U.rows(), photons):
//   <out|Phi(U)|in> = per(U[out, in]) / sqrt(prod out_i! * prod in_j!)
// where U[out, in] repeats row i out_i times and column j in_j times.
// Throws std::invalid_argument if U is not unitary to kUnitaryTolerance.
Eigen::MatrixXcd lift_unitary(const ModeUnitary& u, int photons);

// Expands a 2x2 mode unitary acting on modes (i, j) to the full mode count.
ModeUnitary embed_pair(const Eigen::Matrix2cd& u, int i, int j, int modes);

// A pure state of a fixed number of photons over a fixed set of modes,
// stored sparsely as occupation -> amplitude.
class KetState {
 public:
  KetState(int mode_count, int photon_count)
      : mode_count_(mode_count), photon_count_(photon_count) {}

  int mode_count() const { return mode_count_; }
  int photon_count() const { return photon_count_; }

  const std::map<Occupation, Complex>& amplitudes() const { return amps_; }

  Complex amplitude(const Occupation& occ) const {
    auto it = amps_.find(occ);
    return it == amps_.end() ? Complex(0.0) : it->second;
  }

  // Adds into the amplitude of `occ`; the occupation must match the state's
  // mode and photon counts.
  void add(const Occupation& occ, Complex amp);

  double norm_squared() const;

  // Drops amplitudes with magnitude below eps.
  void prune(double eps = kAmplitudeEpsilon);

  KetState& operator*=(Complex scale);

 private:
  int mode_count_;
  int photon_count_;
  std::map<Occupation, Complex> amps_;
};

// Applies a mode unitary to a state via lift_unitary on its photon sector.
KetState apply_unitary(const KetState& state, const ModeUnitary& u);

}  // namespace loqsim

#endif  // LOQSIM_FOCK_HPP
