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

#include "loqsim/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace loqsim {

bool is_valid_density(const DensityMatrix& rho, double tol) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(rho.trace().real() - 1.0) > tol || std::abs(rho.trace().imag()) > tol) {
    return false;
  }
  Eigen::SelfAdjointEigenSolver<DensityMatrix> solver(rho);
  return solver.eigenvalues().minCoeff() >= -tol;
}

MixedResult run_with_mismatch(const Circuit& circuit, const Eigen::Vector2cd& control,
                              const Eigen::Vector2cd& target, double xi) {
  if (!(xi >= 0.0 && xi <= 1.0)) {
    throw std::invalid_argument("run_with_mismatch: xi must lie in [0, 1]");
  }
  const int m = circuit.mode_count;
  const int doubled = 2 * m;

  // Same circuit on each wavepacket sector; sector b modes are offset by m.
  const ModeUnitary u = circuit_unitary(circuit);
  ModeUnitary w = ModeUnitary::Zero(doubled, doubled);
  w.topLeftCorner(m, m) = u;
  w.bottomRightCorner(m, m) = u;

  KetState state(doubled, 2);
  const int c_modes[2] = {circuit.control_in.zero, circuit.control_in.one};
  const int t_modes[2] = {circuit.target_in.zero, circuit.target_in.one};
  const double a_weight = std::sqrt(xi);
  const double b_weight = std::sqrt(1.0 - xi);
  for (int i = 0; i < 2; ++i) {
    if (control(i) == Complex(0.0)) continue;
    for (int j = 0; j < 2; ++j) {
      if (target(j) == Complex(0.0)) continue;
      for (int sector = 0; sector < 2; ++sector) {
        const double weight = sector == 0 ? a_weight : b_weight;
        if (weight == 0.0) continue;
        Occupation occ(static_cast<std::size_t>(doubled), 0);
        occ[static_cast<std::size_t>(c_modes[i])] += 1;
        occ[static_cast<std::size_t>(t_modes[j] + sector * m)] += 1;
        state.add(occ, control(i) * target(j) * weight);
      }
    }
  }

  const KetState out = apply_unitary(state, w);

  // Coincidence amplitudes indexed by logical outcome and by which sector
  // each detected photon carries; the sector pair is the traced-out
  // environment label.
  Eigen::Vector4cd amps[2][2];
  for (auto& row : amps) {
    for (auto& cell : row) cell = Eigen::Vector4cd::Zero();
  }
  const int c_out[2] = {circuit.control_out.zero, circuit.control_out.one};
  const int t_out[2] = {circuit.target_out.zero, circuit.target_out.one};

  MixedResult result;
  for (const auto& [occ, amp] : out.amplitudes()) {
    int c_idx = -1, t_idx = -1, c_sector = -1, t_sector = -1, c_total = 0, t_total = 0;
    for (int sector = 0; sector < 2; ++sector) {
      for (int k = 0; k < 2; ++k) {
        const int nc = occ[static_cast<std::size_t>(c_out[k] + sector * m)];
        if (nc > 0) {
          c_total += nc;
          c_idx = k;
          c_sector = sector;
        }
        const int nt = occ[static_cast<std::size_t>(t_out[k] + sector * m)];
        if (nt > 0) {
          t_total += nt;
          t_idx = k;
          t_sector = sector;
        }
      }
    }
    if (c_total != 1 || t_total != 1) continue;
    amps[c_sector][t_sector](2 * c_idx + t_idx) += amp;
  }

  DensityMatrix rho = DensityMatrix::Zero();
  double prob = 0.0;
  for (const auto& row : amps) {
    for (const Eigen::Vector4cd& v : row) {
      rho += v * v.adjoint();
      prob += v.squaredNorm();
    }
  }
  result.success_probability = prob;
  result.defined = prob > 0.0;
  if (result.defined) result.rho = rho / prob;
  return result;
}

TruthTableResult truth_table_full(const Circuit& circuit, double xi) {
  TruthTableResult result;
  const Eigen::Vector2cd basis[2] = {Eigen::Vector2cd(1.0, 0.0), Eigen::Vector2cd(0.0, 1.0)};
  for (int c = 0; c < 2; ++c) {
    for (int t = 0; t < 2; ++t) {
      const MixedResult run = run_with_mismatch(circuit, basis[c], basis[t], xi);
      if (!run.defined) {
        throw std::runtime_error("truth_table: logical input has no coincidence support");
      }
      const int row = 2 * c + t;
      for (int out = 0; out < 4; ++out) {
        result.table(row, out) = run.rho(out, out).real();
      }
      result.success_probability(row) = run.success_probability;
    }
  }
  return result;
}

Eigen::Matrix4d truth_table(const Circuit& circuit, double xi) {
  return truth_table_full(circuit, xi).table;
}

double calibrate_overlap(const Circuit& circuit, double target_flip_probability) {
  const Eigen::Vector2cd one(0.0, 1.0), zero(1.0, 0.0);
  const auto flip_probability = [&](double xi) {
    const MixedResult run = run_with_mismatch(circuit, one, zero, xi);
    if (!run.defined) {
      throw std::runtime_error("calibrate_overlap: |10> input has no coincidence support");
    }
    return run.rho(3, 3).real();
  };

  const double low = flip_probability(0.0);
  if (!(target_flip_probability > low && target_flip_probability <= 1.0)) {
    throw std::invalid_argument(
        "calibrate_overlap: target flip probability outside the attainable range");
  }

  double lo = 0.0, hi = 1.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double p = flip_probability(mid);
    if (std::abs(p - target_flip_probability) <= 1e-9) return mid;
    if (p < target_flip_probability) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace loqsim
