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

#ifndef LOQSIM_NOISE_HPP
#define LOQSIM_NOISE_HPP

#include "loqsim/gate.hpp"

namespace loqsim {

// Two-qubit density matrix over |00>,|01>,|10>,|11>.
using DensityMatrix = Eigen::Matrix4cd;

bool is_valid_density(const DensityMatrix& rho, double tol = 1e-10);

// Post-selected mixed output of a run with partially distinguishable
// photons.  `defined` is false when the coincidence probability is zero.
struct MixedResult {
  DensityMatrix rho = DensityMatrix::Zero();
  double success_probability = 0.0;
  bool defined = false;
};

// Runs the circuit with the target photon split between two internal
// wavepacket sectors: amplitude sqrt(xi) in the control photon's sector and
// sqrt(1-xi) in an orthogonal one.  xi = 1 reproduces the pure run; xi = 0
// makes the photons fully distinguishable.  Every circuit mode is doubled,
// the same mode unitary acts on each sector, and the sector label is traced
// out after coincidence post-selection.
MixedResult run_with_mismatch(const Circuit& circuit, const Eigen::Vector2cd& control,
                              const Eigen::Vector2cd& target, double xi);

// Conditional logical truth table at overlap xi: row = logical input,
// column = logical output, entries = coincidence-normalized probabilities
// (each row sums to 1).
Eigen::Matrix4d truth_table(const Circuit& circuit, double xi);

// Per-input coincidence probabilities alongside the conditional table.
struct TruthTableResult {
  Eigen::Matrix4d table = Eigen::Matrix4d::Zero();
  Eigen::Vector4d success_probability = Eigen::Vector4d::Zero();
};
TruthTableResult truth_table_full(const Circuit& circuit, double xi);

// Finds xi such that the conditional target-flip probability
// P(|11> out | |10> in) matches target_flip_probability to 1e-6, by
// bisection (the flip probability is monotone in xi).  Throws
// std::invalid_argument when the target is outside the attainable range
// (P at xi = 0, 1].
double calibrate_overlap(const Circuit& circuit, double target_flip_probability);

}  // namespace loqsim

#endif  // LOQSIM_NOISE_HPP
