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

#ifndef LOQSIM_ELEMENTS_HPP
#define LOQSIM_ELEMENTS_HPP

#include <array>

#include "loqsim/fock.hpp"

namespace loqsim {

// Half-wave plate optic-axis angle that realizes a one-third reflectivity
// splitter between the two polarizations of a rail: |cos(2*theta)|^2 = 1/3.
double third_splitter_hwp_deg();

// Partially reflective beam splitter on an ordered mode pair.  The second
// mode's reflection carries the pi phase:
//   [[ sqrt(R), sqrt(1-R)], [sqrt(1-R), -sqrt(R)]]
// Throws std::invalid_argument for R outside [0, 1].
Eigen::Matrix2cd bs_unitary(double reflectivity);

// Half-wave plate with optic axis at theta (degrees) acting on (H, V):
//   [[cos 2t, sin 2t], [sin 2t, -cos 2t]]
Eigen::Matrix2cd hwp_unitary(double theta_deg);

// Quarter-wave plate with optic axis at theta (degrees) acting on (H, V):
//   (1/sqrt2) [[1 + i cos 2t, i sin 2t], [i sin 2t, 1 - i cos 2t]]
Eigen::Matrix2cd qwp_unitary(double theta_deg);

// Polarizing beam splitter between two rails: H modes pass through, V modes
// swap rails.  Mode order (iH, iV, jH, jV).
Eigen::Matrix4cd pbs_unitary();

// Single-mode phase shift diag(e^{i phi}) (phi in radians).
Complex phase_factor(double phi_rad);

enum class ElementKind { kBeamSplitter, kHalfWave, kQuarterWave, kPolarizingBs, kPhase };

// One circuit element: a 2-mode plate/splitter, a 4-mode polarizing splitter,
// or a 1-mode phase.  `value` holds reflectivity, the optic-axis angle in
// degrees, or the phase in radians depending on the kind.
struct OpticalElement {
  ElementKind kind;
  std::array<int, 4> modes{-1, -1, -1, -1};
  double value = 0.0;

  static OpticalElement beam_splitter(int i, int j, double reflectivity);
  static OpticalElement half_wave(int i, int j, double theta_deg);
  static OpticalElement quarter_wave(int i, int j, double theta_deg);
  static OpticalElement polarizing_bs(int i_h, int i_v, int j_h, int j_v);
  static OpticalElement phase(int i, double phi_rad);

  int mode_arity() const;
  bool operator==(const OpticalElement& other) const = default;
};

// Expands an element to a unitary over `modes` optical modes.  Throws
// std::invalid_argument for out-of-range or repeated mode indices.
ModeUnitary element_unitary(const OpticalElement& element, int modes);

}  // namespace loqsim

#endif  // LOQSIM_ELEMENTS_HPP
