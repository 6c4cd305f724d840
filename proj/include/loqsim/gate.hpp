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

#ifndef LOQSIM_GATE_HPP
#define LOQSIM_GATE_HPP

#include <string>
#include <utility>
#include <vector>

#include "loqsim/elements.hpp"
#include "loqsim/fock.hpp"

namespace loqsim {

// Dual-rail mode pair carrying one qubit: mode for logical |0>, mode for |1>.
struct QubitRails {
  int zero = -1;
  int one = -1;
  bool operator==(const QubitRails&) const = default;
};

// An ordered linear-optical circuit with designated control/target qubit
// rails.  Modes not in the output rails are dump modes: photons landing
// there disqualify a run from coincidence post-selection.
struct Circuit {
  int mode_count = 0;
  std::vector<std::string> labels;
  std::vector<OpticalElement> elements;
  QubitRails control_in, target_in;
  QubitRails control_out, target_out;

  std::vector<int> dump_modes() const;
  bool operator==(const Circuit&) const = default;
};

// Free-space CNOT: six modes (C0, C1, T0, T1 and two vacuum dumps), two 1/2
// splitters forming the target interferometer and three 1/3 splitters, one
// of which couples C1 to the upper target arm.  Post-selected action is
// exactly (1/3) * CNOT.
Circuit build_conceptual_cnot();

// Polarization-encoded equivalent: four rails x {H, V}, target Hadamard
// waveplates at 22.5 degrees, two calcite polarizing-splitter cascades and a
// single wide HWP at theta_third acting across all rails.  phi_c_rad is the
// control-arm phase compensator (0 = tuned).
Circuit build_experimental_cnot(double theta_third_deg = third_splitter_hwp_deg(),
                                double phi_c_rad = 0.0);

// Product of the element unitaries in application order.
ModeUnitary circuit_unitary(const Circuit& circuit);

// Two-photon input state: one photon in the control rails with amplitudes
// (control[0], control[1]), one in the target rails likewise.  Each
// amplitude pair must be normalized to 1e-12.
KetState encode_input(const Circuit& circuit, const Eigen::Vector2cd& control,
                      const Eigen::Vector2cd& target);

// One-photon input in the target rails only (control photon absent).
KetState encode_target_only(const Circuit& circuit, const Eigen::Vector2cd& target);

// Coincidence-basis projection result.  `amplitudes` are the raw
// (unnormalized) coincidence amplitudes over |00>,|01>,|10>,|11>;
// success_probability is their squared norm.  A projection with no
// coincidence support is flagged via defined = false rather than thrown.
struct PostSelected {
  Eigen::Vector4cd amplitudes = Eigen::Vector4cd::Zero();
  double success_probability = 0.0;
  bool defined = false;

  Eigen::Vector4cd normalized() const;
};

// Projects a two-photon output state onto exactly one photon in the control
// output rails and one in the target output rails.
PostSelected post_select(const KetState& state, const Circuit& circuit);

// Single-photon analogue: projects onto one photon in the target output
// rails.  Returns the (unnormalized) rail amplitudes and their squared norm.
std::pair<Eigen::Vector2cd, double> post_select_target_only(const KetState& state,
                                                            const Circuit& circuit);

// Encode, evolve, post-select in one step.
PostSelected run_pure(const Circuit& circuit, const Eigen::Vector2cd& control,
                      const Eigen::Vector2cd& target);

// The post-selected operator on the two-qubit space, columns extracted by
// running the four logical basis inputs.  For the ideal builders this is
// (1/3) * CNOT; 3 * logical_operator(...) is unitary.
Eigen::Matrix4cd logical_operator(const Circuit& circuit);

// Largest entrywise difference between a and b after aligning b's global
// phase to a at a's largest-magnitude entry.
double max_difference_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

enum class BellKind { kPhiPlus, kPhiMinus, kPsiPlus, kPsiMinus };

const char* bell_name(BellKind kind);
BellKind parse_bell_name(const std::string& name);

// The target Bell vector over |00>,|01>,|10>,|11>:
//   phi+- = (|00> +- |11>)/sqrt2,  psi+- = (|01> +- |10>)/sqrt2.
Eigen::Vector4cd bell_vector(BellKind kind);

// The separable (control, target) input the gate turns into that Bell state:
// control in (|0> +- |1>)/sqrt2, target |0> for phi and |1> for psi.  The
// minus-superposition control yields the minus Bell state.
std::pair<Eigen::Vector2cd, Eigen::Vector2cd> bell_input(BellKind kind);

}  // namespace loqsim

#endif  // LOQSIM_GATE_HPP
