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

#include "loqsim/gate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace loqsim {

namespace {

void check_qubit_amplitudes(const Eigen::Vector2cd& amps, const char* what) {
  const double norm = std::norm(amps(0)) + std::norm(amps(1));
  if (std::abs(norm - 1.0) > 1e-12) {
    throw std::invalid_argument(std::string(what) + ": qubit amplitudes must be normalized");
  }
}

Occupation two_photon_occupation(int modes, int a, int b) {
  Occupation occ(static_cast<std::size_t>(modes), 0);
  occ[static_cast<std::size_t>(a)] += 1;
  occ[static_cast<std::size_t>(b)] += 1;
  return occ;
}

}  // namespace

std::vector<int> Circuit::dump_modes() const {
  std::vector<int> dumps;
  for (int m = 0; m < mode_count; ++m) {
    if (m != control_out.zero && m != control_out.one && m != target_out.zero &&
        m != target_out.one) {
      dumps.push_back(m);
    }
  }
  return dumps;
}

Circuit build_conceptual_cnot() {
  constexpr double kThird = 1.0 / 3.0;
  Circuit c;
  c.mode_count = 6;
  c.labels = {"C0", "C1", "T0", "T1", "dump1", "dump2"};
  // Target interferometer: split T0/T1, couple the upper arm to C1 on the
  // central 1/3 splitter, recombine.  C0 and the lower arm each meet a
  // vacuum mode on their own 1/3 splitter, oriented so both pick up the
  // reflection sign that keeps the interferometer balanced.
  c.elements = {
      OpticalElement::beam_splitter(2, 3, 0.5),
      OpticalElement::beam_splitter(1, 2, kThird),
      OpticalElement::beam_splitter(4, 0, kThird),
      OpticalElement::beam_splitter(5, 3, kThird),
      OpticalElement::beam_splitter(2, 3, 0.5),
  };
  c.control_in = c.control_out = {0, 1};
  c.target_in = c.target_out = {2, 3};
  return c;
}

Circuit build_experimental_cnot(double theta_third_deg, double phi_c_rad) {
  Circuit c;
  c.mode_count = 8;
  // Rails top to bottom: upper dump, control, target, lower dump; each rail
  // carries (H, V) with H encoding logical 0.
  c.labels = {"dU:H", "dU:V", "c:H", "c:V", "t:H", "t:V", "dL:H", "dL:V"};
  c.elements = {
      // Target input Hadamard.
      OpticalElement::half_wave(4, 5, 22.5),
      // First calcite: V components walk one rail down (target first, so the
      // displaced control V lands on the emptied shared rail).
      OpticalElement::polarizing_bs(4, 5, 6, 7),
      OpticalElement::polarizing_bs(2, 3, 4, 5),
      // Path phase of the lower interferometer arm; fixed by the alignment
      // that makes the recombined target interferometer balanced.
      OpticalElement::phase(7, std::numbers::pi),
      // Control-arm compensator (tilted plate), 0 when tuned.
      OpticalElement::phase(5, phi_c_rad),
      // One wide plate realizes all three 1/3 splitters.
      OpticalElement::half_wave(2, 3, theta_third_deg),
      OpticalElement::half_wave(4, 5, theta_third_deg),
      OpticalElement::half_wave(6, 7, theta_third_deg),
      // Second calcite: V components walk one rail up, closing the
      // interferometer and sending the rotated 2/3 components to dumps.
      OpticalElement::polarizing_bs(0, 1, 2, 3),
      OpticalElement::polarizing_bs(2, 3, 4, 5),
      OpticalElement::polarizing_bs(4, 5, 6, 7),
      // Target output Hadamard.
      OpticalElement::half_wave(4, 5, 22.5),
  };
  c.control_in = c.control_out = {2, 3};
  c.target_in = c.target_out = {4, 5};
  return c;
}

ModeUnitary circuit_unitary(const Circuit& circuit) {
  ModeUnitary u = ModeUnitary::Identity(circuit.mode_count, circuit.mode_count);
  for (const OpticalElement& element : circuit.elements) {
    u = element_unitary(element, circuit.mode_count) * u;
  }
  return u;
}

KetState encode_input(const Circuit& circuit, const Eigen::Vector2cd& control,
                      const Eigen::Vector2cd& target) {
  check_qubit_amplitudes(control, "encode_input(control)");
  check_qubit_amplitudes(target, "encode_input(target)");
  KetState state(circuit.mode_count, 2);
  const int c_modes[2] = {circuit.control_in.zero, circuit.control_in.one};
  const int t_modes[2] = {circuit.target_in.zero, circuit.target_in.one};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Complex amp = control(i) * target(j);
      if (amp != Complex(0.0)) {
        state.add(two_photon_occupation(circuit.mode_count, c_modes[i], t_modes[j]), amp);
      }
    }
  }
  return state;
}

KetState encode_target_only(const Circuit& circuit, const Eigen::Vector2cd& target) {
  check_qubit_amplitudes(target, "encode_target_only");
  KetState state(circuit.mode_count, 1);
  const int t_modes[2] = {circuit.target_in.zero, circuit.target_in.one};
  for (int j = 0; j < 2; ++j) {
    if (target(j) != Complex(0.0)) {
      Occupation occ(static_cast<std::size_t>(circuit.mode_count), 0);
      occ[static_cast<std::size_t>(t_modes[j])] = 1;
      state.add(occ, target(j));
    }
  }
  return state;
}

Eigen::Vector4cd PostSelected::normalized() const {
  if (!defined) throw std::logic_error("PostSelected::normalized: no coincidence support");
  return amplitudes / std::sqrt(success_probability);
}

PostSelected post_select(const KetState& state, const Circuit& circuit) {
  if (state.photon_count() != 2) {
    throw std::invalid_argument("post_select: expected a two-photon state");
  }
  PostSelected result;
  const int c_modes[2] = {circuit.control_out.zero, circuit.control_out.one};
  const int t_modes[2] = {circuit.target_out.zero, circuit.target_out.one};
  for (const auto& [occ, amp] : state.amplitudes()) {
    const int c_total = occ[static_cast<std::size_t>(c_modes[0])] +
                        occ[static_cast<std::size_t>(c_modes[1])];
    const int t_total = occ[static_cast<std::size_t>(t_modes[0])] +
                        occ[static_cast<std::size_t>(t_modes[1])];
    if (c_total != 1 || t_total != 1) continue;
    const int c = occ[static_cast<std::size_t>(c_modes[1])];
    const int t = occ[static_cast<std::size_t>(t_modes[1])];
    result.amplitudes(2 * c + t) += amp;
  }
  result.success_probability = result.amplitudes.squaredNorm();
  result.defined = result.success_probability > 0.0;
  return result;
}

std::pair<Eigen::Vector2cd, double> post_select_target_only(const KetState& state,
                                                            const Circuit& circuit) {
  if (state.photon_count() != 1) {
    throw std::invalid_argument("post_select_target_only: expected a one-photon state");
  }
  Eigen::Vector2cd amps = Eigen::Vector2cd::Zero();
  const int t_modes[2] = {circuit.target_out.zero, circuit.target_out.one};
  for (const auto& [occ, amp] : state.amplitudes()) {
    for (int t = 0; t < 2; ++t) {
      if (occ[static_cast<std::size_t>(t_modes[t])] == 1) amps(t) += amp;
    }
  }
  return {amps, amps.squaredNorm()};
}

PostSelected run_pure(const Circuit& circuit, const Eigen::Vector2cd& control,
                      const Eigen::Vector2cd& target) {
  const KetState out = apply_unitary(encode_input(circuit, control, target),
                                     circuit_unitary(circuit));
  return post_select(out, circuit);
}

Eigen::Matrix4cd logical_operator(const Circuit& circuit) {
  const ModeUnitary u = circuit_unitary(circuit);
  Eigen::Matrix4cd op;
  const Eigen::Vector2cd basis[2] = {Eigen::Vector2cd(1.0, 0.0), Eigen::Vector2cd(0.0, 1.0)};
  for (int c = 0; c < 2; ++c) {
    for (int t = 0; t < 2; ++t) {
      const KetState out = apply_unitary(encode_input(circuit, basis[c], basis[t]), u);
      op.col(2 * c + t) = post_select(out, circuit).amplitudes;
    }
  }
  return op;
}

double max_difference_up_to_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_difference_up_to_phase: shape mismatch");
  }
  Eigen::Index r = 0, c = 0;
  a.cwiseAbs().maxCoeff(&r, &c);
  Complex phase(1.0);
  if (std::abs(a(r, c)) > 0.0 && std::abs(b(r, c)) > 0.0) {
    phase = (a(r, c) / b(r, c));
    phase /= std::abs(phase);
  }
  return (a - phase * b).cwiseAbs().maxCoeff();
}

const char* bell_name(BellKind kind) {
  switch (kind) {
    case BellKind::kPhiPlus:
      return "phi_plus";
    case BellKind::kPhiMinus:
      return "phi_minus";
    case BellKind::kPsiPlus:
      return "psi_plus";
    case BellKind::kPsiMinus:
      return "psi_minus";
  }
  throw std::invalid_argument("unknown bell state");
}

BellKind parse_bell_name(const std::string& name) {
  for (BellKind kind : {BellKind::kPhiPlus, BellKind::kPhiMinus, BellKind::kPsiPlus,
                        BellKind::kPsiMinus}) {
    if (name == bell_name(kind)) return kind;
  }
  throw std::invalid_argument("unknown bell state name: " + name);
}

Eigen::Vector4cd bell_vector(BellKind kind) {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  switch (kind) {
    case BellKind::kPhiPlus:
      v(0) = s;
      v(3) = s;
      break;
    case BellKind::kPhiMinus:
      v(0) = s;
      v(3) = -s;
      break;
    case BellKind::kPsiPlus:
      v(1) = s;
      v(2) = s;
      break;
    case BellKind::kPsiMinus:
      v(1) = s;
      v(2) = -s;
      break;
  }
  return v;
}

std::pair<Eigen::Vector2cd, Eigen::Vector2cd> bell_input(BellKind kind) {
  const double s = 1.0 / std::sqrt(2.0);
  const bool plus = kind == BellKind::kPhiPlus || kind == BellKind::kPsiPlus;
  const bool psi = kind == BellKind::kPsiPlus || kind == BellKind::kPsiMinus;
  const Eigen::Vector2cd control(s, plus ? s : -s);
  const Eigen::Vector2cd target = psi ? Eigen::Vector2cd(0.0, 1.0)
                                      : Eigen::Vector2cd(1.0, 0.0);
  return {control, target};
}

}  // namespace loqsim
