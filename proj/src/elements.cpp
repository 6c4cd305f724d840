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

#include "loqsim/elements.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace loqsim {

namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;
}

double third_splitter_hwp_deg() {
  return 0.5 * std::acos(-1.0 / std::sqrt(3.0)) / kDegToRad;
}

Eigen::Matrix2cd bs_unitary(double reflectivity) {
  if (!(reflectivity >= 0.0 && reflectivity <= 1.0)) {
    throw std::invalid_argument("bs_unitary: reflectivity must lie in [0, 1]");
  }
  const double r = std::sqrt(reflectivity);
  const double t = std::sqrt(1.0 - reflectivity);
  Eigen::Matrix2cd u;
  u << r, t, t, -r;
  return u;
}

Eigen::Matrix2cd hwp_unitary(double theta_deg) {
  const double c = std::cos(2.0 * theta_deg * kDegToRad);
  const double s = std::sin(2.0 * theta_deg * kDegToRad);
  Eigen::Matrix2cd u;
  u << c, s, s, -c;
  return u;
}

Eigen::Matrix2cd qwp_unitary(double theta_deg) {
  const double c = std::cos(2.0 * theta_deg * kDegToRad);
  const double s = std::sin(2.0 * theta_deg * kDegToRad);
  const Complex i(0.0, 1.0);
  Eigen::Matrix2cd u;
  u << 1.0 + i * c, i * s, i * s, 1.0 - i * c;
  return u / std::sqrt(2.0);
}

Eigen::Matrix4cd pbs_unitary() {
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  u(0, 0) = 1.0;  // iH -> iH
  u(2, 2) = 1.0;  // jH -> jH
  u(3, 1) = 1.0;  // iV -> jV
  u(1, 3) = 1.0;  // jV -> iV
  return u;
}

Complex phase_factor(double phi_rad) { return std::polar(1.0, phi_rad); }

OpticalElement OpticalElement::beam_splitter(int i, int j, double reflectivity) {
  return {ElementKind::kBeamSplitter, {i, j, -1, -1}, reflectivity};
}

OpticalElement OpticalElement::half_wave(int i, int j, double theta_deg) {
  return {ElementKind::kHalfWave, {i, j, -1, -1}, theta_deg};
}

OpticalElement OpticalElement::quarter_wave(int i, int j, double theta_deg) {
  return {ElementKind::kQuarterWave, {i, j, -1, -1}, theta_deg};
}

OpticalElement OpticalElement::polarizing_bs(int i_h, int i_v, int j_h, int j_v) {
  return {ElementKind::kPolarizingBs, {i_h, i_v, j_h, j_v}, 0.0};
}

OpticalElement OpticalElement::phase(int i, double phi_rad) {
  return {ElementKind::kPhase, {i, -1, -1, -1}, phi_rad};
}

int OpticalElement::mode_arity() const {
  switch (kind) {
    case ElementKind::kPhase:
      return 1;
    case ElementKind::kPolarizingBs:
      return 4;
    default:
      return 2;
  }
}

ModeUnitary element_unitary(const OpticalElement& element, int modes) {
  const int arity = element.mode_arity();
  for (int a = 0; a < arity; ++a) {
    const int m = element.modes[static_cast<std::size_t>(a)];
    if (m < 0 || m >= modes) {
      throw std::invalid_argument("element_unitary: mode index out of range");
    }
    for (int b = a + 1; b < arity; ++b) {
      if (m == element.modes[static_cast<std::size_t>(b)]) {
        throw std::invalid_argument("element_unitary: repeated mode index");
      }
    }
  }

  switch (element.kind) {
    case ElementKind::kBeamSplitter:
      return embed_pair(bs_unitary(element.value), element.modes[0], element.modes[1], modes);
    case ElementKind::kHalfWave:
      return embed_pair(hwp_unitary(element.value), element.modes[0], element.modes[1], modes);
    case ElementKind::kQuarterWave:
      return embed_pair(qwp_unitary(element.value), element.modes[0], element.modes[1], modes);
    case ElementKind::kPolarizingBs: {
      ModeUnitary full = ModeUnitary::Identity(modes, modes);
      const Eigen::Matrix4cd u = pbs_unitary();
      for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
          full(element.modes[static_cast<std::size_t>(r)],
               element.modes[static_cast<std::size_t>(c)]) = u(r, c);
        }
      }
      return full;
    }
    case ElementKind::kPhase: {
      ModeUnitary full = ModeUnitary::Identity(modes, modes);
      full(element.modes[0], element.modes[0]) = phase_factor(element.value);
      return full;
    }
  }
  throw std::logic_error("element_unitary: unknown element kind");
}

}  // namespace loqsim
