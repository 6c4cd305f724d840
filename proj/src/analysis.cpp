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

#include "loqsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace loqsim {

namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;
}

MeasurementSetting analyzer_setting(AnalyzerTag tag) {
  switch (tag) {
    case AnalyzerTag::H:
      return {0.0, 0.0};
    case AnalyzerTag::V:
      return {45.0, 0.0};
    case AnalyzerTag::D:
      return {22.5, 0.0};
    case AnalyzerTag::A:
      return {-22.5, 0.0};
    case AnalyzerTag::R:
      return {0.0, -45.0};
    case AnalyzerTag::L:
      return {0.0, 45.0};
  }
  throw std::logic_error("analyzer_setting: unknown tag");
}

char analyzer_tag_char(AnalyzerTag tag) {
  switch (tag) {
    case AnalyzerTag::H:
      return 'H';
    case AnalyzerTag::V:
      return 'V';
    case AnalyzerTag::D:
      return 'D';
    case AnalyzerTag::A:
      return 'A';
    case AnalyzerTag::R:
      return 'R';
    case AnalyzerTag::L:
      return 'L';
  }
  throw std::logic_error("analyzer_tag_char: unknown tag");
}

AnalyzerTag parse_analyzer_tag(const std::string& text) {
  if (text.size() == 1) {
    switch (text[0]) {
      case 'H':
        return AnalyzerTag::H;
      case 'V':
        return AnalyzerTag::V;
      case 'D':
        return AnalyzerTag::D;
      case 'A':
        return AnalyzerTag::A;
      case 'R':
        return AnalyzerTag::R;
      case 'L':
        return AnalyzerTag::L;
      default:
        break;
    }
  }
  throw std::invalid_argument("unknown analyzer tag '" + text + "' (expected H,V,D,A,R,L)");
}

Eigen::Matrix2cd analyzer_projector(const MeasurementSetting& setting) {
  // The state steered onto the transmitted port: (QWP * HWP)^dagger |H>.
  const Eigen::Matrix2cd chain =
      qwp_unitary(setting.qwp_deg) * hwp_unitary(setting.hwp_deg);
  const Eigen::Vector2cd psi = chain.adjoint() * Eigen::Vector2cd(1.0, 0.0);
  return psi * psi.adjoint();
}

Eigen::Matrix2cd analyzer_projector(AnalyzerTag tag) {
  return analyzer_projector(analyzer_setting(tag));
}

double coincidence_probability(const DensityMatrix& rho, const Eigen::Matrix2cd& control_proj,
                               const Eigen::Matrix2cd& target_proj) {
  Eigen::Matrix4cd joint;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      joint.block<2, 2>(2 * a, 2 * b) = control_proj(a, b) * target_proj;
    }
  }
  const double p = (rho * joint).trace().real();
  return std::clamp(p, 0.0, 1.0);
}

FringeData fit_fringe(const std::vector<double>& angles_deg,
                      const std::vector<double>& probabilities) {
  if (angles_deg.size() != probabilities.size()) {
    throw std::invalid_argument("fit_fringe: angle/probability size mismatch");
  }
  if (angles_deg.size() < 3) {
    throw std::invalid_argument("fit_fringe: need at least 3 samples");
  }
  const auto n = static_cast<Eigen::Index>(angles_deg.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double arg = 4.0 * angles_deg[static_cast<std::size_t>(k)] * kDegToRad;
    design(k, 0) = 1.0;
    design(k, 1) = std::cos(arg);
    design(k, 2) = std::sin(arg);
    y(k) = probabilities[static_cast<std::size_t>(k)];
  }
  const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(y);
  const double offset = coef(0);
  const double amplitude = std::hypot(coef(1), coef(2));

  FringeData out;
  out.angles_deg = angles_deg;
  out.probabilities = probabilities;
  if (offset > 0.0 && amplitude > 0.0) {
    out.visibility = std::clamp(amplitude / offset, 0.0, 1.0);
    // p(h) = offset + amplitude * cos(4 * (h - phase)).
    out.phase_deg = std::atan2(coef(2), coef(1)) / (4.0 * kDegToRad);
  }
  return out;
}

FringeData fringe_scan(const Circuit& circuit, const Eigen::Vector2cd& control,
                       const Eigen::Vector2cd& target, double xi,
                       const MeasurementSetting& control_setting,
                       const std::vector<double>& target_hwp_deg) {
  const MixedResult run = run_with_mismatch(circuit, control, target, xi);
  if (!run.defined) throw std::runtime_error("fringe_scan: no coincidence support");
  const Eigen::Matrix2cd control_proj = analyzer_projector(control_setting);
  std::vector<double> probs;
  probs.reserve(target_hwp_deg.size());
  for (double h : target_hwp_deg) {
    const Eigen::Matrix2cd target_proj = analyzer_projector({h, 0.0});
    probs.push_back(coincidence_probability(run.rho, control_proj, target_proj));
  }
  return fit_fringe(target_hwp_deg, probs);
}

double visibility(double max_value, double min_value) {
  if (!(max_value >= min_value) || min_value < 0.0) {
    throw std::invalid_argument("visibility: need max >= min >= 0");
  }
  const double total = max_value + min_value;
  if (total == 0.0) return 0.0;
  return (max_value - min_value) / total;
}

}  // namespace loqsim
