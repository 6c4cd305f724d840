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

#ifndef LOQSIM_ANALYSIS_HPP
#define LOQSIM_ANALYSIS_HPP

#include <string>
#include <vector>

#include "loqsim/noise.hpp"

namespace loqsim {

// Waveplate pair in front of the analyzing polarizer: light passes the HWP,
// then the QWP, then a polarizer transmitting H.
struct MeasurementSetting {
  double hwp_deg = 0.0;
  double qwp_deg = 0.0;
};

// Named analyzer settings.  One table maps tags to waveplate angles:
//   H (0, 0)   V (45, 0)   D (22.5, 0)   A (-22.5, 0)   R (0, -45)   L (0, 45)
// with D/A = (|H> +/- |V>)/sqrt2 and R/L = (|H> -/+ i|V>)/sqrt2.
enum class AnalyzerTag { H, V, D, A, R, L };

MeasurementSetting analyzer_setting(AnalyzerTag tag);
char analyzer_tag_char(AnalyzerTag tag);
AnalyzerTag parse_analyzer_tag(const std::string& text);

// Rank-1 projector onto the polarization state that the setting maps to the
// transmitted port.
Eigen::Matrix2cd analyzer_projector(const MeasurementSetting& setting);
Eigen::Matrix2cd analyzer_projector(AnalyzerTag tag);

// Tr[rho (Pi_control x Pi_target)], clamped into [0, 1].
double coincidence_probability(const DensityMatrix& rho, const Eigen::Matrix2cd& control_proj,
                               const Eigen::Matrix2cd& target_proj);

// Coincidence fringe traced by scanning the target analyzer HWP (QWP at 0)
// against a fixed control analyzer setting, plus a fixed-period sinusoid
// fit: p(h) ~ offset + amplitude * cos(4h - 4 * phase_deg).
struct FringeData {
  std::vector<double> angles_deg;
  std::vector<double> probabilities;
  double visibility = 0.0;
  double phase_deg = 0.0;
  double period_deg = 90.0;  // fixed by the polarization analyzer geometry
};

// Least-squares fit on the basis {1, cos(4h), sin(4h)} at the 90-degree
// period.  Constant data fits to visibility 0; noisy data is clamped into
// [0, 1].  Needs at least 3 samples.
FringeData fit_fringe(const std::vector<double>& angles_deg,
                      const std::vector<double>& probabilities);

// Runs the circuit at overlap xi and scans the target analyzer.
FringeData fringe_scan(const Circuit& circuit, const Eigen::Vector2cd& control,
                       const Eigen::Vector2cd& target, double xi,
                       const MeasurementSetting& control_setting,
                       const std::vector<double>& target_hwp_deg);

// (max - min) / (max + min); requires max >= min >= 0, returns 0 for 0/0.
double visibility(double max_value, double min_value);

}  // namespace loqsim

#endif  // LOQSIM_ANALYSIS_HPP
