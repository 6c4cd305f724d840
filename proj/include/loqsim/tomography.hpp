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

#ifndef LOQSIM_TOMOGRAPHY_HPP
#define LOQSIM_TOMOGRAPHY_HPP

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "loqsim/analysis.hpp"

namespace loqsim {

struct TomographySetting {
  AnalyzerTag control = AnalyzerTag::H;
  AnalyzerTag target = AnalyzerTag::H;
  bool operator==(const TomographySetting&) const = default;
};

// The 16 joint analyzer settings used for state reconstruction, drawn from
// {H, V, D, R} per qubit.  The first four are the logical-basis combinations
// HH, HV, VH, VV (their projectors resolve the identity, which fixes the
// count scale); the remainder add the coherences.
std::array<TomographySetting, 16> tomography_settings();

// Pi_control (x) Pi_target for one setting.
Eigen::Matrix4cd setting_projector(const TomographySetting& setting);

// Coincidence counts for one analyzer setting.  Counts are held as doubles:
// sampled data is integer valued, while model-exact expected counts (used for
// noise-free reconstructions) may be fractional.
struct CountRecord {
  TomographySetting setting;
  double counts = 0.0;
};

// Validates that records cover exactly the canonical 16 settings (any input
// order) and returns them in tomography_settings() order.  Throws
// std::invalid_argument naming the offending setting or count.
std::vector<CountRecord> canonicalize_records(const std::vector<CountRecord>& records);

// Poissonian coincidence counts: counts_k ~ Poisson(n_per_setting * p_k),
// deterministic for a fixed seed.  Records come back in canonical order.
std::vector<CountRecord> simulate_counts(const DensityMatrix& rho,
                                         std::int64_t n_per_setting, std::uint64_t seed);

// Exact linear inversion of the 16 measured probabilities.  The result is
// Hermitian with unit trace but may have negative eigenvalues at finite
// counts.  Probabilities must be in canonical setting order.
DensityMatrix linear_reconstruct(const std::vector<double>& probabilities);

// Probabilities and count scale from records: N is estimated as the summed
// counts of the four logical-basis settings unless an explicit positive
// n_per_setting is supplied.
std::pair<std::vector<double>, double> counts_to_probabilities(
    const std::vector<CountRecord>& records, double n_per_setting = 0.0);

// The gradient tolerance applies to the per-count-normalized objective
// (log-likelihood divided by the total recorded counts), so the convergence
// criterion does not tighten as the experiment grows.
struct MleOptions {
  int max_iterations = 10000;
  double gradient_tolerance = 1e-8;
};

// log_likelihood is the absolute objective value; gradient_norm is the norm
// of the per-count-normalized gradient that the tolerance is tested against.
struct MleResult {
  DensityMatrix rho = DensityMatrix::Zero();
  double log_likelihood = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Maximum-likelihood reconstruction under the Poissonian model
//   log L = sum_k [ n_k ln p_k(rho) - N p_k(rho) ],
// over the Cholesky parameterization rho(t) = T(t)^dagger T(t) / Tr[...]
// (T lower triangular, 16 real parameters), ascended with BFGS from the
// linear-inversion estimate projected to positive eigenvalues (clipped at
// 1e-6).  Non-convergence is reported via the flag, with the best iterate.
MleResult mle_reconstruct(const std::vector<CountRecord>& records, double n_per_setting = 0.0,
                          const MleOptions& options = {});

// <psi|rho|psi> for a normalized pure target.
double fidelity(const DensityMatrix& rho, const Eigen::Vector4cd& psi);

// Uhlmann fidelity (squared convention) between two density matrices;
// reduces to <psi|rho|psi> when sigma is pure.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// Wootters concurrence from the spin-flipped spectrum: the decreasingly
// sorted square roots l_i of eig[rho (Y(x)Y) rho* (Y(x)Y)] give
// C = max(0, l1 - l2 - l3 - l4).
double concurrence(const DensityMatrix& rho);

// Tangle T = C^2.
double tangle(const DensityMatrix& rho);

// S_L = (4/3) (1 - Tr[rho^2]): 0 for pure states, 1 for the maximally mixed.
double linear_entropy(const DensityMatrix& rho);

// Largest attainable CHSH value 2 sqrt(m1 + m2), with m1, m2 the two largest
// eigenvalues of M^T M for the correlation matrix M_ij = Tr[rho s_i (x) s_j].
double chsh_max(const DensityMatrix& rho);

struct BootstrapResult {
  double sigma_fidelity = 0.0;
  double sigma_tangle = 0.0;
  double sigma_linear_entropy = 0.0;
  double sigma_chsh = 0.0;
  int resamples_converged = 0;
};

// Parametric bootstrap: redraws each setting's counts from Poisson(observed),
// re-runs the MLE and reports sample standard deviations of the measures.
// Resample r uses a seed derived from `seed` and r, so runs are reproducible
// and resamples independent.  Needs n_resamples >= 2.
BootstrapResult bootstrap_uncertainty(const std::vector<CountRecord>& records,
                                      const Eigen::Vector4cd& target_psi, int n_resamples,
                                      std::uint64_t seed, double n_per_setting = 0.0,
                                      const MleOptions& options = {});

namespace detail {

// The MLE's internal parameterization, exposed so the analytic gradient can
// be checked against finite differences: a lower-triangular factor packed as
// four real diagonal entries followed by (re, im) pairs for (1,0), (2,0),
// (2,1), (3,0), (3,1), (3,2).  Value and gradient carry the same per-count
// normalization the optimizer uses.
Eigen::VectorXd pack_factor(const Eigen::Matrix4cd& lower);
Eigen::Matrix4cd unpack_factor(const Eigen::VectorXd& params);
double packed_log_likelihood(const std::vector<CountRecord>& records, double n_per_setting,
                             const Eigen::VectorXd& params);
Eigen::VectorXd packed_log_likelihood_gradient(const std::vector<CountRecord>& records,
                                               double n_per_setting,
                                               const Eigen::VectorXd& params);

}  // namespace detail

}  // namespace loqsim

#endif  // LOQSIM_TOMOGRAPHY_HPP
