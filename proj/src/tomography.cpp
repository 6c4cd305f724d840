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

#include "loqsim/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace loqsim {
namespace {

constexpr double kProbabilityFloor = 1e-15;

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    }
  }
  return out;
}

std::string setting_name(const TomographySetting& s) {
  return std::string(1, analyzer_tag_char(s.control)) +
         std::string(1, analyzer_tag_char(s.target));
}

// Lower-triangular T as 16 real parameters: four real diagonal entries first,
// then (re, im) pairs for (1,0), (2,0), (2,1), (3,0), (3,1), (3,2).
constexpr int kOffDiagRow[6] = {1, 2, 2, 3, 3, 3};
constexpr int kOffDiagCol[6] = {0, 0, 1, 0, 1, 2};

Eigen::Matrix4cd params_to_t(const Eigen::VectorXd& p) {
  Eigen::Matrix4cd t = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 4; ++i) t(i, i) = p[i];
  for (int k = 0; k < 6; ++k) {
    t(kOffDiagRow[k], kOffDiagCol[k]) = Complex(p[4 + 2 * k], p[5 + 2 * k]);
  }
  return t;
}

Eigen::VectorXd t_to_params(const Eigen::Matrix4cd& t) {
  Eigen::VectorXd p(16);
  for (int i = 0; i < 4; ++i) p[i] = t(i, i).real();
  for (int k = 0; k < 6; ++k) {
    p[4 + 2 * k] = t(kOffDiagRow[k], kOffDiagCol[k]).real();
    p[5 + 2 * k] = t(kOffDiagRow[k], kOffDiagCol[k]).imag();
  }
  return p;
}

struct Likelihood {
  std::array<Eigen::Matrix4cd, 16> projectors;
  std::array<double, 16> counts;
  double total = 0.0;
  // Value and gradient are normalized per recorded count so that the
  // convergence tolerance is independent of the experiment size; the
  // absolute log-likelihood is recovered by multiplying back.
  double normalization = 1.0;

  double probability(const DensityMatrix& rho, int k) const {
    double p = (rho * projectors[k]).trace().real();
    return std::max(p, kProbabilityFloor);
  }

  double value(const Eigen::VectorXd& params) const {
    const Eigen::Matrix4cd t = params_to_t(params);
    const Eigen::Matrix4cd s = t.adjoint() * t;
    const double scale = s.trace().real();
    if (!(scale > 0.0)) return -std::numeric_limits<double>::infinity();
    const DensityMatrix rho = s / scale;
    double ll = 0.0;
    for (int k = 0; k < 16; ++k) {
      const double p = probability(rho, k);
      ll += counts[k] * std::log(p) - total * p;
    }
    return ll / normalization;
  }

  // d logL / d params via the chain rule on rho = T^dag T / Tr[T^dag T]:
  // with G = sum_k (n_k/p_k - N) Pi_k and K = (G - Tr[G rho] I) / Tr[T^dag T],
  // the Wirtinger derivative is (T K)_ij, giving 2 Re / 2 Im per component.
  // The residual is evaluated as (n_k - N p_k)/p_k to keep cancellation
  // error small near the optimum.
  Eigen::VectorXd gradient(const Eigen::VectorXd& params) const {
    const Eigen::Matrix4cd t = params_to_t(params);
    const Eigen::Matrix4cd s = t.adjoint() * t;
    const double scale = s.trace().real();
    const DensityMatrix rho = s / scale;
    Eigen::Matrix4cd g = Eigen::Matrix4cd::Zero();
    for (int k = 0; k < 16; ++k) {
      const double p = probability(rho, k);
      g += ((counts[k] - total * p) / (p * normalization)) * projectors[k];
    }
    const Complex trace_grho = (g * rho).trace();
    const Eigen::Matrix4cd kmat =
        (g - trace_grho.real() * Eigen::Matrix4cd::Identity()) / scale;
    const Eigen::Matrix4cd tk = t * kmat;
    Eigen::VectorXd grad(16);
    for (int i = 0; i < 4; ++i) grad[i] = 2.0 * tk(i, i).real();
    for (int k = 0; k < 6; ++k) {
      grad[4 + 2 * k] = 2.0 * tk(kOffDiagRow[k], kOffDiagCol[k]).real();
      grad[5 + 2 * k] = 2.0 * tk(kOffDiagRow[k], kOffDiagCol[k]).imag();
    }
    return grad;
  }
};

// Lower-triangular Cholesky-like factor of a positive definite rho, built by
// reversing the index order: with J the anti-diagonal permutation,
// T = (J chol(J rho J) J)^dagger is lower triangular and satisfies
// T^dagger T = rho.
Eigen::Matrix4cd lower_factor(const DensityMatrix& rho) {
  Eigen::Matrix4cd j = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 4; ++i) j(i, 3 - i) = 1.0;
  const Eigen::Matrix4cd flipped = j * rho * j;
  Eigen::LLT<Eigen::Matrix4cd> llt(flipped);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("cholesky factorization failed on the starting state");
  }
  const Eigen::Matrix4cd l = llt.matrixL();
  return (j * l * j).adjoint();
}

DensityMatrix project_to_states(const DensityMatrix& rho, double eigen_floor) {
  const Eigen::Matrix4cd herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(herm);
  Eigen::Vector4d vals = es.eigenvalues().cwiseMax(eigen_floor);
  Eigen::Matrix4cd out =
      es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
  return out / out.trace().real();
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double sample_stddev(const std::vector<double>& xs) {
  const auto n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (n - 1.0));
}

Likelihood make_likelihood(const std::vector<CountRecord>& records, double n_per_setting) {
  const std::vector<CountRecord> ordered = canonicalize_records(records);
  const auto [probabilities, scale] = counts_to_probabilities(ordered, n_per_setting);
  (void)probabilities;
  Likelihood likelihood;
  const auto settings = tomography_settings();
  double count_sum = 0.0;
  for (std::size_t k = 0; k < settings.size(); ++k) {
    likelihood.projectors[k] = setting_projector(settings[k]);
    likelihood.counts[k] = ordered[k].counts;
    count_sum += ordered[k].counts;
  }
  likelihood.total = scale;
  likelihood.normalization = std::max(1.0, count_sum);
  return likelihood;
}

}  // namespace

namespace detail {

Eigen::VectorXd pack_factor(const Eigen::Matrix4cd& lower) { return t_to_params(lower); }

Eigen::Matrix4cd unpack_factor(const Eigen::VectorXd& params) { return params_to_t(params); }

double packed_log_likelihood(const std::vector<CountRecord>& records, double n_per_setting,
                             const Eigen::VectorXd& params) {
  return make_likelihood(records, n_per_setting).value(params);
}

Eigen::VectorXd packed_log_likelihood_gradient(const std::vector<CountRecord>& records,
                                               double n_per_setting,
                                               const Eigen::VectorXd& params) {
  return make_likelihood(records, n_per_setting).gradient(params);
}

}  // namespace detail

std::array<TomographySetting, 16> tomography_settings() {
  using T = AnalyzerTag;
  return {{{T::H, T::H},
           {T::H, T::V},
           {T::V, T::H},
           {T::V, T::V},
           {T::H, T::D},
           {T::H, T::R},
           {T::V, T::D},
           {T::V, T::R},
           {T::D, T::H},
           {T::D, T::V},
           {T::D, T::D},
           {T::D, T::R},
           {T::R, T::H},
           {T::R, T::V},
           {T::R, T::D},
           {T::R, T::R}}};
}

Eigen::Matrix4cd setting_projector(const TomographySetting& setting) {
  return kron2(analyzer_projector(setting.control), analyzer_projector(setting.target));
}

std::vector<CountRecord> canonicalize_records(const std::vector<CountRecord>& records) {
  const auto settings = tomography_settings();
  if (records.size() != settings.size()) {
    throw std::invalid_argument("expected exactly " + std::to_string(settings.size()) +
                                " count records, got " + std::to_string(records.size()));
  }
  std::vector<CountRecord> ordered(settings.size());
  std::array<bool, 16> seen{};
  for (const CountRecord& record : records) {
    if (!std::isfinite(record.counts) || record.counts < 0.0) {
      throw std::invalid_argument("counts must be finite and non-negative for setting " +
                                  setting_name(record.setting));
    }
    const auto it = std::find(settings.begin(), settings.end(), record.setting);
    if (it == settings.end()) {
      throw std::invalid_argument("setting " + setting_name(record.setting) +
                                  " is not part of the tomography set");
    }
    const auto idx = static_cast<std::size_t>(it - settings.begin());
    if (seen[idx]) {
      throw std::invalid_argument("duplicate setting " + setting_name(record.setting));
    }
    seen[idx] = true;
    ordered[idx] = record;
  }
  return ordered;
}

std::vector<CountRecord> simulate_counts(const DensityMatrix& rho,
                                         std::int64_t n_per_setting, std::uint64_t seed) {
  if (n_per_setting <= 0) {
    throw std::invalid_argument("counts per setting must be positive");
  }
  if (std::abs(rho.trace().real() - 1.0) > 1e-6) {
    throw std::invalid_argument("state for count simulation must have unit trace");
  }
  std::mt19937_64 rng(seed);
  std::vector<CountRecord> records;
  records.reserve(16);
  for (const TomographySetting& setting : tomography_settings()) {
    double p = (rho * setting_projector(setting)).trace().real();
    p = std::clamp(p, 0.0, 1.0);
    const double mean = static_cast<double>(n_per_setting) * p;
    std::int64_t counts = 0;
    if (mean > 0.0) {
      std::poisson_distribution<std::int64_t> dist(mean);
      counts = dist(rng);
    }
    records.push_back({setting, static_cast<double>(counts)});
  }
  return records;
}

std::pair<std::vector<double>, double> counts_to_probabilities(
    const std::vector<CountRecord>& records, double n_per_setting) {
  const std::vector<CountRecord> ordered = canonicalize_records(records);
  double scale = n_per_setting;
  if (scale <= 0.0) {
    scale = 0.0;
    for (int k = 0; k < 4; ++k) scale += ordered[k].counts;
  }
  if (scale <= 0.0) {
    throw std::invalid_argument(
        "count scale is zero: the four logical-basis settings have no counts");
  }
  std::vector<double> probabilities(ordered.size());
  for (std::size_t k = 0; k < ordered.size(); ++k) {
    probabilities[k] = ordered[k].counts / scale;
  }
  return {probabilities, scale};
}

DensityMatrix linear_reconstruct(const std::vector<double>& probabilities) {
  const auto settings = tomography_settings();
  if (probabilities.size() != settings.size()) {
    throw std::invalid_argument("expected 16 probabilities");
  }
  // p_k = sum_{a,b} Pi_k(a,b) rho(b,a): one linear equation per setting on
  // the column-major vectorization of rho.
  Eigen::MatrixXcd design(16, 16);
  Eigen::VectorXcd rhs(16);
  for (int k = 0; k < 16; ++k) {
    const Eigen::Matrix4cd proj = setting_projector(settings[static_cast<std::size_t>(k)]);
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        design(k, 4 * a + b) = proj(a, b);
      }
    }
    rhs(k) = probabilities[static_cast<std::size_t>(k)];
  }
  const Eigen::VectorXcd solution = design.fullPivLu().solve(rhs);
  DensityMatrix rho;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      rho(b, a) = solution(4 * a + b);
    }
  }
  return 0.5 * (rho + rho.adjoint().eval());
}

MleResult mle_reconstruct(const std::vector<CountRecord>& records, double n_per_setting,
                          const MleOptions& options) {
  const std::vector<CountRecord> ordered = canonicalize_records(records);
  const auto [probabilities, scale] = counts_to_probabilities(ordered, n_per_setting);

  Likelihood likelihood;
  const auto settings = tomography_settings();
  double count_sum = 0.0;
  for (std::size_t k = 0; k < settings.size(); ++k) {
    likelihood.projectors[k] = setting_projector(settings[k]);
    likelihood.counts[k] = ordered[k].counts;
    count_sum += ordered[k].counts;
  }
  likelihood.total = scale;
  likelihood.normalization = std::max(1.0, count_sum);

  const DensityMatrix start = project_to_states(linear_reconstruct(probabilities), 1e-6);
  Eigen::VectorXd x = t_to_params(lower_factor(start));

  // BFGS ascent on logL (implemented as descent on -logL) with backtracking
  // line search.  The parameterization is scale invariant, so the radial
  // direction is flat; curvature updates are skipped when s.y is too small.
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(16, 16);
  double f = -likelihood.value(x);
  Eigen::VectorXd grad = -likelihood.gradient(x);

  MleResult result;
  int iteration = 0;
  bool converged = false;
  for (; iteration < options.max_iterations; ++iteration) {
    if (grad.norm() < options.gradient_tolerance) {
      converged = true;
      break;
    }
    Eigen::VectorXd direction = -(hinv * grad);
    double slope = grad.dot(direction);
    if (!(slope < 0.0)) {
      hinv.setIdentity();
      direction = -grad;
      slope = grad.dot(direction);
    }
    double step = 1.0;
    double f_new = std::numeric_limits<double>::infinity();
    Eigen::VectorXd x_new = x;
    bool improved = false;
    for (int halving = 0; halving < 60; ++halving) {
      x_new = x + step * direction;
      f_new = -likelihood.value(x_new);
      if (f_new <= f + 1e-4 * step * slope) {
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
    const Eigen::VectorXd grad_new = -likelihood.gradient(x_new);
    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd y = grad_new - grad;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      const Eigen::MatrixXd outer_sy = s * y.transpose() / sy;
      hinv = (Eigen::MatrixXd::Identity(16, 16) - outer_sy) * hinv *
                 (Eigen::MatrixXd::Identity(16, 16) - outer_sy.transpose()) +
             s * s.transpose() / sy;
    }
    x = x_new;
    f = f_new;
    grad = grad_new;
  }

  const Eigen::Matrix4cd t = params_to_t(x);
  const Eigen::Matrix4cd s = t.adjoint() * t;
  result.rho = s / s.trace().real();
  result.log_likelihood = -f * likelihood.normalization;
  result.gradient_norm = grad.norm();
  result.iterations = iteration;
  result.converged = converged || grad.norm() < options.gradient_tolerance;
  return result;
}

double fidelity(const DensityMatrix& rho, const Eigen::Vector4cd& psi) {
  const double value = (psi.adjoint() * rho * psi).value().real();
  return std::clamp(value, 0.0, 1.0);
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const Eigen::Matrix4cd rho_h = 0.5 * (rho + rho.adjoint().eval());
  const Eigen::Matrix4cd sigma_h = 0.5 * (sigma + sigma.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho_h);
  const Eigen::Vector4d vals = es.eigenvalues().cwiseMax(0.0);
  const Eigen::Matrix4cd sqrt_rho = es.eigenvectors() *
                                    vals.cwiseSqrt().asDiagonal() *
                                    es.eigenvectors().adjoint();
  const Eigen::Matrix4cd inner = sqrt_rho * sigma_h * sqrt_rho;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es_inner(
      0.5 * (inner + inner.adjoint().eval()));
  double root_sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    root_sum += std::sqrt(std::max(es_inner.eigenvalues()[i], 0.0));
  }
  return std::clamp(root_sum * root_sum, 0.0, 1.0);
}

double concurrence(const DensityMatrix& rho) {
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Eigen::Matrix4cd product = rho * yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(product);
  std::array<double, 4> roots{};
  for (int i = 0; i < 4; ++i) {
    roots[static_cast<std::size_t>(i)] =
        std::sqrt(std::max(es.eigenvalues()[i].real(), 0.0));
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

double tangle(const DensityMatrix& rho) {
  const double c = concurrence(rho);
  return c * c;
}

double linear_entropy(const DensityMatrix& rho) {
  const double purity = (rho * rho).trace().real();
  return std::clamp(4.0 / 3.0 * (1.0 - purity), 0.0, 1.0);
}

double chsh_max(const DensityMatrix& rho) {
  Eigen::Matrix2cd sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  sz << 1, 0, 0, -1;
  const std::array<Eigen::Matrix2cd, 3> paulis = {sx, sy, sz};
  Eigen::Matrix3d correlation;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      correlation(i, j) =
          (rho * kron2(paulis[static_cast<std::size_t>(i)],
                       paulis[static_cast<std::size_t>(j)]))
              .trace()
              .real();
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(correlation.transpose() *
                                                    correlation);
  const double m1 = es.eigenvalues()[2];
  const double m2 = es.eigenvalues()[1];
  return 2.0 * std::sqrt(std::max(m1 + m2, 0.0));
}

BootstrapResult bootstrap_uncertainty(const std::vector<CountRecord>& records,
                                      const Eigen::Vector4cd& target_psi, int n_resamples,
                                      std::uint64_t seed, double n_per_setting,
                                      const MleOptions& options) {
  if (n_resamples < 2) {
    throw std::invalid_argument("bootstrap needs at least two resamples");
  }
  const std::vector<CountRecord> ordered = canonicalize_records(records);
  const Eigen::Vector4cd psi = target_psi.normalized();

  std::vector<double> fidelities, tangles, entropies, chsh_values;
  fidelities.reserve(static_cast<std::size_t>(n_resamples));
  tangles.reserve(static_cast<std::size_t>(n_resamples));
  entropies.reserve(static_cast<std::size_t>(n_resamples));
  chsh_values.reserve(static_cast<std::size_t>(n_resamples));

  BootstrapResult result;
  for (int r = 0; r < n_resamples; ++r) {
    std::mt19937_64 rng(splitmix64(seed + static_cast<std::uint64_t>(r) + 1));
    std::vector<CountRecord> resampled = ordered;
    for (CountRecord& record : resampled) {
      if (record.counts > 0.0) {
        std::poisson_distribution<std::int64_t> dist(record.counts);
        record.counts = static_cast<double>(dist(rng));
      }
    }
    const MleResult mle = mle_reconstruct(resampled, n_per_setting, options);
    if (mle.converged) ++result.resamples_converged;
    fidelities.push_back(fidelity(mle.rho, psi));
    tangles.push_back(tangle(mle.rho));
    entropies.push_back(linear_entropy(mle.rho));
    chsh_values.push_back(chsh_max(mle.rho));
  }

  result.sigma_fidelity = sample_stddev(fidelities);
  result.sigma_tangle = sample_stddev(tangles);
  result.sigma_linear_entropy = sample_stddev(entropies);
  result.sigma_chsh = sample_stddev(chsh_values);
  return result;
}

}  // namespace loqsim
