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
#include <random>

#include "doctest.h"
#include "loqsim/tomography.hpp"
#include "support.hpp"

using namespace loqsim;
using namespace loqsim::testing;

TEST_CASE("full overlap reproduces the pure run") {
  std::mt19937_64 rng(31);
  for (const Circuit& circuit : {build_conceptual_cnot(), build_experimental_cnot()}) {
    for (int k = 0; k < 5; ++k) {
      const Eigen::Vector2cd c = random_qubit(rng), t = random_qubit(rng);
      const PostSelected pure = run_pure(circuit, c, t);
      const MixedResult mixed = run_with_mismatch(circuit, c, t, 1.0);
      REQUIRE(mixed.defined);
      CHECK(mixed.success_probability ==
            doctest::Approx(pure.success_probability).epsilon(1e-11));
      const Eigen::Vector4cd psi = pure.normalized();
      const Eigen::Matrix4cd expected = psi * psi.adjoint();
      CHECK((mixed.rho - expected).cwiseAbs().maxCoeff() <= 1e-11);
    }
  }
}

TEST_CASE("mixed runs match the branch-sum oracle") {
  std::mt19937_64 rng(37);
  for (const Circuit& circuit : {build_conceptual_cnot(), build_experimental_cnot()}) {
    for (double xi : {0.0, 0.3, 0.7, 1.0}) {
      for (int k = 0; k < 4; ++k) {
        const Eigen::Vector2cd c = random_qubit(rng), t = random_qubit(rng);
        const MixedResult actual = run_with_mismatch(circuit, c, t, xi);
        const MixedResult expected = oracle_mixed_run(circuit, c, t, xi);
        REQUIRE(actual.defined == expected.defined);
        CHECK(actual.success_probability ==
              doctest::Approx(expected.success_probability).epsilon(1e-10));
        CHECK((actual.rho - expected.rho).cwiseAbs().maxCoeff() <= 1e-10);
      }
    }
  }
}

TEST_CASE("outputs are valid density matrices") {
  std::mt19937_64 rng(41);
  const Circuit circuit = build_conceptual_cnot();
  for (double xi : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const MixedResult result =
        run_with_mismatch(circuit, random_qubit(rng), random_qubit(rng), xi);
    REQUIRE(result.defined);
    CHECK(is_valid_density(result.rho, 1e-10));
  }
  CHECK_FALSE(is_valid_density(2.0 * Eigen::Matrix4cd::Identity()));
  Eigen::Matrix4cd negative = Eigen::Matrix4cd::Identity();
  negative(3, 3) = -0.5;
  negative /= negative.trace().real();
  CHECK_FALSE(is_valid_density(negative));
}

TEST_CASE("target flip probability follows 1 / (3 - 2 xi)") {
  // Closed form for the conditional flip probability of a control-one,
  // target-zero input, derived from the branch weights: the coherent branch
  // flips deterministically while each distinguishable branch contributes
  // one flipped and one unflipped path of equal weight.
  const Eigen::Vector2cd one(0.0, 1.0), zero(1.0, 0.0);
  for (const Circuit& circuit : {build_conceptual_cnot(), build_experimental_cnot()}) {
    for (double xi : {0.0, 0.2, 0.5, 5.0 / 6.0, 1.0}) {
      const MixedResult result = run_with_mismatch(circuit, one, zero, xi);
      const double flip = result.rho(3, 3).real();
      CHECK(flip == doctest::Approx(1.0 / (3.0 - 2.0 * xi)).epsilon(1e-10));
      CHECK(result.success_probability ==
            doctest::Approx((3.0 - 2.0 * xi) / 9.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("fully distinguishable photons mix the two exchange branches") {
  // At xi = 0 the straight branch keeps |10> while the swapped branch exits
  // the control photon across both target rails, so the normalized output is
  // 1/3 [ 2|10><10| + |11><11| + |10><11| + |11><10| ]: populations 2/3 and
  // 1/3 with a surviving coherence of 1/3 (rank 2, not a diagonal mixture).
  const Eigen::Vector2cd one(0.0, 1.0), zero(1.0, 0.0);
  const MixedResult result =
      run_with_mismatch(build_conceptual_cnot(), one, zero, 0.0);
  REQUIRE(result.defined);
  Eigen::Matrix4cd expected = Eigen::Matrix4cd::Zero();
  expected(2, 2) = 2.0 / 3.0;
  expected(3, 3) = 1.0 / 3.0;
  expected(2, 3) = expected(3, 2) = 1.0 / 3.0;
  CHECK((result.rho - expected).cwiseAbs().maxCoeff() <= 1e-10);

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(result.rho);
  int rank = 0;
  for (int i = 0; i < 4; ++i) rank += es.eigenvalues()[i] > 1e-8 ? 1 : 0;
  CHECK(rank == 2);
}

TEST_CASE("partial overlap keeps the output within the two exchange branches") {
  // The coherent amplitude is the sum of the straight and swapped branch
  // vectors, so for any overlap the output is supported on their span:
  // rank at most 2, and the input coherences degrade rather than vanish.
  const double s = 1.0 / std::sqrt(2.0);
  const Eigen::Vector2cd control(s, s);
  const Eigen::Vector2cd target(1.0, 0.0);
  for (const Circuit& circuit : {build_conceptual_cnot(), build_experimental_cnot()}) {
    for (double xi : {0.0, 0.3, 0.7}) {
      const MixedResult result = run_with_mismatch(circuit, control, target, xi);
      REQUIRE(result.defined);
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(result.rho);
      int rank = 0;
      for (int i = 0; i < 4; ++i) rank += es.eigenvalues()[i] > 1e-8 ? 1 : 0;
      CHECK(rank <= 2);
    }
  }
}

TEST_CASE("truth table at unit overlap is the logical permutation") {
  for (const Circuit& circuit : {build_conceptual_cnot(), build_experimental_cnot()}) {
    const TruthTableResult result = truth_table_full(circuit, 1.0);
    Eigen::Matrix4d expected = Eigen::Matrix4d::Zero();
    expected(0, 0) = expected(1, 1) = expected(2, 3) = expected(3, 2) = 1.0;
    CHECK((result.table - expected).cwiseAbs().maxCoeff() <= 1e-10);
    for (int i = 0; i < 4; ++i) {
      CHECK(result.table.row(i).sum() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(result.success_probability(i) == doctest::Approx(1.0 / 9.0).epsilon(1e-11));
    }
  }
}

TEST_CASE("logical-basis control rows are noise free") {
  const Eigen::Matrix4d table = truth_table(build_conceptual_cnot(), 0.4);
  CHECK(table(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(table(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(table(2, 3) == doctest::Approx(1.0 / (3.0 - 0.8)).epsilon(1e-10));
  CHECK(table(3, 2) == doctest::Approx(1.0 / (3.0 - 0.8)).epsilon(1e-10));
}

TEST_CASE("overlap calibration inverts the flip probability") {
  const Circuit circuit = build_conceptual_cnot();
  const double xi = calibrate_overlap(circuit, 0.75);
  CHECK(xi == doctest::Approx(5.0 / 6.0).epsilon(1e-6));
  const Eigen::Matrix4d table = truth_table(circuit, xi);
  CHECK(table(2, 3) == doctest::Approx(0.75).epsilon(1e-8));
  // The complementary row is predicted, not fitted.
  CHECK(table(3, 2) == doctest::Approx(0.75).epsilon(1e-8));

  CHECK_THROWS_AS(calibrate_overlap(circuit, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(calibrate_overlap(circuit, 1.1), std::invalid_argument);
}

TEST_CASE("entangled-output fidelity degrades as (1 + xi) / (2 (2 - xi))") {
  for (double xi : {0.0, 0.5, 5.0 / 6.0, 1.0}) {
    const double expected = (1.0 + xi) / (2.0 * (2.0 - xi));
    for (BellKind kind : {BellKind::kPhiPlus, BellKind::kPhiMinus, BellKind::kPsiPlus,
                          BellKind::kPsiMinus}) {
      const auto [control, target] = bell_input(kind);
      const MixedResult result =
          run_with_mismatch(build_conceptual_cnot(), control, target, xi);
      REQUIRE(result.defined);
      CHECK(fidelity(result.rho, bell_vector(kind)) ==
            doctest::Approx(expected).epsilon(1e-9));
    }
  }
}
