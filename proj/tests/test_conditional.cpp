// Copyright 2026 The qgate Authors
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

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qgate/conditional.hpp"
#include "qgate/gate_lab.hpp"
#include "qgate/interferometer.hpp"
#include "qgate/random.hpp"

namespace qgate {
namespace {

const std::vector<int> kSignal0{0};

TEST(ConditionalTest, SingleSplitterClosedForm) {
  for (double mag : {0.2, 0.55, 0.9}) {
    for (double arg : {0.0, 0.8, -2.1}) {
      const Complex t = std::polar(mag, arg);
      const BeamSplitterParams bs{t, std::polar(std::sqrt(1.0 - mag * mag), 0.4)};
      const auto y = conditional_operator(beam_splitter_block(bs), AncillaPrep{{1}}, MeasurementPattern{{1}},
                                          kSignal0, 2);
      const double r2 = 1.0 - mag * mag;
      for (int n = 0; n <= 2; ++n) {
        const Complex want = ipow(t, n - 1) * (mag * mag - n * r2);
        EXPECT_LT(std::abs(y.matrix(n, n) - want), 1e-12) << "n=" << n;
      }
      EXPECT_LT((y.matrix - CMatrix(y.matrix.diagonal().asDiagonal())).norm(), 1e-14);
    }
  }
}

TEST(ConditionalTest, IdentityNetworkPassesSignalThrough) {
  const auto y =
      conditional_operator(CMatrix::Identity(2, 2), AncillaPrep{{1}}, MeasurementPattern{{1}}, kSignal0, 3);
  EXPECT_LT((y.matrix - CMatrix::Identity(4, 4)).norm(), 1e-15);
}

TEST(ConditionalTest, MatchesBruteForceAmplitudes) {
  Rng rng(31);
  const CMatrix u = haar_unitary(3, rng);
  const auto y = conditional_operator(u, AncillaPrep{{1, 1}}, MeasurementPattern{{0, 0}}, kSignal0, 4);
  for (int out = 0; out <= 4; ++out) {
    for (int in = 0; in <= 4; ++in) {
      const Complex want = out == in + 2 ? oracle::fock_amplitude(u, {in, 1, 1}, {out, 0, 0}) : 0.0;
      EXPECT_LT(std::abs(y.matrix(out, in) - want), 1e-12);
    }
  }
}

TEST(ConditionalTest, PatternsSumToOne) {
  Rng rng(37);
  const CMatrix u = haar_unitary(3, rng);
  const auto basis = FockBasis::enumerate(1, MaxTotalPhotons{3});
  CVector psi = CVector::Zero(4);
  psi.head(3) = random_unit_vector(3, rng);
  const StateVector state(basis, psi);
  double total = 0.0;
  for (int p1 = 0; p1 <= 3; ++p1) {
    for (int p2 = 0; p1 + p2 <= 3; ++p2) {
      const auto y = conditional_operator(u, AncillaPrep{{1, 0}}, MeasurementPattern{{p1, p2}}, kSignal0, 3);
      EXPECT_LE(y.operator_norm(), 1.0 + 1e-9);
      total += success_probability(y, state);
    }
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(ConditionalTest, IndependentOfSignalCutoff) {
  Rng rng(41);
  const CMatrix u = haar_unitary(3, rng);
  const auto small = conditional_operator(u, AncillaPrep{{1, 0}}, MeasurementPattern{{1, 0}}, kSignal0, 2);
  const auto large = conditional_operator(u, AncillaPrep{{1, 0}}, MeasurementPattern{{1, 0}}, kSignal0, 5);
  EXPECT_LT((large.matrix.topLeftCorner(3, 3) - small.matrix).norm(), 1e-14);
}

TEST(ConditionalTest, RejectsMismatchedAncillaOrPattern) {
  const CMatrix u = CMatrix::Identity(3, 3);
  EXPECT_THROW(conditional_operator(u, AncillaPrep{{1}}, MeasurementPattern{{1, 0}}, kSignal0, 2),
               ValidationError);
  EXPECT_THROW(conditional_operator(u, AncillaPrep{{1, 0}}, MeasurementPattern{{1}}, kSignal0, 2),
               ValidationError);
  EXPECT_THROW(conditional_operator(u, AncillaPrep{{-1, 0}}, MeasurementPattern{{0, 0}}, kSignal0, 2),
               ValidationError);
  const std::vector<int> bad{3};
  EXPECT_THROW(conditional_operator(u, AncillaPrep{{1, 0}}, MeasurementPattern{{1, 0}}, bad, 2), ValidationError);
}

TEST(SuccessTest, TrivialOperators) {
  const auto b = FockBasis::enumerate(1, MaxTotalPhotons{2});
  Rng rng(2);
  const StateVector psi(b, random_unit_vector(3, rng));
  EXPECT_NEAR(success_probability({b, CMatrix::Identity(3, 3)}, psi), 1.0, 1e-14);
  EXPECT_EQ(success_probability({b, CMatrix::Zero(3, 3)}, psi), 0.0);
}

TEST(UnitarityTest, ProportionalAndNot) {
  const auto half = is_proportional_to_unitary(0.5 * CMatrix::Identity(3, 3));
  EXPECT_TRUE(half.proportional);
  EXPECT_NEAR(half.scale, 0.25, 1e-15);
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  EXPECT_FALSE(is_proportional_to_unitary(d).proportional);
}

TEST(SpecialCaseTest, SingleAncillaDetectVacuumIsCreation) {
  const CMatrix u = beam_splitter_block(BeamSplitterParams::from_angles(0.6, 0.3));
  const auto fit = special_case_operator(u, SpecialCase::all_singles_detect_vacuum, 3);
  EXPECT_TRUE(fit.matches);
  EXPECT_LT(fit.structure_residual, 1e-12);
  ASSERT_EQ(fit.coefficients.size(), 1u);
  // <n+1, 0| U |n, 1> = sqrt(n+1) Lambda_01 Lambda_00^n.
  const auto y = conditional_operator(u, AncillaPrep{{1}}, MeasurementPattern{{0}}, kSignal0, 4);
  for (int n = 0; n <= 3; ++n)
    EXPECT_LT(std::abs(y.matrix(n + 1, n) - std::sqrt(n + 1.0) * u(0, 1) * ipow(u(0, 0), n)), 1e-12);
}

TEST(SpecialCaseTest, VacuumAncillaDetectSingleIsAnnihilation) {
  const CMatrix u = beam_splitter_block(BeamSplitterParams::from_angles(1.0, -0.7));
  const auto fit = special_case_operator(u, SpecialCase::vacuum_detect_singles, 3);
  EXPECT_TRUE(fit.matches);
  EXPECT_LT(fit.structure_residual, 1e-12);
}

TEST(SpecialCaseTest, SinglesDetectSinglesIsQuadraticInN) {
  Rng rng(43);
  const CMatrix u = haar_unitary(3, rng);
  const auto fit = special_case_operator(u, SpecialCase::singles_detect_singles, 4);
  EXPECT_TRUE(fit.matches);
  EXPECT_EQ(fit.coefficients.size(), 3u);
  EXPECT_LT(fit.fit_residual, 1e-10);
}

TEST(InformationLossTest, ThreeDetectedPhotonsLeaveOnlyVacuum) {
  const RalphTuning tuned = tune_ralph();
  const RalphScenario s = ralph_network(tuned.theta1, tuned.theta2);
  const CMatrix u = compose_network(s.network);
  bool any_event = false;
  for (int p1 = 0; p1 <= 3; ++p1) {
    const auto y = conditional_operator(u, s.ancilla, MeasurementPattern{{p1, 3 - p1}}, s.signal_modes, 2);
    Eigen::JacobiSVD<CMatrix> svd(y.matrix);
    const auto& sv = svd.singularValues();
    if (sv[0] < 1e-12) continue;
    any_event = true;
    EXPECT_LT(sv[1] / sv[0], 1e-10);
    // Only the vacuum row survives.
    EXPECT_LT(y.matrix.bottomRows(2).norm(), 1e-12);
  }
  EXPECT_TRUE(any_event);
}

}  // namespace
}  // namespace qgate
