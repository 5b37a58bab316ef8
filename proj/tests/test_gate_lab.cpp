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
#include <numbers>

#include "oracles.hpp"
#include "qgate/gate_lab.hpp"
#include "qgate/interferometer.hpp"
#include "qgate/optimizer.hpp"
#include "qgate/random.hpp"
#include "qgate/single_qubit.hpp"

namespace qgate {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(NSResidualTest, IdentityCases) {
  const auto zero = ns_constraint_residuals(CMatrix::Identity(3, 3), 0.0);
  EXPECT_LT(zero.norm(), 1e-15);
  const auto flip = ns_constraint_residuals(CMatrix::Identity(3, 3), kPi);
  EXPECT_NEAR(std::abs(flip.r2 + 2.0), 0.0, 1e-14);
  EXPECT_THROW(ns_constraint_residuals(CMatrix::Ones(3, 3), kPi), ValidationError);
}

TEST(NSSynthesisTest, SignShiftReachesOneQuarter) {
  const auto s = synthesize_ns(kPi);
  EXPECT_NEAR(s.result.success_probability, 0.25, 1e-3);
  EXPECT_LT(s.result.residual_norm, 1e-8);
  EXPECT_LT(s.verified_deviation, 1e-6);
  EXPECT_TRUE(s.unitarity.proportional);
  EXPECT_NEAR(s.unitarity.scale, s.result.success_probability, 1e-6);
  // Y from the network description, not from the optimizer's matrix.
  const CMatrix l = compose_network(s.network);
  const auto y = conditional_operator(l, s.problem.ancilla, s.problem.pattern, std::vector<int>{0}, 2);
  EXPECT_LT(std::abs(y.matrix(2, 2) + y.matrix(0, 0)), 1e-6);
  EXPECT_LT(std::abs(y.matrix(1, 1) - y.matrix(0, 0)), 1e-6);
}

TEST(NSSynthesisTest, ZeroPhaseIsIdentity) {
  const auto s = synthesize_ns(0.0);
  EXPECT_NEAR(s.result.success_probability, 1.0, 1e-15);
  EXPECT_TRUE(s.network.elements.empty());
}

TEST(NSSynthesisTest, QuarterTurnRegression) {
  // Frozen from the first verified run (seed 20240601, 32 starts).
  const auto s = synthesize_ns(kPi / 2);
  EXPECT_NEAR(s.result.success_probability, 0.1808195227, 1e-6);
  EXPECT_LT(s.verified_deviation, 1e-6);
}

TEST(NSSynthesisTest, PhaseOutsideRangeIsRejected) {
  EXPECT_THROW(synthesize_ns(4.0), ValidationError);
}

TEST(NSSynthesisTest, FeasibleCandidatesNeverBeatOneQuarter) {
  Rng rng(77);
  int found = 0;
  for (int attempt = 0; attempt < 600 && found < 100; ++attempt) {
    const auto t = ns_templates(kPi)[attempt % 2];
    ResidualFn r = [&t](std::span<const double> x) {
      const CMatrix l = unitary_from_angles(3, x);
      auto v = phase_gate_residuals(t, l);
      const double s = std::sqrt(phase_gate_success(t, l));
      for (double& q : v) q = s > 1e-150 ? q / s : 1e6;
      return v;
    };
    std::vector<double> x0(9);
    for (double& v : x0) v = rng.uniform(-kPi, kPi);
    const auto p = project_feasible(r, x0, 1e-12, 200);
    if (!p.converged || p.residual_norm > 1e-9) continue;
    ++found;
    EXPECT_LE(phase_gate_success(t, unitary_from_angles(3, p.x)), 0.25 + 1e-3);
  }
  EXPECT_GE(found, 50);
}

TEST(RalphTest, TunedAnglesGiveSignShift) {
  const RalphTuning t = tune_ralph();
  const CMatrix& y = t.y.matrix;
  EXPECT_LT(std::abs(y(1, 1) - y(0, 0)), 1e-8);
  EXPECT_LT(std::abs(y(2, 2) + y(0, 0)), 1e-8);
  EXPECT_NEAR(t.success_probability, (3.0 - std::sqrt(2.0)) / 7.0, 1e-8);
}

TEST(RalphTest, AncillaSpanDimensions) {
  EXPECT_EQ(ancilla_span_dimension({1, 0}), 2);
  EXPECT_EQ(ancilla_span_dimension({1, 1}), 3);
}

TEST(CSGateTest, TruthTableAndSuccess) {
  const auto arm = synthesize_ns(kPi);
  const CSGate g = build_cs_gate(kPi, arm);
  EXPECT_LT(g.deviation, 1e-8);
  EXPECT_NEAR(g.success_probability, std::pow(arm.result.success_probability, 2), 1e-6);
  const CMatrix want = controlled_phase(kPi);
  EXPECT_LT((g.logical / g.c - want).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(CSGateTest, ZeroPhaseIsIdentity) {
  const CSGate g = build_cs_gate(0.0, synthesize_ns(0.0));
  EXPECT_NEAR(g.success_probability, 1.0, 1e-12);
  EXPECT_LT((g.logical / g.c - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SignFlipTest, OnePhotonIsDeterministic) {
  const auto s = synthesize_sign_flip(1);
  EXPECT_NEAR(s.result.success_probability, 1.0, 1e-9);
  EXPECT_LT(s.verified_deviation, 1e-6);
}

TEST(SignFlipTest, TwoPhotonsMatchNS) {
  const auto s = synthesize_sign_flip(2);
  EXPECT_NEAR(s.result.success_probability, 0.25, 1e-3);
  EXPECT_LT(s.verified_deviation, 1e-6);
  EXPECT_TRUE(s.unitarity.proportional);
}

TEST(SignFlipTest, VerificationSumsFockAncillaOperators) {
  const auto s = synthesize_sign_flip(2);
  const CMatrix l = s.scheme.lambda();
  CMatrix y = CMatrix::Zero(3, 3);
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      const auto yk = conditional_operator(l, AncillaPrep{{k, 1 - k}}, MeasurementPattern{{j, 1 - j}},
                                           std::vector<int>{0}, 2);
      y += std::conj(s.scheme.herald[j]) * s.scheme.prep[k] * yk.matrix;
    }
  }
  EXPECT_LT((y - s.verified.matrix).norm(), 1e-12);
  EXPECT_LT(std::abs(y(2, 2) + y(0, 0)), 1e-6);
}

TEST(SingleQubitTest, EulerRoundTrip) {
  const auto id = euler_decompose(CMatrix::Identity(2, 2));
  EXPECT_LT((euler_compose(id) - CMatrix::Identity(2, 2)).norm(), 1e-12);
  Rng rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    const CMatrix u = haar_unitary(2, rng);
    EXPECT_LT((euler_compose(euler_decompose(u)) - u).norm(), 1e-10);
  }
  EXPECT_THROW(euler_decompose(CMatrix::Ones(2, 2)), ValidationError);
}

TEST(SingleQubitTest, HadamardAndCnot) {
  const CMatrix h = hadamard();
  EXPECT_LT((h * h - CMatrix::Identity(2, 2)).norm(), 1e-15);
  EXPECT_LT((h - (pauli_x() + pauli_z()) / std::sqrt(2.0)).norm(), 1e-15);
  CMatrix cnot = CMatrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = 1.0;
  cnot(2, 3) = cnot(3, 2) = 1.0;
  EXPECT_LT((cnot_from_cz() - cnot).norm(), 1e-14);
}

}  // namespace
}  // namespace qgate
