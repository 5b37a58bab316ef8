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

#include "qgate/decoherence.hpp"
#include "qgate/gate_lab.hpp"
#include "qgate/interferometer.hpp"
#include "qgate/random.hpp"

namespace qgate {
namespace {

// T = U1 diag(cos) U2, A = U1 diag(sin) U3 satisfies T T^+ + A A^+ = I.
LossyBeamSplitter random_lossy(Rng& rng, double min_loss = 0.1) {
  const CMatrix u1 = haar_unitary(2, rng);
  const CMatrix u2 = haar_unitary(2, rng);
  const CMatrix u3 = haar_unitary(2, rng);
  Eigen::Vector2cd c, s;
  for (int k = 0; k < 2; ++k) {
    const double th = rng.uniform(min_loss, 1.2);
    c[k] = std::cos(th);
    s[k] = std::sin(th);
  }
  return {u1 * c.asDiagonal() * u2, u1 * s.asDiagonal() * u3};
}

DensityOperator random_rho(const BasisPtr& b, Rng& rng) {
  const auto n = static_cast<int>(b->size());
  CMatrix g(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) g(r, c) = Complex(rng.normal(), rng.normal());
  CMatrix rho = g * g.adjoint();
  return DensityOperator(b, rho / rho.trace());
}

TEST(EmbeddingTest, BlocksAndUnitarity) {
  Rng rng(5);
  const auto bs = random_lossy(rng);
  bs.validate();
  const auto e = su4_embed(bs);
  EXPECT_LT(unitarity_deviation(e.lambda), 1e-12);
  EXPECT_LT((e.lambda.topLeftCorner(2, 2) - bs.transmission).norm(), 1e-12);
  EXPECT_LT((e.lambda.topRightCorner(2, 2) - bs.absorption).norm(), 1e-12);
}

TEST(EmbeddingTest, ValidationRejectsEnergyGain) {
  LossyBeamSplitter bad{CMatrix::Identity(2, 2), 0.5 * CMatrix::Identity(2, 2)};
  EXPECT_THROW(bad.validate(), ValidationError);
  EXPECT_THROW(su4_embed(LossyBeamSplitter::scalar(1.0, 0.0, CMatrix::Identity(2, 2))), ValidationError);
}

TEST(LossyChannelTest, ScalarLossIsBinomial) {
  const double t = 0.8;
  const auto bs = LossyBeamSplitter::scalar(t, std::sqrt(1.0 - t * t), CMatrix::Identity(2, 2));
  const auto b = FockBasis::enumerate(2, MaxTotalPhotons{2});
  const auto rho = DensityOperator::pure(StateVector::basis_state(b, {2, 0}));
  const auto out = apply_lossy_channel(rho, bs);
  const double keep = t * t;
  EXPECT_NEAR(out.matrix()(b->index({2, 0}), b->index({2, 0})).real(), keep * keep, 1e-12);
  EXPECT_NEAR(out.matrix()(b->index({1, 0}), b->index({1, 0})).real(), 2 * keep * (1 - keep), 1e-12);
  EXPECT_NEAR(out.matrix()(b->index({0, 0}), b->index({0, 0})).real(), (1 - keep) * (1 - keep), 1e-12);
}

TEST(LossyChannelTest, LosslessLimitIsConjugation) {
  Rng rng(7);
  const CMatrix u = haar_unitary(2, rng);
  const auto b = FockBasis::enumerate(2, MaxTotalPhotons{2});
  const auto rho = random_rho(b, rng);
  const auto out = apply_lossy_channel(rho, LossyBeamSplitter::scalar(1.0, 0.0, u));
  const CMatrix g = lift_to_fock(u, *b);
  EXPECT_LT((out.matrix() - g * rho.matrix() * g.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(KrausTest, MomentAndExplicitSumsAgree) {
  Rng rng(11);
  const auto bs = random_lossy(rng);
  const auto b = FockBasis::enumerate(2, MaxTotalPhotons{2});
  const KrausFamily k(bs, b, QuadratureSpec{6});
  const auto rho = random_rho(b, rng);
  EXPECT_LT((k.apply(rho).matrix() - k.apply_explicit(rho).matrix()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(KrausTest, MatchesEnvironmentTrace) {
  Rng rng(13);
  const auto b = FockBasis::enumerate(2, MaxTotalPhotons{2});
  for (int rep = 0; rep < 3; ++rep) {
    const auto bs = random_lossy(rng);
    const KrausFamily k(bs, b);
    EXPECT_LT(k.completeness_defect(), 1e-8);
    const auto rho = random_rho(b, rng);
    const auto a = k.apply(rho);
    const auto e = apply_lossy_channel(rho, bs);
    EXPECT_LT((a.matrix() - e.matrix()).cwiseAbs().maxCoeff(), 1e-6);
    EXPECT_NEAR(e.trace(), 1.0, 1e-12);
    EXPECT_GT(e.min_eigenvalue(), -1e-12);
    EXPECT_LT(e.hermiticity_defect(), 1e-12);
  }
}

TEST(DetectorTest, PovmIsComplete) {
  for (double eta : {0.0, 0.3, 0.77, 1.0}) {
    const DetectorModel d{eta, 4};
    RVector sum = RVector::Zero(5);
    for (int n = 0; n <= 4; ++n) {
      const RVector p = detector_povm(d, n);
      EXPECT_GE(p.minCoeff(), 0.0);
      sum += p;
    }
    EXPECT_LT((sum - RVector::Ones(5)).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(DetectorTest, PerfectDetectorProjects) {
  const DetectorModel d{1.0, 4};
  for (int n = 0; n <= 4; ++n) EXPECT_EQ(detector_povm(d, n), RVector::Unit(5, n));
}

TEST(DetectorTest, RejectsBadEfficiency) {
  EXPECT_THROW((DetectorModel{1.5, 4}.validate()), ValidationError);
  EXPECT_THROW((SourceModel{-0.1}.validate()), ValidationError);
}

TEST(SourceTest, MixtureOfVacuumAndOnePhoton) {
  const auto rho = imperfect_source(SourceModel{0.7});
  EXPECT_NEAR(rho.matrix()(0, 0).real(), 0.3, 1e-15);
  EXPECT_NEAR(rho.matrix()(1, 1).real(), 0.7, 1e-15);
}

class FidelityTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    ns_ = new PhaseGateSolution(synthesize_ns(std::numbers::pi));
  }
  static void TearDownTestSuite() {
    delete ns_;
    ns_ = nullptr;
  }
  static GateScenario scenario() {
    return phase_gate_scenario(ns_->lambda, ns_->problem.ancilla, ns_->problem.pattern,
                               ns_->problem.target_phases);
  }
  static PhaseGateSolution* ns_;
};

PhaseGateSolution* FidelityTest::ns_ = nullptr;

TEST_F(FidelityTest, IdealComponentsGiveUnitFidelity) {
  const auto f = average_gate_fidelity(scenario(), SourceModel{1.0}, DetectorModel{1.0, 4}, 50, 9);
  EXPECT_NEAR(f.mean, 1.0, 1e-9);
  EXPECT_NEAR(f.success_mean, 0.25, 1e-3);
  EXPECT_EQ(f.samples, 50);
}

TEST_F(FidelityTest, DecreasesWithImperfections) {
  const auto g = scenario();
  double prev = 2.0;
  for (double p : {1.0, 0.95, 0.9}) {
    const auto f = average_gate_fidelity(g, SourceModel{p}, DetectorModel{1.0, 4}, 40, 3);
    EXPECT_LT(f.mean, prev);
    prev = f.mean;
  }
  prev = 2.0;
  for (double eta : {1.0, 0.95, 0.9}) {
    const auto f = average_gate_fidelity(g, SourceModel{1.0}, DetectorModel{eta, 4}, 40, 3);
    EXPECT_LT(f.mean, prev);
    prev = f.mean;
  }
}

TEST_F(FidelityTest, SameSeedSameResult) {
  const auto g = scenario();
  const auto a = average_gate_fidelity(g, SourceModel{0.9}, DetectorModel{0.9, 4}, 30, 4);
  const auto b = average_gate_fidelity(g, SourceModel{0.9}, DetectorModel{0.9, 4}, 30, 4);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.stderr_, b.stderr_);
}

}  // namespace
}  // namespace qgate
