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

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "qgate/lattice.hpp"
#include "qgate/random.hpp"

namespace qgate {
namespace {

constexpr double kPi = std::numbers::pi;

// Dense Bose-Hubbard matrix from ladder operators on a MaxTotal(A) basis,
// restricted to the states holding exactly A atoms.
RMatrix dense_oracle(const BHParams& p) {
  const auto b = FockBasis::enumerate(p.sites, MaxTotalPhotons{p.atoms});
  const auto n = static_cast<Eigen::Index>(b->size());
  CMatrix h = CMatrix::Zero(n, n);
  const CMatrix id = CMatrix::Identity(n, n);
  for (int i = 0; i < p.sites; ++i) {
    const CMatrix ni = number_matrix(*b, i);
    h += 0.5 * p.U * ni * (ni - id);
  }
  auto hop = [&](int i, int j) {
    const CMatrix t = ladder_matrix(*b, i, Ladder::creation) * ladder_matrix(*b, j, Ladder::annihilation);
    h -= p.J * (t + t.adjoint());
  };
  for (int i = 0; i + 1 < p.sites; ++i) hop(i, i + 1);
  if (p.boundary == Boundary::periodic && p.sites > 2) hop(p.sites - 1, 0);
  std::vector<Eigen::Index> keep;
  for (std::size_t k = 0; k < b->size(); ++k)
    if (b->state(k).total() == p.atoms) keep.push_back(static_cast<Eigen::Index>(k));
  RMatrix out(keep.size(), keep.size());
  for (std::size_t r = 0; r < keep.size(); ++r)
    for (std::size_t c = 0; c < keep.size(); ++c) out(r, c) = h(keep[r], keep[c]).real();
  return out;
}

RVector sorted_eigenvalues(const RMatrix& m) {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

TEST(ParametersTest, CollisionalStrength) {
  PotentialParams p;
  EXPECT_NEAR(collisional_U(p), 0.01792, 1e-12);
  PotentialParams q = p;
  q.scattering_length *= 2.0;
  EXPECT_NEAR(collisional_U(q), 2.0 * collisional_U(p), 1e-15);
  double prev = 0.0;
  for (double v = 1.0; v <= 40.0; v += 1.0) {
    q = p;
    q.depth = v;
    EXPECT_GT(collisional_U(q), prev);
    prev = collisional_U(q);
  }
  p.wavelength = -1.0;
  EXPECT_THROW(collisional_U(p), ValidationError);
}

TEST(ParametersTest, TunnelingRate) {
  EXPECT_NEAR(tunneling_J(1.0, 1.0), std::exp(-kPi * kPi / 4.0), 1e-15);
  double prev = tunneling_J(1.0, 1.0);
  for (double v = 1.5; v <= 40.0; v += 0.5) {
    EXPECT_LT(tunneling_J(v, 1.0), prev);
    prev = tunneling_J(v, 1.0);
  }
  EXPECT_THROW(tunneling_J(0.0, 1.0), ValidationError);
}

TEST(ParametersTest, CriticalDepthHitsRatio) {
  const PotentialParams p;
  const double v = critical_depth(p);
  PotentialParams q = p;
  q.depth = v;
  EXPECT_NEAR(collisional_U(q) / tunneling_J(v, 1.0), 11.6, 1e-8);
}

TEST(HamiltonianTest, TwoSitesTwoAtomsByHand) {
  const double u = 1.7, j = 0.3;
  const auto h = build_bh_hamiltonian({u, j, 2, 2});
  const double s = std::sqrt(2.0) * j;
  RMatrix want(3, 3);
  want << u, -s, 0.0, -s, 0.0, -s, 0.0, -s, u;
  EXPECT_LT((h.to_dense() - want).norm(), 1e-15);
  EXPECT_EQ(h.basis().state(0), (OccupationState{2, 0}));
}

TEST(HamiltonianTest, MatchesLadderOracleSpectrum) {
  Rng rng(3);
  for (auto [w, a, bc] : {std::tuple{3, 3, Boundary::open}, {4, 3, Boundary::periodic}, {5, 2, Boundary::periodic},
                          {2, 4, Boundary::periodic}}) {
    const BHParams p{rng.uniform(0.0, 3.0), rng.uniform(0.1, 1.0), w, a, bc};
    const auto h = build_bh_hamiltonian(p);
    EXPECT_LT((sorted_eigenvalues(h.to_dense()) - sorted_eigenvalues(dense_oracle(p))).norm(), 1e-12);
    const RMatrix d = h.to_dense();
    EXPECT_LT((d - d.transpose()).norm(), 1e-15);
  }
}

TEST(HamiltonianTest, NoTunnelingIsDiagonal) {
  const auto h = build_bh_hamiltonian({1.0, 0.0, 4, 3});
  const RMatrix d = h.to_dense();
  EXPECT_LT((d - RMatrix(d.diagonal().asDiagonal())).norm(), 1e-15);
  EXPECT_NEAR(ground_state(h).energy, 0.0, 1e-12);
}

TEST(HamiltonianTest, SectorDimension) {
  EXPECT_EQ(build_bh_hamiltonian({1.0, 1.0, 10, 8}).dimension(), 24310u);
  EXPECT_THROW(build_bh_hamiltonian({1.0, 1.0, 10, 8}, 1000), ValidationError);
}

TEST(HamiltonianTest, ValidatesParameters) {
  EXPECT_THROW(build_bh_hamiltonian({-1.0, 1.0, 3, 2}), ValidationError);
  EXPECT_THROW(build_bh_hamiltonian({1.0, 1.0, 1, 2}), ValidationError);
  EXPECT_THROW(build_bh_hamiltonian({1.0, 1.0, 3, 0}), ValidationError);
}

TEST(GroundStateTest, FreeBosonsCondense) {
  const auto g = ground_state(build_bh_hamiltonian({0.0, 1.0, 3, 2}));
  EXPECT_NEAR(g.energy, -2.0 * std::sqrt(2.0), 1e-12);
  EXPECT_LT(g.residual, 1e-9);
}

TEST(GroundStateTest, UnitFillingWithoutTunneling) {
  const auto h = build_bh_hamiltonian({2.0, 0.0, 5, 5});
  const auto g = ground_state(h);
  EXPECT_NEAR(g.energy, 0.0, 1e-12);
  EXPECT_NEAR(std::abs(g.vector[h.basis().index({1, 1, 1, 1, 1})]), 1.0, 1e-10);
}

TEST(GroundStateTest, MatchesDenseUpTo500States) {
  Rng rng(19);
  for (auto [w, a] : {std::pair{4, 4}, {5, 4}, {6, 5}, {7, 4}, {4, 6}, {3, 8}}) {
    for (auto bc : {Boundary::open, Boundary::periodic}) {
      const BHParams p{rng.uniform(0.0, 10.0), rng.uniform(0.1, 2.0), w, a, bc};
      const auto h = build_bh_hamiltonian(p);
      ASSERT_LE(h.dimension(), 500u);
      const auto g = ground_state(h, 1e-9);
      EXPECT_NEAR(g.energy, sorted_eigenvalues(h.to_dense())[0], 1e-10);
      RVector hx;
      h.apply(g.vector, hx);
      EXPECT_LT((hx - g.energy * g.vector).norm(), 1e-9);
    }
  }
}

TEST(GroundStateTest, ReportsNonConvergence) {
  const auto h = build_bh_hamiltonian({1.0, 1.0, 8, 8});
  EXPECT_THROW(ground_state(h, 1e-12, 3), NumericError);
}

TEST(StatisticsTest, SingleAtomFollowsTheOrbital) {
  const int w = 7;
  const auto h = build_bh_hamiltonian({5.0, 1.0, w, 1});
  const auto st = site_statistics(ground_state(h).state(h));
  for (int i = 0; i < w; ++i) {
    const double phi = std::sin(kPi * (i + 1) / (w + 1));
    EXPECT_NEAR(st.mean[i], 2.0 / (w + 1) * phi * phi, 1e-10);
  }
}

TEST(StatisticsTest, MeansSumToAtomNumber) {
  const auto h = build_bh_hamiltonian({3.0, 1.0, 6, 4});
  const auto st = site_statistics(h.basis(), ground_state(h).vector);
  double s = 0.0;
  for (double m : st.mean) s += m;
  EXPECT_NEAR(s, 4.0, 1e-10);
  for (double v : st.variance) EXPECT_GE(v, 0.0);
}

TEST(StatisticsTest, WeakInteractionMatchesFreeBosons) {
  const int w = 6, a = 6;
  const auto h = build_bh_hamiltonian({0.01, 1.0, w, a});
  const auto st = site_statistics(h.basis(), ground_state(h).vector);
  for (int i = 0; i < w; ++i) {
    const double phi = std::sin(kPi * (i + 1) / (w + 1));
    const double p = 2.0 / (w + 1) * phi * phi;
    EXPECT_NEAR(st.variance[i], a * p * (1.0 - p), 0.02);
  }
}

TEST(StatisticsTest, MottAndSuperfluidContrast) {
  const auto mott = build_bh_hamiltonian({100.0, 1.0, 8, 8});
  const auto sm = site_statistics(mott.basis(), ground_state(mott).vector);
  EXPECT_LT(sm.max_variance(), 0.15);
  for (double m : sm.mean) EXPECT_NEAR(m, 1.0, 0.02);
  const auto sf = build_bh_hamiltonian({0.1, 1.0, 8, 8});
  EXPECT_GT(site_statistics(sf.basis(), ground_state(sf).vector).max_variance(), 0.5);
  const auto deep = build_bh_hamiltonian({1000.0, 1.0, 6, 6});
  EXPECT_LT(site_statistics(deep.basis(), ground_state(deep).vector).max_variance(), 0.05);
}

TEST(StatisticsTest, CondensateFractionLimits) {
  const auto free = build_bh_hamiltonian({0.0, 1.0, 5, 3});
  EXPECT_NEAR(condensate_fraction(free.basis(), ground_state(free).vector), 1.0, 1e-10);
  const auto mott = build_bh_hamiltonian({1e4, 1.0, 5, 5});
  EXPECT_NEAR(condensate_fraction(mott.basis(), ground_state(mott).vector), 1.0 / 5.0, 1e-2);
}

TEST(ScanTest, CrossoverIsMonotone) {
  const auto grid = log_grid(0.1, 300.0, 9);
  const auto pts = transition_scan(grid, 6, 6);
  ASSERT_EQ(pts.size(), grid.size());
  for (std::size_t k = 1; k < pts.size(); ++k) {
    EXPECT_LT(pts[k].max_variance, pts[k - 1].max_variance);
    EXPECT_LT(pts[k].condensate_fraction, pts[k - 1].condensate_fraction);
  }
  EXPECT_THROW(transition_scan(grid, 11, 4), ValidationError);
}

TEST(ScanTest, LogGridEndpoints) {
  const auto g = log_grid(0.01, 1000.0, 6);
  EXPECT_DOUBLE_EQ(g.front(), 0.01);
  EXPECT_DOUBLE_EQ(g.back(), 1000.0);
  EXPECT_NEAR(g[1], 0.1, 1e-14);
}

}  // namespace
}  // namespace qgate
