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
#include <vector>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "qgate/lattice_gates.hpp"

namespace qgate {
namespace {

constexpr double kPi = std::numbers::pi;

// Block of the full two-site, two-atom, two-species Hamiltonian on the
// listed occupations (modes a1, b1, a2, b2).
RMatrix full_block(const TwoSpeciesParams& p, const std::vector<OccupationState>& states) {
  const auto h = build_two_species_hamiltonian(p, 2, 2);
  const RMatrix d = h.to_dense();
  RMatrix out(states.size(), states.size());
  for (std::size_t r = 0; r < states.size(); ++r)
    for (std::size_t c = 0; c < states.size(); ++c)
      out(r, c) = d(h.basis().index(states[r]), h.basis().index(states[c]));
  // The sector must be closed.
  double leak = 0.0;
  for (const auto& s : states) {
    const auto k = static_cast<Eigen::Index>(h.basis().index(s));
    leak += d.col(k).squaredNorm();
  }
  EXPECT_NEAR(leak, out.squaredNorm(), 1e-14);
  return out;
}

double lowest(const RMatrix& m) {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

TwoSpeciesParams couplings(double uaa, double ubb, double uab, double ja = 0.0, double jb = 0.0) {
  TwoSpeciesParams p;
  p.U_aa = uaa;
  p.U_bb = ubb;
  p.U_ab = uab;
  p.J_a = ja;
  p.J_b = jb;
  return p;
}

TEST(EffectiveModelTest, DoublyOccupiedSectorCarriesBosonicFactor) {
  const auto p = couplings(1.0, 1.3, 2.0, 0.0, 0.17);
  const RMatrix full = full_block(p, {{0, 1, 0, 1}, {0, 2, 0, 0}, {0, 0, 0, 2}});
  EXPECT_LT((full - effective_Hbb(std::sqrt(2.0) * p.J_b, p.U_bb)).norm(), 1e-14);
}

TEST(EffectiveModelTest, MixedSectors) {
  const auto p2 = couplings(1.0, 1.0, 1.7, 0.0, 0.21);
  EXPECT_LT((full_block(p2, {{1, 0, 0, 1}, {1, 1, 0, 0}}) - effective_Hab2(p2.J_b, p2.U_ab)).norm(),
            1e-14);
  // Moving the b atom links |11;00> to |10;01>, so the printed labels pair
  // the rates the other way round.
  const auto p4 = couplings(1.0, 1.0, 1.7, 0.13, 0.29);
  const RMatrix full = full_block(p4, {{1, 1, 0, 0}, {1, 0, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}});
  EXPECT_LT((full - effective_Hab4(p4.J_b, p4.J_a, p4.U_ab)).norm(), 1e-14);
  Eigen::PermutationMatrix<4> swap_middle;
  swap_middle.indices() << 0, 2, 1, 3;
  const RMatrix relabeled = swap_middle * effective_Hab4(p4.J_a, p4.J_b, p4.U_ab) * swap_middle.transpose();
  EXPECT_LT((full - relabeled).norm(), 1e-14);
}

TEST(EffectiveModelTest, Spectra) {
  const double j = 0.3, u = 1.4;
  Eigen::SelfAdjointEigenSolver<RMatrix> e2(effective_Hab2(j, u));
  const double r = std::sqrt(u * u + 4.0 * j * j);
  EXPECT_NEAR(e2.eigenvalues()[0], 0.5 * (u - r), 1e-14);
  EXPECT_NEAR(e2.eigenvalues()[1], 0.5 * (u + r), 1e-14);
  EXPECT_NEAR(lowest(effective_Hbb(j, u)), 0.5 * (u - std::sqrt(u * u + 8.0 * j * j)), 1e-14);
  const RMatrix z = effective_Hbb(0.0, u);
  EXPECT_EQ(z, RMatrix(Eigen::Vector3d(0.0, u, u).asDiagonal()));
  // Reversing both the outer and middle states maps the 4x4 model onto itself.
  Eigen::PermutationMatrix<4> rev;
  rev.indices() << 3, 2, 1, 0;
  const RMatrix h4 = effective_Hab4(0.1, 0.2, u);
  EXPECT_LT((rev * h4 * rev.transpose() - h4).norm(), 1e-15);
  EXPECT_THROW(effective_Hbb(-0.1, u), ValidationError);
}

// Exact logical energy shifts of the full model approach the second-order
// values with a relative error of order (J/U)^2.
TEST(EffectiveModelTest, PerturbativeShiftConvergesQuadratically) {
  std::vector<double> xs, ys;
  for (double j : {0.005, 0.01, 0.02, 0.04}) {
    const auto p = couplings(1.0, 1.0, 2.0, 0.0, j);
    const double e11 = lowest(full_block(p, {{0, 1, 0, 1}, {0, 2, 0, 0}, {0, 0, 0, 2}}));
    const double e01 = lowest(full_block(p, {{1, 0, 0, 1}, {1, 1, 0, 0}}));
    // With J_a = 0 the |10> state sees the mirror image of the |01> block.
    const double rate = e11 - 2.0 * e01;
    const double second_order = -4.0 * j * j / p.U_bb + 2.0 * j * j / p.U_ab;
    xs.push_back(std::log(j));
    ys.push_back(std::log(std::abs(rate - second_order) / std::abs(second_order)));
  }
  const double slope = (ys.back() - ys.front()) / (xs.back() - xs.front());
  EXPECT_NEAR(slope, 2.0, 0.3);
}

TEST(PulseTest, Validation) {
  EXPECT_THROW(PulseProfile::square(1.0, 0.1, 0.1, 10), ValidationError);
  EXPECT_THROW(PulseProfile::square(0.0, 0.1, 0.1), ValidationError);
  EXPECT_THROW(PulseProfile::square(1.0, -0.1, 0.1), ValidationError);
  EXPECT_THROW(PulseProfile::sampled(1.0, std::vector<double>(80, 0.1), std::vector<double>(81, 0.1)),
               ValidationError);
}

TEST(PulseTest, SampledInterpolatesShape) {
  const double T = 7.0;
  std::vector<double> ja(401), jb(401);
  for (int k = 0; k <= 400; ++k) {
    const double s = std::sin(kPi * k / 400.0);
    ja[k] = 0.1 * s * s;
    jb[k] = 0.2 * s * s;
  }
  const auto sampled = PulseProfile::sampled(T, ja, jb);
  const auto exact = PulseProfile::sin2(T, 0.1, 0.2);
  for (double t = 0.0; t <= T; t += 0.37) EXPECT_NEAR(sampled.jb(t), exact.jb(t), 1e-5);
  EXPECT_NEAR(sampled.max_jb(), 0.2, 1e-12);
}

TEST(PulseTest, SimpsonIsExactForCubics) {
  auto f = [](double x) { return 1.0 - 2.0 * x + 3.0 * x * x - x * x * x; };
  const double want = 2.0 - 4.0 + 8.0 - 4.0;  // integral on [0, 2]
  for (int n : {4, 5, 8, 9, 64, 65}) EXPECT_NEAR(simpson(f, 0.0, 2.0, n), want, 1e-13);
}

TEST(AdiabaticPhaseTest, SquarePulseClosedForms) {
  const double T = 12.0, ja = 0.07, jb = 0.11;
  const auto p = couplings(1.0, 1.5, 2.0);
  const auto a = adiabatic_phases(PulseProfile::square(T, ja, jb), p);
  EXPECT_NEAR(a.phase_00, -2.0 * ja * ja * T / p.U_aa, 1e-12);
  EXPECT_NEAR(a.phase_11, -2.0 * jb * jb * T / p.U_bb, 1e-12);
  EXPECT_NEAR(a.block_phase, -(ja * ja + jb * jb) * T / p.U_ab, 1e-12);
  EXPECT_NEAR(a.swap_integral, 2.0 * ja * jb * T / p.U_ab, 1e-12);
  EXPECT_NEAR(a.phi_cz, 2.0 * jb * jb * T * (1.0 / p.U_ab - 1.0 / p.U_bb), 1e-12);
}

TEST(AdiabaticPhaseTest, Sin2Average) {
  const double T = 50.0, j = 0.1;
  const auto a = adiabatic_phases(PulseProfile::sin2(T, 0.0, j), couplings(1.0, 1.0, 2.0));
  EXPECT_NEAR(a.phase_11, -2.0 * j * j * 3.0 * T / 8.0, 1e-10);
  EXPECT_DOUBLE_EQ(a.phase_00, 0.0);
}

TEST(AdiabaticPhaseTest, EqualCouplingsGiveNoConditionalPhase) {
  const auto a = adiabatic_phases(PulseProfile::sin2(30.0, 0.05, 0.08), couplings(1.0, 1.7, 1.7));
  EXPECT_NEAR(a.phi_cz, 0.0, 1e-15);
  EXPECT_THROW(adiabatic_phases(PulseProfile::sin2(30.0, 0.05, 0.08), couplings(1.0, 1.7, 0.0)),
               ValidationError);
}

TEST(SimulateTest, NoTunnelingIsIdentity) {
  const auto r = simulate_gate(PulseProfile::square(20.0, 0.0, 0.0), couplings(1.0, 1.0, 2.0), GateKind::cz);
  EXPECT_LT((r.logical - CMatrix::Identity(4, 4)).norm(), 1e-14);
  EXPECT_LT(r.max_leakage, 1e-14);
  EXPECT_DOUBLE_EQ(r.max_j_over_u, 0.0);
}

TEST(SimulateTest, ConstantPulseMatchesPropagator) {
  const double T = 40.0, ja = 0.07, jb = 0.11;
  const auto p = couplings(1.0, 1.5, 2.0);
  const auto r = simulate_gate(PulseProfile::square(T, ja, jb), p, GateKind::swap, 0.005);
  const CMatrix u00 = oracle::propagator(effective_Hbb(ja, p.U_aa).cast<Complex>(), T);
  const CMatrix u11 = oracle::propagator(effective_Hbb(jb, p.U_bb).cast<Complex>(), T);
  const CMatrix u4 = oracle::propagator(effective_Hab4(ja, jb, p.U_ab).cast<Complex>(), T);
  EXPECT_LT(std::abs(r.logical(0, 0) - u00(0, 0)), 1e-8);
  EXPECT_LT(std::abs(r.logical(3, 3) - u11(0, 0)), 1e-8);
  EXPECT_LT((r.logical.block(1, 1, 2, 2) - u4.block(1, 1, 2, 2)).norm(), 1e-8);
  EXPECT_NEAR(r.leakage[0], 1.0 - std::norm(u00(0, 0)), 1e-8);
  EXPECT_LT(r.norm_drift, 1e-10);
}

// Conditional phase of a smooth pulse against the integral of the exact
// instantaneous ground energies.
TEST(SimulateTest, SmoothPulseFollowsInstantaneousEnergies) {
  const auto p = couplings(1.0, 1.0, 2.0);
  const double j = 0.05;
  const double T = (kPi / 2.0) / (0.375 * j * j);
  const auto pulse = PulseProfile::sin2(T, 0.0, j);
  const auto r = simulate_gate(pulse, p, GateKind::cz);
  const int n = 4001;
  double e11 = 0.0, e01 = 0.0;
  for (int k = 0; k < n; ++k) {
    const double t = T * k / (n - 1);
    const double w = (k == 0 || k == n - 1) ? 0.5 : 1.0;
    e11 += w * lowest(effective_Hbb(pulse.jb(t), p.U_bb));
    e01 += w * lowest(effective_Hab2(pulse.jb(t), p.U_ab));
  }
  const double dt = T / (n - 1);
  EXPECT_NEAR(r.phi_cz, wrap_phase((e11 - 2.0 * e01) * dt), 1e-4);
  EXPECT_LT(r.max_leakage, 1e-9);
  EXPECT_NEAR(r.max_j_over_u, j, 1e-12);
  EXPECT_NEAR(r.adiabatic.phi_cz, -kPi / 2.0, 1e-10);
}

TEST(SimulateTest, ReportsNormDrift) {
  // Strong tunneling populates the high-energy states, where coarse RK4
  // steps lose norm.
  const auto pulse = PulseProfile::square(200.0, 0.5, 0.5);
  EXPECT_THROW(simulate_gate(pulse, couplings(1.0, 1.0, 2.0), GateKind::cz, 0.1), NumericError);
  EXPECT_NO_THROW(simulate_gate(pulse, couplings(1.0, 1.0, 2.0), GateKind::cz, 0.01));
  EXPECT_THROW(simulate_gate(pulse, couplings(1.0, 1.0, 2.0), GateKind::cz, 0.5), ValidationError);
}

TEST(SimulateTest, BalancedSqrtSwap) {
  const double ja = 0.05, jb = ja * std::sqrt(1.5);
  const auto p = couplings(1.0, 1.5, 1.25);
  const double T = (kPi / 4.0) * p.U_ab / (0.75 * ja * jb);
  const auto r = simulate_gate(PulseProfile::sin2(T, ja, jb), p, GateKind::swap);
  EXPECT_NEAR(std::abs(r.logical(1, 1)), 1.0 / std::sqrt(2.0), 1e-2);
  EXPECT_NEAR(std::abs(r.logical(2, 1)), 1.0 / std::sqrt(2.0), 1e-2);
  EXPECT_NEAR(r.phase_00, r.phase_11, 1e-3);
  EXPECT_NEAR(r.adiabatic.swap_integral, kPi / 4.0, 1e-10);
  EXPECT_LT(r.max_leakage, 1e-8);
}

TEST(GateMetricTest, PhaseHelpers) {
  EXPECT_NEAR(wrap_phase(3.0 * kPi), kPi, 1e-12);
  EXPECT_NEAR(wrap_phase(-kPi), kPi, 1e-12);
  EXPECT_NEAR(wrap_phase(0.3 - 4.0 * kPi), 0.3, 1e-12);
  EXPECT_NEAR(energy_phase(std::polar(1.0, -0.4)), 0.4, 1e-15);
}

TEST(GateMetricTest, ProcessFidelity) {
  CMatrix cz = CMatrix::Identity(4, 4);
  cz(3, 3) = -1.0;
  EXPECT_NEAR(process_fidelity(cz, cz), 1.0, 1e-15);
  EXPECT_NEAR(process_fidelity(CMatrix::Identity(4, 4), cz), (4.0 + 4.0) / 20.0, 1e-15);
  EXPECT_THROW(process_fidelity(cz, CMatrix::Identity(2, 2)), ValidationError);
}

TEST(GateMetricTest, CzErrorGrowsWithTunneling) {
  double t = 0.0, leak = 1.0;
  const double small = cz_error(0.03, &t, &leak);
  EXPECT_LT(small, 1e-4);
  EXPECT_NEAR(t, 8.0 * kPi / (3.0 * 0.03 * 0.03), 1e-9);
  EXPECT_LT(leak, 1e-8);
  EXPECT_GT(cz_error(0.08), small);
  EXPECT_THROW(cz_error(0.0), ValidationError);
}

}  // namespace
}  // namespace qgate
