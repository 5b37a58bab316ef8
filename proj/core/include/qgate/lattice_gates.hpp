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

#pragma once

#include <array>
#include <functional>
#include <vector>

#include "qgate/lattice.hpp"
#include "qgate/types.hpp"

namespace qgate {

/// Doubly occupied V-system of species b in the basis
/// {|01;01>, |02;00>, |00;02>}.
RMatrix effective_Hbb(double J_b, double U_bb);
/// Basis {|1,0;0,1>, |1,1;0,0>}.
RMatrix effective_Hab2(double J_b, double U_ab);
/// Basis {|11;00>, |10;01>, |01;10>, |00;11>}.
RMatrix effective_Hab4(double J_a, double J_b, double U_ab);

/// Tunneling rates J_a(t), J_b(t) on [0, T].
class PulseProfile {
 public:
  using Shape = std::function<double(double)>;

  PulseProfile(double duration, Shape ja, Shape jb, int samples = 257);

  static PulseProfile square(double duration, double ja, double jb, int samples = 257);
  /// J sin^2(pi t / T).
  static PulseProfile sin2(double duration, double ja, double jb, int samples = 257);
  /// Uniform samples on [0, T] including both end points, interpolated
  /// linearly in between.
  static PulseProfile sampled(double duration, std::vector<double> ja, std::vector<double> jb);

  double duration() const { return duration_; }
  int samples() const { return samples_; }
  double ja(double t) const { return ja_(t); }
  double jb(double t) const { return jb_(t); }
  double max_ja() const;
  double max_jb() const;

 private:
  double duration_;
  Shape ja_;
  Shape jb_;
  int samples_;
};

/// Simpson's rule on `samples` equally spaced points (3/8 rule on the last
/// panel for an odd interval count).
double simpson(const std::function<double(double)>& f, double a, double b, int samples);

/// Phases in the energy convention: a state picks up exp(-i phase).
struct AdiabaticPhases {
  /// phase_11 - phase_01 - phase_10 + phase_00 = 2 int J_b^2 (1/U_ab - 1/U_bb).
  double phi_cz = 0.0;
  double phase_00 = 0.0;  ///< -2 int J_a^2 / U_aa
  double phase_11 = 0.0;  ///< -2 int J_b^2 / U_bb
  double block_phase = 0.0;  ///< -int (J_a^2 + J_b^2) / U_ab on {|01>, |10>}
  double swap_integral = 0.0;  ///< I = 2 int J_a J_b / U_ab
};

AdiabaticPhases adiabatic_phases(const PulseProfile& pulse, const TwoSpeciesParams& p);

enum class GateKind { cz, swap };

struct GateReport {
  GateKind kind = GateKind::cz;
  /// Logical map in the order |00>, |01>, |10>, |11>.
  CMatrix logical;
  std::array<double, 4> leakage{};
  double max_leakage = 0.0;
  double norm_drift = 0.0;
  int steps = 0;
  double max_j_over_u = 0.0;
  double phase_00 = 0.0;
  double phase_11 = 0.0;
  double block_phase = 0.0;
  double phi_cz = 0.0;
  double swap_integral = 0.0;
  AdiabaticPhases adiabatic;
  /// cz: |phi_cz - adiabatic|; swap: |I - adiabatic I| (both wrapped).
  double deviation = 0.0;
};

/// RK4 on the effective 3x3 and 4x4 Hamiltonians. `step_scale` is the step
/// size times the largest Gershgorin bound. Throws NumericError when the
/// norm drifts by more than 1e-8.
GateReport simulate_gate(const PulseProfile& pulse, const TwoSpeciesParams& p, GateKind which,
                         double step_scale = 0.01);

/// exp(-i phase) with phase taken from an amplitude, wrapped to (-pi, pi].
double energy_phase(Complex amplitude);
/// x wrapped to (-pi, pi].
double wrap_phase(double x);

/// (|Tr(V^+ M)|^2 + Tr(M^+ M)) / (d (d + 1)).
double process_fidelity(const CMatrix& m, const CMatrix& target);

struct CZTiming {
  double u_hz = 0.0;
  double j_over_u = 0.0;
  double duration_s = 0.0;
  double error = 0.0;
  double leakage = 0.0;
  bool met_budget = false;
};

/// Gate error of a CZ(pi) with sin^2 pulses on J_b at ratio j = J/U_bb,
/// U_ab = 2 U_bb, U_aa = U_bb, with local phases removed using the adiabatic
/// single-qubit terms. Energies are in units of U_bb, times in 1/U_bb.
double cz_error(double j_over_u, double* duration = nullptr, double* leakage = nullptr);

/// Largest J/U in [lo, hi] keeping the CZ error within `budget`, and the
/// resulting duration at U = 2 pi u_hz.
CZTiming estimate_cz_gate_time(double u_hz = 1000.0, double budget = 1e-3, double lo = 0.03,
                               double hi = 0.3);

}  // namespace qgate
