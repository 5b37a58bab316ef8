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

#include <cstdint>
#include <vector>

#include "qgate/conditional.hpp"
#include "qgate/interferometer.hpp"
#include "qgate/optimizer.hpp"
#include "qgate/types.hpp"

namespace qgate {

/// The two complex conditions under which a 3-mode network with single
/// photons prepared and detected in modes 1 and 2 acts as
/// diag(c, c, c e^{i phi}) on mode 0:
///   r1 = per L(0|0) - per L
///   r2 = per L(0|0) [e^{i phi} + L00^2 - 2 L00] - 2 L01 L10 L02 L20
struct NSResiduals {
  Complex r1;
  Complex r2;
  double norm() const { return std::sqrt(std::norm(r1) + std::norm(r2)); }
};
NSResiduals ns_constraint_residuals(const CMatrix& lambda, double phi);

/// Diagonal phase gate on signal mode 0 of a `modes`-mode network:
/// Y = c diag(e^{i target[0]}, ..., e^{i target[K]}) on photon numbers 0..K,
/// with target[0] = 0.
struct PhaseGateTemplate {
  int modes = 3;
  AncillaPrep ancilla;
  MeasurementPattern pattern;
  std::vector<double> target_phases;

  int cutoff() const { return static_cast<int>(target_phases.size()) - 1; }
  /// Uses the closed-form residuals above instead of the generic constructor.
  bool use_ns_residuals() const;
};

struct SynthesisOptions {
  int seeds = 32;
  std::uint64_t seed = 20240601;
  double residual_tol = 1e-8;
  unsigned threads = 0;
};

struct OptimizationResult {
  std::vector<double> parameters;
  double success_probability = 0.0;
  double residual_norm = 0.0;
  int iterations = 0;
  int feasible_seeds = 0;
  int seeds = 0;
};

struct PhaseGateSolution {
  PhaseGateTemplate problem;
  OptimizationResult result;
  NetworkDescription network;
  CMatrix lambda;
  /// Re-derived from lambda through the permanent path.
  ConditionalOperator verified;
  /// Y[0][0].
  Complex c;
  /// max |Y - c diag(e^{i target})| / |c|.
  double verified_deviation = 0.0;
  UnitarityCheck unitarity;
};

/// Residual vector for a candidate mode matrix (real and imaginary parts).
std::vector<double> phase_gate_residuals(const PhaseGateTemplate& t, const CMatrix& lambda);
/// |Y[0][0]|^2 for a candidate mode matrix.
double phase_gate_success(const PhaseGateTemplate& t, const CMatrix& lambda);

PhaseGateSolution verify_phase_gate(const PhaseGateTemplate& t, const CMatrix& lambda);
PhaseGateSolution synthesize_phase_gate(const PhaseGateTemplate& t, const SynthesisOptions& o);

/// Ancilla families searched for the single-mode phase gate on 3 modes.
std::vector<PhaseGateTemplate> ns_templates(double phi);
/// Best feasible solution over ns_templates(phi). phi = 0 returns the identity.
PhaseGateSolution synthesize_ns(double phi, const SynthesisOptions& o = {});

/// Flips the sign of the N-photon amplitude of c_0|0> + ... + c_N|N>.
///
/// Signal mode 0 meets ancilla mode 1 at a single splitter. The ancilla
/// register (modes 1, 2) holds N - 1 photons in the N-dimensional state
///   sum_k prep[k] |k, N-1-k>
/// and the heralding event is the projection onto
///   sum_k herald[k] |k, N-1-k>.
/// Mode 2 never interacts; its photon number labels k.
struct SignFlipScheme {
  int n = 1;
  BeamSplitterParams bs;
  CVector prep;
  CVector herald;

  /// Mode matrix of the 3-mode network (the splitter on modes 0, 1).
  CMatrix lambda() const;
};

struct SignFlipSolution {
  SignFlipScheme scheme;
  OptimizationResult result;
  /// sum_{j,k} conj(herald[j]) prep[k] Y_{j,k}, each Y_{j,k} a Fock-ancilla
  /// conditional operator on photon numbers 0..N.
  ConditionalOperator verified;
  Complex c;
  double verified_deviation = 0.0;
  UnitarityCheck unitarity;
};

SignFlipSolution verify_sign_flip(const SignFlipScheme& scheme);
SignFlipSolution synthesize_sign_flip(int n, const SynthesisOptions& o = {});

/// Two-splitter scheme: BS1(theta1) on modes (0, 1), then BS2(theta2) on
/// (0, 2); ancilla |1,0>, detect |1,0>. Splitters have real T = cos, R = sin.
struct RalphScenario {
  NetworkDescription network;
  AncillaPrep ancilla{{1, 0}};
  MeasurementPattern pattern{{1, 0}};
  std::vector<int> signal_modes{0};
};
RalphScenario ralph_network(double theta1, double theta2);

struct RalphTuning {
  double theta1 = 0.0;
  double theta2 = 0.0;
  ConditionalOperator y;
  double success_probability = 0.0;
  double residual = 0.0;
};
/// Solves the two-angle system for Y = c diag(1, 1, e^{i phi}) with phi in
/// {0, pi} (real splitters only reach real diagonals), keeping the most
/// probable root.
RalphTuning tune_ralph(double phi = 3.141592653589793);

/// Dimension of span{ U|A> : U unitary on the ancilla modes }.
int ancilla_span_dimension(const std::vector<int>& occupations, int samples = 12,
                           std::uint64_t seed = 7);

/// Controlled phase from a balanced Mach-Zehnder with one phase gate per arm.
/// Modes: 0, 1 are the two signal rails; arm k ancillas follow in order.
struct CSGate {
  double phi = 0.0;
  NetworkDescription network;
  CMatrix lambda;
  AncillaPrep ancilla;
  MeasurementPattern pattern;
  std::vector<int> signal_modes{0, 1};
  ConditionalOperator y;
  /// 4x4 block on |00>, |01>, |10>, |11> (occupations of modes 0, 1).
  CMatrix logical;
  Complex c;
  double success_probability = 0.0;
  /// max |Y[:, logical] - c C_phi| / |c|, including leakage rows.
  double deviation = 0.0;
};
CSGate build_cs_gate(double phi, const PhaseGateSolution& arm);

/// diag(1, 1, 1, e^{i phi}) on |00>, |01>, |10>, |11>.
CMatrix controlled_phase(double phi);

}  // namespace qgate
