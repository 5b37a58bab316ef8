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
#include "qgate/fock.hpp"
#include "qgate/types.hpp"

namespace qgate {

/// Absorbing two-port: T T^+ + A A^+ = I.
struct LossyBeamSplitter {
  CMatrix transmission;
  CMatrix absorption;

  void validate(double tol = 1e-10) const;
  /// T = t U, A = a I with |t|^2 + |a|^2 = 1.
  static LossyBeamSplitter scalar(Complex t, Complex a, const CMatrix& unitary);
};

/// Unitary on (mode 0, mode 1, env 0, env 1):
///   [[ C V,  S W],
///    [-S V,  C W]]
/// with the polar forms T = C V, A = S W, C = sqrt(T T^+), S = sqrt(A A^+).
struct SU4Embedding {
  CMatrix lambda;
  CMatrix C;
  CMatrix S;
};

/// Throws ValidationError when A = 0 (use the lossless path instead).
SU4Embedding su4_embed(const LossyBeamSplitter& bs, double tol = 1e-10);

/// Tr_env[U (rho (x) |00><00|) U^+] with U the lifted embedding. rho must
/// live in a 2-mode MaxTotal basis. A = 0 reduces to conjugation by the
/// lifted T.
DensityOperator apply_lossy_channel(const DensityOperator& rho, const LossyBeamSplitter& bs);

struct QuadratureSpec {
  int points_per_axis = 32;
};

/// Coherent-state Kraus family for the environment trace:
///   W(alpha) = G(T) exp(beta . a),  beta_i = sum_k conj(alpha_k) B_{k i}
/// with G(T) the Fock lift of T, B = -S V the env rows of the embedding, and
/// weight w = prod(Gauss-Hermite weights) / pi^2 on (Re a1, Im a1, Re a2, Im a2).
class KrausFamily {
 public:
  KrausFamily(const LossyBeamSplitter& bs, BasisPtr basis, QuadratureSpec grid = {});

  const FockBasis& basis() const { return *basis_; }
  std::size_t size() const { return size_; }
  double weight(std::size_t index) const;
  CMatrix operator_at(std::size_t index) const;

  /// sum_i w_i W_i rho W_i^+, evaluated through accumulated moments.
  DensityOperator apply(const DensityOperator& rho) const;
  /// Same sum, one operator at a time.
  DensityOperator apply_explicit(const DensityOperator& rho) const;
  /// sum_i w_i W_i^+ W_i.
  CMatrix completeness() const;
  double completeness_defect() const;

 private:
  BasisPtr basis_;
  int points_ = 0;
  std::size_t size_ = 0;
  std::vector<double> nodes_, weights_;
  CMatrix gamma_;
  CMatrix env_rows_;
  // a^p for every multi-index p with |p| <= cutoff.
  std::vector<std::pair<int, int>> powers_;
  std::vector<CMatrix> lowering_;
  // moments_(p, q) = sum_i w_i beta_i^p conj(beta_i)^q / (p! q!)
  CMatrix moments_;
  bool unitary_ = false;
};

struct DetectorModel {
  double eta = 1.0;
  int cutoff = 4;
  void validate() const;
};

struct SourceModel {
  double p = 1.0;
  void validate() const;
};

/// Diagonal of Pi(n) on photon numbers 0..cutoff:
///   Pi(n)_k = C(k, n) eta^n (1 - eta)^(k - n), k >= n.
RVector detector_povm(const DetectorModel& d, int n);

/// (1 - p)|0><0| + p|1><1| on a single mode truncated at `cutoff` photons.
DensityOperator imperfect_source(const SourceModel& s, int cutoff = 1);

/// Gate under test: conditional-operator data plus the ideal action on a
/// logical subspace of the signal basis.
struct GateScenario {
  CMatrix lambda;
  std::vector<int> signal_modes;
  AncillaPrep ancilla;
  MeasurementPattern pattern;
  int cutoff = 2;
  /// Signal occupations spanning the logical space.
  std::vector<OccupationState> logical_states;
  /// Ideal action on the logical space.
  CMatrix target;
};

struct FidelityEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  double success_mean = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
};

/// Monte-Carlo average of the success-conditioned fidelity over Haar-random
/// logical input states. Each ancilla photon is present with probability p;
/// each detector reports n with the POVM above. Every physically reachable
/// photon number at the detectors is summed over.
FidelityEstimate average_gate_fidelity(const GateScenario& g, const SourceModel& s,
                                       const DetectorModel& d, int samples, std::uint64_t seed);

/// Ideal scenario for a synthesized single-mode phase gate.
GateScenario phase_gate_scenario(const CMatrix& lambda, const AncillaPrep& ancilla,
                                 const MeasurementPattern& pattern,
                                 const std::vector<double>& target_phases);

}  // namespace qgate
