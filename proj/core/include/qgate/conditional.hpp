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

#include <optional>
#include <span>
#include <vector>

#include "qgate/fock.hpp"
#include "qgate/types.hpp"

namespace qgate {

/// Photon numbers prepared in the ancilla modes. The ancilla modes are all
/// network modes that are not signal modes, in ascending order.
struct AncillaPrep {
  std::vector<int> occupations;
  int total() const;
};

/// Photon numbers detected in the measured modes: every mode that is not a
/// signal mode, in ascending order.
struct MeasurementPattern {
  std::vector<int> counts;
  int total() const;
};

/// Effective operator on the signal modes, in a MaxTotal(cutoff) basis.
/// Y[k', k] = <P, k'| U |A, k>.
struct ConditionalOperator {
  BasisPtr signal_basis;
  CMatrix matrix;

  std::size_t signal_dim() const { return signal_basis->size(); }
  double operator_norm() const;
};

/// Modes not listed in `signal_modes`, ascending.
std::vector<int> complement_modes(int modes, std::span<const int> signal_modes);

ConditionalOperator conditional_operator(const CMatrix& lambda, const AncillaPrep& ancilla,
                                         const MeasurementPattern& pattern,
                                         std::span<const int> signal_modes, int signal_cutoff);

/// Writes signal occupations and the ancilla/pattern counts into one
/// network-wide occupation vector.
OccupationState merge_occupations(int modes, std::span<const int> signal_modes,
                                  const std::vector<int>& signal,
                                  const std::vector<int>& rest);

/// ||Y psi||^2.
double success_probability(const ConditionalOperator& y, const StateVector& psi);

struct UnitarityCheck {
  bool proportional = false;
  /// c in Y^+ Y ~ c I (tr(Y^+Y)/dim).
  double scale = 0.0;
  /// max |Y^+Y - c I|.
  double deviation = 0.0;
};
UnitarityCheck is_proportional_to_unitary(const CMatrix& y, double tol = 1e-6);

enum class SpecialCase { all_singles_detect_vacuum, vacuum_detect_singles, singles_detect_singles };

/// Checks one of the three closed-form families on mode 0 (signal) of an
/// N-mode network with all other modes as ancillas:
///   all_singles_detect_vacuum: Y = (a^+)^{N-1} g(n)
///   vacuum_detect_singles:     Y = g(n) a^{N-1}
///   singles_detect_singles:    Y = g(n)
/// where g is diagonal. In the first two cases g(n) = kappa * Lambda_00^n;
/// in the third g is a polynomial of degree N-1 times Lambda_00^n.
struct SpecialCaseFit {
  bool matches = false;
  /// Largest entry of Y outside the predicted structure.
  double structure_residual = 0.0;
  /// Diagonal g(n), n = 0..cutoff (first case: on the input number).
  std::vector<Complex> diagonal;
  /// First two cases: kappa. Third case: polynomial coefficients of
  /// g(n)/Lambda_00^n in ascending powers of n.
  std::vector<Complex> coefficients;
  /// Residual of the coefficient fit.
  double fit_residual = 0.0;
  CMatrix matrix;
};
SpecialCaseFit special_case_operator(const CMatrix& lambda, SpecialCase which, int cutoff,
                                     double tol = 1e-9);

}  // namespace qgate
