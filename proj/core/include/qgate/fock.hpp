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

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <variant>
#include <vector>

#include "qgate/types.hpp"

namespace qgate {

/// Occupation numbers, one per mode.
class OccupationState {
 public:
  OccupationState() = default;
  explicit OccupationState(std::vector<int> counts);
  OccupationState(std::initializer_list<int> counts);

  std::size_t modes() const { return counts_.size(); }
  int operator[](std::size_t mode) const { return counts_[mode]; }
  int total() const;
  const std::vector<int>& counts() const { return counts_; }

  auto operator<=>(const OccupationState&) const = default;

 private:
  std::vector<int> counts_;
};

struct OccupationHash {
  std::size_t operator()(const OccupationState& s) const noexcept;
};

/// At most `n` quanta in total.
struct MaxTotalPhotons {
  int n = 0;
  bool operator==(const MaxTotalPhotons&) const = default;
};
/// Exactly `n` quanta in total.
struct FixedTotalParticles {
  int n = 0;
  bool operator==(const FixedTotalParticles&) const = default;
};
using Truncation = std::variant<MaxTotalPhotons, FixedTotalParticles>;

inline constexpr std::size_t kDefaultBasisLimit = 2'000'000;

/// Closed-form basis size. Throws ValidationError on 64-bit overflow.
std::uint64_t basis_dimension(int modes, const Truncation& truncation);

class FockBasis;
using BasisPtr = std::shared_ptr<const FockBasis>;

/// Enumerated occupation basis with a dense index.
///
/// Order: total ascending, then lexicographically descending inside each
/// total. Two modes, at most two quanta:
///   |0,0> |1,0> |0,1> |2,0> |1,1> |0,2>
class FockBasis {
 public:
  static BasisPtr enumerate(int modes, const Truncation& truncation,
                            std::size_t limit = kDefaultBasisLimit);

  int modes() const { return modes_; }
  const Truncation& truncation() const { return truncation_; }
  std::size_t size() const { return states_.size(); }
  /// Largest total that appears in the basis.
  int max_total() const;
  bool is_fixed_total() const;

  const OccupationState& state(std::size_t index) const { return states_.at(index); }
  const std::vector<OccupationState>& states() const { return states_; }
  std::optional<std::size_t> find(const OccupationState& s) const;
  /// Like find() but throws ValidationError when absent.
  std::size_t index(const OccupationState& s) const;

  /// Same mode count and truncation.
  bool same_space(const FockBasis& other) const;

 private:
  FockBasis() = default;
  int modes_ = 0;
  Truncation truncation_;
  std::vector<OccupationState> states_;
  std::unordered_map<OccupationState, std::size_t, OccupationHash> index_;
};

class StateVector {
 public:
  StateVector(BasisPtr basis, CVector amplitudes);
  static StateVector zero(BasisPtr basis);
  static StateVector basis_state(BasisPtr basis, const OccupationState& s);

  const FockBasis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  const CVector& amplitudes() const { return amplitudes_; }
  Complex amplitude(const OccupationState& s) const;

  double norm() const { return amplitudes_.norm(); }
  /// Throws NumericError on a zero vector.
  StateVector normalized() const;

 private:
  BasisPtr basis_;
  CVector amplitudes_;
};

class DensityOperator {
 public:
  DensityOperator(BasisPtr basis, CMatrix matrix);
  static DensityOperator pure(const StateVector& psi);

  const FockBasis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  const CMatrix& matrix() const { return matrix_; }

  double trace() const { return matrix_.trace().real(); }
  double hermiticity_defect() const;
  double min_eigenvalue() const;

 private:
  BasisPtr basis_;
  CMatrix matrix_;
};

enum class Ladder { creation, annihilation };

/// Result of an operation that may push weight outside the truncation.
template <class T>
struct Truncated {
  T value;
  /// Squared norm (or trace) discarded by the truncation.
  double dropped = 0.0;
};

Truncated<StateVector> apply_ladder(const StateVector& psi, int mode, Ladder kind);

/// Product space. For two MaxTotal bases the cutoff defaults to the sum of
/// both cutoffs; two FixedTotal bases give a FixedTotal product. Mixing the
/// two kinds is rejected.
Truncated<StateVector> tensor_product(const StateVector& a, const StateVector& b,
                                      std::optional<int> cutoff = std::nullopt);
Truncated<DensityOperator> tensor_product(const DensityOperator& a,
                                          const DensityOperator& b,
                                          std::optional<int> cutoff = std::nullopt);

/// Reduced operator on the `keep` modes (in the order given). The result
/// lives in a MaxTotal basis whose cutoff is the input's largest total.
DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep);

/// Re <psi|rho|psi>, clamped to [0, 1].
double state_fidelity(const DensityOperator& rho, const StateVector& psi);

/// Matrix of a ladder operator or a number operator on a basis. Entries that
/// leave the truncation are dropped.
CMatrix ladder_matrix(const FockBasis& basis, int mode, Ladder kind);
CMatrix number_matrix(const FockBasis& basis, int mode);

}  // namespace qgate
