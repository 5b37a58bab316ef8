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

#include "qgate/fock.hpp"
#include "qgate/types.hpp"

namespace qgate {

inline constexpr int kNaivePermanentLimit = 10;
inline constexpr int kRyserPermanentLimit = 30;

/// Sum over all n! permutations. n <= 10.
Complex permanent_naive(const CMatrix& m);
/// Ryser inclusion-exclusion with Gray-code subset order. n <= 30.
Complex permanent_ryser(const CMatrix& m);
/// Picks the cheaper exact method. The 0x0 permanent is 1.
Complex permanent(const CMatrix& m);
/// Permanent of `m` with row `row` and column `col` removed (0-based).
Complex subpermanent(const CMatrix& m, int row, int col);

/// Matrix with row j of `lambda` repeated out[j] times and column i repeated
/// in[i] times.
CMatrix repeated_index_matrix(const CMatrix& lambda, const OccupationState& in,
                              const OccupationState& out);

/// <out| U(lambda) |in> = per(lambda[out, in]) / sqrt(prod in! prod out!).
/// Unequal totals raise ValidationError.
Complex transition_amplitude(const CMatrix& lambda, const OccupationState& in,
                             const OccupationState& out);

}  // namespace qgate
