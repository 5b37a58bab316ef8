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

#include "qgate/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace qgate {

namespace {

void check_square(const CMatrix& m, int limit) {
  if (m.rows() != m.cols())
    throw ValidationError("matrix", "permanent needs a square matrix, got " +
                                        std::to_string(m.rows()) + "x" +
                                        std::to_string(m.cols()));
  if (m.rows() > limit)
    throw ValidationError("matrix", "size " + std::to_string(m.rows()) +
                                        " exceeds permanent limit " + std::to_string(limit));
}

double log_factorial(int n) { return std::lgamma(n + 1.0); }

}  // namespace

Complex permanent_naive(const CMatrix& m) {
  check_square(m, kNaivePermanentLimit);
  const int n = static_cast<int>(m.rows());
  if (n == 0) return 1.0;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Complex sum = 0.0;
  do {
    Complex p = 1.0;
    for (int i = 0; i < n; ++i) p *= m(i, perm[i]);
    sum += p;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

Complex permanent_ryser(const CMatrix& m) {
  check_square(m, kRyserPermanentLimit);
  const int n = static_cast<int>(m.rows());
  if (n == 0) return 1.0;
  // per = (-1)^n sum_S (-1)^|S| prod_i sum_{j in S} m(i, j)
  std::vector<Complex> rowsum(n, 0.0);
  Complex total = 0.0;
  std::uint64_t gray = 0;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < count; ++k) {
    const int j = std::countr_zero(k);
    gray ^= std::uint64_t{1} << j;
    const bool added = (gray >> j) & 1u;
    for (int i = 0; i < n; ++i) rowsum[i] += added ? m(i, j) : -m(i, j);
    Complex prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= rowsum[i];
    if (std::popcount(gray) & 1)
      total -= prod;
    else
      total += prod;
  }
  return (n & 1) ? -total : total;
}

Complex permanent(const CMatrix& m) {
  if (m.rows() == m.cols() && m.rows() <= 3) return permanent_naive(m);
  return permanent_ryser(m);
}

Complex subpermanent(const CMatrix& m, int row, int col) {
  if (m.rows() != m.cols())
    throw ValidationError("matrix", "subpermanent needs a square matrix");
  const int n = static_cast<int>(m.rows());
  if (n < 2) throw ValidationError("matrix", "subpermanent needs n >= 2");
  if (row < 0 || row >= n) throw ValidationError("row", "index out of range");
  if (col < 0 || col >= n) throw ValidationError("col", "index out of range");
  CMatrix minor(n - 1, n - 1);
  for (int i = 0, r = 0; i < n; ++i) {
    if (i == row) continue;
    for (int j = 0, c = 0; j < n; ++j) {
      if (j == col) continue;
      minor(r, c++) = m(i, j);
    }
    ++r;
  }
  return permanent(minor);
}

CMatrix repeated_index_matrix(const CMatrix& lambda, const OccupationState& in,
                              const OccupationState& out) {
  if (in.modes() != static_cast<std::size_t>(lambda.cols()) ||
      out.modes() != static_cast<std::size_t>(lambda.rows()))
    throw ValidationError("occupations", "mode count does not match matrix dimensions");
  std::vector<int> rows, cols;
  for (std::size_t j = 0; j < out.modes(); ++j) rows.insert(rows.end(), out[j], static_cast<int>(j));
  for (std::size_t i = 0; i < in.modes(); ++i) cols.insert(cols.end(), in[i], static_cast<int>(i));
  if (rows.size() != cols.size())
    throw ValidationError("occupations", "photon numbers differ: in " +
                                             std::to_string(in.total()) + ", out " +
                                             std::to_string(out.total()));
  const auto n = static_cast<Eigen::Index>(rows.size());
  CMatrix r(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) r(a, b) = lambda(rows[a], cols[b]);
  return r;
}

Complex transition_amplitude(const CMatrix& lambda, const OccupationState& in,
                             const OccupationState& out) {
  const CMatrix r = repeated_index_matrix(lambda, in, out);
  double lf = 0.0;
  for (int c : in.counts()) lf += log_factorial(c);
  for (int c : out.counts()) lf += log_factorial(c);
  return permanent(r) * std::exp(-0.5 * lf);
}

}  // namespace qgate
