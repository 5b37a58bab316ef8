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

#include "qgate/conditional.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "qgate/permanent.hpp"

namespace qgate {

int AncillaPrep::total() const {
  int t = 0;
  for (int c : occupations) t += c;
  return t;
}

int MeasurementPattern::total() const {
  int t = 0;
  for (int c : counts) t += c;
  return t;
}

double ConditionalOperator::operator_norm() const {
  if (matrix.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(matrix);
  return svd.singularValues()(0);
}

std::vector<int> complement_modes(int modes, std::span<const int> signal_modes) {
  std::vector<bool> used(modes, false);
  for (int m : signal_modes) {
    if (m < 0 || m >= modes)
      throw ValidationError("signal_modes", "mode " + std::to_string(m) + " out of range");
    if (used[m]) throw ValidationError("signal_modes", "mode " + std::to_string(m) + " repeated");
    used[m] = true;
  }
  std::vector<int> rest;
  for (int m = 0; m < modes; ++m)
    if (!used[m]) rest.push_back(m);
  return rest;
}

OccupationState merge_occupations(int modes, std::span<const int> signal_modes,
                                  const std::vector<int>& signal,
                                  const std::vector<int>& rest) {
  std::vector<int> occ(modes, 0);
  std::vector<bool> is_signal(modes, false);
  for (std::size_t k = 0; k < signal_modes.size(); ++k) {
    occ[signal_modes[k]] = signal[k];
    is_signal[signal_modes[k]] = true;
  }
  std::size_t r = 0;
  for (int m = 0; m < modes; ++m)
    if (!is_signal[m]) occ[m] = rest[r++];
  return OccupationState(std::move(occ));
}

ConditionalOperator conditional_operator(const CMatrix& lambda, const AncillaPrep& ancilla,
                                         const MeasurementPattern& pattern,
                                         std::span<const int> signal_modes, int signal_cutoff) {
  if (lambda.rows() != lambda.cols() || lambda.rows() == 0)
    throw ValidationError("network", "mode matrix must be square and non-empty");
  const int modes = static_cast<int>(lambda.rows());
  if (signal_modes.empty()) throw ValidationError("signal_modes", "no signal modes given");
  const std::vector<int> rest = complement_modes(modes, signal_modes);
  if (ancilla.occupations.size() != rest.size())
    throw ValidationError("ancilla", "expected " + std::to_string(rest.size()) +
                                         " ancilla occupations, got " +
                                         std::to_string(ancilla.occupations.size()));
  if (pattern.counts.size() != rest.size())
    throw ValidationError("pattern", "expected " + std::to_string(rest.size()) +
                                         " detector counts, got " +
                                         std::to_string(pattern.counts.size()));
  for (int c : ancilla.occupations)
    if (c < 0) throw ValidationError("ancilla", "negative occupation");
  for (int c : pattern.counts)
    if (c < 0) throw ValidationError("pattern", "negative count");
  if (signal_cutoff < 0) throw ValidationError("cutoff", "negative cutoff");

  BasisPtr sb = FockBasis::enumerate(static_cast<int>(signal_modes.size()),
                                     MaxTotalPhotons{signal_cutoff});
  const auto dim = static_cast<Eigen::Index>(sb->size());
  CMatrix y = CMatrix::Zero(dim, dim);
  const int shift = ancilla.total() - pattern.total();
  for (std::size_t c = 0; c < sb->size(); ++c) {
    const OccupationState in =
        merge_occupations(modes, signal_modes, sb->state(c).counts(), ancilla.occupations);
    for (std::size_t r = 0; r < sb->size(); ++r) {
      if (sb->state(r).total() != sb->state(c).total() + shift) continue;
      const OccupationState out =
          merge_occupations(modes, signal_modes, sb->state(r).counts(), pattern.counts);
      y(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          transition_amplitude(lambda, in, out);
    }
  }
  return {std::move(sb), std::move(y)};
}

double success_probability(const ConditionalOperator& y, const StateVector& psi) {
  if (!psi.basis().same_space(*y.signal_basis))
    throw ValidationError("psi", "state basis does not match the signal basis");
  return (y.matrix * psi.amplitudes()).squaredNorm();
}

UnitarityCheck is_proportional_to_unitary(const CMatrix& y, double tol) {
  if (y.rows() != y.cols() || y.rows() == 0)
    throw ValidationError("matrix", "need a non-empty square matrix");
  const CMatrix g = y.adjoint() * y;
  UnitarityCheck out;
  out.scale = g.trace().real() / static_cast<double>(y.rows());
  out.deviation =
      (g - out.scale * CMatrix::Identity(y.rows(), y.cols())).cwiseAbs().maxCoeff();
  out.proportional = out.deviation <= tol;
  return out;
}

SpecialCaseFit special_case_operator(const CMatrix& lambda, SpecialCase which, int cutoff,
                                     double tol) {
  if (lambda.rows() != lambda.cols() || lambda.rows() < 2)
    throw ValidationError("lambda", "need a square network with at least two modes");
  const int n_modes = static_cast<int>(lambda.rows());
  const int k = n_modes - 1;
  std::vector<int> ones(k, 1), zeros(k, 0);
  const int signal[] = {0};
  AncillaPrep anc;
  MeasurementPattern pat;
  int shift = 0;
  switch (which) {
    case SpecialCase::all_singles_detect_vacuum:
      anc.occupations = ones, pat.counts = zeros, shift = k;
      break;
    case SpecialCase::vacuum_detect_singles:
      anc.occupations = zeros, pat.counts = ones, shift = -k;
      break;
    case SpecialCase::singles_detect_singles:
      anc.occupations = ones, pat.counts = ones, shift = 0;
      break;
  }
  const int sig_cutoff = cutoff + std::abs(shift);
  const ConditionalOperator y = conditional_operator(lambda, anc, pat, signal, sig_cutoff);

  SpecialCaseFit fit;
  fit.matrix = y.matrix;
  // Entries on the predicted band |n + shift><n| carry g; all others must vanish.
  const auto dim = y.matrix.rows();
  double stray = 0.0;
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c)
      if (r != c + shift) stray = std::max(stray, std::abs(y.matrix(r, c)));
  fit.structure_residual = stray;

  // g(n) with ladder factors removed. n runs over the number g acts on.
  auto ladder = [](int from, int to) {
    // |<to| (a^+ or a)^{|to-from|} |from>| = sqrt(max!/min!)
    double f = 1.0;
    for (int m = std::min(from, to) + 1; m <= std::max(from, to); ++m) f *= std::sqrt(double(m));
    return f;
  };
  for (int n = 0; n <= cutoff; ++n) {
    int in = n, out = n + shift;
    if (which == SpecialCase::vacuum_detect_singles) in = n + k, out = n;
    if (in < 0 || out < 0 || in >= dim || out >= dim) continue;
    fit.diagonal.push_back(y.matrix(out, in) / ladder(in, out));
  }

  const Complex l00 = lambda(0, 0);
  const int degree = which == SpecialCase::singles_detect_singles ? k : 0;
  const int samples = static_cast<int>(fit.diagonal.size());
  if (std::abs(l00) > 1e-12 && samples > 0) {
    CMatrix vand(samples, degree + 1);
    CVector rhs(samples);
    for (int n = 0; n < samples; ++n) {
      rhs(n) = fit.diagonal[n] / ipow(l00, n);
      for (int d = 0; d <= degree; ++d) vand(n, d) = std::pow(double(n), d);
    }
    const CVector coef = vand.colPivHouseholderQr().solve(rhs);
    fit.coefficients.assign(coef.data(), coef.data() + coef.size());
    double resid = 0.0;
    const CVector pred = vand * coef;
    for (int n = 0; n < samples; ++n)
      resid = std::max(resid, std::abs(pred(n) - rhs(n)) * std::pow(std::abs(l00), n));
    fit.fit_residual = resid;
  }
  fit.matches = fit.structure_residual <= tol && fit.fit_residual <= tol;
  return fit;
}

}  // namespace qgate
