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

#include "qgate/interferometer.hpp"

#include <cmath>
#include <map>
#include <string>

#include "qgate/permanent.hpp"

namespace qgate {

BeamSplitterParams BeamSplitterParams::from_angles(double theta, double phase) {
  return {Complex(std::cos(theta), 0.0), std::polar(std::sin(theta), phase)};
}

bool BeamSplitterParams::is_lossless(double tol) const {
  return std::abs(std::norm(T) + std::norm(R) - 1.0) <= tol;
}

CMatrix beam_splitter_block(const BeamSplitterParams& bs) {
  CMatrix b(2, 2);
  b << bs.T, bs.R, -std::conj(bs.R), std::conj(bs.T);
  return b;
}

namespace {

void check_mode(int m, int modes, const char* field) {
  if (m < 0 || m >= modes)
    throw ValidationError(field, "mode " + std::to_string(m) + " out of range [0, " +
                                     std::to_string(modes) + ")");
}

// Left-multiplies rows (i, j) of `u` by the 2x2 block `b`.
void apply_rows(CMatrix& u, int i, int j, const CMatrix& b) {
  const Eigen::RowVectorXcd ri = u.row(i), rj = u.row(j);
  u.row(i) = b(0, 0) * ri + b(0, 1) * rj;
  u.row(j) = b(1, 0) * ri + b(1, 1) * rj;
}

}  // namespace

void NetworkDescription::validate() const {
  if (modes < 1) throw ValidationError("modes", "need at least one mode");
  for (const auto& e : elements) {
    if (const auto* bs = std::get_if<BeamSplitterElement>(&e)) {
      check_mode(bs->i, modes, "i");
      check_mode(bs->j, modes, "j");
      if (bs->i == bs->j) throw ValidationError("j", "beam splitter needs two distinct modes");
      if (!bs->params.is_lossless(1e-10))
        throw ValidationError("T", "|T|^2 + |R|^2 != 1 for a lossless beam splitter");
    } else {
      const auto& ps = std::get<PhaseShiftElement>(e);
      check_mode(ps.mode, modes, "i");
      if (!std::isfinite(ps.theta)) throw ValidationError("theta", "non-finite phase");
    }
  }
}

std::size_t NetworkDescription::beam_splitter_count() const {
  std::size_t n = 0;
  for (const auto& e : elements) n += std::holds_alternative<BeamSplitterElement>(e);
  return n;
}

CMatrix compose_network(const NetworkDescription& net) {
  net.validate();
  CMatrix u = CMatrix::Identity(net.modes, net.modes);
  for (const auto& e : net.elements) {
    if (const auto* bs = std::get_if<BeamSplitterElement>(&e)) {
      apply_rows(u, bs->i, bs->j, beam_splitter_block(bs->params));
    } else {
      const auto& ps = std::get<PhaseShiftElement>(e);
      u.row(ps.mode) *= std::polar(1.0, ps.theta);
    }
  }
  return u;
}

ReckDecomposition reck_decompose(const CMatrix& u_in, double tol) {
  if (u_in.rows() != u_in.cols() || u_in.rows() == 0)
    throw ValidationError("unitary", "need a non-empty square matrix");
  if (unitarity_deviation(u_in) > tol)
    throw ValidationError("unitary", "matrix is not unitary within " + std::to_string(tol));
  const int n = static_cast<int>(u_in.rows());
  CMatrix u = u_in;
  std::vector<BeamSplitterElement> nulling;
  for (int c = 0; c + 1 < n; ++c) {
    for (int q = n - 1; q > c; --q) {
      const Complex x = u(q - 1, c), y = u(q, c);
      if (std::abs(y) <= 1e-15) continue;
      const double r = std::hypot(std::abs(x), std::abs(y));
      BeamSplitterParams g{std::conj(x) / r, std::conj(y) / r};
      apply_rows(u, q - 1, q, beam_splitter_block(g));
      u(q, c) = 0.0;
      nulling.push_back({q - 1, q, g});
    }
  }
  // u is now diagonal: U_in = G_1^+ ... G_K^+ D.
  ReckDecomposition out;
  out.network.modes = n;
  const Complex g0 = u(0, 0) / std::abs(u(0, 0));
  out.global_phase = g0;
  for (int k = 1; k < n; ++k) {
    const double theta = std::arg(u(k, k) / g0);
    if (std::abs(theta) > 1e-15) out.network.elements.push_back(PhaseShiftElement{k, theta});
  }
  for (auto it = nulling.rbegin(); it != nulling.rend(); ++it)
    out.network.elements.push_back(BeamSplitterElement{it->i, it->j, it->params.inverse()});
  return out;
}

int reck_parameter_count(int modes) { return modes * modes; }

namespace {

template <class Visit>
void walk_mesh(int n, std::span<const double> p, Visit&& visit) {
  if (static_cast<int>(p.size()) != reck_parameter_count(n))
    throw ValidationError("parameters", "expected " + std::to_string(reck_parameter_count(n)) +
                                            " angles, got " + std::to_string(p.size()));
  const std::size_t split = static_cast<std::size_t>(n) * (n - 1);
  for (int m = 0; m < n; ++m) visit(PhaseShiftElement{m, p[split + m]});
  std::size_t k = 0;
  for (int c = 0; c + 1 < n; ++c)
    for (int q = n - 1; q > c; --q, k += 2)
      visit(BeamSplitterElement{q - 1, q, BeamSplitterParams::from_angles(p[k], p[k + 1])});
}

}  // namespace

NetworkDescription network_from_angles(int modes, std::span<const double> params) {
  NetworkDescription net{modes, {}};
  walk_mesh(modes, params, [&](NetworkElement e) { net.elements.push_back(e); });
  return net;
}

CMatrix unitary_from_angles(int modes, std::span<const double> params) {
  CMatrix u = CMatrix::Identity(modes, modes);
  walk_mesh(modes, params, [&](const NetworkElement& e) {
    if (const auto* bs = std::get_if<BeamSplitterElement>(&e))
      apply_rows(u, bs->i, bs->j, beam_splitter_block(bs->params));
    else {
      const auto& ps = std::get<PhaseShiftElement>(e);
      u.row(ps.mode) *= std::polar(1.0, ps.theta);
    }
  });
  return u;
}

CMatrix lift_to_fock(const CMatrix& lambda, const FockBasis& basis) {
  if (lambda.rows() != lambda.cols() || lambda.rows() != basis.modes())
    throw ValidationError("lambda", "matrix size does not match basis mode count " +
                                        std::to_string(basis.modes()));
  const auto dim = static_cast<Eigen::Index>(basis.size());
  CMatrix out = CMatrix::Zero(dim, dim);
  // States are ordered by total, so each sector is a contiguous block.
  std::size_t start = 0;
  while (start < basis.size()) {
    const int total = basis.state(start).total();
    std::size_t end = start;
    while (end < basis.size() && basis.state(end).total() == total) ++end;
    for (std::size_t r = start; r < end; ++r)
      for (std::size_t c = start; c < end; ++c)
        out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            transition_amplitude(lambda, basis.state(c), basis.state(r));
    start = end;
  }
  return out;
}

namespace {

using Amplitudes = std::map<std::vector<int>, Complex>;

// exp(z a_to^+ a_from) applied to every term.
Amplitudes hop_series(const Amplitudes& in, int to, int from, Complex z) {
  Amplitudes out;
  for (const auto& [occ, c] : in) {
    const int nf = occ[from], nt = occ[to];
    Complex coef = c;
    double ladder = 1.0;
    for (int k = 0; k <= nf; ++k) {
      if (k > 0) {
        // (a_to^+ a_from)^k / k!: sqrt(nf!/(nf-k)!) sqrt((nt+k)!/nt!) / k!
        ladder *= std::sqrt(static_cast<double>(nf - k + 1) * (nt + k)) / k;
        coef *= z;
      }
      std::vector<int> o = occ;
      o[from] = nf - k;
      o[to] = nt + k;
      out[o] += coef * ladder;
    }
  }
  return out;
}

}  // namespace

StateVector apply_bs_factored(const StateVector& psi, const BeamSplitterParams& bs, int i,
                              int j) {
  const FockBasis& b = psi.basis();
  check_mode(i, b.modes(), "i");
  check_mode(j, b.modes(), "j");
  if (i == j) throw ValidationError("j", "beam splitter needs two distinct modes");
  if (!bs.is_lossless(1e-10)) throw ValidationError("T", "beam splitter is not lossless");

  Amplitudes terms;
  for (std::size_t k = 0; k < b.size(); ++k) {
    const Complex c = psi.amplitudes()[static_cast<Eigen::Index>(k)];
    if (c == Complex(0.0)) continue;
    const int nj = b.state(k)[j];
    if (nj > 0 && std::abs(bs.T) == 0.0)
      throw ValidationError("T", "T = 0 with mode " + std::to_string(j) +
                                     " occupied: T^{-n} factor diverges");
    terms[b.state(k).counts()] = c * ipow(bs.T, -nj);
  }
  terms = hop_series(terms, i, j, bs.R);
  terms = hop_series(terms, j, i, -std::conj(bs.R));
  CVector out = CVector::Zero(psi.amplitudes().size());
  for (const auto& [occ, c] : terms) {
    if (c == Complex(0.0)) continue;
    const Complex v = c * ipow(bs.T, occ[i]);
    out[static_cast<Eigen::Index>(b.index(OccupationState(occ)))] += v;
  }
  return StateVector(psi.basis_ptr(), std::move(out));
}

}  // namespace qgate
