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

#include "qgate/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

namespace qgate {

double unitarity_deviation(const CMatrix& a) {
  if (a.rows() != a.cols()) return INFINITY;
  const CMatrix d = a * a.adjoint() - CMatrix::Identity(a.rows(), a.cols());
  return d.cwiseAbs().maxCoeff();
}

bool is_unitary(const CMatrix& a, double tol) {
  return a.rows() == a.cols() && unitarity_deviation(a) <= tol;
}

OccupationState::OccupationState(std::vector<int> counts) : counts_(std::move(counts)) {
  for (int c : counts_)
    if (c < 0) throw ValidationError("occupations", "negative occupation " + std::to_string(c));
}

OccupationState::OccupationState(std::initializer_list<int> counts)
    : OccupationState(std::vector<int>(counts)) {}

int OccupationState::total() const {
  int t = 0;
  for (int c : counts_) t += c;
  return t;
}

std::size_t OccupationHash::operator()(const OccupationState& s) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int c : s.counts()) {
    h ^= static_cast<std::size_t>(c) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

std::uint64_t binomial_checked(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) is divisible by i; divide out the gcd first to delay overflow.
    const std::uint64_t g = std::gcd(r, i);
    std::uint64_t next;
    if (__builtin_mul_overflow(r / g, (n - k + i) / (i / g), &next))
      throw ValidationError("truncation", "basis dimension overflows 64 bits");
    r = next;
  }
  return r;
}

void compositions(int total, int modes, std::vector<int>& cur, std::size_t pos,
                  std::vector<OccupationState>& out) {
  if (pos + 1 == static_cast<std::size_t>(modes)) {
    cur[pos] = total;
    out.emplace_back(cur);
    return;
  }
  for (int k = total; k >= 0; --k) {
    cur[pos] = k;
    compositions(total - k, modes, cur, pos + 1, out);
  }
}

int truncation_value(const Truncation& t) {
  return std::visit([](auto v) { return v.n; }, t);
}

}  // namespace

std::uint64_t basis_dimension(int modes, const Truncation& truncation) {
  if (modes < 1) throw ValidationError("modes", "need at least one mode");
  const int n = truncation_value(truncation);
  if (n < 0) throw ValidationError("truncation", "negative photon number");
  if (std::holds_alternative<MaxTotalPhotons>(truncation))
    return binomial_checked(static_cast<std::uint64_t>(modes) + n, n);
  return binomial_checked(static_cast<std::uint64_t>(n) + modes - 1, n);
}

BasisPtr FockBasis::enumerate(int modes, const Truncation& truncation, std::size_t limit) {
  const std::uint64_t dim = basis_dimension(modes, truncation);
  if (dim > limit)
    throw ValidationError("truncation", "basis dimension " + std::to_string(dim) +
                                            " exceeds limit " + std::to_string(limit));
  std::shared_ptr<FockBasis> b(new FockBasis());
  b->modes_ = modes;
  b->truncation_ = truncation;
  b->states_.reserve(dim);
  const int n = truncation_value(truncation);
  const int lo = std::holds_alternative<FixedTotalParticles>(truncation) ? n : 0;
  std::vector<int> cur(modes, 0);
  for (int t = lo; t <= n; ++t) compositions(t, modes, cur, 0, b->states_);
  b->index_.reserve(dim);
  for (std::size_t i = 0; i < b->states_.size(); ++i) b->index_.emplace(b->states_[i], i);
  return b;
}

int FockBasis::max_total() const { return truncation_value(truncation_); }

bool FockBasis::is_fixed_total() const {
  return std::holds_alternative<FixedTotalParticles>(truncation_);
}

std::optional<std::size_t> FockBasis::find(const OccupationState& s) const {
  if (s.modes() != static_cast<std::size_t>(modes_)) return std::nullopt;
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FockBasis::index(const OccupationState& s) const {
  auto i = find(s);
  if (!i) throw ValidationError("state", "occupation not in basis");
  return *i;
}

bool FockBasis::same_space(const FockBasis& other) const {
  return modes_ == other.modes_ && truncation_ == other.truncation_;
}

StateVector::StateVector(BasisPtr basis, CVector amplitudes)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
  if (!basis_) throw ValidationError("basis", "null basis");
  if (static_cast<std::size_t>(amplitudes_.size()) != basis_->size())
    throw ValidationError("amplitudes", "length " + std::to_string(amplitudes_.size()) +
                                            " does not match basis size " +
                                            std::to_string(basis_->size()));
}

StateVector StateVector::zero(BasisPtr basis) {
  const auto n = static_cast<Eigen::Index>(basis->size());
  return StateVector(std::move(basis), CVector::Zero(n));
}

StateVector StateVector::basis_state(BasisPtr basis, const OccupationState& s) {
  const std::size_t i = basis->index(s);
  StateVector v = zero(std::move(basis));
  v.amplitudes_[static_cast<Eigen::Index>(i)] = 1.0;
  return v;
}

Complex StateVector::amplitude(const OccupationState& s) const {
  auto i = basis_->find(s);
  return i ? amplitudes_[static_cast<Eigen::Index>(*i)] : Complex(0.0);
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw NumericError("cannot normalize a zero state");
  return StateVector(basis_, amplitudes_ / n);
}

DensityOperator::DensityOperator(BasisPtr basis, CMatrix matrix)
    : basis_(std::move(basis)), matrix_(std::move(matrix)) {
  if (!basis_) throw ValidationError("basis", "null basis");
  const auto n = static_cast<Eigen::Index>(basis_->size());
  if (matrix_.rows() != n || matrix_.cols() != n)
    throw ValidationError("matrix", "shape does not match basis size " + std::to_string(n));
}

DensityOperator DensityOperator::pure(const StateVector& psi) {
  return DensityOperator(psi.basis_ptr(), psi.amplitudes() * psi.amplitudes().adjoint());
}

double DensityOperator::hermiticity_defect() const {
  if (matrix_.size() == 0) return 0.0;
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityOperator::min_eigenvalue() const {
  const CMatrix h = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Truncated<StateVector> apply_ladder(const StateVector& psi, int mode, Ladder kind) {
  const FockBasis& b = psi.basis();
  if (mode < 0 || mode >= b.modes())
    throw ValidationError("mode", "index " + std::to_string(mode) + " out of range");
  CVector out = CVector::Zero(psi.amplitudes().size());
  double dropped = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Complex c = psi.amplitudes()[static_cast<Eigen::Index>(i)];
    if (c == Complex(0.0)) continue;
    std::vector<int> occ = b.state(i).counts();
    const int n = occ[mode];
    double factor;
    if (kind == Ladder::creation) {
      factor = std::sqrt(n + 1.0);
      occ[mode] = n + 1;
    } else {
      if (n == 0) continue;
      factor = std::sqrt(static_cast<double>(n));
      occ[mode] = n - 1;
    }
    auto j = b.find(OccupationState(std::move(occ)));
    if (j)
      out[static_cast<Eigen::Index>(*j)] += factor * c;
    else
      dropped += std::norm(factor * c);
  }
  return {StateVector(psi.basis_ptr(), std::move(out)), dropped};
}

namespace {

OccupationState concat(const OccupationState& a, const OccupationState& b) {
  std::vector<int> v = a.counts();
  v.insert(v.end(), b.counts().begin(), b.counts().end());
  return OccupationState(std::move(v));
}

BasisPtr product_basis(const FockBasis& a, const FockBasis& b, std::optional<int> cutoff) {
  const bool fa = a.is_fixed_total(), fb = b.is_fixed_total();
  if (fa != fb)
    throw ValidationError("truncation", "cannot combine fixed-total and max-total bases");
  const int modes = a.modes() + b.modes();
  if (fa) {
    if (cutoff && *cutoff != a.max_total() + b.max_total())
      throw ValidationError("cutoff", "fixed-total product has total " +
                                          std::to_string(a.max_total() + b.max_total()));
    return FockBasis::enumerate(modes, FixedTotalParticles{a.max_total() + b.max_total()});
  }
  const int n = cutoff.value_or(a.max_total() + b.max_total());
  if (n < 0) throw ValidationError("cutoff", "negative cutoff");
  return FockBasis::enumerate(modes, MaxTotalPhotons{n});
}

}  // namespace

Truncated<StateVector> tensor_product(const StateVector& a, const StateVector& b,
                                      std::optional<int> cutoff) {
  BasisPtr pb = product_basis(a.basis(), b.basis(), cutoff);
  CVector out = CVector::Zero(static_cast<Eigen::Index>(pb->size()));
  double dropped = 0.0;
  for (std::size_t i = 0; i < a.basis().size(); ++i) {
    const Complex ca = a.amplitudes()[static_cast<Eigen::Index>(i)];
    if (ca == Complex(0.0)) continue;
    for (std::size_t j = 0; j < b.basis().size(); ++j) {
      const Complex c = ca * b.amplitudes()[static_cast<Eigen::Index>(j)];
      if (c == Complex(0.0)) continue;
      auto k = pb->find(concat(a.basis().state(i), b.basis().state(j)));
      if (k)
        out[static_cast<Eigen::Index>(*k)] = c;
      else
        dropped += std::norm(c);
    }
  }
  return {StateVector(pb, std::move(out)), dropped};
}

Truncated<DensityOperator> tensor_product(const DensityOperator& a, const DensityOperator& b,
                                          std::optional<int> cutoff) {
  BasisPtr pb = product_basis(a.basis(), b.basis(), cutoff);
  // Map each product pair to its index in pb (or -1 when truncated away).
  const std::size_t na = a.basis().size(), nb = b.basis().size();
  std::vector<Eigen::Index> map(na * nb, -1);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      if (auto k = pb->find(concat(a.basis().state(i), b.basis().state(j))))
        map[i * nb + j] = static_cast<Eigen::Index>(*k);
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(pb->size()),
                              static_cast<Eigen::Index>(pb->size()));
  double dropped = 0.0;
  const CMatrix& ma = a.matrix();
  const CMatrix& mb = b.matrix();
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      const Eigen::Index r = map[i * nb + j];
      if (r < 0) {
        dropped += (ma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) *
                    mb(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)))
                       .real();
        continue;
      }
      for (std::size_t k = 0; k < na; ++k)
        for (std::size_t l = 0; l < nb; ++l) {
          const Eigen::Index c = map[k * nb + l];
          if (c < 0) continue;
          out(r, c) = ma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) *
                      mb(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l));
        }
    }
  return {DensityOperator(pb, std::move(out)), dropped};
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const int> keep) {
  const FockBasis& b = rho.basis();
  if (keep.empty()) throw ValidationError("keep", "empty keep set");
  std::vector<bool> kept(b.modes(), false);
  for (int m : keep) {
    if (m < 0 || m >= b.modes())
      throw ValidationError("keep", "mode " + std::to_string(m) + " out of range");
    if (kept[m]) throw ValidationError("keep", "duplicate mode " + std::to_string(m));
    kept[m] = true;
  }
  BasisPtr rb = FockBasis::enumerate(static_cast<int>(keep.size()), MaxTotalPhotons{b.max_total()});

  // Split each basis state into (kept part index, traced-out occupation).
  std::unordered_map<OccupationState, std::vector<std::pair<Eigen::Index, Eigen::Index>>,
                     OccupationHash>
      groups;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const OccupationState& s = b.state(i);
    std::vector<int> k, e;
    for (int m : keep) k.push_back(s[m]);
    for (int m = 0; m < b.modes(); ++m)
      if (!kept[m]) e.push_back(s[m]);
    const auto ki = static_cast<Eigen::Index>(rb->index(OccupationState(std::move(k))));
    groups[OccupationState(std::move(e))].emplace_back(ki, static_cast<Eigen::Index>(i));
  }
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(rb->size()),
                              static_cast<Eigen::Index>(rb->size()));
  const CMatrix& m = rho.matrix();
  for (const auto& [env, members] : groups)
    for (const auto& [kr, ir] : members)
      for (const auto& [kc, ic] : members) out(kr, kc) += m(ir, ic);
  return DensityOperator(rb, std::move(out));
}

double state_fidelity(const DensityOperator& rho, const StateVector& psi) {
  if (!rho.basis().same_space(psi.basis()))
    throw ValidationError("basis", "density operator and state live in different bases");
  const double f = psi.amplitudes().dot(rho.matrix() * psi.amplitudes()).real();
  return std::clamp(f, 0.0, 1.0);
}

CMatrix ladder_matrix(const FockBasis& basis, int mode, Ladder kind) {
  if (mode < 0 || mode >= basis.modes())
    throw ValidationError("mode", "index " + std::to_string(mode) + " out of range");
  const auto n = static_cast<Eigen::Index>(basis.size());
  CMatrix m = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::vector<int> occ = basis.state(i).counts();
    const int k = occ[mode];
    double f;
    if (kind == Ladder::creation) {
      f = std::sqrt(k + 1.0);
      occ[mode] = k + 1;
    } else {
      if (k == 0) continue;
      f = std::sqrt(static_cast<double>(k));
      occ[mode] = k - 1;
    }
    if (auto j = basis.find(OccupationState(std::move(occ))))
      m(static_cast<Eigen::Index>(*j), static_cast<Eigen::Index>(i)) = f;
  }
  return m;
}

CMatrix number_matrix(const FockBasis& basis, int mode) {
  if (mode < 0 || mode >= basis.modes())
    throw ValidationError("mode", "index " + std::to_string(mode) + " out of range");
  const auto n = static_cast<Eigen::Index>(basis.size());
  CMatrix m = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < basis.size(); ++i)
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = basis.state(i)[mode];
  return m;
}

}  // namespace qgate
