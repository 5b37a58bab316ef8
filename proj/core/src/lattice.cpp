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

#include "qgate/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <cmath>
#include <numbers>
#include <thread>

#include <Eigen/Eigenvalues>

namespace qgate {

namespace {

void require_finite_nonneg(double v, const char* field) {
  if (!std::isfinite(v) || v < 0.0) throw ValidationError(field, "must be finite and >= 0");
}

void require_positive(double v, const char* field) {
  if (!std::isfinite(v) || v <= 0.0) throw ValidationError(field, "must be finite and > 0");
}

struct Bond {
  int from;
  int to;
  double rate;
};

// Assembles interaction diagonal plus hopping over `bonds`. Each pair of
// connected states is stored once in the upper triangle.
template <class Diagonal>
SparseHamiltonian assemble(BasisPtr basis, const std::vector<Bond>& bonds, Diagonal diagonal) {
  std::vector<SparseHamiltonian::Entry> entries;
  const auto& states = basis->states();
  for (std::size_t s = 0; s < states.size(); ++s) {
    const double d = diagonal(states[s]);
    if (d != 0.0) entries.push_back({static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s), d});
  }
  std::vector<int> counts;
  for (std::size_t s = 0; s < states.size(); ++s) {
    for (const Bond& b : bonds) {
      if (b.rate == 0.0) continue;
      // a_to^+ a_from and its conjugate: only the ordering with target
      // index below s is kept, the other arises from the partner state.
      for (int dir = 0; dir < 2; ++dir) {
        const int src = dir == 0 ? b.from : b.to;
        const int dst = dir == 0 ? b.to : b.from;
        const int ns = states[s][src];
        if (ns == 0) continue;
        counts = states[s].counts();
        const double amp = std::sqrt(static_cast<double>(ns) * (counts[dst] + 1));
        --counts[src];
        ++counts[dst];
        const std::size_t t = basis->index(OccupationState(counts));
        if (t < s) {
          entries.push_back(
              {static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(s), -b.rate * amp});
        }
      }
    }
  }
  return SparseHamiltonian(std::move(basis), std::move(entries));
}

std::vector<Bond> chain_bonds(int sites, Boundary boundary, int stride, int offset, double rate) {
  std::vector<Bond> bonds;
  for (int i = 0; i + 1 < sites; ++i) bonds.push_back({stride * i + offset, stride * (i + 1) + offset, rate});
  if (boundary == Boundary::periodic && sites > 2)
    bonds.push_back({stride * (sites - 1) + offset, offset, rate});
  return bonds;
}

}  // namespace

void PotentialParams::validate() const {
  require_positive(depth, "depth");
  require_positive(recoil_energy, "recoil_energy");
  require_positive(scattering_length, "scattering_length");
  require_positive(wavelength, "wavelength");
  require_positive(cavity_width, "cavity_width");
}

double collisional_U(const PotentialParams& p) {
  p.validate();
  return 4.0 * p.scattering_length * std::pow(p.depth, 0.75) * std::pow(p.recoil_energy, 0.25) /
         std::sqrt(p.wavelength * p.cavity_width);
}

double tunneling_J(double depth, double recoil_energy) {
  require_positive(depth, "depth");
  require_positive(recoil_energy, "recoil_energy");
  const double s = std::sqrt(depth / recoil_energy);
  return 0.5 * recoil_energy * std::exp(-0.25 * std::numbers::pi * std::numbers::pi * s) *
         (s + s * s * s);
}

double critical_depth(const PotentialParams& base, double ratio, double lo, double hi) {
  require_positive(ratio, "ratio");
  if (!(lo > 0.0 && hi > lo)) throw ValidationError("depth_range", "need 0 < lo < hi");
  auto excess = [&](double depth) {
    PotentialParams p = base;
    p.depth = depth;
    return collisional_U(p) / tunneling_J(depth, p.recoil_energy) - ratio;
  };
  double flo = excess(lo);
  if (flo * excess(hi) > 0.0) throw ValidationError("ratio", "U/J does not cross the requested ratio in range");
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = excess(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void BHParams::validate() const {
  require_finite_nonneg(U, "U");
  require_finite_nonneg(J, "J");
  if (sites < 2) throw ValidationError("sites", "need at least 2 sites");
  if (atoms < 1) throw ValidationError("atoms", "need at least 1 atom");
}

void TwoSpeciesParams::validate() const {
  require_finite_nonneg(U_aa, "U_aa");
  require_finite_nonneg(U_ab, "U_ab");
  require_finite_nonneg(U_bb, "U_bb");
  require_finite_nonneg(J_a, "J_a");
  require_finite_nonneg(J_b, "J_b");
  require_finite_nonneg(J_R, "J_R");
}

SparseHamiltonian::SparseHamiltonian(BasisPtr basis, std::vector<Entry> entries)
    : basis_(std::move(basis)), entries_(std::move(entries)) {
  for (const Entry& e : entries_) {
    if (e.row > e.col || e.col >= basis_->size())
      throw ValidationError("entries", "must lie in the upper triangle of the basis");
  }
}

void SparseHamiltonian::apply(const RVector& x, RVector& y) const {
  y.setZero(x.size());
  for (const Entry& e : entries_) {
    y[e.row] += e.value * x[e.col];
    if (e.row != e.col) y[e.col] += e.value * x[e.row];
  }
}

RMatrix SparseHamiltonian::to_dense() const {
  const auto n = static_cast<Eigen::Index>(dimension());
  RMatrix h = RMatrix::Zero(n, n);
  for (const Entry& e : entries_) {
    h(e.row, e.col) += e.value;
    if (e.row != e.col) h(e.col, e.row) += e.value;
  }
  return h;
}

SparseHamiltonian build_bh_hamiltonian(const BHParams& p, std::size_t limit) {
  p.validate();
  auto basis = FockBasis::enumerate(p.sites, FixedTotalParticles{p.atoms}, limit);
  const double half_u = 0.5 * p.U;
  return assemble(basis, chain_bonds(p.sites, p.boundary, 1, 0, p.J), [&](const OccupationState& s) {
    double e = 0.0;
    for (int n : s.counts()) e += half_u * n * (n - 1);
    return e;
  });
}

SparseHamiltonian build_two_species_hamiltonian(const TwoSpeciesParams& p, int sites, int atoms,
                                                Boundary boundary, std::size_t limit) {
  p.validate();
  if (sites < 2) throw ValidationError("sites", "need at least 2 sites");
  if (atoms < 1) throw ValidationError("atoms", "need at least 1 atom");
  auto basis = FockBasis::enumerate(2 * sites, FixedTotalParticles{atoms}, limit);
  std::vector<Bond> bonds = chain_bonds(sites, boundary, 2, 0, p.J_a);
  const auto b_bonds = chain_bonds(sites, boundary, 2, 1, p.J_b);
  bonds.insert(bonds.end(), b_bonds.begin(), b_bonds.end());
  for (int i = 0; i < sites; ++i) bonds.push_back({2 * i, 2 * i + 1, p.J_R});
  return assemble(basis, bonds, [&](const OccupationState& s) {
    double e = 0.0;
    for (int i = 0; i < sites; ++i) {
      const int na = s[2 * i];
      const int nb = s[2 * i + 1];
      e += 0.5 * p.U_aa * na * (na - 1) + p.U_ab * na * nb + 0.5 * p.U_bb * nb * (nb - 1);
    }
    return e;
  });
}

double SiteStatistics::max_variance() const {
  return variance.empty() ? 0.0 : *std::max_element(variance.begin(), variance.end());
}

double SiteStatistics::mean_variance() const {
  if (variance.empty()) return 0.0;
  double s = 0.0;
  for (double v : variance) s += v;
  return s / static_cast<double>(variance.size());
}

namespace {

template <class Weight>
SiteStatistics statistics_from(const FockBasis& basis, Weight weight) {
  const int w = basis.modes();
  SiteStatistics st;
  st.mean.assign(w, 0.0);
  std::vector<double> second(w, 0.0);
  double total = 0.0;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const double p = weight(k);
    total += p;
    const auto& s = basis.state(k);
    for (int i = 0; i < w; ++i) {
      st.mean[i] += p * s[i];
      second[i] += p * s[i] * s[i];
    }
  }
  if (!(total > 0.0)) throw NumericError("site_statistics: zero state");
  st.variance.resize(w);
  for (int i = 0; i < w; ++i) {
    st.mean[i] /= total;
    st.variance[i] = std::max(0.0, second[i] / total - st.mean[i] * st.mean[i]);
  }
  return st;
}

}  // namespace

SiteStatistics site_statistics(const StateVector& psi) {
  if (!psi.basis().is_fixed_total())
    throw ValidationError("psi", "site statistics need a fixed-particle basis");
  return statistics_from(psi.basis(), [&](std::size_t k) { return std::norm(psi.amplitudes()[k]); });
}

SiteStatistics site_statistics(const FockBasis& basis, const RVector& amplitudes) {
  if (!basis.is_fixed_total()) throw ValidationError("basis", "site statistics need a fixed-particle basis");
  if (static_cast<std::size_t>(amplitudes.size()) != basis.size())
    throw ValidationError("amplitudes", "size does not match the basis");
  return statistics_from(basis, [&](std::size_t k) { return amplitudes[k] * amplitudes[k]; });
}

RMatrix one_body_density(const FockBasis& basis, const RVector& amplitudes) {
  if (static_cast<std::size_t>(amplitudes.size()) != basis.size())
    throw ValidationError("amplitudes", "size does not match the basis");
  const int w = basis.modes();
  RMatrix rho = RMatrix::Zero(w, w);
  std::vector<int> counts;
  for (std::size_t s = 0; s < basis.size(); ++s) {
    const double cs = amplitudes[s];
    if (cs == 0.0) continue;
    const auto& st = basis.state(s);
    for (int j = 0; j < w; ++j) {
      if (st[j] == 0) continue;
      rho(j, j) += cs * cs * st[j];
      for (int i = 0; i < w; ++i) {
        if (i == j) continue;
        counts = st.counts();
        const double amp = std::sqrt(static_cast<double>(counts[j]) * (counts[i] + 1));
        --counts[j];
        ++counts[i];
        const auto t = basis.find(OccupationState(counts));
        if (t) rho(i, j) += amplitudes[*t] * cs * amp;
      }
    }
  }
  return rho;
}

double condensate_fraction(const FockBasis& basis, const RVector& amplitudes) {
  const RMatrix rho = one_body_density(basis, amplitudes);
  const double n = rho.trace();
  if (!(n > 0.0)) throw NumericError("condensate_fraction: empty state");
  Eigen::SelfAdjointEigenSolver<RMatrix> es(rho, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff() / n;
}

std::vector<ScanPoint> transition_scan(std::span<const double> ratios, int sites, int atoms,
                                       Boundary boundary, double tol) {
  if (sites > 10) throw ValidationError("sites", "scan is limited to 10 sites");
  for (double r : ratios) require_finite_nonneg(r, "u_over_j");
  std::vector<ScanPoint> out(ratios.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto worker = [&] {
    for (std::size_t k = next++; k < ratios.size(); k = next++) {
      try {
        BHParams p{ratios[k], 1.0, sites, atoms, boundary};
        const auto h = build_bh_hamiltonian(p);
        const GroundState g = ground_state(h, tol);
        const auto st = site_statistics(h.basis(), g.vector);
        out[k] = {ratios[k], g.energy, st.max_variance(), st.mean_variance(),
                  condensate_fraction(h.basis(), g.vector)};
      } catch (...) {
        std::lock_guard lock(failure_lock);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned threads =
      std::clamp<unsigned>(std::thread::hardware_concurrency(), 1u,
                           static_cast<unsigned>(std::max<std::size_t>(ratios.size(), 1)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  require_positive(lo, "lo");
  require_positive(hi, "hi");
  if (n < 2) throw ValidationError("points", "need at least 2 points");
  std::vector<double> g(n);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int k = 0; k < n; ++k) g[k] = std::exp(a + (b - a) * k / (n - 1));
  g.back() = hi;
  return g;
}

}  // namespace qgate
