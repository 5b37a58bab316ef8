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

#include "qgate/decoherence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qgate/interferometer.hpp"
#include "qgate/random.hpp"

namespace qgate {

namespace {

constexpr double kPi = std::numbers::pi;

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Neumaier compensated sum.
struct CompensatedSum {
  double sum = 0.0, c = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      c += (sum - t) + x;
    else
      c += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + c; }
};

void check_two_mode(const FockBasis& b) {
  if (b.modes() != 2 || b.is_fixed_total())
    throw ValidationError("rho", "lossy channel acts on a 2-mode max-total basis");
}

}  // namespace

void LossyBeamSplitter::validate(double tol) const {
  if (transmission.rows() != 2 || transmission.cols() != 2)
    throw ValidationError("T", "transmission must be 2x2");
  if (absorption.rows() != 2 || absorption.cols() != 2)
    throw ValidationError("A", "absorption must be 2x2");
  const CMatrix d = transmission * transmission.adjoint() +
                    absorption * absorption.adjoint() - CMatrix::Identity(2, 2);
  if (d.cwiseAbs().maxCoeff() > tol)
    throw ValidationError("A", "T T^+ + A A^+ != I (energy conservation violated)");
}

LossyBeamSplitter LossyBeamSplitter::scalar(Complex t, Complex a, const CMatrix& unitary) {
  LossyBeamSplitter bs{t * unitary, a * CMatrix::Identity(2, 2)};
  bs.validate();
  return bs;
}

namespace {

struct Polar {
  CMatrix positive, unitary;
};

// M = P V with P = sqrt(M M^+).
Polar polar(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const CMatrix& u = svd.matrixU();
  Polar p;
  p.positive = u * svd.singularValues().cast<Complex>().asDiagonal() * u.adjoint();
  p.unitary = u * svd.matrixV().adjoint();
  return p;
}

}  // namespace

SU4Embedding su4_embed(const LossyBeamSplitter& bs, double tol) {
  bs.validate();
  if (bs.absorption.cwiseAbs().maxCoeff() <= tol)
    throw ValidationError("A", "absorption is zero; use the lossless path");
  const Polar t = polar(bs.transmission), a = polar(bs.absorption);
  SU4Embedding e;
  e.C = t.positive;
  e.S = a.positive;
  e.lambda = CMatrix(4, 4);
  e.lambda.topLeftCorner(2, 2) = bs.transmission;
  e.lambda.topRightCorner(2, 2) = bs.absorption;
  e.lambda.bottomLeftCorner(2, 2) = -e.S * t.unitary;
  e.lambda.bottomRightCorner(2, 2) = e.C * a.unitary;
  return e;
}

DensityOperator apply_lossy_channel(const DensityOperator& rho, const LossyBeamSplitter& bs) {
  check_two_mode(rho.basis());
  bs.validate();
  if (bs.absorption.cwiseAbs().maxCoeff() <= 1e-14) {
    const CMatrix g = lift_to_fock(bs.transmission, rho.basis());
    return DensityOperator(rho.basis_ptr(), g * rho.matrix() * g.adjoint());
  }
  const SU4Embedding e = su4_embed(bs);
  const FockBasis& b2 = rho.basis();
  BasisPtr b4 = FockBasis::enumerate(4, MaxTotalPhotons{b2.max_total()});
  // Columns of the lifted unitary for inputs with the environment in vacuum.
  const auto n2 = static_cast<Eigen::Index>(b2.size());
  CMatrix iso = CMatrix::Zero(static_cast<Eigen::Index>(b4->size()), n2);
  const CMatrix u = lift_to_fock(e.lambda, *b4);
  for (Eigen::Index i = 0; i < n2; ++i) {
    const OccupationState& s = b2.state(static_cast<std::size_t>(i));
    iso.col(i) = u.col(static_cast<Eigen::Index>(b4->index(OccupationState{s[0], s[1], 0, 0})));
  }
  const DensityOperator big(b4, iso * rho.matrix() * iso.adjoint());
  const int keep[] = {0, 1};
  const DensityOperator red = partial_trace(big, keep);
  return DensityOperator(rho.basis_ptr(), red.matrix());
}

KrausFamily::KrausFamily(const LossyBeamSplitter& bs, BasisPtr basis, QuadratureSpec grid)
    : basis_(std::move(basis)), points_(grid.points_per_axis) {
  check_two_mode(*basis_);
  bs.validate();
  if (points_ < 1) throw ValidationError("points_per_axis", "need at least one node");
  gamma_ = lift_to_fock(bs.transmission, *basis_);
  if (bs.absorption.cwiseAbs().maxCoeff() <= 1e-14) {
    unitary_ = true;
    size_ = 1;
    return;
  }
  env_rows_ = su4_embed(bs).lambda.bottomLeftCorner(2, 2);

  // Gauss-Hermite rule from the symmetric tridiagonal Jacobi matrix.
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(points_, points_);
  for (int k = 1; k < points_; ++k) jac(k, k - 1) = jac(k - 1, k) = std::sqrt(k / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  nodes_.resize(points_);
  weights_.resize(points_);
  for (int k = 0; k < points_; ++k) {
    nodes_[k] = es.eigenvalues()(k);
    weights_[k] = std::sqrt(kPi) * es.eigenvectors()(0, k) * es.eigenvectors()(0, k);
  }
  size_ = static_cast<std::size_t>(points_) * points_ * points_ * points_;

  const int cutoff = basis_->max_total();
  for (int total = 0; total <= cutoff; ++total)
    for (int p1 = total; p1 >= 0; --p1) powers_.emplace_back(p1, total - p1);
  const CMatrix a1 = ladder_matrix(*basis_, 0, Ladder::annihilation);
  const CMatrix a2 = ladder_matrix(*basis_, 1, Ladder::annihilation);
  const auto dim = static_cast<Eigen::Index>(basis_->size());
  for (auto [p1, p2] : powers_) {
    CMatrix m = CMatrix::Identity(dim, dim);
    for (int k = 0; k < p1; ++k) m = a1 * m;
    for (int k = 0; k < p2; ++k) m = a2 * m;
    lowering_.push_back(std::move(m));
  }

  const auto np = static_cast<Eigen::Index>(powers_.size());
  moments_ = CMatrix::Zero(np, np);
  std::vector<Complex> bp(powers_.size());
  const int p = points_;
  for (int i1 = 0; i1 < p; ++i1)
    for (int i2 = 0; i2 < p; ++i2) {
      // Accumulate the inner two axes first to limit rounding.
      CMatrix partial = CMatrix::Zero(np, np);
      for (int i3 = 0; i3 < p; ++i3)
        for (int i4 = 0; i4 < p; ++i4) {
          const Complex al1(nodes_[i1], nodes_[i2]), al2(nodes_[i3], nodes_[i4]);
          const Complex b1 = std::conj(al1) * env_rows_(0, 0) + std::conj(al2) * env_rows_(1, 0);
          const Complex b2 = std::conj(al1) * env_rows_(0, 1) + std::conj(al2) * env_rows_(1, 1);
          const double w = weights_[i3] * weights_[i4];
          for (std::size_t k = 0; k < powers_.size(); ++k)
            bp[k] = ipow(b1, powers_[k].first) * ipow(b2, powers_[k].second);
          for (Eigen::Index r = 0; r < np; ++r)
            for (Eigen::Index c = 0; c < np; ++c) partial(r, c) += w * bp[r] * std::conj(bp[c]);
        }
      moments_ += weights_[i1] * weights_[i2] * partial;
    }
  moments_ /= kPi * kPi;
  for (Eigen::Index r = 0; r < np; ++r)
    for (Eigen::Index c = 0; c < np; ++c)
      moments_(r, c) /= factorial(powers_[r].first) * factorial(powers_[r].second) *
                        factorial(powers_[c].first) * factorial(powers_[c].second);
}

double KrausFamily::weight(std::size_t index) const {
  if (index >= size_) throw ValidationError("index", "Kraus index out of range");
  if (unitary_) return 1.0;
  const std::size_t p = points_;
  const std::size_t i4 = index % p, i3 = (index / p) % p, i2 = (index / p / p) % p,
                    i1 = index / p / p / p;
  return weights_[i1] * weights_[i2] * weights_[i3] * weights_[i4] / (kPi * kPi);
}

CMatrix KrausFamily::operator_at(std::size_t index) const {
  if (index >= size_) throw ValidationError("index", "Kraus index out of range");
  if (unitary_) return gamma_;
  const std::size_t p = points_;
  const std::size_t i4 = index % p, i3 = (index / p) % p, i2 = (index / p / p) % p,
                    i1 = index / p / p / p;
  const Complex al1(nodes_[i1], nodes_[i2]), al2(nodes_[i3], nodes_[i4]);
  const Complex b1 = std::conj(al1) * env_rows_(0, 0) + std::conj(al2) * env_rows_(1, 0);
  const Complex b2 = std::conj(al1) * env_rows_(0, 1) + std::conj(al2) * env_rows_(1, 1);
  const auto dim = static_cast<Eigen::Index>(basis_->size());
  CMatrix e = CMatrix::Zero(dim, dim);
  for (std::size_t k = 0; k < powers_.size(); ++k) {
    const auto [p1, p2] = powers_[k];
    e += ipow(b1, p1) * ipow(b2, p2) / (factorial(p1) * factorial(p2)) * lowering_[k];
  }
  return gamma_ * e;
}

DensityOperator KrausFamily::apply(const DensityOperator& rho) const {
  if (!rho.basis().same_space(*basis_))
    throw ValidationError("rho", "state basis does not match the Kraus family basis");
  if (unitary_) return DensityOperator(rho.basis_ptr(), gamma_ * rho.matrix() * gamma_.adjoint());
  const auto dim = static_cast<Eigen::Index>(basis_->size());
  CMatrix inner = CMatrix::Zero(dim, dim);
  for (std::size_t r = 0; r < powers_.size(); ++r) {
    const CMatrix left = lowering_[r] * rho.matrix();
    for (std::size_t c = 0; c < powers_.size(); ++c) {
      const Complex m = moments_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      if (m == Complex(0.0)) continue;
      inner += m * left * lowering_[c].adjoint();
    }
  }
  return DensityOperator(rho.basis_ptr(), gamma_ * inner * gamma_.adjoint());
}

DensityOperator KrausFamily::apply_explicit(const DensityOperator& rho) const {
  if (!rho.basis().same_space(*basis_))
    throw ValidationError("rho", "state basis does not match the Kraus family basis");
  CMatrix out = CMatrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (std::size_t i = 0; i < size_; ++i) {
    const CMatrix w = operator_at(i);
    out += weight(i) * w * rho.matrix() * w.adjoint();
  }
  return DensityOperator(rho.basis_ptr(), std::move(out));
}

CMatrix KrausFamily::completeness() const {
  const CMatrix g = gamma_.adjoint() * gamma_;
  if (unitary_) return g;
  const auto dim = static_cast<Eigen::Index>(basis_->size());
  CMatrix out = CMatrix::Zero(dim, dim);
  for (std::size_t r = 0; r < powers_.size(); ++r)
    for (std::size_t c = 0; c < powers_.size(); ++c)
      out += moments_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) *
             lowering_[c].adjoint() * g * lowering_[r];
  return out;
}

double KrausFamily::completeness_defect() const {
  const CMatrix c = completeness();
  return (c - CMatrix::Identity(c.rows(), c.cols())).cwiseAbs().maxCoeff();
}

void DetectorModel::validate() const {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ValidationError("eta", "efficiency must lie in [0, 1]");
  if (cutoff < 0) throw ValidationError("cutoff", "negative detector cutoff");
}

void SourceModel::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("p", "source efficiency must lie in [0, 1]");
}

RVector detector_povm(const DetectorModel& d, int n) {
  d.validate();
  if (n < 0 || n > d.cutoff)
    throw ValidationError("n", "count " + std::to_string(n) + " outside [0, " +
                                   std::to_string(d.cutoff) + "]");
  RVector out = RVector::Zero(d.cutoff + 1);
  for (int k = n; k <= d.cutoff; ++k)
    out(k) = binomial(k, n) * std::pow(d.eta, n) * std::pow(1.0 - d.eta, k - n);
  return out;
}

DensityOperator imperfect_source(const SourceModel& s, int cutoff) {
  s.validate();
  if (cutoff < 1) throw ValidationError("cutoff", "source needs room for one photon");
  BasisPtr b = FockBasis::enumerate(1, MaxTotalPhotons{cutoff});
  CMatrix m = CMatrix::Zero(cutoff + 1, cutoff + 1);
  m(0, 0) = 1.0 - s.p;
  m(1, 1) = s.p;
  return DensityOperator(b, m);
}

namespace {

// All vectors v with lo[i] <= v[i] <= hi[i].
std::vector<std::vector<int>> box(const std::vector<int>& lo, const std::vector<int>& hi) {
  std::vector<std::vector<int>> out{{}};
  for (std::size_t i = 0; i < lo.size(); ++i) {
    std::vector<std::vector<int>> next;
    for (const auto& v : out)
      for (int k = lo[i]; k <= hi[i]; ++k) {
        auto w = v;
        w.push_back(k);
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

FidelityEstimate average_gate_fidelity(const GateScenario& g, const SourceModel& s,
                                       const DetectorModel& d, int samples, std::uint64_t seed) {
  s.validate();
  d.validate();
  if (samples < 1) throw ValidationError("samples", "need at least one sample");
  const int dl = static_cast<int>(g.logical_states.size());
  if (dl < 1) throw ValidationError("logical_states", "empty logical space");
  if (g.target.rows() != dl || g.target.cols() != dl)
    throw ValidationError("target", "target size does not match the logical space");
  int logical_max = 0;
  for (const auto& st : g.logical_states) logical_max = std::max(logical_max, st.total());
  if (logical_max > g.cutoff) throw ValidationError("cutoff", "logical state above cutoff");

  const std::vector<int>& m = g.ancilla.occupations;
  const std::vector<int>& n = g.pattern.counts;
  const int anc_total = g.ancilla.total();
  const int max_photons = logical_max + anc_total;

  // Weighted conditional operators restricted to logical input columns, one
  // per (ancilla photons present, detector outcome) pair.
  struct Term {
    CMatrix cols;
    std::vector<Eigen::Index> ideal_rows;
  };
  std::vector<Term> terms;
  const std::vector<int> zeros(m.size(), 0);
  for (const auto& a : box(zeros, m)) {
    double pa = 1.0;
    for (std::size_t i = 0; i < m.size(); ++i)
      pa *= binomial(m[i], a[i]) * std::pow(s.p, a[i]) * std::pow(1.0 - s.p, m[i] - a[i]);
    if (pa <= 1e-15) continue;
    std::vector<int> hi(n.size(), max_photons);
    for (const auto& k : box(n, hi)) {
      int kt = 0;
      double wk = 1.0;
      for (std::size_t j = 0; j < n.size(); ++j) {
        kt += k[j];
        wk *= binomial(k[j], n[j]) * std::pow(d.eta, n[j]) * std::pow(1.0 - d.eta, k[j] - n[j]);
      }
      int at = 0;
      for (int v : a) at += v;
      if (kt > logical_max + at || wk * pa <= 1e-15) continue;
      const int cut = g.cutoff + std::max(0, at - kt);
      const ConditionalOperator y = conditional_operator(
          g.lambda, AncillaPrep{a}, MeasurementPattern{k}, g.signal_modes, cut);
      Term t;
      t.cols = CMatrix(y.matrix.rows(), dl);
      for (int c = 0; c < dl; ++c) {
        const auto idx = static_cast<Eigen::Index>(y.signal_basis->index(g.logical_states[c]));
        t.cols.col(c) = std::sqrt(pa * wk) * y.matrix.col(idx);
        t.ideal_rows.push_back(idx);
      }
      terms.push_back(std::move(t));
    }
  }

  Rng rng(seed);
  CompensatedSum f_sum, f_sq, p_sum;
  int valid = 0;
  for (int k = 0; k < samples; ++k) {
    const CVector psi = random_unit_vector(dl, rng);
    const CVector ideal = g.target * psi;
    double num = 0.0, den = 0.0;
    for (const Term& t : terms) {
      const CVector out = t.cols * psi;
      Complex overlap = 0.0;
      for (int c = 0; c < dl; ++c) overlap += std::conj(ideal(c)) * out(t.ideal_rows[c]);
      num += std::norm(overlap);
      den += out.squaredNorm();
    }
    p_sum.add(den);
    if (den <= 0.0) continue;
    const double f = std::clamp(num / den, 0.0, 1.0);
    f_sum.add(f);
    f_sq.add(f * f);
    ++valid;
  }
  if (valid == 0) throw NumericError("zero success probability across all samples");
  FidelityEstimate e;
  e.samples = samples;
  e.seed = seed;
  e.mean = f_sum.value() / valid;
  const double var = std::max(0.0, f_sq.value() / valid - e.mean * e.mean);
  e.stderr_ = valid > 1 ? std::sqrt(var * valid / (valid - 1.0) / valid) : 0.0;
  e.success_mean = p_sum.value() / samples;
  return e;
}

GateScenario phase_gate_scenario(const CMatrix& lambda, const AncillaPrep& ancilla,
                                 const MeasurementPattern& pattern,
                                 const std::vector<double>& target_phases) {
  GateScenario g;
  g.lambda = lambda;
  g.signal_modes = {0};
  g.ancilla = ancilla;
  g.pattern = pattern;
  g.cutoff = static_cast<int>(target_phases.size()) - 1;
  const int dl = static_cast<int>(target_phases.size());
  g.target = CMatrix::Zero(dl, dl);
  for (int k = 0; k < dl; ++k) {
    g.logical_states.push_back(OccupationState{k});
    g.target(k, k) = std::polar(1.0, target_phases[k]);
  }
  return g;
}

}  // namespace qgate
