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

#include "qgate/lattice_gates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace qgate {

namespace {

constexpr double kPi = std::numbers::pi;

void require_nonneg(double v, const char* field) {
  if (!std::isfinite(v) || v < 0.0) throw ValidationError(field, "must be finite and >= 0");
}

template <int N>
using Mat = Eigen::Matrix<Complex, N, N>;
template <int N>
using Vec = Eigen::Matrix<Complex, N, 1>;

// Classical RK4 for d psi/dt = -i H(t) psi.
template <int N, class HOf>
Vec<N> evolve(HOf h_of, Vec<N> psi, double duration, int steps) {
  const double dt = duration / steps;
  const Complex mi(0.0, -1.0);
  for (int s = 0; s < steps; ++s) {
    const double t = s * dt;
    const Mat<N> h0 = h_of(t);
    const Mat<N> hm = h_of(t + 0.5 * dt);
    const Mat<N> h1 = h_of(t + dt);
    const Vec<N> k1 = mi * (h0 * psi);
    const Vec<N> k2 = mi * (hm * (psi + 0.5 * dt * k1));
    const Vec<N> k3 = mi * (hm * (psi + 0.5 * dt * k2));
    const Vec<N> k4 = mi * (h1 * (psi + dt * k3));
    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return psi;
}

double fold_swap(double i) { return std::acos(std::min(1.0, std::abs(std::cos(i)))); }

}  // namespace

RMatrix effective_Hbb(double J_b, double U_bb) {
  require_nonneg(J_b, "J_b");
  require_nonneg(U_bb, "U_bb");
  RMatrix h(3, 3);
  h << 0.0, -J_b, -J_b,
       -J_b, U_bb, 0.0,
       -J_b, 0.0, U_bb;
  return h;
}

RMatrix effective_Hab2(double J_b, double U_ab) {
  require_nonneg(J_b, "J_b");
  require_nonneg(U_ab, "U_ab");
  RMatrix h(2, 2);
  h << 0.0, -J_b,
       -J_b, U_ab;
  return h;
}

RMatrix effective_Hab4(double J_a, double J_b, double U_ab) {
  require_nonneg(J_a, "J_a");
  require_nonneg(J_b, "J_b");
  require_nonneg(U_ab, "U_ab");
  RMatrix h(4, 4);
  h << U_ab, -J_a, -J_b, 0.0,
       -J_a, 0.0, 0.0, -J_b,
       -J_b, 0.0, 0.0, -J_a,
       0.0, -J_b, -J_a, U_ab;
  return h;
}

PulseProfile::PulseProfile(double duration, Shape ja, Shape jb, int samples)
    : duration_(duration), ja_(std::move(ja)), jb_(std::move(jb)), samples_(samples) {
  if (!std::isfinite(duration) || duration <= 0.0) throw ValidationError("duration", "must be > 0");
  if (samples < 64) throw ValidationError("samples", "need at least 64 samples");
  if (!ja_ || !jb_) throw ValidationError("pulse", "missing shape");
  for (int k = 0; k < samples_; ++k) {
    const double t = duration_ * k / (samples_ - 1);
    if (!(ja_(t) >= 0.0)) throw ValidationError("J_a", "pulse samples must be >= 0");
    if (!(jb_(t) >= 0.0)) throw ValidationError("J_b", "pulse samples must be >= 0");
  }
}

PulseProfile PulseProfile::square(double duration, double ja, double jb, int samples) {
  return PulseProfile(duration, [ja](double) { return ja; }, [jb](double) { return jb; }, samples);
}

PulseProfile PulseProfile::sin2(double duration, double ja, double jb, int samples) {
  auto shape = [duration](double amp) {
    return [duration, amp](double t) {
      const double s = std::sin(kPi * t / duration);
      return amp * s * s;
    };
  };
  return PulseProfile(duration, shape(ja), shape(jb), samples);
}

PulseProfile PulseProfile::sampled(double duration, std::vector<double> ja, std::vector<double> jb) {
  if (ja.size() != jb.size()) throw ValidationError("samples", "J_a and J_b sample counts differ");
  const int n = static_cast<int>(ja.size());
  if (n < 64) throw ValidationError("samples", "need at least 64 samples");
  auto interp = [duration, n](std::vector<double> v) {
    return [duration, n, v = std::move(v)](double t) {
      const double x = std::clamp(t / duration, 0.0, 1.0) * (n - 1);
      const int k = std::min(static_cast<int>(x), n - 2);
      const double f = x - k;
      return (1.0 - f) * v[k] + f * v[k + 1];
    };
  };
  return PulseProfile(duration, interp(std::move(ja)), interp(std::move(jb)), n);
}

double PulseProfile::max_ja() const {
  double m = 0.0;
  for (int k = 0; k < samples_; ++k) m = std::max(m, ja_(duration_ * k / (samples_ - 1)));
  return m;
}

double PulseProfile::max_jb() const {
  double m = 0.0;
  for (int k = 0; k < samples_; ++k) m = std::max(m, jb_(duration_ * k / (samples_ - 1)));
  return m;
}

double simpson(const std::function<double(double)>& f, double a, double b, int samples) {
  if (samples < 4) throw ValidationError("samples", "need at least 4 samples");
  const int intervals = samples - 1;
  const double h = (b - a) / intervals;
  const int even = intervals % 2 == 0 ? intervals : intervals - 3;
  double s = 0.0;
  for (int k = 0; k < even; k += 2)
    s += h / 3.0 * (f(a + k * h) + 4.0 * f(a + (k + 1) * h) + f(a + (k + 2) * h));
  if (even != intervals) {
    const double x = a + even * h;
    s += 3.0 * h / 8.0 * (f(x) + 3.0 * f(x + h) + 3.0 * f(x + 2 * h) + f(x + 3 * h));
  }
  return s;
}

AdiabaticPhases adiabatic_phases(const PulseProfile& pulse, const TwoSpeciesParams& p) {
  p.validate();
  const double T = pulse.duration();
  const int n = pulse.samples();
  auto integral = [&](auto f) { return simpson(f, 0.0, T, n); };
  const double jaa = integral([&](double t) { return pulse.ja(t) * pulse.ja(t); });
  const double jbb = integral([&](double t) { return pulse.jb(t) * pulse.jb(t); });
  const double jab = integral([&](double t) { return pulse.ja(t) * pulse.jb(t); });
  auto over = [](double x, double u, const char* field) {
    if (x == 0.0) return 0.0;
    if (u <= 0.0) throw ValidationError(field, "must be > 0 when the matching tunneling is on");
    return x / u;
  };
  AdiabaticPhases a;
  a.phase_00 = -2.0 * over(jaa, p.U_aa, "U_aa");
  a.phase_11 = -2.0 * over(jbb, p.U_bb, "U_bb");
  a.block_phase = -over(jaa + jbb, p.U_ab, "U_ab");
  a.swap_integral = 2.0 * over(jab, p.U_ab, "U_ab");
  a.phi_cz = 2.0 * (over(jbb, p.U_ab, "U_ab") - over(jbb, p.U_bb, "U_bb"));
  return a;
}

double wrap_phase(double x) {
  double r = std::remainder(x, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

double energy_phase(Complex amplitude) { return wrap_phase(-std::arg(amplitude)); }

GateReport simulate_gate(const PulseProfile& pulse, const TwoSpeciesParams& p, GateKind which,
                         double step_scale) {
  p.validate();
  if (!(step_scale > 0.0 && step_scale <= 0.1)) throw ValidationError("step_scale", "must lie in (0, 0.1]");
  GateReport r;
  r.kind = which;
  r.adiabatic = adiabatic_phases(pulse, p);
  const double T = pulse.duration();
  const double ja_max = pulse.max_ja();
  const double jb_max = pulse.max_jb();
  const double u_min = std::min({ja_max > 0 ? p.U_aa : INFINITY, jb_max > 0 ? p.U_bb : INFINITY,
                                 ja_max + jb_max > 0 ? p.U_ab : INFINITY});
  r.max_j_over_u = ja_max + jb_max > 0 ? std::max(ja_max, jb_max) / u_min : 0.0;
  const double bound = std::max({p.U_aa, p.U_bb, p.U_ab}) + 2.0 * (ja_max + jb_max);
  r.steps = std::max(1, static_cast<int>(std::ceil(T * bound / step_scale)));

  // Same entries as effective_Hbb / effective_Hab4, built without allocation.
  auto h3 = [&](bool species_b) {
    return [&, species_b](double t) {
      const double j = species_b ? pulse.jb(t) : pulse.ja(t);
      const double u = species_b ? p.U_bb : p.U_aa;
      Mat<3> h;
      h << 0.0, -j, -j, -j, u, 0.0, -j, 0.0, u;
      return h;
    };
  };
  auto h4 = [&](double t) {
    const double ja = pulse.ja(t);
    const double jb = pulse.jb(t);
    Mat<4> h;
    h << p.U_ab, -ja, -jb, 0.0, -ja, 0.0, 0.0, -jb, -jb, 0.0, 0.0, -ja, 0.0, -jb, -ja, p.U_ab;
    return h;
  };

  r.logical = CMatrix::Zero(4, 4);
  auto account = [&](int input, double norm2) {
    r.norm_drift = std::max(r.norm_drift, std::abs(norm2 - 1.0));
    double kept = 0.0;
    for (int o = 0; o < 4; ++o) kept += std::norm(r.logical(o, input));
    r.leakage[input] = std::max(0.0, norm2 - kept);
  };
  for (int q : {0, 3}) {
    const Vec<3> out = evolve<3>(h3(q == 3), Vec<3>::Unit(0), T, r.steps);
    r.logical(q, q) = out[0];
    account(q, out.squaredNorm());
  }
  for (int q : {1, 2}) {
    const Vec<4> out = evolve<4>(h4, Vec<4>::Unit(q), T, r.steps);
    r.logical(1, q) = out[1];
    r.logical(2, q) = out[2];
    account(q, out.squaredNorm());
  }
  if (r.norm_drift > 1e-8) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "simulate_gate: norm drift %.3g exceeds 1e-8; reduce step_scale",
                  r.norm_drift);
    throw NumericError(msg);
  }
  r.max_leakage = *std::max_element(r.leakage.begin(), r.leakage.end());

  const CMatrix& m = r.logical;
  r.phase_00 = energy_phase(m(0, 0));
  r.phase_11 = energy_phase(m(3, 3));
  const Complex det = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  r.block_phase = wrap_phase(-0.5 * std::arg(det));
  r.phi_cz = energy_phase(m(0, 0) * m(3, 3) / (m(1, 1) * m(2, 2)));
  r.swap_integral = std::atan2(std::abs(m(2, 1)), std::abs(m(1, 1)));
  r.deviation = which == GateKind::cz
                    ? std::abs(wrap_phase(r.phi_cz - r.adiabatic.phi_cz))
                    : std::abs(r.swap_integral - fold_swap(r.adiabatic.swap_integral));
  return r;
}

double process_fidelity(const CMatrix& m, const CMatrix& target) {
  if (m.rows() != target.rows() || m.cols() != target.cols() || m.rows() != m.cols())
    throw ValidationError("target", "shape mismatch");
  const double d = static_cast<double>(m.rows());
  const Complex tr = (target.adjoint() * m).trace();
  return (std::norm(tr) + (m.adjoint() * m).trace().real()) / (d * (d + 1.0));
}

double cz_error(double j_over_u, double* duration, double* leakage) {
  if (!(j_over_u > 0.0 && j_over_u < 1.0)) throw ValidationError("j_over_u", "must lie in (0, 1)");
  TwoSpeciesParams p;
  p.U_aa = 1.0;
  p.U_bb = 1.0;
  p.U_ab = 2.0;
  // sin^4 averages to 3/8, so |phi_cz| = (3/8) j^2 T for these couplings.
  const double T = 8.0 * kPi / (3.0 * j_over_u * j_over_u);
  const auto pulse = PulseProfile::sin2(T, 0.0, j_over_u);
  const GateReport r = simulate_gate(pulse, p, GateKind::cz);
  const auto& a = r.adiabatic;
  CMatrix fix = CMatrix::Zero(4, 4);
  fix(0, 0) = std::polar(1.0, a.phase_00);
  fix(1, 1) = std::polar(1.0, a.block_phase);
  fix(2, 2) = std::polar(1.0, a.block_phase);
  fix(3, 3) = std::polar(1.0, 2.0 * a.block_phase - a.phase_00);
  CMatrix cz = CMatrix::Identity(4, 4);
  cz(3, 3) = -1.0;
  if (duration) *duration = T;
  if (leakage) *leakage = r.max_leakage;
  return 1.0 - process_fidelity(fix * r.logical, cz);
}

CZTiming estimate_cz_gate_time(double u_hz, double budget, double lo, double hi) {
  if (!(u_hz > 0.0)) throw ValidationError("u_hz", "must be > 0");
  if (!(budget > 0.0)) throw ValidationError("budget", "must be > 0");
  if (!(lo > 0.0 && hi > lo && hi < 1.0)) throw ValidationError("j_over_u", "need 0 < lo < hi < 1");
  CZTiming out;
  out.u_hz = u_hz;
  const double omega = 2.0 * kPi * u_hz;
  // Walk up a log grid to the first failure, then bisect.
  const auto grid = log_grid(lo, hi, 16);
  double good = 0.0;
  double bad = 0.0;
  for (double j : grid) {
    if (cz_error(j) <= budget) {
      good = j;
    } else {
      bad = j;
      break;
    }
  }
  if (good == 0.0) {
    out.j_over_u = lo;
  } else if (bad == 0.0) {
    out.j_over_u = good;
  } else {
    for (int it = 0; it < 12; ++it) {
      const double mid = std::sqrt(good * bad);
      (cz_error(mid) <= budget ? good : bad) = mid;
    }
    out.j_over_u = good;
  }
  double T = 0.0;
  out.error = cz_error(out.j_over_u, &T, &out.leakage);
  out.met_budget = out.error <= budget;
  out.duration_s = T / omega;
  return out;
}

}  // namespace qgate
