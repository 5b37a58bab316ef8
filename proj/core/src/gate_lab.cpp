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

#include "qgate/gate_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/SVD>

#include "qgate/permanent.hpp"
#include "qgate/random.hpp"

namespace qgate {

namespace {

constexpr double kPi = std::numbers::pi;

const int kSignalMode0[] = {0};

}  // namespace

NSResiduals ns_constraint_residuals(const CMatrix& l, double phi) {
  if (l.rows() != 3 || l.cols() != 3) throw ValidationError("lambda", "need a 3x3 matrix");
  if (unitarity_deviation(l) > 1e-8) throw ValidationError("lambda", "matrix is not unitary");
  const Complex sub = subpermanent(l, 0, 0);
  NSResiduals r;
  r.r1 = sub - permanent(l);
  r.r2 = sub * (std::polar(1.0, phi) + l(0, 0) * l(0, 0) - 2.0 * l(0, 0)) -
         2.0 * l(0, 1) * l(1, 0) * l(0, 2) * l(2, 0);
  return r;
}

bool PhaseGateTemplate::use_ns_residuals() const {
  return modes == 3 && ancilla.occupations == std::vector<int>{1, 1} &&
         pattern.counts == std::vector<int>{1, 1} && target_phases.size() == 3 &&
         target_phases[0] == 0.0 && target_phases[1] == 0.0;
}

namespace {

void check_template(const PhaseGateTemplate& t) {
  if (t.modes < 1) throw ValidationError("modes", "need at least one mode");
  if (t.target_phases.empty() || t.target_phases[0] != 0.0)
    throw ValidationError("target_phases", "first target phase must be 0");
  if (static_cast<int>(t.ancilla.occupations.size()) != t.modes - 1)
    throw ValidationError("ancilla", "one occupation per ancilla mode required");
  if (static_cast<int>(t.pattern.counts.size()) != t.modes - 1)
    throw ValidationError("pattern", "one count per measured mode required");
  if (t.ancilla.total() != t.pattern.total())
    throw ValidationError("pattern", "detected photon number must equal ancilla photon number");
}

// Diagonal of Y on photon numbers 0..K, straight from the permanents.
std::vector<Complex> phase_gate_diagonal(const PhaseGateTemplate& t, const CMatrix& lambda) {
  std::vector<Complex> d;
  for (int k = 0; k <= t.cutoff(); ++k) {
    const std::vector<int> sig{k};
    d.push_back(transition_amplitude(
        lambda, merge_occupations(t.modes, kSignalMode0, sig, t.ancilla.occupations),
        merge_occupations(t.modes, kSignalMode0, sig, t.pattern.counts)));
  }
  return d;
}

}  // namespace

std::vector<double> phase_gate_residuals(const PhaseGateTemplate& t, const CMatrix& lambda) {
  std::vector<double> r;
  if (t.use_ns_residuals()) {
    const NSResiduals ns = ns_constraint_residuals(lambda, t.target_phases[2]);
    return {ns.r1.real(), ns.r1.imag(), ns.r2.real(), ns.r2.imag()};
  }
  const std::vector<Complex> d = phase_gate_diagonal(t, lambda);
  for (std::size_t k = 1; k < d.size(); ++k) {
    const Complex e = d[k] - std::polar(1.0, t.target_phases[k]) * d[0];
    r.push_back(e.real());
    r.push_back(e.imag());
  }
  return r;
}

double phase_gate_success(const PhaseGateTemplate& t, const CMatrix& lambda) {
  const std::vector<int> sig{0};
  return std::norm(transition_amplitude(
      lambda, merge_occupations(t.modes, kSignalMode0, sig, t.ancilla.occupations),
      merge_occupations(t.modes, kSignalMode0, sig, t.pattern.counts)));
}

PhaseGateSolution verify_phase_gate(const PhaseGateTemplate& t, const CMatrix& lambda) {
  check_template(t);
  PhaseGateSolution s;
  s.problem = t;
  s.lambda = lambda;
  s.verified = conditional_operator(lambda, t.ancilla, t.pattern, kSignalMode0, t.cutoff());
  const CMatrix& y = s.verified.matrix;
  s.c = y(0, 0);
  CMatrix target = CMatrix::Zero(y.rows(), y.cols());
  for (int k = 0; k <= t.cutoff(); ++k) target(k, k) = std::polar(1.0, t.target_phases[k]);
  s.verified_deviation = std::abs(s.c) > 0.0
                             ? (y - s.c * target).cwiseAbs().maxCoeff() / std::abs(s.c)
                             : INFINITY;
  s.unitarity = is_proportional_to_unitary(y);
  return s;
}

PhaseGateSolution synthesize_phase_gate(const PhaseGateTemplate& t, const SynthesisOptions& o) {
  check_template(t);
  ConstrainedProblem prob;
  prob.dimension = reck_parameter_count(t.modes);
  prob.objective = [&t](std::span<const double> x) {
    return phase_gate_success(t, unitary_from_angles(t.modes, x));
  };
  // Residuals relative to |Y00| so that the trivial root Y = 0 repels.
  prob.constraints = [&t](std::span<const double> x) {
    const CMatrix l = unitary_from_angles(t.modes, x);
    std::vector<double> r = phase_gate_residuals(t, l);
    const double scale = std::sqrt(phase_gate_success(t, l));
    for (double& v : r) v = scale > 1e-150 ? v / scale : 1e6;
    return r;
  };
  ConstrainedOptions co;
  co.starts = o.seeds;
  co.seed = o.seed;
  co.threads = o.threads;
  co.accept_tol = o.residual_tol;
  const ConstrainedResult cr = maximize_constrained(prob, co);
  if (cr.feasible_starts == 0)
    throw NumericError("no feasible point found across " + std::to_string(o.seeds) +
                       " seeds (best residual " + std::to_string(cr.best.residual_norm) + ")");
  PhaseGateSolution s = verify_phase_gate(t, unitary_from_angles(t.modes, cr.best.x));
  s.network = network_from_angles(t.modes, cr.best.x);
  s.result.parameters = cr.best.x;
  s.result.success_probability = std::norm(s.c);
  double rn = 0.0;
  for (double v : phase_gate_residuals(t, s.lambda)) rn += v * v;
  s.result.residual_norm = std::sqrt(rn);
  s.result.iterations = cr.total_evaluations;
  s.result.feasible_seeds = cr.feasible_starts;
  s.result.seeds = o.seeds;
  return s;
}

std::vector<PhaseGateTemplate> ns_templates(double phi) {
  return {
      {3, AncillaPrep{{1, 1}}, MeasurementPattern{{1, 1}}, {0.0, 0.0, phi}},
      {3, AncillaPrep{{1, 0}}, MeasurementPattern{{1, 0}}, {0.0, 0.0, phi}},
  };
}

namespace {

PhaseGateSolution identity_solution(const PhaseGateTemplate& t) {
  PhaseGateSolution s = verify_phase_gate(t, CMatrix::Identity(t.modes, t.modes));
  s.network = NetworkDescription{t.modes, {}};
  s.result.parameters.assign(reck_parameter_count(t.modes), 0.0);
  s.result.success_probability = std::norm(s.c);
  s.result.residual_norm = 0.0;
  s.result.feasible_seeds = 1;
  s.result.seeds = 1;
  return s;
}

PhaseGateSolution best_of(const std::vector<PhaseGateTemplate>& ts, const SynthesisOptions& o) {
  std::optional<PhaseGateSolution> best;
  std::string failures;
  for (const auto& t : ts) {
    try {
      PhaseGateSolution s = synthesize_phase_gate(t, o);
      if (!best || s.result.success_probability > best->result.success_probability)
        best = std::move(s);
    } catch (const NumericError& e) {
      failures += std::string(failures.empty() ? "" : "; ") + e.what();
    }
  }
  if (!best) throw NumericError(failures);
  return *best;
}

}  // namespace

PhaseGateSolution synthesize_ns(double phi, const SynthesisOptions& o) {
  if (!(phi > -kPi - 1e-12 && phi <= kPi + 1e-12))
    throw ValidationError("phi", "phase must lie in (-pi, pi]");
  if (std::abs(phi) < 1e-14) return identity_solution(ns_templates(0.0).front());
  return best_of(ns_templates(phi), o);
}

CMatrix SignFlipScheme::lambda() const {
  CMatrix l = CMatrix::Identity(3, 3);
  l.topLeftCorner(2, 2) = beam_splitter_block(bs);
  return l;
}

SignFlipSolution verify_sign_flip(const SignFlipScheme& s) {
  if (s.n < 1) throw ValidationError("n", "photon number must be at least 1");
  if (s.prep.size() != s.n || s.herald.size() != s.n)
    throw ValidationError("ancilla", "ancilla state must have N components");
  const CMatrix l = s.lambda();
  const int signal[] = {0};
  SignFlipSolution out;
  out.scheme = s;
  BasisPtr sb = FockBasis::enumerate(1, MaxTotalPhotons{s.n});
  CMatrix y = CMatrix::Zero(s.n + 1, s.n + 1);
  for (int j = 0; j < s.n; ++j)
    for (int k = 0; k < s.n; ++k) {
      const ConditionalOperator yjk = conditional_operator(
          l, AncillaPrep{{k, s.n - 1 - k}}, MeasurementPattern{{j, s.n - 1 - j}}, signal, s.n);
      y += std::conj(s.herald(j)) * s.prep(k) * yjk.matrix;
    }
  out.verified = {sb, y};
  out.c = y(0, 0);
  CMatrix target = CMatrix::Identity(s.n + 1, s.n + 1);
  target(s.n, s.n) = -1.0;
  out.verified_deviation =
      std::abs(out.c) > 0 ? (y - out.c * target).cwiseAbs().maxCoeff() / std::abs(out.c) : INFINITY;
  out.unitarity = is_proportional_to_unitary(y);
  return out;
}

namespace {

// Parameters: splitter (theta, phase), then prep and herald as re/im pairs.
SignFlipScheme sign_flip_from_params(int n, std::span<const double> x) {
  SignFlipScheme s;
  s.n = n;
  s.bs = BeamSplitterParams::from_angles(x[0], x[1]);
  s.prep.resize(n);
  s.herald.resize(n);
  for (int k = 0; k < n; ++k) {
    s.prep(k) = Complex(x[2 + 2 * k], x[3 + 2 * k]);
    s.herald(k) = Complex(x[2 + 2 * n + 2 * k], x[3 + 2 * n + 2 * k]);
  }
  const double np = s.prep.norm(), nh = s.herald.norm();
  if (np > 0) s.prep /= np;
  if (nh > 0) s.herald /= nh;
  return s;
}

// Diagonal of the heralded operator; only j == k terms survive because the
// label mode is untouched.
std::vector<Complex> sign_flip_diagonal(const SignFlipScheme& s) {
  const CMatrix b = beam_splitter_block(s.bs);
  std::vector<Complex> d(s.n + 1, 0.0);
  for (int m = 0; m <= s.n; ++m)
    for (int k = 0; k < s.n; ++k)
      d[m] += std::conj(s.herald(k)) * s.prep(k) *
              transition_amplitude(b, OccupationState{m, k}, OccupationState{m, k});
  return d;
}

}  // namespace

SignFlipSolution synthesize_sign_flip(int n, const SynthesisOptions& o) {
  if (n < 1) throw ValidationError("n", "photon number must be at least 1");
  ConstrainedProblem prob;
  prob.dimension = 2 + 4 * n;
  prob.objective = [n](std::span<const double> x) {
    return std::norm(sign_flip_diagonal(sign_flip_from_params(n, x))[0]);
  };
  prob.constraints = [n](std::span<const double> x) {
    const std::vector<Complex> d = sign_flip_diagonal(sign_flip_from_params(n, x));
    const double scale = std::abs(d[0]);
    std::vector<double> r;
    for (int m = 1; m <= n; ++m) {
      const Complex e = d[m] - (m == n ? -1.0 : 1.0) * d[0];
      r.push_back(scale > 1e-150 ? e.real() / scale : 1e6);
      r.push_back(scale > 1e-150 ? e.imag() / scale : 1e6);
    }
    return r;
  };
  ConstrainedOptions co;
  co.starts = o.seeds;
  co.seed = o.seed;
  co.threads = o.threads;
  co.accept_tol = o.residual_tol;
  const ConstrainedResult cr = maximize_constrained(prob, co);
  if (cr.feasible_starts == 0)
    throw NumericError("no feasible point found across " + std::to_string(o.seeds) +
                       " seeds (best residual " + std::to_string(cr.best.residual_norm) + ")");
  SignFlipSolution s = verify_sign_flip(sign_flip_from_params(n, cr.best.x));
  s.result.parameters = cr.best.x;
  s.result.success_probability = std::norm(s.c);
  s.result.residual_norm = s.verified_deviation * std::abs(s.c);
  s.result.iterations = cr.total_evaluations;
  s.result.feasible_seeds = cr.feasible_starts;
  s.result.seeds = o.seeds;
  return s;
}

RalphScenario ralph_network(double theta1, double theta2) {
  RalphScenario s;
  s.network.modes = 3;
  s.network.elements.push_back(
      BeamSplitterElement{0, 1, BeamSplitterParams::from_angles(theta1, 0.0)});
  s.network.elements.push_back(
      BeamSplitterElement{0, 2, BeamSplitterParams::from_angles(theta2, 0.0)});
  return s;
}

RalphTuning tune_ralph(double phi) {
  const Complex target = std::polar(1.0, phi);
  auto diag = [](double t1, double t2) {
    const RalphScenario s = ralph_network(t1, t2);
    return conditional_operator(compose_network(s.network), s.ancilla, s.pattern,
                                s.signal_modes, 2);
  };
  const ResidualFn residual = [&](std::span<const double> x) -> std::vector<double> {
    const CMatrix y = diag(x[0], x[1]).matrix;
    if (std::abs(y(0, 0)) < 1e-9) return {1e3, 1e3};
    const Complex a = y(1, 1) / y(0, 0) - 1.0, b = y(2, 2) / y(0, 0) - target;
    return {a.real(), b.real(), a.imag(), b.imag()};
  };
  RalphTuning best;
  best.residual = INFINITY;
  bool found = false;
  const int grid = 16;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      std::vector<double> x0{kPi * (i + 0.5) / grid, kPi * (j + 0.5) / grid};
      const ProjectionResult p = project_feasible(residual, x0, 1e-13, 60);
      if (p.residual_norm > 1e-10) continue;
      const ConditionalOperator y = diag(p.x[0], p.x[1]);
      const double succ = std::norm(y.matrix(0, 0));
      if (!found || succ > best.success_probability + 1e-12) {
        found = true;
        best.theta1 = p.x[0];
        best.theta2 = p.x[1];
        best.y = y;
        best.success_probability = succ;
        best.residual = p.residual_norm;
      }
    }
  if (!found) throw NumericError("two-splitter scheme has no solution for this phase");
  return best;
}

int ancilla_span_dimension(const std::vector<int>& occupations, int samples,
                           std::uint64_t seed) {
  const OccupationState a(occupations);
  const int k = static_cast<int>(a.modes());
  if (k < 1) throw ValidationError("ancilla", "need at least one ancilla mode");
  BasisPtr b = FockBasis::enumerate(k, FixedTotalParticles{a.total()});
  const auto col = static_cast<Eigen::Index>(b->index(a));
  Rng rng(seed);
  CMatrix span(static_cast<Eigen::Index>(b->size()), samples);
  for (int s = 0; s < samples; ++s) span.col(s) = lift_to_fock(haar_unitary(k, rng), *b).col(col);
  Eigen::JacobiSVD<CMatrix> svd(span);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > 1e-10 * sv(0);
  return rank;
}

CMatrix controlled_phase(double phi) {
  CMatrix c = CMatrix::Identity(4, 4);
  c(3, 3) = std::polar(1.0, phi);
  return c;
}

CSGate build_cs_gate(double phi, const PhaseGateSolution& arm) {
  const PhaseGateTemplate& t = arm.problem;
  if (t.target_phases.size() != 3 || t.target_phases[1] != 0.0 ||
      std::abs(std::remainder(t.target_phases[2] - phi, 2 * kPi)) > 1e-12)
    throw ValidationError("ns_impl", "arm gate does not implement the requested phase");
  if (!(arm.verified_deviation <= 1e-6))
    throw ValidationError("ns_impl", "arm gate fails verification (deviation " +
                                         std::to_string(arm.verified_deviation) + ")");
  const int m = t.modes;
  CSGate g;
  g.phi = phi;
  g.network.modes = 2 * m;
  auto remap = [m](int arm_index, int local) {
    if (local == 0) return arm_index;
    return 2 + arm_index * (m - 1) + (local - 1);
  };
  const BeamSplitterParams half{Complex(1.0 / std::sqrt(2.0)), Complex(1.0 / std::sqrt(2.0))};
  g.network.elements.push_back(BeamSplitterElement{0, 1, half});
  for (int a = 0; a < 2; ++a)
    for (const auto& e : arm.network.elements) {
      if (const auto* bs = std::get_if<BeamSplitterElement>(&e))
        g.network.elements.push_back(
            BeamSplitterElement{remap(a, bs->i), remap(a, bs->j), bs->params});
      else {
        const auto& ps = std::get<PhaseShiftElement>(e);
        g.network.elements.push_back(PhaseShiftElement{remap(a, ps.mode), ps.theta});
      }
    }
  g.network.elements.push_back(BeamSplitterElement{0, 1, half.inverse()});
  g.lambda = compose_network(g.network);
  for (int a = 0; a < 2; ++a) {
    g.ancilla.occupations.insert(g.ancilla.occupations.end(), t.ancilla.occupations.begin(),
                                 t.ancilla.occupations.end());
    g.pattern.counts.insert(g.pattern.counts.end(), t.pattern.counts.begin(),
                            t.pattern.counts.end());
  }
  g.y = conditional_operator(g.lambda, g.ancilla, g.pattern, g.signal_modes, 2);
  const FockBasis& sb = *g.y.signal_basis;
  const OccupationState logical[4] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  Eigen::Index idx[4];
  for (int k = 0; k < 4; ++k) idx[k] = static_cast<Eigen::Index>(sb.index(logical[k]));
  g.logical = CMatrix(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) g.logical(r, c) = g.y.matrix(idx[r], idx[c]);
  g.c = g.logical(0, 0);
  g.success_probability = std::norm(g.c);
  const CMatrix target = controlled_phase(phi);
  double dev = 0.0;
  for (int c = 0; c < 4; ++c)
    for (Eigen::Index r = 0; r < g.y.matrix.rows(); ++r) {
      Complex expect = 0.0;
      for (int k = 0; k < 4; ++k)
        if (idx[k] == r) expect = g.c * target(k, c);
      dev = std::max(dev, std::abs(g.y.matrix(r, idx[c]) - expect));
    }
  g.deviation = std::abs(g.c) > 0 ? dev / std::abs(g.c) : INFINITY;
  return g;
}

}  // namespace qgate
