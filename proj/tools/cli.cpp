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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qgate/conditional.hpp"
#include "qgate/decoherence.hpp"
#include "qgate/gate_lab.hpp"
#include "qgate/interferometer.hpp"
#include "qgate/json_io.hpp"
#include "qgate/lattice.hpp"
#include "qgate/lattice_gates.hpp"

namespace qgate::cli {

namespace {

using Json = nlohmann::ordered_json;
constexpr double kPi = std::numbers::pi;

// Where a command writes and what it recorded about its inputs.
struct Sink {
  std::string path;
  Json config;
  std::ostream* out;
};

std::string read_file(const std::string& path, const char* field) {
  std::ifstream in(path);
  if (!in) throw ValidationError(field, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Sink& sink, const std::string& text) {
  if (sink.path.empty() || sink.path == "-") {
    *sink.out << text;
    return;
  }
  std::ofstream f(sink.path, std::ios::binary);
  if (!f) throw ValidationError("out", "cannot write '" + sink.path + "'");
  f << text;
  if (!f) throw ValidationError("out", "write failed for '" + sink.path + "'");
}

void emit_json(const Sink& sink, Json body) {
  Json doc;
  doc["version"] = kVersion;
  doc["config"] = sink.config;
  for (auto& [k, v] : body.items()) doc[k] = v;
  emit(sink, doc.dump(2) + "\n");
}

std::string csv_preamble(const Sink& sink) {
  return "# version: " + std::string(kVersion) + "\n# config: " + sink.config.dump() + "\n";
}

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json matrix_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Json vector_json(const CVector& v) {
  Json a = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(complex_json(v[k]));
  return a;
}

Json unitarity_json(const UnitarityCheck& u) {
  return {{"proportional_to_unitary", u.proportional}, {"scale", u.scale}, {"deviation", u.deviation}};
}

Json optimization_json(const OptimizationResult& r) {
  return {{"success_probability", r.success_probability},
          {"residual_norm", r.residual_norm},
          {"feasible_seeds", r.feasible_seeds},
          {"seeds", r.seeds},
          {"evaluations", r.iterations},
          {"parameters", r.parameters}};
}

Json network_json(const NetworkDescription& net) { return Json::parse(network_to_json(net)); }

// ---- simulate ---------------------------------------------------------------

struct SimulateArgs {
  std::string scenario;
};

void cmd_simulate(const SimulateArgs& a, Sink sink) {
  const Scenario s = scenario_from_json(read_file(a.scenario, "scenario"));
  sink.config["scenario"] = Json::parse(scenario_to_json(s));
  const CMatrix lambda = compose_network(s.network);
  const ConditionalOperator y = conditional_operator(
      lambda, AncillaPrep{s.ancilla}, MeasurementPattern{s.pattern}, s.signal_modes, s.cutoff);
  Json body;
  body["mode_matrix"] = matrix_json(lambda);
  body["conditional_operator"] = matrix_json(y.matrix);
  body["unitarity"] = unitarity_json(is_proportional_to_unitary(y.matrix));
  if (s.input) {
    const CVector out = y.matrix * s.input->amplitudes();
    const double p = out.squaredNorm();
    body["success_probability"] = p;
    const StateVector raw(y.signal_basis, out);
    body["output_state"] = Json::parse(state_to_json(p > 0.0 ? raw.normalized() : raw));
  }
  emit_json(sink, body);
}

// ---- synth-ns ----------------------------------------------------------------

struct SynthArgs {
  std::string phi = "pi";
  int seeds = 32;
  std::uint64_t seed = 20240601;
  unsigned threads = 0;
  int n = 3;
};

SynthesisOptions synthesis_options(const SynthArgs& a) {
  if (a.seeds < 1) throw ValidationError("seeds", "must be >= 1");
  SynthesisOptions o;
  o.seeds = a.seeds;
  o.seed = a.seed;
  o.threads = a.threads;
  return o;
}

Json phase_solution_json(const PhaseGateSolution& s) {
  Json diag = Json::array();
  for (Eigen::Index k = 0; k < s.verified.matrix.rows(); ++k)
    diag.push_back(complex_json(s.verified.matrix(k, k)));
  return {{"ancilla", s.problem.ancilla.occupations},
          {"pattern", s.problem.pattern.counts},
          {"target_phases", s.problem.target_phases},
          {"optimization", optimization_json(s.result)},
          {"success_probability", s.result.success_probability},
          {"residual_norm", s.result.residual_norm},
          {"mode_matrix", matrix_json(s.lambda)},
          {"network", network_json(s.network)},
          {"verified",
           {{"c", complex_json(s.c)},
            {"diagonal", diag},
            {"deviation", s.verified_deviation},
            {"unitarity", unitarity_json(s.unitarity)}}}};
}

void cmd_synth_ns(const SynthArgs& a, Sink sink) {
  const double phi = parse_angle(a.phi);
  sink.config["phi_value"] = phi;
  emit_json(sink, phase_solution_json(synthesize_ns(phi, synthesis_options(a))));
}

void cmd_synth_cs(const SynthArgs& a, Sink sink) {
  const double phi = parse_angle(a.phi);
  sink.config["phi_value"] = phi;
  const PhaseGateSolution arm = synthesize_ns(phi, synthesis_options(a));
  const CSGate g = build_cs_gate(phi, arm);
  Json truth = Json::array();
  const char* labels[] = {"00", "01", "10", "11"};
  for (int k = 0; k < 4; ++k) {
    const Complex v = g.logical(k, k) / g.c;
    truth.push_back({{"input", labels[k]}, {"amplitude", complex_json(v)}, {"phase", std::arg(v)}});
  }
  emit_json(sink, {{"success_probability", g.success_probability},
                   {"deviation", g.deviation},
                   {"c", complex_json(g.c)},
                   {"truth_table", truth},
                   {"logical_block", matrix_json(g.logical)},
                   {"signal_modes", g.signal_modes},
                   {"ancilla", g.ancilla.occupations},
                   {"pattern", g.pattern.counts},
                   {"network", network_json(g.network)},
                   {"arm", phase_solution_json(arm)}});
}

void cmd_signflip(const SynthArgs& a, Sink sink) {
  if (a.n < 1) throw ValidationError("n", "must be >= 1");
  const SignFlipSolution s = synthesize_sign_flip(a.n, synthesis_options(a));
  Json diag = Json::array();
  for (Eigen::Index k = 0; k < s.verified.matrix.rows(); ++k)
    diag.push_back(complex_json(s.verified.matrix(k, k)));
  emit_json(sink, {{"n", a.n},
                   {"success_probability", s.result.success_probability},
                   {"target_success", 1.0 / (a.n * a.n)},
                   {"residual_norm", s.result.residual_norm},
                   {"optimization", optimization_json(s.result)},
                   {"beam_splitter", {{"T", complex_json(s.scheme.bs.T)}, {"R", complex_json(s.scheme.bs.R)}}},
                   {"ancilla_prep", vector_json(s.scheme.prep)},
                   {"herald", vector_json(s.scheme.herald)},
                   {"mode_matrix", matrix_json(s.scheme.lambda())},
                   {"verified",
                    {{"c", complex_json(s.c)},
                     {"diagonal", diag},
                     {"deviation", s.verified_deviation},
                     {"unitarity", unitarity_json(s.unitarity)}}}});
}

// ---- fidelity-sweep ------------------------------------------------------------

struct SweepArgs {
  int grid = 5;
  double p_min = 0.9;
  double eta_min = 0.9;
  int samples = 200;
  std::uint64_t seed = 1234;
  int seeds = 32;
  std::uint64_t synth_seed = 20240601;
  int detector_cutoff = 4;
};

void cmd_fidelity_sweep(const SweepArgs& a, Sink sink) {
  if (a.grid < 2) throw ValidationError("grid", "must be >= 2");
  if (!(a.p_min >= 0.0 && a.p_min < 1.0)) throw ValidationError("p-min", "must lie in [0, 1)");
  if (!(a.eta_min >= 0.0 && a.eta_min < 1.0)) throw ValidationError("eta-min", "must lie in [0, 1)");
  if (a.samples < 2) throw ValidationError("samples", "must be >= 2");
  SynthesisOptions o;
  o.seeds = a.seeds;
  o.seed = a.synth_seed;
  const PhaseGateSolution ns = synthesize_ns(kPi, o);
  const GateScenario g =
      phase_gate_scenario(ns.lambda, ns.problem.ancilla, ns.problem.pattern, ns.problem.target_phases);
  std::string text = csv_preamble(sink);
  std::string crossings;
  text += "p,eta,F_mean,F_stderr,success_prob_mean,samples,seed\n";
  for (int i = 0; i < a.grid; ++i) {
    const double p = 1.0 - (1.0 - a.p_min) * i / (a.grid - 1);
    for (int k = 0; k < a.grid; ++k) {
      const double eta = 1.0 - (1.0 - a.eta_min) * k / (a.grid - 1);
      const FidelityEstimate f =
          average_gate_fidelity(g, SourceModel{p}, DetectorModel{eta, a.detector_cutoff}, a.samples, a.seed);
      text += num(p) + "," + num(eta) + "," + num(f.mean) + "," + num(f.stderr_) + "," +
              num(f.success_mean) + "," + std::to_string(f.samples) + "," + std::to_string(f.seed) + "\n";
      if (1.0 - f.mean > 1e-3 && crossings.find("p=" + num(p) + " ") == std::string::npos)
        crossings += "# 1-F exceeds 1e-3: p=" + num(p) + " first at eta=" + num(eta) + "\n";
    }
  }
  emit(sink, text + crossings);
}

// ---- lattice ----------------------------------------------------------------

Boundary parse_boundary(const std::string& s) {
  if (s == "open") return Boundary::open;
  if (s == "periodic") return Boundary::periodic;
  throw ValidationError("boundary", "expected open or periodic");
}

struct GroundArgs {
  int sites = 10;
  int atoms = 8;
  double uj = 100.0;
  std::string boundary = "open";
  double tol = 1e-9;
  int max_iter = 5000;
};

void cmd_lattice_ground(const GroundArgs& a, Sink sink) {
  BHParams p{a.uj, 1.0, a.sites, a.atoms, parse_boundary(a.boundary)};
  if (!(a.tol > 0.0)) throw ValidationError("tol", "must be > 0");
  const SparseHamiltonian h = build_bh_hamiltonian(p);
  const GroundState g = ground_state(h, a.tol, a.max_iter);
  const SiteStatistics st = site_statistics(h.basis(), g.vector);
  std::string text = csv_preamble(sink);
  text += "# dimension: " + std::to_string(h.dimension()) + "\n";
  text += "# energy: " + num(g.energy) + "\n# residual: " + num(g.residual) + "\n";
  text += "# condensate_fraction: " + num(condensate_fraction(h.basis(), g.vector)) + "\n";
  text += "site,mean,variance\n";
  for (int i = 0; i < a.sites; ++i)
    text += std::to_string(i) + "," + num(st.mean[i]) + "," + num(st.variance[i]) + "\n";
  emit(sink, text);
}

struct ScanArgs {
  int sites = 8;
  int atoms = 8;
  double uj_min = 0.01;
  double uj_max = 1000.0;
  int points = 21;
  double threshold = 0.05;
  std::string boundary = "open";
  double tol = 1e-9;
};

void cmd_lattice_scan(const ScanArgs& a, Sink sink) {
  if (!(a.threshold > 0.0)) throw ValidationError("threshold", "must be > 0");
  const auto grid = log_grid(a.uj_min, a.uj_max, a.points);
  const auto pts = transition_scan(grid, a.sites, a.atoms, parse_boundary(a.boundary), a.tol);
  std::string text = csv_preamble(sink);
  text += "# reference: mean-field critical U/J = 11.6 (marker only; a short 1D chain shows a smooth crossover)\n";
  std::string note = "# max_variance stays above threshold on this grid\n";
  for (const auto& q : pts) {
    if (q.max_variance < a.threshold) {
      note = "# max_variance first below threshold " + num(a.threshold) + " at U/J = " + num(q.u_over_j) + "\n";
      break;
    }
  }
  text += note;
  text += "u_over_j,energy,max_variance,mean_variance,condensate_fraction,below_threshold\n";
  for (const auto& q : pts) {
    text += num(q.u_over_j) + "," + num(q.energy) + "," + num(q.max_variance) + "," + num(q.mean_variance) +
            "," + num(q.condensate_fraction) + "," + (q.max_variance < a.threshold ? "1" : "0") + "\n";
  }
  emit(sink, text);
}

struct GateArgs {
  std::string kind = "cz";
  std::string shape = "sin2";
  double uaa = 1.0;
  double ubb = 1.0;
  double uab = 2.0;
  double ja = -1.0;
  double jb = -1.0;
  double j_over_u = 0.05;
  std::string phi = "pi";
  std::string swap = "pi/4";
  double duration = 0.0;
  int samples = 257;
  double step_scale = 0.01;
  bool estimate_time = false;
  double u_hz = 1000.0;
  double budget = 1e-3;
};

void cmd_lattice_gate(const GateArgs& a, Sink sink) {
  if (a.kind != "cz" && a.kind != "swap") throw ValidationError("kind", "expected cz or swap");
  if (a.shape != "sin2" && a.shape != "square") throw ValidationError("shape", "expected sin2 or square");
  if (!(a.j_over_u > 0.0)) throw ValidationError("j-over-u", "must be > 0");
  TwoSpeciesParams p;
  p.U_aa = a.uaa;
  p.U_bb = a.ubb;
  p.U_ab = a.uab;
  p.validate();
  const bool cz = a.kind == "cz";
  // Defaults: cz tunnels species b only; swap picks J_a^2/U_aa = J_b^2/U_bb.
  const double ja = a.ja >= 0.0 ? a.ja : (cz ? 0.0 : a.j_over_u * a.uaa);
  const double jb = a.jb >= 0.0 ? a.jb : (cz ? a.j_over_u * a.ubb : ja * std::sqrt(a.ubb / a.uaa));
  const double weight = a.shape == "sin2" ? 3.0 / 8.0 : 1.0;
  double duration = a.duration;
  if (duration <= 0.0) {
    if (cz) {
      const double rate = 2.0 * weight * jb * jb * std::abs(1.0 / a.uab - 1.0 / a.ubb);
      if (!(rate > 0.0)) throw ValidationError("uab", "U_ab = U_bb gives no controlled phase");
      duration = std::abs(parse_angle(a.phi)) / rate;
    } else {
      const double rate = 2.0 * weight * ja * jb / a.uab;
      if (!(rate > 0.0)) throw ValidationError("ja", "swap needs J_a, J_b > 0");
      duration = parse_angle(a.swap) / rate;
    }
  }
  sink.config["resolved"] = {{"J_a", ja}, {"J_b", jb}, {"duration", duration}};
  const PulseProfile pulse = a.shape == "sin2" ? PulseProfile::sin2(duration, ja, jb, a.samples)
                                                : PulseProfile::square(duration, ja, jb, a.samples);
  const GateReport r = simulate_gate(pulse, p, cz ? GateKind::cz : GateKind::swap, a.step_scale);
  const auto& ad = r.adiabatic;
  Json body = {
      {"kind", a.kind},
      {"steps", r.steps},
      {"max_j_over_u", r.max_j_over_u},
      {"norm_drift", r.norm_drift},
      {"leakage", r.leakage},
      {"max_leakage", r.max_leakage},
      {"logical_map", matrix_json(r.logical)},
      {"exact",
       {{"phi_cz", r.phi_cz},
        {"phase_00", r.phase_00},
        {"phase_11", r.phase_11},
        {"block_phase", r.block_phase},
        {"swap_integral", r.swap_integral}}},
      {"adiabatic",
       {{"phi_cz", ad.phi_cz},
        {"phase_00", ad.phase_00},
        {"phase_11", ad.phase_11},
        {"block_phase", ad.block_phase},
        {"swap_integral", ad.swap_integral}}},
      {"deviation", r.deviation},
      {"balance_defect", ja * ja / std::max(a.uaa, 1e-300) + jb * jb / std::max(a.ubb, 1e-300) -
                             (ja * ja + jb * jb) / std::max(a.uab, 1e-300)}};
  if (a.estimate_time) {
    const CZTiming t = estimate_cz_gate_time(a.u_hz, a.budget);
    body["cz_gate_time"] = {{"u_hz", t.u_hz},
                            {"budget", a.budget},
                            {"j_over_u", t.j_over_u},
                            {"error", t.error},
                            {"leakage", t.leakage},
                            {"duration_s", t.duration_s},
                            {"met_budget", t.met_budget}};
  }
  emit_json(sink, body);
}

}  // namespace

double parse_angle(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(c));
  if (s.empty()) throw ValidationError("phi", "empty angle");
  auto number = [&](const std::string& t, double fallback) {
    if (t.empty()) return fallback;
    if (t == "-") return -fallback;
    if (t == "+") return fallback;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      throw ValidationError("phi", "cannot parse angle '" + text + "'");
    }
    if (used != t.size() || !std::isfinite(v)) throw ValidationError("phi", "cannot parse angle '" + text + "'");
    return v;
  };
  const auto at = s.find("pi");
  if (at == std::string::npos) return number(s, 0.0);
  std::string head = s.substr(0, at);
  if (!head.empty() && head.back() == '*') head.pop_back();
  const std::string tail = s.substr(at + 2);
  double value = number(head, 1.0) * kPi;
  if (!tail.empty()) {
    if (tail[0] != '/') throw ValidationError("phi", "cannot parse angle '" + text + "'");
    const double d = number(tail.substr(1), 0.0);
    if (d == 0.0) throw ValidationError("phi", "division by zero in '" + text + "'");
    value /= d;
  }
  return value;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qgate: linear-optics gate synthesis and Bose-Hubbard register simulation", "qgate"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1, 1);
  std::string out_path;
  app.add_option("--out", out_path, "Output file (stdout when omitted)");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Apply a scenario's conditional operator");
  simulate->add_option("--scenario", sim.scenario, "Scenario JSON")->required();
  simulate->add_option("--out", out_path, "Output file");

  SynthArgs syn;
  auto add_synth = [&](CLI::App* c) {
    c->add_option("--seeds", syn.seeds, "Optimizer starts")->capture_default_str();
    c->add_option("--seed", syn.seed, "Base seed")->capture_default_str();
    c->add_option("--threads", syn.threads, "Worker threads (0 = hardware)")->capture_default_str();
    c->add_option("--out", out_path, "Output file");
  };
  auto* synth_ns = app.add_subcommand("synth-ns", "Synthesize the nonlinear sign gate NS(phi)");
  synth_ns->add_option("--phi", syn.phi, "Phase, e.g. pi or pi/2")->capture_default_str();
  add_synth(synth_ns);
  auto* synth_cs = app.add_subcommand("synth-cs", "Controlled phase from two NS arms");
  synth_cs->add_option("--phi", syn.phi, "Phase")->capture_default_str();
  add_synth(synth_cs);
  auto* signflip = app.add_subcommand("signflip-n", "Sign flip on the N-photon component");
  signflip->add_option("--n", syn.n, "Photon number N")->capture_default_str();
  add_synth(signflip);

  SweepArgs sw;
  auto* sweep = app.add_subcommand("fidelity-sweep", "NS(pi) fidelity over source and detector efficiency");
  sweep->add_option("--grid", sw.grid, "Points per axis")->capture_default_str();
  sweep->add_option("--p-min", sw.p_min, "Smallest source efficiency")->capture_default_str();
  sweep->add_option("--eta-min", sw.eta_min, "Smallest detector efficiency")->capture_default_str();
  sweep->add_option("--samples", sw.samples, "Haar samples per point")->capture_default_str();
  sweep->add_option("--seed", sw.seed, "Sampling seed")->capture_default_str();
  sweep->add_option("--seeds", sw.seeds, "Synthesis starts")->capture_default_str();
  sweep->add_option("--synth-seed", sw.synth_seed, "Synthesis seed")->capture_default_str();
  sweep->add_option("--detector-cutoff", sw.detector_cutoff, "Largest photon number per detector")
      ->capture_default_str();
  sweep->add_option("--out", out_path, "Output CSV");

  GroundArgs gr;
  auto* ground = app.add_subcommand("lattice-ground", "Bose-Hubbard ground-state site statistics");
  ground->add_option("--sites", gr.sites, "Sites W")->capture_default_str();
  ground->add_option("--atoms", gr.atoms, "Atoms A")->capture_default_str();
  ground->add_option("--uj", gr.uj, "U/J")->capture_default_str();
  ground->add_option("--boundary", gr.boundary, "open or periodic")->capture_default_str();
  ground->add_option("--tol", gr.tol, "Residual tolerance")->capture_default_str();
  ground->add_option("--max-iter", gr.max_iter, "Matrix-vector product budget")->capture_default_str();
  ground->add_option("--out", out_path, "Output CSV");

  ScanArgs sc;
  auto* scan = app.add_subcommand("lattice-scan", "Superfluid to Mott crossover scan");
  scan->add_option("--sites", sc.sites, "Sites W")->capture_default_str();
  scan->add_option("--atoms", sc.atoms, "Atoms A")->capture_default_str();
  scan->add_option("--uj-min", sc.uj_min, "Smallest U/J")->capture_default_str();
  scan->add_option("--uj-max", sc.uj_max, "Largest U/J")->capture_default_str();
  scan->add_option("--points", sc.points, "Log-spaced grid points")->capture_default_str();
  scan->add_option("--threshold", sc.threshold, "Variance threshold for the annotation")->capture_default_str();
  scan->add_option("--boundary", sc.boundary, "open or periodic")->capture_default_str();
  scan->add_option("--tol", sc.tol, "Residual tolerance")->capture_default_str();
  scan->add_option("--out", out_path, "Output CSV");

  GateArgs ga;
  auto* gate = app.add_subcommand("lattice-gate", "Two-species gate dynamics against adiabatic phases");
  gate->add_option("--kind", ga.kind, "cz or swap")->capture_default_str();
  gate->add_option("--shape", ga.shape, "sin2 or square")->capture_default_str();
  gate->add_option("--uaa", ga.uaa, "U_aa")->capture_default_str();
  gate->add_option("--ubb", ga.ubb, "U_bb")->capture_default_str();
  gate->add_option("--uab", ga.uab, "U_ab")->capture_default_str();
  gate->add_option("--ja", ga.ja, "Peak J_a (default from --j-over-u)");
  gate->add_option("--jb", ga.jb, "Peak J_b (default from --j-over-u)");
  gate->add_option("--j-over-u", ga.j_over_u, "Peak tunneling over the matching U")->capture_default_str();
  gate->add_option("--phi", ga.phi, "Target controlled phase (cz)")->capture_default_str();
  gate->add_option("--swap", ga.swap, "Target swap integral I (swap)")->capture_default_str();
  gate->add_option("--duration", ga.duration, "Pulse duration (default from the target)");
  gate->add_option("--samples", ga.samples, "Pulse samples")->capture_default_str();
  gate->add_option("--step-scale", ga.step_scale, "RK4 step times the Hamiltonian bound")->capture_default_str();
  gate->add_flag("--estimate-time", ga.estimate_time, "Also estimate the CZ gate time");
  gate->add_option("--u-hz", ga.u_hz, "Collisional coupling in Hz for the time estimate")->capture_default_str();
  gate->add_option("--budget", ga.budget, "Gate error budget for the time estimate")->capture_default_str();
  gate->add_option("--out", out_path, "Output JSON");

  std::vector<std::string> argv_store{"qgate"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (dynamic_cast<const CLI::CallForVersion*>(&e) ? std::string(kVersion) + "\n" : app.help());
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App* cmd = app.get_subcommands().front();
  Sink sink{out_path, Json::object(), &out};
  sink.config["command"] = cmd->get_name();
  for (const CLI::Option* o : cmd->get_options()) {
    if (o->get_name() == "--help" || o->get_name() == "--out") continue;
    const auto& res = o->results();
    sink.config[o->get_name().substr(o->get_name().find_first_not_of('-'))] =
        res.empty() ? o->get_default_str() : res.back();
  }

  try {
    const std::string name = cmd->get_name();
    if (name == "simulate") cmd_simulate(sim, sink);
    else if (name == "synth-ns") cmd_synth_ns(syn, sink);
    else if (name == "synth-cs") cmd_synth_cs(syn, sink);
    else if (name == "signflip-n") cmd_signflip(syn, sink);
    else if (name == "fidelity-sweep") cmd_fidelity_sweep(sw, sink);
    else if (name == "lattice-ground") cmd_lattice_ground(gr, sink);
    else if (name == "lattice-scan") cmd_lattice_scan(sc, sink);
    else cmd_lattice_gate(ga, sink);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace qgate::cli
