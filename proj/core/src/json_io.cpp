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

#include "qgate/json_io.hpp"

#include <set>

#include "json.hpp"

namespace qgate {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, col] = line_column(text, offset);
    throw ValidationError("json", "line " + std::to_string(line) + " column " + std::to_string(col) +
                                      ": " + e.what());
  }
}

const json& member(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ValidationError(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ValidationError(path + "." + key, "missing");
  return *it;
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ValidationError(path, "expected an integer");
  return j.get<int>();
}

double as_double(const json& j, const std::string& path) {
  if (!j.is_number()) throw ValidationError(path, "expected a number");
  return j.get<double>();
}

Complex as_complex(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw ValidationError(path, "expected [re, im]");
  return {as_double(j[0], path + "[0]"), as_double(j[1], path + "[1]")};
}

std::vector<int> as_int_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError(path, "expected an array");
  std::vector<int> v;
  for (std::size_t k = 0; k < j.size(); ++k) v.push_back(as_int(j[k], path + "[" + std::to_string(k) + "]"));
  return v;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json state_json(const StateVector& psi) {
  json t;
  const auto& tr = psi.basis().truncation();
  if (const auto* m = std::get_if<MaxTotalPhotons>(&tr)) {
    t = {{"kind", "max_total"}, {"n", m->n}};
  } else {
    t = {{"kind", "fixed_total"}, {"n", std::get<FixedTotalParticles>(tr).n}};
  }
  json amps = json::array();
  for (Eigen::Index k = 0; k < psi.amplitudes().size(); ++k) amps.push_back(complex_json(psi.amplitudes()[k]));
  return {{"modes", psi.basis().modes()}, {"truncation", t}, {"amplitudes", amps}};
}

StateVector state_from(const json& j, const std::string& path) {
  const int modes = as_int(member(j, "modes", path), path + ".modes");
  if (modes < 1) throw ValidationError(path + ".modes", "must be >= 1");
  const json& t = member(j, "truncation", path);
  const json& kind = member(t, "kind", path + ".truncation");
  const int n = as_int(member(t, "n", path + ".truncation"), path + ".truncation.n");
  if (n < 0) throw ValidationError(path + ".truncation.n", "must be >= 0");
  Truncation trunc;
  if (kind == "max_total") {
    trunc = MaxTotalPhotons{n};
  } else if (kind == "fixed_total") {
    trunc = FixedTotalParticles{n};
  } else {
    throw ValidationError(path + ".truncation.kind", "expected max_total or fixed_total");
  }
  auto basis = FockBasis::enumerate(modes, trunc);
  const json& amps = member(j, "amplitudes", path);
  if (!amps.is_array() || amps.size() != basis->size())
    throw ValidationError(path + ".amplitudes",
                          "expected " + std::to_string(basis->size()) + " amplitudes");
  CVector a(static_cast<Eigen::Index>(basis->size()));
  for (std::size_t k = 0; k < amps.size(); ++k)
    a[static_cast<Eigen::Index>(k)] = as_complex(amps[k], path + ".amplitudes[" + std::to_string(k) + "]");
  return StateVector(basis, a);
}

json network_json(const NetworkDescription& net) {
  json elements = json::array();
  for (const auto& e : net.elements) {
    if (const auto* bs = std::get_if<BeamSplitterElement>(&e)) {
      elements.push_back({{"type", "bs"},
                          {"i", bs->i},
                          {"j", bs->j},
                          {"T", complex_json(bs->params.T)},
                          {"R", complex_json(bs->params.R)}});
    } else {
      const auto& ps = std::get<PhaseShiftElement>(e);
      elements.push_back({{"type", "phase"}, {"i", ps.mode}, {"theta", ps.theta}});
    }
  }
  return {{"modes", net.modes}, {"elements", elements}};
}

NetworkDescription network_from(const json& j, const std::string& path) {
  NetworkDescription net;
  net.modes = as_int(member(j, "modes", path), path + ".modes");
  if (net.modes < 1) throw ValidationError(path + ".modes", "need at least one mode");
  // Checks one element in isolation so errors can name its index.
  auto check = [&](const NetworkElement& e, const std::string& p) {
    try {
      NetworkDescription{net.modes, {e}}.validate();
    } catch (const ValidationError& err) {
      throw ValidationError(p + "." + err.field(), err.what());
    }
  };
  const json& els = member(j, "elements", path);
  if (!els.is_array()) throw ValidationError(path + ".elements", "expected an array");
  for (std::size_t k = 0; k < els.size(); ++k) {
    const std::string p = path + ".elements[" + std::to_string(k) + "]";
    const json& e = els[k];
    const json& type = member(e, "type", p);
    if (type == "bs") {
      BeamSplitterElement bs;
      bs.i = as_int(member(e, "i", p), p + ".i");
      bs.j = as_int(member(e, "j", p), p + ".j");
      bs.params.T = as_complex(member(e, "T", p), p + ".T");
      bs.params.R = as_complex(member(e, "R", p), p + ".R");
      check(bs, p);
      net.elements.emplace_back(bs);
    } else if (type == "phase") {
      const PhaseShiftElement ps{as_int(member(e, "i", p), p + ".i"), as_double(member(e, "theta", p), p + ".theta")};
      check(ps, p);
      net.elements.emplace_back(ps);
    } else {
      throw ValidationError(p + ".type", "expected bs or phase");
    }
  }
  try {
    net.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(path + "." + e.field(), e.what());
  }
  return net;
}

}  // namespace

std::pair<int, int> line_column(const std::string& text, std::size_t offset) {
  int line = 1;
  int col = 1;
  for (std::size_t k = 0; k < std::min(offset, text.size()); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

void Scenario::validate() const {
  network.validate();
  std::set<int> seen;
  for (int m : signal_modes) {
    if (m < 0 || m >= network.modes) throw ValidationError("signal_modes", "mode out of range");
    if (!seen.insert(m).second) throw ValidationError("signal_modes", "duplicate mode");
  }
  if (signal_modes.empty()) throw ValidationError("signal_modes", "need at least one signal mode");
  const std::size_t rest = network.modes - signal_modes.size();
  if (ancilla.size() != rest) throw ValidationError("ancilla", "need one entry per non-signal mode");
  if (pattern.size() != rest) throw ValidationError("pattern", "need one entry per non-signal mode");
  for (int n : ancilla)
    if (n < 0) throw ValidationError("ancilla", "occupations must be >= 0");
  for (int n : pattern)
    if (n < 0) throw ValidationError("pattern", "counts must be >= 0");
  if (cutoff < 0) throw ValidationError("cutoff", "must be >= 0");
  if (input) {
    if (input->basis().modes() != static_cast<int>(signal_modes.size()))
      throw ValidationError("input.modes", "must equal the number of signal modes");
    if (input->basis().is_fixed_total() || input->basis().max_total() != cutoff)
      throw ValidationError("input.truncation", "must be max_total with n equal to cutoff");
  }
}

std::string state_to_json(const StateVector& psi) { return state_json(psi).dump(2); }

StateVector state_from_json(const std::string& text) { return state_from(parse(text), "state"); }

std::string network_to_json(const NetworkDescription& net) { return network_json(net).dump(2); }

NetworkDescription network_from_json(const std::string& text) {
  return network_from(parse(text), "network");
}

std::string scenario_to_json(const Scenario& s) {
  json j = {{"network", network_json(s.network)},
            {"ancilla", s.ancilla},
            {"pattern", s.pattern},
            {"signal_modes", s.signal_modes},
            {"cutoff", s.cutoff}};
  if (s.input) j["input"] = state_json(*s.input);
  return j.dump(2);
}

Scenario scenario_from_json(const std::string& text) {
  const json j = parse(text);
  Scenario s;
  s.network = network_from(member(j, "network", "scenario"), "network");
  s.signal_modes = j.contains("signal_modes") ? as_int_list(j["signal_modes"], "signal_modes")
                                              : std::vector<int>{};
  if (s.signal_modes.empty() && !j.contains("signal_modes")) {
    for (int m = 0; m < s.network.modes; ++m) s.signal_modes.push_back(m);
  }
  if (j.contains("ancilla")) s.ancilla = as_int_list(j["ancilla"], "ancilla");
  if (j.contains("pattern")) s.pattern = as_int_list(j["pattern"], "pattern");
  if (j.contains("cutoff")) s.cutoff = as_int(j["cutoff"], "cutoff");
  if (j.contains("input")) s.input = state_from(j["input"], "input");
  s.validate();
  return s;
}

}  // namespace qgate
