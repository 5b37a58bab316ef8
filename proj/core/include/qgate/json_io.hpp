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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qgate/fock.hpp"
#include "qgate/interferometer.hpp"

namespace qgate {

// JSON shapes (documented in docs/schema.md):
//   state:    {"modes": M, "truncation": {"kind": "max_total"|"fixed_total", "n": k},
//              "amplitudes": [[re, im], ...]}
//   network:  {"modes": N, "elements": [{"type": "bs", "i": 0, "j": 1, "T": [re, im],
//              "R": [re, im]}, {"type": "phase", "i": 0, "theta": x}, ...]}
//   scenario: {"network": <network>, "ancilla": [..], "pattern": [..],
//              "signal_modes": [..], "cutoff": k, "input": <state>}
// Parse errors raise ValidationError("json", "line L column C: ...").

struct Scenario {
  NetworkDescription network;
  std::vector<int> ancilla;
  std::vector<int> pattern;
  std::vector<int> signal_modes;
  int cutoff = 4;
  std::optional<StateVector> input;

  void validate() const;
};

std::string state_to_json(const StateVector& psi);
StateVector state_from_json(const std::string& text);

std::string network_to_json(const NetworkDescription& net);
NetworkDescription network_from_json(const std::string& text);

std::string scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const std::string& text);

/// Line and column (1-based) of a byte offset.
std::pair<int, int> line_column(const std::string& text, std::size_t offset);

}  // namespace qgate
