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

#include <span>
#include <variant>
#include <vector>

#include "qgate/fock.hpp"
#include "qgate/types.hpp"

namespace qgate {

/// Beam splitter on modes (i, j). The mode-space block is
///   [[ T,  R ],
///    [-R*, T*]]
/// acting on (i, j), so a photon entering mode i leaves in i with amplitude T
/// and in j with amplitude -R*.
struct BeamSplitterParams {
  Complex T{1.0, 0.0};
  Complex R{0.0, 0.0};

  /// T = cos(theta), R = e^{i phase} sin(theta).
  static BeamSplitterParams from_angles(double theta, double phase);
  bool is_lossless(double tol = 1e-12) const;
  /// Parameters of the inverse element: (T*, -R).
  BeamSplitterParams inverse() const { return {std::conj(T), -R}; }
};

CMatrix beam_splitter_block(const BeamSplitterParams& bs);

struct BeamSplitterElement {
  int i = 0;
  int j = 1;
  BeamSplitterParams params;
};

/// Multiplies mode i by e^{i theta}.
struct PhaseShiftElement {
  int mode = 0;
  double theta = 0.0;
};

using NetworkElement = std::variant<BeamSplitterElement, PhaseShiftElement>;

/// Elements in the order light meets them.
struct NetworkDescription {
  int modes = 0;
  std::vector<NetworkElement> elements;

  /// Throws ValidationError on bad mode indices or lossy splitters.
  void validate() const;
  std::size_t beam_splitter_count() const;
};

/// Embedded blocks multiplied left to right in reverse order:
/// Lambda = E_K ... E_2 E_1.
CMatrix compose_network(const NetworkDescription& net);

struct ReckDecomposition {
  NetworkDescription network;
  /// compose_network(network) * global_phase == U.
  Complex global_phase{1.0, 0.0};
};

/// Triangular factorization into at most N(N-1)/2 adjacent-mode splitters and
/// N-1 phase shifters. Identity yields an empty element list.
ReckDecomposition reck_decompose(const CMatrix& u, double tol = 1e-8);

/// Number of real parameters used by network_from_angles: N(N-1) splitter
/// angles plus N phases.
int reck_parameter_count(int modes);
/// Full triangular mesh driven by angles. Layout: for each splitter (theta,
/// phase) in mesh order, then one phase per mode.
NetworkDescription network_from_angles(int modes, std::span<const double> params);
/// Same mesh, composed directly to the mode matrix without building elements.
CMatrix unitary_from_angles(int modes, std::span<const double> params);

/// <m|U|n> over `basis`, computed from permanents. Any square matrix is
/// accepted; unitarity is not required (lossy transmission blocks use this).
CMatrix lift_to_fock(const CMatrix& lambda, const FockBasis& basis);

/// Applies one splitter through the normal-ordered factorization
///   T^{n_i} exp(-R* a_j^+ a_i) exp(R a_i^+ a_j) T^{-n_j}.
/// T = 0 with mode j occupied is rejected.
StateVector apply_bs_factored(const StateVector& psi, const BeamSplitterParams& bs, int i,
                              int j);

}  // namespace qgate
