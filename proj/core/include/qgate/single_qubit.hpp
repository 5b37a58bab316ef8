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

#include "qgate/types.hpp"

namespace qgate {

/// U = e^{i phase} e^{i a1 Z} e^{i a2 Y} e^{i a3 Z}.
struct EulerAngles {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  double phase = 0.0;
};

EulerAngles euler_decompose(const CMatrix& u, double tol = 1e-10);
CMatrix euler_compose(const EulerAngles& e);

CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();
/// (X + Z) / sqrt(2).
CMatrix hadamard();

/// H on one qubit of a controlled-Z, H (x) I or I (x) H on both sides.
/// Qubit 0 is the left tensor factor of |q0 q1>. With the Hadamards on
/// qubit 1 this is a CNOT controlled by qubit 0: |10> <-> |11>.
CMatrix cnot_from_cz(int hadamard_qubit = 1);

}  // namespace qgate
