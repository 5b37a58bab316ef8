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

#include "qgate/single_qubit.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "qgate/gate_lab.hpp"

namespace qgate {

namespace {

CMatrix rz(double a) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = std::polar(1.0, a);
  m(1, 1) = std::polar(1.0, -a);
  return m;
}

CMatrix ry(double a) {
  CMatrix m(2, 2);
  m << std::cos(a), std::sin(a), -std::sin(a), std::cos(a);
  return m;
}

}  // namespace

EulerAngles euler_decompose(const CMatrix& u, double tol) {
  if (u.rows() != 2 || u.cols() != 2) throw ValidationError("unitary", "need a 2x2 matrix");
  if (unitarity_deviation(u) > tol) throw ValidationError("unitary", "matrix is not unitary");
  EulerAngles e;
  e.phase = 0.5 * std::arg(u.determinant());
  const CMatrix v = u * std::polar(1.0, -e.phase);
  // v = [[e^{i(a1+a3)} cos a2, e^{i(a1-a3)} sin a2], [..]]
  e.a2 = std::atan2(std::abs(v(0, 1)), std::abs(v(0, 0)));
  const double sum = std::abs(v(0, 0)) > 1e-14 ? std::arg(v(0, 0)) : 0.0;
  const double diff = std::abs(v(0, 1)) > 1e-14 ? std::arg(v(0, 1)) : 0.0;
  e.a1 = 0.5 * (sum + diff);
  e.a3 = 0.5 * (sum - diff);
  return e;
}

CMatrix euler_compose(const EulerAngles& e) {
  return std::polar(1.0, e.phase) * rz(e.a1) * ry(e.a2) * rz(e.a3);
}

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMatrix hadamard() { return (pauli_x() + pauli_z()) / std::sqrt(2.0); }

CMatrix cnot_from_cz(int hadamard_qubit) {
  if (hadamard_qubit != 0 && hadamard_qubit != 1)
    throw ValidationError("hadamard_qubit", "must be 0 or 1");
  const CMatrix id = CMatrix::Identity(2, 2);
  const CMatrix h = hadamard_qubit == 0 ? CMatrix(Eigen::kroneckerProduct(hadamard(), id))
                                        : CMatrix(Eigen::kroneckerProduct(id, hadamard()));
  return h * controlled_phase(3.141592653589793) * h;
}

}  // namespace qgate
