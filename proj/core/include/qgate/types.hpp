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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qgate {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr const char* kVersion = "qgate 0.1.0";

/// Bad caller input. `field()` names the offending parameter.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A numerical procedure failed (non-convergence, instability, infeasibility).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// z^n by repeated multiplication (0^0 = 1).
inline Complex ipow(Complex z, int n) {
  Complex r = 1.0;
  const Complex base = n < 0 ? 1.0 / z : z;
  for (int k = 0; k < (n < 0 ? -n : n); ++k) r *= base;
  return r;
}

/// Max |A A^+ - I|.
double unitarity_deviation(const CMatrix& a);
bool is_unitary(const CMatrix& a, double tol);

}  // namespace qgate
