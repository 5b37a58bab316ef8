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

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qgate/lattice.hpp"
#include "qgate/random.hpp"

namespace qgate {

StateVector GroundState::state(const SparseHamiltonian& h) const {
  return StateVector(h.basis_ptr(), vector.cast<Complex>());
}

GroundState ground_state(const SparseHamiltonian& h, double tol, int max_iterations,
                         std::uint64_t seed) {
  if (!(tol > 0.0)) throw ValidationError("tol", "must be > 0");
  if (max_iterations < 1) throw ValidationError("max_iter", "must be >= 1");
  const auto n = static_cast<Eigen::Index>(h.dimension());
  const Eigen::Index krylov = std::min<Eigen::Index>(n, 100);

  Rng rng(seed);
  RVector x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = rng.normal();
  x.normalize();

  GroundState g;
  RMatrix v(n, krylov);
  RVector w(n);
  RVector hx(n);
  while (true) {
    // One Lanczos cycle from x, restarted at the Ritz vector.
    std::vector<double> alpha;
    std::vector<double> beta;
    v.col(0) = x;
    Eigen::Index m = 0;
    for (Eigen::Index k = 0; k < krylov; ++k) {
      h.apply(v.col(k), w);
      ++g.iterations;
      alpha.push_back(v.col(k).dot(w));
      m = k + 1;
      for (int pass = 0; pass < 2; ++pass) w -= v.leftCols(m) * (v.leftCols(m).transpose() * w);
      const double b = w.norm();
      if (k + 1 == krylov || g.iterations >= max_iterations || b < 1e-13) break;
      beta.push_back(b);
      v.col(k + 1) = w / b;
    }
    RMatrix t = RMatrix::Zero(m, m);
    for (Eigen::Index k = 0; k < m; ++k) t(k, k) = alpha[k];
    for (Eigen::Index k = 0; k + 1 < m; ++k) t(k, k + 1) = t(k + 1, k) = beta[k];
    Eigen::SelfAdjointEigenSolver<RMatrix> es(t);
    x = v.leftCols(m) * es.eigenvectors().col(0);
    x.normalize();
    h.apply(x, hx);
    ++g.iterations;
    g.energy = x.dot(hx);
    g.residual = (hx - g.energy * x).norm();
    if (g.residual < tol) {
      g.converged = true;
      break;
    }
    if (g.iterations >= max_iterations) break;
  }
  // Fix the sign so the largest component is positive.
  Eigen::Index imax = 0;
  x.cwiseAbs().maxCoeff(&imax);
  if (x[imax] < 0.0) x = -x;
  g.vector = std::move(x);
  if (!g.converged) {
    std::ostringstream os;
    os << "ground_state: no convergence after " << g.iterations << " iterations, residual "
       << g.residual;
    throw NumericError(os.str());
  }
  return g;
}

}  // namespace qgate
