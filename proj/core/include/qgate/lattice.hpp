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

#include <cstdint>
#include <span>
#include <vector>

#include "qgate/fock.hpp"
#include "qgate/types.hpp"

namespace qgate {

/// Optical-lattice parameters. Energies share one unit (E_R typically);
/// lengths share another.
struct PotentialParams {
  double depth = 16.0;
  double recoil_energy = 1.0;
  double scattering_length = 5.6e-9;
  double wavelength = 10e-6;
  double cavity_width = 10e-6;
  void validate() const;
};

/// U = 4 a_s V0^{3/4} E_R^{1/4} / sqrt(lambda L).
double collisional_U(const PotentialParams& p);
/// J = (E_R / 2) exp(-(pi^2/4) s) (s + s^3), s = sqrt(V0 / E_R).
double tunneling_J(double depth, double recoil_energy);
/// Depth at which U/J equals `ratio`, by bisection on [lo, hi] (units of E_R).
double critical_depth(const PotentialParams& base, double ratio = 11.6, double lo = 0.5,
                      double hi = 200.0);

enum class Boundary { open, periodic };

struct BHParams {
  double U = 1.0;
  double J = 1.0;
  int sites = 2;
  int atoms = 1;
  Boundary boundary = Boundary::open;
  void validate() const;
};

/// Collisional couplings, tunneling rates and the Raman coupling of the
/// two-species model.
struct TwoSpeciesParams {
  double U_aa = 1.0;
  double U_ab = 1.0;
  double U_bb = 1.0;
  double J_a = 0.0;
  double J_b = 0.0;
  double J_R = 0.0;
  void validate() const;
};

/// Real symmetric matrix stored as its upper triangle (row <= col).
class SparseHamiltonian {
 public:
  struct Entry {
    std::uint32_t row;
    std::uint32_t col;
    double value;
  };

  SparseHamiltonian(BasisPtr basis, std::vector<Entry> entries);

  std::size_t dimension() const { return basis_->size(); }
  const FockBasis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  const std::vector<Entry>& entries() const { return entries_; }

  /// y = H x.
  void apply(const RVector& x, RVector& y) const;
  RMatrix to_dense() const;

 private:
  BasisPtr basis_;
  std::vector<Entry> entries_;
};

/// (U/2) sum n_i (n_i - 1) - J sum (a_i^+ a_{i+1} + h.c.) on the fixed-A
/// sector. Periodic boundaries add the (W-1, 0) bond when W > 2.
SparseHamiltonian build_bh_hamiltonian(const BHParams& p, std::size_t limit = kDefaultBasisLimit);

/// Two species on `sites` sites with `atoms` atoms in total. Modes are
/// ordered (a_1, b_1, a_2, b_2, ...), i.e. |n_a^1 n_b^1; n_a^2 n_b^2; ...>.
SparseHamiltonian build_two_species_hamiltonian(const TwoSpeciesParams& p, int sites, int atoms,
                                                Boundary boundary = Boundary::open,
                                                std::size_t limit = kDefaultBasisLimit);

struct GroundState {
  double energy = 0.0;
  RVector vector;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  StateVector state(const SparseHamiltonian& h) const;
};

/// Lowest eigenpair by restarted Lanczos with full reorthogonalization.
/// Throws NumericError when the residual stays above tol.
GroundState ground_state(const SparseHamiltonian& h, double tol = 1e-9, int max_iterations = 2000,
                         std::uint64_t seed = 1);

struct SiteStatistics {
  std::vector<double> mean;
  std::vector<double> variance;
  double max_variance() const;
  double mean_variance() const;
};
SiteStatistics site_statistics(const StateVector& psi);
SiteStatistics site_statistics(const FockBasis& basis, const RVector& amplitudes);

/// <a_i^+ a_j>.
RMatrix one_body_density(const FockBasis& basis, const RVector& amplitudes);
/// Largest eigenvalue of the one-body density matrix divided by A.
double condensate_fraction(const FockBasis& basis, const RVector& amplitudes);

struct ScanPoint {
  double u_over_j = 0.0;
  double energy = 0.0;
  double max_variance = 0.0;
  double mean_variance = 0.0;
  double condensate_fraction = 0.0;
};

/// Ground-state statistics with J = 1 and U = ratio.
std::vector<ScanPoint> transition_scan(std::span<const double> ratios, int sites, int atoms,
                                       Boundary boundary = Boundary::open, double tol = 1e-9);

/// n values log-spaced between lo and hi inclusive.
std::vector<double> log_grid(double lo, double hi, int n);

}  // namespace qgate
