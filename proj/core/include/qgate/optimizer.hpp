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
#include <functional>
#include <span>
#include <vector>

namespace qgate {

using ScalarFn = std::function<double(std::span<const double>)>;
using ResidualFn = std::function<std::vector<double>(std::span<const double>)>;

struct NelderMeadOptions {
  int max_evaluations = 20000;
  double initial_step = 0.25;
  /// Stop when the simplex value spread falls below this.
  double ftol = 1e-13;
};

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
};

/// Downhill simplex minimization.
MinimizeResult nelder_mead(const ScalarFn& f, std::vector<double> x0,
                           const NelderMeadOptions& options = {});

/// Central-difference Jacobian, rows = residual components.
std::vector<std::vector<double>> numeric_jacobian(const ResidualFn& r, std::span<const double> x,
                                                  double h = 1e-7);

struct ProjectionResult {
  std::vector<double> x;
  double residual_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Damped minimum-norm Gauss-Newton onto {r(x) = 0}.
ProjectionResult project_feasible(const ResidualFn& r, std::vector<double> x, double tol,
                                  int max_iterations = 100);

/// maximize objective(x) subject to constraints(x) = 0.
struct ConstrainedProblem {
  int dimension = 0;
  ScalarFn objective;
  ResidualFn constraints;
};

struct ConstrainedOptions {
  int starts = 32;
  std::uint64_t seed = 20240601;
  /// Starting points are uniform in [-range, range]^dimension.
  double init_range = 3.141592653589793;
  std::vector<double> penalty_schedule{10.0, 1e2, 1e3, 1e4, 1e5};
  NelderMeadOptions simplex{};
  /// Feasibility target for the final projection.
  double feasibility_tol = 1e-12;
  /// Points with a larger residual are treated as infeasible.
  double accept_tol = 1e-8;
  /// Projected-gradient ascent steps on the feasible set after the penalty phase.
  int refine_iterations = 80;
  /// 0 = hardware concurrency.
  unsigned threads = 0;
};

struct StartOutcome {
  std::vector<double> x;
  double objective = 0.0;
  double residual_norm = 0.0;
  int evaluations = 0;
  bool feasible = false;
};

struct ConstrainedResult {
  StartOutcome best;
  /// One entry per start, in start order.
  std::vector<StartOutcome> starts;
  int feasible_starts = 0;
  int total_evaluations = 0;
};

/// Multi-start quadratic-penalty simplex search, each start finished by a
/// feasibility projection and a projected-gradient ascent on the constraint
/// set. Deterministic for a given seed regardless of thread count.
ConstrainedResult maximize_constrained(const ConstrainedProblem& problem,
                                       const ConstrainedOptions& options);

/// Runs one start from x0 (penalty phase, projection, refinement).
StartOutcome constrained_start(const ConstrainedProblem& problem,
                               const ConstrainedOptions& options, std::vector<double> x0);

}  // namespace qgate
