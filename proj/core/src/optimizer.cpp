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

#include "qgate/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include <Eigen/Dense>

#include "qgate/random.hpp"
#include "qgate/types.hpp"

namespace qgate {

MinimizeResult nelder_mead(const ScalarFn& f, std::vector<double> x0,
                           const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  // Dimension-adapted coefficients.
  const double dn = static_cast<double>(n);
  const double alpha = 1.0, gamma = 1.0 + 2.0 / dn, rho = 0.75 - 0.5 / dn, sigma = 1.0 - 1.0 / dn;

  std::vector<std::vector<double>> pts(n + 1, x0);
  for (std::size_t k = 0; k < n; ++k) pts[k + 1][k] += options.initial_step;
  std::vector<double> vals(n + 1);
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    const double v = f(x);
    return std::isfinite(v) ? v : INFINITY;
  };
  for (std::size_t k = 0; k <= n; ++k) vals[k] = eval(pts[k]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  while (evals < options.max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
    if (std::abs(vals[worst] - vals[best]) <= options.ftol * (1.0 + std::abs(vals[best]))) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t d = 0; d < n; ++d) centroid[d] += pts[order[k]][d] / dn;

    for (std::size_t d = 0; d < n; ++d) xr[d] = centroid[d] + alpha * (centroid[d] - pts[worst][d]);
    const double fr = eval(xr);
    if (fr < vals[best]) {
      for (std::size_t d = 0; d < n; ++d) xe[d] = centroid[d] + gamma * (xr[d] - centroid[d]);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe, vals[worst] = fe;
      } else {
        pts[worst] = xr, vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr, vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    for (std::size_t d = 0; d < n; ++d)
      xc[d] = outside ? centroid[d] + rho * (xr[d] - centroid[d])
                      : centroid[d] + rho * (pts[worst][d] - centroid[d]);
    const double fc = eval(xc);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = xc, vals[worst] = fc;
      continue;
    }
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == best) continue;
      for (std::size_t d = 0; d < n; ++d)
        pts[k][d] = pts[best][d] + sigma * (pts[k][d] - pts[best][d]);
      vals[k] = eval(pts[k]);
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  return {pts[static_cast<std::size_t>(it - vals.begin())], *it, evals};
}

std::vector<std::vector<double>> numeric_jacobian(const ResidualFn& r, std::span<const double> x,
                                                  double h) {
  std::vector<double> xp(x.begin(), x.end());
  std::vector<std::vector<double>> cols;
  for (std::size_t d = 0; d < xp.size(); ++d) {
    const double keep = xp[d];
    xp[d] = keep + h;
    const std::vector<double> rp = r(xp);
    xp[d] = keep - h;
    const std::vector<double> rm = r(xp);
    xp[d] = keep;
    std::vector<double> col(rp.size());
    for (std::size_t k = 0; k < rp.size(); ++k) col[k] = (rp[k] - rm[k]) / (2.0 * h);
    cols.push_back(std::move(col));
  }
  const std::size_t m = cols.empty() ? 0 : cols[0].size();
  std::vector<std::vector<double>> jac(m, std::vector<double>(xp.size()));
  for (std::size_t d = 0; d < xp.size(); ++d)
    for (std::size_t k = 0; k < m; ++k) jac[k][d] = cols[d][k];
  return jac;
}

namespace {

Eigen::MatrixXd to_eigen(const std::vector<std::vector<double>>& j, std::size_t n) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < j.size(); ++r)
    for (std::size_t c = 0; c < n; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = j[r][c];
  return m;
}

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

Eigen::VectorXd gradient(const ScalarFn& f, const std::vector<double>& x, double h = 1e-7) {
  std::vector<double> xp = x;
  Eigen::VectorXd g(static_cast<Eigen::Index>(x.size()));
  for (std::size_t d = 0; d < x.size(); ++d) {
    const double keep = xp[d];
    xp[d] = keep + h;
    const double fp = f(xp);
    xp[d] = keep - h;
    const double fm = f(xp);
    xp[d] = keep;
    g(static_cast<Eigen::Index>(d)) = (fp - fm) / (2.0 * h);
  }
  return g;
}

}  // namespace

ProjectionResult project_feasible(const ResidualFn& r, std::vector<double> x, double tol,
                                  int max_iterations) {
  ProjectionResult out;
  std::vector<double> res = r(x);
  double rn = norm(res);
  int it = 0;
  for (; it < max_iterations && rn > tol; ++it) {
    const Eigen::MatrixXd jac = to_eigen(numeric_jacobian(r, x), x.size());
    const Eigen::VectorXd rv = Eigen::Map<const Eigen::VectorXd>(res.data(),
                                                                 static_cast<Eigen::Index>(res.size()));
    const Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(rv);
    double a = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 30; ++ls, a *= 0.5) {
      std::vector<double> xn = x;
      for (std::size_t d = 0; d < x.size(); ++d) xn[d] -= a * step(static_cast<Eigen::Index>(d));
      std::vector<double> rnew = r(xn);
      const double nn = norm(rnew);
      if (nn < rn) {
        x = std::move(xn), res = std::move(rnew), rn = nn, moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  out.x = std::move(x);
  out.residual_norm = rn;
  out.iterations = it;
  out.converged = rn <= tol;
  return out;
}

StartOutcome constrained_start(const ConstrainedProblem& problem,
                               const ConstrainedOptions& options, std::vector<double> x) {
  StartOutcome out;
  auto penalty = [&](double mu) {
    return [&, mu](std::span<const double> p) {
      const std::vector<double> r = problem.constraints(p);
      double s = 0.0;
      for (double v : r) s += v * v;
      return -problem.objective(p) + mu * s;
    };
  };
  for (double mu : options.penalty_schedule) {
    const MinimizeResult m = nelder_mead(penalty(mu), x, options.simplex);
    x = m.x;
    out.evaluations += m.evaluations;
  }
  ProjectionResult p = project_feasible(problem.constraints, x, options.feasibility_tol);
  x = p.x;
  double fx = problem.objective(x);
  double step = 0.1;
  for (int it = 0; it < options.refine_iterations && p.residual_norm <= options.accept_tol; ++it) {
    const Eigen::MatrixXd jac = to_eigen(numeric_jacobian(problem.constraints, x), x.size());
    const Eigen::VectorXd g = gradient(problem.objective, x);
    // Component of the gradient tangent to the constraint set.
    const Eigen::VectorXd d = g - jac.completeOrthogonalDecomposition().solve(jac * g);
    if (d.norm() < 1e-10) break;
    bool improved = false;
    for (int ls = 0; ls < 25; ++ls, step *= 0.5) {
      std::vector<double> xn = x;
      for (std::size_t k = 0; k < x.size(); ++k) xn[k] += step * d(static_cast<Eigen::Index>(k)) / d.norm();
      ProjectionResult q = project_feasible(problem.constraints, xn, options.feasibility_tol, 30);
      if (!q.converged) continue;
      const double fn = problem.objective(q.x);
      if (fn > fx) {
        x = q.x, fx = fn, p = q, improved = true;
        break;
      }
    }
    if (!improved) break;
    step = std::min(step * 4.0, 0.5);
  }
  out.x = x;
  out.objective = fx;
  out.residual_norm = p.residual_norm;
  out.feasible = p.residual_norm <= options.accept_tol;
  return out;
}

ConstrainedResult maximize_constrained(const ConstrainedProblem& problem,
                                       const ConstrainedOptions& options) {
  if (options.starts < 1) throw ValidationError("seeds", "need at least one start");
  std::vector<std::vector<double>> x0(options.starts);
  Rng rng(options.seed);
  for (auto& x : x0) {
    x.resize(problem.dimension);
    for (double& v : x) v = rng.uniform(-options.init_range, options.init_range);
  }
  ConstrainedResult res;
  res.starts.resize(options.starts);
  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp(threads, 1u, static_cast<unsigned>(options.starts));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int k; (k = next.fetch_add(1)) < options.starts;)
      res.starts[k] = constrained_start(problem, options, x0[k]);
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  int best = -1;
  for (int k = 0; k < options.starts; ++k) {
    const StartOutcome& s = res.starts[k];
    res.total_evaluations += s.evaluations;
    if (!s.feasible) continue;
    ++res.feasible_starts;
    if (best < 0 || s.objective > res.starts[best].objective) best = k;
  }
  if (best < 0) {
    // No feasible start: keep the least infeasible one for reporting.
    best = 0;
    for (int k = 1; k < options.starts; ++k)
      if (res.starts[k].residual_norm < res.starts[best].residual_norm) best = k;
  }
  res.best = res.starts[best];
  return res;
}

}  // namespace qgate
