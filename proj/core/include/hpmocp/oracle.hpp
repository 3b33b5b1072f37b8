/*
 Copyright 2026 The hpmocp Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
// Independent verification paths: forward simulation of the nonlinear plant,
// single shooting on the full optimality system, and the closed-form scalar
// LQ solution.

#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "hpmocp/numerics.hpp"
#include "hpmocp/problem.hpp"

namespace hpmocp {

/// RK4 on dx/dt = A x + B u(t) + f(x) from x(t0) = x0. `u` must live on the
/// integration grid; quarter-point controls are interpolated quadratically.
/// Throws DivergenceError once |x|_inf exceeds 1e12 or turns non-finite.
Trajectory simulate_nonlinear(const OcpProblem& p, const Trajectory& u);

/// Propagates the coupled state/costate system of the optimality conditions
/// from (x0, lambda0). Throws DivergenceError like simulate_nonlinear.
Trajectory propagate_optimality_system(const OcpProblem& p, const Grid& grid,
                                       std::span<const double> lambda0);

struct ShootingOptions {
  std::size_t max_iterations = 50;
  std::size_t max_halvings = 20;
  double relative_fd_step = 1e-7;
  double tolerance_scale = 1e-10;  // times max(1, |xf|, |x0|)
};

struct ShootingReport {
  bool converged = false;
  std::size_t iterations = 0;  // accepted Newton steps
  Vector final_residual;       // x(tf) - xf at the best iterate
  Vector lambda0;
  Trajectory x;
  Trajectory lambda;
  std::string message;  // reason for non-convergence, empty on success
};

/// Newton iteration on lambda0 -> x(tf; lambda0) - xf with a forward-difference
/// Jacobian and step halving. Never throws on non-convergence: the report
/// carries the best iterate instead.
ShootingReport shooting_solve(const OcpProblem& p, const Grid& grid,
                              std::span<const double> lambda0_guess,
                              const ShootingOptions& options = {});

struct ScalarLqSolution {
  Trajectory x;
  Trajectory lambda;
  Trajectory u;
  double lambda0 = 0.0;
  double cost = 0.0;
};

/// Closed-form optimum of dx/dt = a x + b u, J = 1/2 int (q x^2 + r u^2) dt
/// with both endpoints fixed. Uses e^{Ht} = cosh(mu t) I + sinh(mu t)/mu H for
/// H = [[a, -b^2/r], [-q, -a]], mu = sqrt(a^2 + b^2 q / r), and integrates the
/// cost exactly.
ScalarLqSolution analytic_scalar_lq(double a, double b, double q, double r, double x0, double xf,
                                    const Grid& grid);

}  // namespace hpmocp
