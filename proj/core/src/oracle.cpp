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
#include "hpmocp/oracle.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "hpmocp/detail/rk4.hpp"
#include "hpmocp/errors.hpp"
#include "hpmocp/tpbvp.hpp"

namespace hpmocp {

namespace {

constexpr double kDivergenceBound = 1e12;

void divergence_guard(std::span<const double> z) {
  for (double v : z) {
    if (!(std::abs(v) <= kDivergenceBound)) {
      throw DivergenceError("integration diverged: state magnitude exceeded 1e12");
    }
  }
}

// sinh(v) / v
double sinhc(double v) {
  if (std::abs(v) < 1e-2) {
    const double v2 = v * v;
    return 1.0 + v2 / 6.0 * (1.0 + v2 / 20.0 * (1.0 + v2 / 42.0));
  }
  return std::sinh(v) / v;
}

// (sinh(v) / v - 1) / v^2
double sinhc_excess(double v) {
  const double v2 = v * v;
  if (std::abs(v) < 1e-2) {
    return 1.0 / 6.0 + v2 / 120.0 + v2 * v2 / 5040.0 + v2 * v2 * v2 / 362880.0;
  }
  return (std::sinh(v) / v - 1.0) / v2;
}

double residual_inf(std::span<const double> r) {
  double best = 0.0;
  for (double v : r) {
    if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
    best = std::max(best, std::abs(v));
  }
  return best;
}

struct ShotResult {
  Trajectory z;
  Vector residual;
};

std::optional<ShotResult> shoot(const OcpProblem& p, const Grid& grid,
                                std::span<const double> lambda0) {
  const std::size_t n = p.state_dim();
  try {
    Trajectory z = propagate_optimality_system(p, grid, lambda0);
    Vector r(n);
    auto back = z.back();
    for (std::size_t i = 0; i < n; ++i) r[i] = back[i] - p.xf[i];
    if (!std::isfinite(residual_inf(r))) return std::nullopt;
    return ShotResult{std::move(z), std::move(r)};
  } catch (const DivergenceError&) {
    return std::nullopt;
  }
}

}  // namespace

Trajectory simulate_nonlinear(const OcpProblem& p, const Trajectory& u) {
  const std::size_t n = p.state_dim();
  const std::size_t m = p.control_dim();
  if (u.dim() != m) throw DimensionError("simulate_nonlinear: control dimension mismatch");
  if (p.x0.size() != n) throw DimensionError("simulate_nonlinear: x0 length mismatch");

  Vector uk(m);
  auto rhs = [&](std::size_t i, detail::Stage stage, std::span<const double> x,
                 std::span<double> dx) {
    detail::sample_stage(u, i, stage, uk);
    const Vector ax = p.A * x;
    const Vector bu = p.B * uk;
    const Vector fx = eval_field(p.f, x);
    for (std::size_t j = 0; j < n; ++j) dx[j] = ax[j] + bu[j] + fx[j];
  };
  return detail::rk4_staggered(u.grid(), n, p.x0, rhs, divergence_guard);
}

Trajectory propagate_optimality_system(const OcpProblem& p, const Grid& grid,
                                       std::span<const double> lambda0) {
  const std::size_t n = p.state_dim();
  if (lambda0.size() != n) throw DimensionError("propagate: lambda0 length mismatch");

  const Matrix coupling = p.B * control_gain(p);
  const Matrix at = p.A.transpose();
  const PolyMatrixField jac = differentiate(p.f);

  auto rhs = [&](std::size_t, detail::Stage, std::span<const double> z, std::span<double> dz) {
    const auto x = z.first(n);
    const auto l = z.subspan(n, n);
    const Vector ax = p.A * x;
    const Vector sl = coupling * l;
    const Vector fx = eval_field(p.f, x);
    const Vector qx = p.Q * x;
    const Vector atl = at * l;
    const Matrix j = eval_jacobian(jac, x);
    const Vector jl = p.jacobian_transpose ? j.transpose() * l : j * l;
    for (std::size_t c = 0; c < n; ++c) {
      dz[c] = ax[c] - sl[c] + fx[c];
      dz[n + c] = -qx[c] - atl[c] - jl[c];
    }
  };

  Vector z0(2 * n);
  std::copy(p.x0.begin(), p.x0.end(), z0.begin());
  std::copy(lambda0.begin(), lambda0.end(), z0.begin() + static_cast<std::ptrdiff_t>(n));
  return detail::rk4_staggered(grid, 2 * n, z0, rhs, divergence_guard);
}

ShootingReport shooting_solve(const OcpProblem& p, const Grid& grid,
                              std::span<const double> lambda0_guess,
                              const ShootingOptions& options) {
  const std::size_t n = p.state_dim();
  if (lambda0_guess.size() != n) throw DimensionError("shooting_solve: guess length mismatch");

  const double tol = options.tolerance_scale *
                     std::max({1.0, norm_inf(p.xf), norm_inf(p.x0)});

  ShootingReport report{false, 0, Vector(n, std::numeric_limits<double>::quiet_NaN()),
                        Vector(lambda0_guess.begin(), lambda0_guess.end()), Trajectory(grid, n),
                        Trajectory(grid, n), {}};

  auto current = shoot(p, grid, report.lambda0);
  if (!current) {
    report.message = "initial guess diverges";
    return report;
  }
  auto record = [&](const ShotResult& shot) {
    report.final_residual = shot.residual;
    report.x = shot.z.slice(0, n);
    report.lambda = shot.z.slice(n, n);
  };
  record(*current);

  double norm = residual_inf(current->residual);
  while (!(norm <= tol)) {
    if (report.iterations == options.max_iterations) {
      report.message = "iteration cap reached";
      return report;
    }

    Matrix jacobian(n, n);
    for (std::size_t c = 0; c < n; ++c) {
      Vector probe = report.lambda0;
      const double step = options.relative_fd_step * std::max(1.0, std::abs(probe[c]));
      probe[c] += step;
      const auto shifted = shoot(p, grid, probe);
      if (!shifted) {
        report.message = "finite-difference probe diverged";
        return report;
      }
      for (std::size_t r = 0; r < n; ++r) {
        jacobian(r, c) = (shifted->residual[r] - current->residual[r]) / step;
      }
    }

    Vector direction;
    try {
      direction = solve_linear(jacobian, current->residual);
    } catch (const SingularMatrixError&) {
      report.message = "shooting Jacobian is singular";
      return report;
    }

    bool accepted = false;
    double alpha = 1.0;
    for (std::size_t halving = 0; halving <= options.max_halvings; ++halving, alpha *= 0.5) {
      Vector trial = report.lambda0;
      for (std::size_t i = 0; i < n; ++i) trial[i] -= alpha * direction[i];
      auto shot = shoot(p, grid, trial);
      if (!shot) continue;
      const double trial_norm = residual_inf(shot->residual);
      if (trial_norm < norm) {
        report.lambda0 = std::move(trial);
        current = std::move(shot);
        norm = trial_norm;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      report.message = "line search failed to reduce the terminal residual";
      return report;
    }
    ++report.iterations;
    record(*current);
  }
  report.converged = true;
  return report;
}

ScalarLqSolution analytic_scalar_lq(double a, double b, double q, double r, double x0, double xf,
                                    const Grid& grid) {
  if (!(r > 0.0) || !(q >= 0.0) || b == 0.0) {
    throw ValidationError("analytic_scalar_lq: require r > 0, q >= 0, b != 0");
  }
  const double s = b * b / r;
  const double mu = std::sqrt(a * a + s * q);
  const double horizon = grid.tf() - grid.t0();

  auto c_of = [&](double tau) { return std::cosh(mu * tau); };
  auto s_of = [&](double tau) { return tau * sinhc(mu * tau); };

  const double phi12 = -s * s_of(horizon);
  if (phi12 == 0.0) throw BoundarySystemSingularError("analytic_scalar_lq: degenerate horizon");
  const double lambda0 = (xf - (c_of(horizon) + a * s_of(horizon)) * x0) / phi12;

  // x = alpha C + beta S, lambda = gamma C + delta S.
  const double alpha = x0;
  const double beta = a * x0 - s * lambda0;
  const double gamma = lambda0;
  const double delta = -q * x0 - a * lambda0;

  ScalarLqSolution sol{Trajectory(grid, 1), Trajectory(grid, 1), Trajectory(grid, 1), lambda0,
                       0.0};
  for (std::size_t k = 0; k < grid.sample_count(); ++k) {
    const double tau = grid.time(k) - grid.t0();
    const double c = c_of(tau);
    const double sv = s_of(tau);
    sol.x.at(k)[0] = alpha * c + beta * sv;
    sol.lambda.at(k)[0] = gamma * c + delta * sv;
    sol.u.at(k)[0] = -(b / r) * sol.lambda.at(k)[0];
  }

  // int_0^T C^2, S^2, C S in closed form with y = 2 mu T.
  const double y = 2.0 * mu * horizon;
  const double int_cc = 0.5 * horizon * (1.0 + sinhc(y));
  const double int_ss = 2.0 * horizon * horizon * horizon * sinhc_excess(y);
  const double shc = sinhc(mu * horizon);
  const double int_cs = 0.5 * horizon * horizon * shc * shc;

  auto quad = [&](double p0, double p1) {
    return p0 * p0 * int_cc + 2.0 * p0 * p1 * int_cs + p1 * p1 * int_ss;
  };
  sol.cost = 0.5 * (q * quad(alpha, beta) + s * quad(gamma, delta));
  return sol;
}

}  // namespace hpmocp
