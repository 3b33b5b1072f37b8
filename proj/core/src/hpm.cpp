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
#include "hpmocp/hpm.hpp"

#include <chrono>
#include <cmath>

#include "hpmocp/oracle.hpp"

namespace hpmocp {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

Trajectory partial_sum(std::span<const SeriesTerm> terms, std::size_t order, bool costate) {
  if (terms.empty() || order >= terms.size()) {
    throw SequencingError("partial sum requested beyond the computed orders");
  }
  Trajectory sum = costate ? terms[0].lambda : terms[0].x;
  for (std::size_t k = 1; k <= order; ++k) sum += costate ? terms[k].lambda : terms[k].x;
  return sum;
}

void validate_config(const HpmConfig& cfg) {
  if (!(cfg.epsilon > 0.0) || !std::isfinite(cfg.epsilon)) {
    throw ValidationError("HpmConfig: epsilon must be a positive finite number");
  }
  if (cfg.grid_intervals < 2) throw ValidationError("HpmConfig: grid_intervals must be >= 2");
}

}  // namespace

SeriesTerm solve_order_zero(const OcpProblem& p, const Grid& grid) {
  const std::size_t n = p.state_dim();
  auto sol = solve_linear_tpbvp({build_hamiltonian(p), Trajectory(grid, 2 * n), p.x0, p.xf, grid});
  return {0, std::move(sol.x), std::move(sol.lambda)};
}

SeriesTerm solve_order_n(const OcpProblem& p, std::span<const SeriesTerm> prior, const Grid& grid) {
  const std::size_t order = prior.size();
  const std::size_t n = p.state_dim();
  Trajectory forcing = he_forcing(order, prior, p);
  if (!(forcing.grid() == grid)) throw DimensionError("solve_order_n: prior terms use another grid");
  const Vector zero(n, 0.0);
  auto sol = solve_linear_tpbvp({build_hamiltonian(p), std::move(forcing), zero, zero, grid});
  return {order, std::move(sol.x), std::move(sol.lambda)};
}

Trajectory control_from_costate(const OcpProblem& p, const Trajectory& lambda_sum) {
  if (lambda_sum.dim() != p.state_dim()) {
    throw DimensionError("control_from_costate: costate dimension mismatch");
  }
  const Matrix gain = control_gain(p);
  Trajectory u(lambda_sum.grid(), p.control_dim());
  for (std::size_t k = 0; k < u.size(); ++k) {
    const Vector v = gain * lambda_sum.at(k);
    auto out = u.at(k);
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  }
  return u;
}

CostEvaluation evaluate_cost(const OcpProblem& p, const Trajectory& u) {
  Trajectory x = simulate_nonlinear(p, u);
  Trajectory integrand(u.grid(), 1);
  for (std::size_t k = 0; k < u.size(); ++k) {
    const auto xk = x.at(k);
    const auto uk = u.at(k);
    const Vector qx = p.Q * xk;
    const Vector ru = p.R * uk;
    double s = 0.0;
    for (std::size_t i = 0; i < xk.size(); ++i) s += xk[i] * qx[i];
    for (std::size_t i = 0; i < uk.size(); ++i) s += uk[i] * ru[i];
    integrand.at(k)[0] = s;
  }
  return {std::move(x), 0.5 * simpson_quadrature(integrand)};
}

Trajectory state_partial_sum(std::span<const SeriesTerm> terms, std::size_t order) {
  return partial_sum(terms, order, false);
}

Trajectory costate_partial_sum(std::span<const SeriesTerm> terms, std::size_t order) {
  return partial_sum(terms, order, true);
}

HpmSolution solve_hpm(const OcpProblem& problem, const HpmConfig& cfg) {
  validate_config(cfg);
  OcpProblem p = problem;
  if (cfg.jacobian_transpose) p.jacobian_transpose = *cfg.jacobian_transpose;
  require_valid(p);

  const Grid grid(p.t0, p.tf, cfg.grid_intervals);
  HpmSolution sol{{}, Trajectory(grid, p.control_dim()), Trajectory(grid, p.state_dim()), {},
                  false, 0, {}};

  try {
    auto started = Clock::now();
    sol.terms.push_back(solve_order_zero(p, grid));
    sol.timings.series_ms += elapsed_ms(started);
    Trajectory lambda_sum = sol.terms.front().lambda;

    for (std::size_t order = 0;; ++order) {
      started = Clock::now();
      Trajectory u = control_from_costate(p, lambda_sum);
      CostEvaluation eval = evaluate_cost(p, u);
      sol.timings.cost_ms += elapsed_ms(started);

      sol.control = std::move(u);
      sol.simulated_state = std::move(eval.simulated_state);
      sol.cost_history.push_back(eval.cost);
      sol.achieved_order = order;

      if (order >= 1) {
        const double delta = std::abs(sol.cost_history[order] - sol.cost_history[order - 1]);
        if (delta < cfg.epsilon) {
          sol.converged = true;
          break;
        }
      }
      if (order == cfg.max_order) break;

      started = Clock::now();
      sol.terms.push_back(solve_order_n(p, sol.terms, grid));
      sol.timings.series_ms += elapsed_ms(started);
      lambda_sum += sol.terms.back().lambda;
    }
  } catch (const Error& e) {
    // Keep terms and costs consistent: drop a term whose cost was never evaluated.
    if (sol.terms.size() > sol.cost_history.size()) sol.terms.pop_back();
    throw HpmFailure(std::string("HPM aborted at order ") +
                         std::to_string(sol.cost_history.size()) + ": " + e.what(),
                     std::move(sol));
  }
  return sol;
}

}  // namespace hpmocp
