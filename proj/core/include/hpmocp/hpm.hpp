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
// Suboptimal control by homotopy perturbation.
//
// Order 0 solves the linear Hamiltonian TPBVP with the true boundary states;
// every order n >= 1 solves the same linear TPBVP with zero boundary states,
// forced by the He coefficient of the nonlinearity on orders 0..n-1. After
// each order M the control u_M = -R^-1 B^T sum_{k<=M} lambda^(k) is flown on
// the nonlinear plant, its cost J^(M) recorded, and the loop stops once
// |J^(M) - J^(M-1)| < epsilon.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hpmocp/errors.hpp"
#include "hpmocp/numerics.hpp"
#include "hpmocp/problem.hpp"
#include "hpmocp/series.hpp"
#include "hpmocp/tpbvp.hpp"

namespace hpmocp {

struct HpmConfig {
  double epsilon = 1e-12;
  // Highest series order the driver may compute. 0 computes only the
  // linear solution, which can never pass the cost-difference test.
  std::size_t max_order = 20;
  std::size_t grid_intervals = 1000;
  // Overrides OcpProblem::jacobian_transpose when set.
  std::optional<bool> jacobian_transpose;
};

struct HpmTimings {
  double series_ms = 0.0;  // TPBVP solves including forcing assembly
  double cost_ms = 0.0;    // control synthesis, plant simulation, quadrature
};

struct HpmSolution {
  std::vector<SeriesTerm> terms;  // orders 0..M
  Trajectory control;             // u_M
  Trajectory simulated_state;     // plant response to u_M
  std::vector<double> cost_history;
  bool converged = false;
  std::size_t achieved_order = 0;
  HpmTimings timings;
};

/// Raised when an order fails; carries every order completed before it.
class HpmFailure : public Error {
 public:
  HpmFailure(const std::string& what, HpmSolution partial)
      : Error(what), partial_(std::move(partial)) {}
  const HpmSolution& partial() const noexcept { return partial_; }

 private:
  HpmSolution partial_;
};

SeriesTerm solve_order_zero(const OcpProblem& p, const Grid& grid);
SeriesTerm solve_order_n(const OcpProblem& p, std::span<const SeriesTerm> prior, const Grid& grid);

/// u = -R^-1 B^T lambda at every sample.
Trajectory control_from_costate(const OcpProblem& p, const Trajectory& lambda_sum);

struct CostEvaluation {
  Trajectory simulated_state;
  double cost = 0.0;
};

/// Flies `u` on the nonlinear plant from x0 and integrates
/// 1/2 (x'Qx + u'Ru) with Simpson's rule on the same grid.
CostEvaluation evaluate_cost(const OcpProblem& p, const Trajectory& u);

/// sum_{k<=order} x^(k) and sum_{k<=order} lambda^(k).
Trajectory state_partial_sum(std::span<const SeriesTerm> terms, std::size_t order);
Trajectory costate_partial_sum(std::span<const SeriesTerm> terms, std::size_t order);

/// Throws ValidationError for invalid inputs and HpmFailure when an order
/// cannot be solved. Hitting max_order is reported through `converged`.
HpmSolution solve_hpm(const OcpProblem& p, const HpmConfig& cfg);

}  // namespace hpmocp
