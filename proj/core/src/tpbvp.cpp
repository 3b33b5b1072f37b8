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
#include "hpmocp/tpbvp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hpmocp/errors.hpp"

namespace hpmocp {

Matrix control_gain(const OcpProblem& p) { return cholesky_solve(p.R, p.B.transpose()); }

HamiltonianSystem build_hamiltonian(const OcpProblem& p) {
  const std::size_t n = p.state_dim();
  const Matrix coupling = p.B * control_gain(p);  // B R^-1 B^T

  Matrix h(2 * n, 2 * n);
  h.set_block(0, 0, p.A);
  h.set_block(0, n, -1.0 * coupling);
  h.set_block(n, 0, -1.0 * p.Q);
  h.set_block(n, n, -1.0 * p.A.transpose());
  return {n, std::move(h)};
}

TpbvpSolution solve_linear_tpbvp(const LinearTpbvp& prob) {
  const std::size_t n = prob.system.state_dim;
  const Matrix& h = prob.system.H;
  if (h.rows() != 2 * n || !h.is_square()) {
    throw DimensionError("solve_linear_tpbvp: H must be 2n x 2n");
  }
  if (prob.initial_state.size() != n || prob.final_state.size() != n) {
    throw DimensionError("solve_linear_tpbvp: boundary vectors must have length n");
  }
  if (!(prob.forcing.grid() == prob.grid) || prob.forcing.dim() != 2 * n) {
    throw DimensionError("solve_linear_tpbvp: forcing must be 2n-dimensional on the solver grid");
  }

  const Grid& grid = prob.grid;
  const bool forced = prob.forcing.sup_norm() > 0.0;

  // Terminal state of the particular solution w(t0) = 0.
  Vector w_final(n, 0.0);
  if (forced) {
    const Vector zero(2 * n, 0.0);
    const Trajectory w = rk4_integrate(h, prob.forcing, zero, grid);
    auto back = w.back();
    std::copy(back.begin(), back.begin() + static_cast<std::ptrdiff_t>(n), w_final.begin());
  }

  const Matrix phi = mat_exp(h, grid.tf() - grid.t0());
  const Matrix phi11 = phi.block(0, 0, n, n);
  const Matrix phi12 = phi.block(0, n, n, n);

  Vector rhs = phi11 * prob.initial_state;
  for (std::size_t i = 0; i < n; ++i) rhs[i] = prob.final_state[i] - rhs[i] - w_final[i];

  Vector lambda0;
  try {
    lambda0 = solve_linear(phi12, rhs);
  } catch (const SingularMatrixError& e) {
    throw BoundarySystemSingularError(
        std::string("linear TPBVP: Phi_12 is singular on this horizon (") + e.what() + ")");
  }

  Vector z0(2 * n);
  std::copy(prob.initial_state.begin(), prob.initial_state.end(), z0.begin());
  std::copy(lambda0.begin(), lambda0.end(), z0.begin() + static_cast<std::ptrdiff_t>(n));
  const Trajectory z = forced ? rk4_integrate(h, prob.forcing, z0, grid)
                              : rk4_integrate(h, z0, grid);

  TpbvpSolution sol{z.slice(0, n), z.slice(n, n)};

  double miss = 0.0;
  auto x_final = sol.x.back();
  for (std::size_t i = 0; i < n; ++i) {
    miss = std::max(miss, std::abs(x_final[i] - prob.final_state[i]));
  }
  const double tol = 1e-8 * std::max(1.0, norm_inf(prob.final_state));
  if (!(miss <= tol)) {
    throw AccuracyError("linear TPBVP: terminal state misses target by " + std::to_string(miss) +
                        "; refine the grid");
  }
  return sol;
}

Residuals residual_norm(const OcpProblem& p, const Trajectory& x, const Trajectory& lambda) {
  const std::size_t n = p.state_dim();
  if (!(x.grid() == lambda.grid()) || x.dim() != n || lambda.dim() != n) {
    throw DimensionError("residual_norm: x and lambda must share one grid and dimension n");
  }
  const Grid& grid = x.grid();
  const double h = grid.step();
  const Matrix coupling = p.B * control_gain(p);
  const Matrix at = p.A.transpose();
  const PolyMatrixField jac = differentiate(p.f);

  Residuals r;
  Vector dx(n), dl(n);
  for (std::size_t i = 1; i < grid.intervals(); ++i) {
    const std::size_t k = 2 * i;
    auto xk = x.at(k);
    auto lk = lambda.at(k);
    for (std::size_t j = 0; j < n; ++j) {
      dx[j] = (x.at(k + 1)[j] - x.at(k - 1)[j]) / h;
      dl[j] = (lambda.at(k + 1)[j] - lambda.at(k - 1)[j]) / h;
    }
    const Vector ax = p.A * xk;
    const Vector sl = coupling * lk;
    const Vector fx = eval_field(p.f, xk);
    const Vector qx = p.Q * xk;
    const Vector atl = at * lk;
    const Matrix j = eval_jacobian(jac, xk);
    const Vector jl = p.jacobian_transpose ? j.transpose() * lk : j * lk;
    for (std::size_t c = 0; c < n; ++c) {
      r.state = std::max(r.state, std::abs(dx[c] - ax[c] + sl[c] - fx[c]));
      r.costate = std::max(r.costate, std::abs(dl[c] + qx[c] + atl[c] + jl[c]));
    }
  }
  return r;
}

}  // namespace hpmocp
