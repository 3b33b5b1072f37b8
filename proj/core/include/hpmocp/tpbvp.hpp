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
// Linear time-invariant two-point boundary value problems of Hamiltonian form
//
//   d/dt [x; lambda] = H [x; lambda] + g(t),  x(t0) = a,  x(tf) = b,
//   H = [[A, -B R^-1 B^T], [-Q, -A^T]],
//
// and residuals of the full nonlinear optimality system.

#pragma once

#include <cstddef>

#include "hpmocp/numerics.hpp"
#include "hpmocp/problem.hpp"

namespace hpmocp {

struct HamiltonianSystem {
  std::size_t state_dim = 0;
  Matrix H;  // 2n x 2n
};

/// R^-1 B^T (m x n), via a Cholesky solve against R.
Matrix control_gain(const OcpProblem& p);

HamiltonianSystem build_hamiltonian(const OcpProblem& p);

struct LinearTpbvp {
  HamiltonianSystem system;
  Trajectory forcing;  // dim 2n on `grid`; all-zero for the homogeneous problem
  Vector initial_state;
  Vector final_state;
  Grid grid;
};

struct TpbvpSolution {
  Trajectory x;
  Trajectory lambda;
};

/// Superposes a particular solution (forced IVP from zero) with the
/// homogeneous flow, choosing lambda(t0) from the Phi_12 block of e^{H T}.
/// Throws BoundarySystemSingularError when Phi_12 is singular and
/// AccuracyError when the propagated terminal state misses b by more than
/// 1e-8 * max(1, |b|_inf).
TpbvpSolution solve_linear_tpbvp(const LinearTpbvp& prob);

struct Residuals {
  double state = 0.0;    // sup |F1|
  double costate = 0.0;  // sup |F2|

  double total() const noexcept { return state + costate; }
};

/// Sup-norm of the nonlinear optimality residuals
///   F1 = dx/dt - A x + B R^-1 B^T lambda - f(x)
///   F2 = dlambda/dt + Q x + A^T lambda + J_f(x)^T lambda
/// over interior nodes, differentiating with the neighbouring midpoints (O(h^2)).
Residuals residual_norm(const OcpProblem& p, const Trajectory& x, const Trajectory& lambda);

}  // namespace hpmocp
