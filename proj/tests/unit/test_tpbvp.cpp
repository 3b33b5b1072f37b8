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
#include <gtest/gtest.h>

#include <cmath>

#include "hpmocp/errors.hpp"
#include "hpmocp/oracle.hpp"
#include "hpmocp/tpbvp.hpp"
#include "test_support.hpp"

namespace hpmocp {
namespace {

OcpProblem scalar_lq(double a, double b, double q, double r) {
  OcpProblem p;
  p.A = Matrix{{a}};
  p.B = Matrix{{b}};
  p.Q = Matrix{{q}};
  p.R = Matrix{{r}};
  p.f = PolyVectorField::zero(1);
  p.t0 = 0.0;
  p.tf = 1.0;
  p.x0 = {1.0};
  p.xf = {0.0};
  return p;
}

// Random controllable-looking instance: Q = G G^T, R = G G^T + I.
OcpProblem random_linear_problem(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  OcpProblem p;
  p.A = testing::random_matrix(rng, n, n, -0.5, 0.5);
  p.B = testing::random_matrix(rng, n, m);
  const Matrix g = testing::random_matrix(rng, n, n);
  p.Q = g * g.transpose();
  const Matrix h = testing::random_matrix(rng, m, m);
  p.R = h * h.transpose() + Matrix::identity(m);
  p.f = PolyVectorField::zero(n);
  p.t0 = 0.0;
  p.tf = 2.0;
  p.x0 = testing::random_vector(rng, n);
  p.xf = testing::random_vector(rng, n);
  return p;
}

Trajectory smooth_forcing(std::mt19937_64& rng, const Grid& grid, std::size_t dim) {
  Trajectory g(grid, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    const double amp = testing::uniform(rng, -1.0, 1.0);
    const double freq = testing::uniform(rng, 0.5, 2.0);
    for (std::size_t k = 0; k < g.size(); ++k) g.at(k)[j] = amp * std::sin(freq * grid.time(k));
  }
  return g;
}

TEST(BuildHamiltonian, ScalarSubstitution) {
  const auto sys = build_hamiltonian(scalar_lq(0.0, 1.0, 0.0, 1.0));
  EXPECT_EQ(sys.H, (Matrix{{0.0, -1.0}, {0.0, 0.0}}));
}

TEST(BuildHamiltonian, SpacecraftBlocks) {
  const auto sys = build_hamiltonian(spacecraft_problem());
  const double inertia[] = {86.24, 85.07, 113.59};
  ASSERT_EQ(sys.H.rows(), 6u);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      const double want = (j == i + 3) ? -1.0 / (inertia[i] * inertia[i]) : 0.0;
      EXPECT_NEAR(sys.H(i, j), want, 1e-18) << i << "," << j;
    }
  }
}

TEST(BuildHamiltonian, BlockStructure) {
  auto rng = testing::make_rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    const OcpProblem p = random_linear_problem(rng, 3, 2);
    const Matrix h = build_hamiltonian(p).H;
    const Matrix top_right = h.block(0, 3, 3, 3);
    EXPECT_TRUE(top_right.is_symmetric(1e-12));
    EXPECT_TRUE(check_psd(-1.0 * top_right));
    EXPECT_EQ(h.block(3, 0, 3, 3), -1.0 * p.Q);
    EXPECT_EQ(h.block(0, 0, 3, 3), p.A);
    EXPECT_EQ(h.block(3, 3, 3, 3), -1.0 * p.A.transpose());
  }
}

TEST(SolveLinearTpbvp, UncontrollableIsSingular) {
  OcpProblem p = scalar_lq(0.0, 0.0, 0.0, 1.0);
  const Grid grid(0.0, 1.0, 10);
  const LinearTpbvp prob{build_hamiltonian(p), Trajectory(grid, 2), {1.0}, {0.0}, grid};
  EXPECT_THROW(solve_linear_tpbvp(prob), BoundarySystemSingularError);
}

TEST(SolveLinearTpbvp, CoarseGridRaisesAccuracyError) {
  const OcpProblem p = scalar_lq(0.0, 1.0, 100.0, 1.0);
  const Grid grid(0.0, 5.0, 2);
  const LinearTpbvp prob{build_hamiltonian(p), Trajectory(grid, 2), {1.0}, {0.5}, grid};
  EXPECT_THROW(solve_linear_tpbvp(prob), AccuracyError);
}

TEST(SolveLinearTpbvp, SpacecraftOrderZeroClosedForm) {
  const OcpProblem p = spacecraft_problem();
  const Grid grid(0.0, 100.0, 1000);
  const auto sol = solve_linear_tpbvp({build_hamiltonian(p), Trajectory(grid, 6), p.x0, p.xf, grid});
  const double inertia[] = {86.24, 85.07, 113.59};
  for (std::size_t k = 0; k < grid.sample_count(); ++k) {
    const double t = grid.time(k);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_NEAR(sol.lambda.at(k)[i], inertia[i] * inertia[i] * p.x0[i] / 100.0, 1e-10);
      EXPECT_NEAR(sol.x.at(k)[i], p.x0[i] * (1.0 - t / 100.0), 1e-12);
    }
  }
  EXPECT_NEAR(sol.lambda.at(0)[0], 0.743734, 1e-6);
}

TEST(SolveLinearTpbvp, ScalarLqMatchesClosedForm) {
  const OcpProblem p = scalar_lq(0.0, 1.0, 1.0, 1.0);
  const Grid grid(0.0, 1.0, 1000);
  const auto sol = solve_linear_tpbvp({build_hamiltonian(p), Trajectory(grid, 2), p.x0, p.xf, grid});
  const auto exact = analytic_scalar_lq(0.0, 1.0, 1.0, 1.0, 1.0, 0.0, grid);
  EXPECT_LE((sol.x - exact.x).sup_norm(), 1e-9);
  EXPECT_LE((sol.lambda - exact.lambda).sup_norm(), 1e-9);
}

TEST(SolveLinearTpbvp, BoundaryConditionsHold) {
  auto rng = testing::make_rng(52);
  for (int trial = 0; trial < 20; ++trial) {
    const OcpProblem p = random_linear_problem(rng, 3, 2);
    const Grid grid(p.t0, p.tf, 400);
    const auto sol = solve_linear_tpbvp(
        {build_hamiltonian(p), smooth_forcing(rng, grid, 6), p.x0, p.xf, grid});
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_EQ(sol.x.front()[i], p.x0[i]);
      EXPECT_LE(std::abs(sol.x.back()[i] - p.xf[i]), 1e-8 * std::max(1.0, norm_inf(p.xf)));
    }
  }
}

TEST(SolveLinearTpbvp, Superposition) {
  auto rng = testing::make_rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const OcpProblem p = random_linear_problem(rng, 2, 2);
    const Grid grid(p.t0, p.tf, 300);
    const auto sys = build_hamiltonian(p);
    const Trajectory g1 = smooth_forcing(rng, grid, 4);
    const Trajectory g2 = smooth_forcing(rng, grid, 4);
    const Vector a1 = testing::random_vector(rng, 2), b1 = testing::random_vector(rng, 2);
    const Vector a2 = testing::random_vector(rng, 2), b2 = testing::random_vector(rng, 2);
    const Vector a{a1[0] + a2[0], a1[1] + a2[1]};
    const Vector b{b1[0] + b2[0], b1[1] + b2[1]};

    const auto s1 = solve_linear_tpbvp({sys, g1, a1, b1, grid});
    const auto s2 = solve_linear_tpbvp({sys, g2, a2, b2, grid});
    const auto s = solve_linear_tpbvp({sys, g1 + g2, a, b, grid});
    EXPECT_LE((s.x - (s1.x + s2.x)).sup_norm(), 1e-9);
    EXPECT_LE((s.lambda - (s1.lambda + s2.lambda)).sup_norm(), 1e-9);
  }
}

TEST(SolveLinearTpbvp, SatisfiesLinearOdeToSecondOrder) {
  auto rng = testing::make_rng(54);
  const OcpProblem p = random_linear_problem(rng, 2, 1);
  const auto sys = build_hamiltonian(p);
  const double amp[] = {0.7, -0.4, 0.2, 1.1};

  auto defect = [&](std::size_t n) {
    const Grid grid(p.t0, p.tf, n);
    Trajectory g(grid, 4);
    for (std::size_t k = 0; k < g.size(); ++k) {
      for (std::size_t j = 0; j < 4; ++j) g.at(k)[j] = amp[j] * std::cos((j + 1.0) * grid.time(k));
    }
    const auto sol = solve_linear_tpbvp({sys, g, p.x0, p.xf, grid});
    double worst = 0.0;
    const double h = grid.step();
    for (std::size_t i = 1; i < n; ++i) {
      const std::size_t k = 2 * i;
      Vector z(4), dz(4);
      for (std::size_t j = 0; j < 2; ++j) {
        z[j] = sol.x.at(k)[j];
        z[2 + j] = sol.lambda.at(k)[j];
        dz[j] = (sol.x.at(k + 1)[j] - sol.x.at(k - 1)[j]) / h;
        dz[2 + j] = (sol.lambda.at(k + 1)[j] - sol.lambda.at(k - 1)[j]) / h;
      }
      const Vector hz = sys.H * z;
      for (std::size_t j = 0; j < 4; ++j) {
        worst = std::max(worst, std::abs(dz[j] - hz[j] - g.at(k)[j]));
      }
    }
    return worst;
  };
  const double coarse = defect(100);
  const double fine = defect(200);
  EXPECT_LE(coarse, 1e-3);
  EXPECT_NEAR(coarse / fine, 4.0, 0.5);
}

TEST(ResidualNorm, ZeroTrajectories) {
  OcpProblem p = spacecraft_problem();
  p.x0 = {0.0, 0.0, 0.0};
  const Grid grid(0.0, 100.0, 50);
  const Residuals r = residual_norm(p, Trajectory(grid, 3), Trajectory(grid, 3));
  EXPECT_EQ(r.state, 0.0);
  EXPECT_EQ(r.costate, 0.0);
}

TEST(ResidualNorm, ExactLinearSolutionShowsDifferentiationError) {
  const OcpProblem p = scalar_lq(1.0, 1.0, 1.0, 1.0);
  auto residual = [&](std::size_t n) {
    const Grid grid(0.0, 1.0, n);
    const auto exact = analytic_scalar_lq(1.0, 1.0, 1.0, 1.0, 1.0, 0.0, grid);
    return residual_norm(p, exact.x, exact.lambda).total();
  };
  const double r500 = residual(500);
  const double r1000 = residual(1000);
  const double h = 1.0 / 500.0;
  EXPECT_LE(r500, 10.0 * h * h);
  EXPECT_NEAR(r500 / r1000, 4.0, 0.2);
}

TEST(ResidualNorm, GridMismatch) {
  const OcpProblem p = scalar_lq(0.0, 1.0, 0.0, 1.0);
  EXPECT_THROW(residual_norm(p, Trajectory(Grid(0.0, 1.0, 4), 1), Trajectory(Grid(0.0, 1.0, 5), 1)),
               DimensionError);
}

}  // namespace
}  // namespace hpmocp
