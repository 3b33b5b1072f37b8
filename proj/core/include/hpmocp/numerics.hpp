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
// Dense small-matrix linear algebra, the staggered time grid, fixed-step RK4
// propagation of forced linear systems, and composite Simpson quadrature.

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace hpmocp {

using Vector = std::vector<double>;

/// Dense row-major matrix. Dimensions here are small (2n <= ~12), so every
/// operation is a straightforward triple loop.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {entries_.data() + i * cols_, cols_};
  }
  std::span<const double> entries() const noexcept { return entries_; }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  Matrix transpose() const;

  /// Maximum absolute row sum.
  double norm_inf() const noexcept;
  bool all_finite() const noexcept;
  bool is_symmetric(double rel_tol = 1e-12) const noexcept;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double s) noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);

double norm_inf(std::span<const double> v) noexcept;

/// e^{M t} by scaling and squaring around a (6,6) Pade approximant. The
/// squaring count is chosen so the scaled argument has norm <= 0.5.
Matrix mat_exp(const Matrix& m, double t);

/// Gaussian elimination with partial pivoting. Throws SingularMatrixError
/// when a pivot falls below 1e-13 * ||M||_inf.
Vector solve_linear(const Matrix& m, std::span<const double> rhs);
Matrix solve_linear(const Matrix& m, const Matrix& rhs);

/// Cholesky factor L (lower) with M = L L^T, or an empty matrix when the
/// factorization breaks down.
Matrix cholesky(const Matrix& m);

/// Solves M X = rhs for symmetric positive definite M via its Cholesky factor.
Matrix cholesky_solve(const Matrix& m, const Matrix& rhs);

/// Both checks throw ValidationError on asymmetric input.
bool check_pd(const Matrix& m);
bool check_psd(const Matrix& m);

/// Uniform grid on [t0, tf] with N intervals, sampled at the N+1 nodes and the
/// N midpoints. Sample k sits at t0 + k h / 2, so nodes are the even indices.
class Grid {
 public:
  Grid(double t0, double tf, std::size_t intervals);

  double t0() const noexcept { return t0_; }
  double tf() const noexcept { return tf_; }
  std::size_t intervals() const noexcept { return intervals_; }
  double step() const noexcept { return (tf_ - t0_) / static_cast<double>(intervals_); }
  std::size_t sample_count() const noexcept { return 2 * intervals_ + 1; }
  double time(std::size_t k) const noexcept;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double t0_;
  double tf_;
  std::size_t intervals_;
};

/// A d-dimensional function of time sampled at every point of a Grid.
class Trajectory {
 public:
  Trajectory(Grid grid, std::size_t dim);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return grid_.sample_count(); }

  std::span<double> at(std::size_t k) { return {samples_.data() + k * dim_, dim_}; }
  std::span<const double> at(std::size_t k) const {
    return {samples_.data() + k * dim_, dim_};
  }
  std::span<const double> front() const { return at(0); }
  std::span<const double> back() const { return at(size() - 1); }

  /// Rows [first, first + count) of every sample, as a new trajectory.
  Trajectory slice(std::size_t first, std::size_t count) const;
  double sup_norm() const noexcept;

  Trajectory& operator+=(const Trajectory& o);
  Trajectory& operator-=(const Trajectory& o);
  Trajectory& operator*=(double s) noexcept;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;

 private:
  Grid grid_;
  std::size_t dim_;
  std::vector<double> samples_;
};

Trajectory operator+(Trajectory a, const Trajectory& b);
Trajectory operator-(Trajectory a, const Trajectory& b);
Trajectory operator*(Trajectory a, double s);
Trajectory operator*(double s, Trajectory a);

/// Propagates dz/dt = H z + g(t) forward from z(t0) = z0. Classical RK4 steps
/// run node to node with the stored forcing samples; each midpoint sample
/// comes from a half-step sub-integration whose quarter-point forcing is the
/// quadratic interpolant of the node-midpoint-node samples.
Trajectory rk4_integrate(const Matrix& h, const Trajectory& forcing,
                         std::span<const double> z0, const Grid& grid);
Trajectory rk4_integrate(const Matrix& h, std::span<const double> z0, const Grid& grid);

/// Composite Simpson rule over node-midpoint-node triples of a scalar
/// trajectory.
double simpson_quadrature(const Trajectory& values);

}  // namespace hpmocp
