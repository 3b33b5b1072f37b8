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
#include "hpmocp/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hpmocp/detail/rk4.hpp"
#include "hpmocp/errors.hpp"

namespace hpmocp {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                         "x" + std::to_string(b.cols()));
  }
}

// In-place LU with partial pivoting; returns the row permutation.
std::vector<std::size_t> lu_factor(Matrix& lu) {
  const std::size_t n = lu.rows();
  const double threshold = 1e-13 * lu.norm_inf();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > best) {
        best = std::abs(lu(i, k));
        p = i;
      }
    }
    if (!(best > threshold) || best == 0.0) {
      throw SingularMatrixError("solve_linear: pivot " + std::to_string(best) +
                                " below threshold at column " + std::to_string(k));
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
      std::swap(perm[k], perm[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = lu(i, k) / lu(k, k);
      lu(i, k) = factor;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= factor * lu(k, j);
    }
  }
  return perm;
}

void lu_solve_column(const Matrix& lu, const std::vector<std::size_t>& perm,
                     std::span<const double> rhs, std::span<double> x) {
  const std::size_t n = lu.rows();
  for (std::size_t i = 0; i < n; ++i) {
    double s = rhs[perm[i]];
    for (std::size_t j = 0; j < i; ++j) s -= lu(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= lu(i, j) * x[j];
    x[i] = s / lu(i, i);
  }
}

void require_symmetric(const Matrix& m, const char* op) {
  if (!m.is_square()) throw DimensionError(std::string(op) + ": matrix is not square");
  if (!m.is_symmetric()) throw ValidationError(std::string(op) + ": matrix is not symmetric");
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), entries_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("Matrix: ragged initializer rows");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> entries) {
  Matrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("Matrix::block out of range");
  Matrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  }
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) {
    throw DimensionError("Matrix::set_block out of range");
  }
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

double Matrix::norm_inf() const noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

bool Matrix::all_finite() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](double v) { return std::isfinite(v); });
}

bool Matrix::is_symmetric(double rel_tol) const noexcept {
  if (!is_square()) return false;
  const double scale = std::max(1.0, norm_inf());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i + 1; j < cols_; ++j) {
      if (std::abs((*this)(i, j) - (*this)(j, i)) > rel_tol * scale) return false;
    }
  }
  return true;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  require_same_shape(*this, o, "operator+");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  require_same_shape(*this, o, "operator-");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) noexcept {
  for (double& v : entries_) v *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, double s) { return a *= s; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("operator*: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw DimensionError("operator*: vector length mismatch");
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double norm_inf(std::span<const double> v) noexcept {
  double best = 0.0;
  for (double x : v) best = std::max(best, std::abs(x));
  return best;
}

Matrix mat_exp(const Matrix& m, double t) {
  if (!m.is_square()) throw DimensionError("mat_exp: matrix is not square");
  const std::size_t n = m.rows();
  Matrix a = m * t;
  const double norm = a.norm_inf();

  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    a *= std::ldexp(1.0, -squarings);
  }

  // (6,6) Pade coefficients c_k = (2q-k)! q! / ((2q)! k! (q-k)!).
  constexpr double c[] = {1.0,        1.0 / 2.0,    5.0 / 44.0,      1.0 / 66.0,
                          1.0 / 792.0, 1.0 / 15840.0, 1.0 / 665280.0};
  Matrix num = Matrix::identity(n);
  Matrix den = Matrix::identity(n);
  Matrix power = Matrix::identity(n);
  for (int k = 1; k <= 6; ++k) {
    power = power * a;
    num += power * c[k];
    den += power * ((k % 2 == 0) ? c[k] : -c[k]);
  }
  Matrix result = solve_linear(den, num);
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

Vector solve_linear(const Matrix& m, std::span<const double> rhs) {
  if (!m.is_square()) throw DimensionError("solve_linear: matrix is not square");
  if (m.rows() != rhs.size()) throw DimensionError("solve_linear: rhs length mismatch");
  Matrix lu = m;
  const auto perm = lu_factor(lu);
  Vector x(m.rows());
  lu_solve_column(lu, perm, rhs, x);
  return x;
}

Matrix solve_linear(const Matrix& m, const Matrix& rhs) {
  if (!m.is_square()) throw DimensionError("solve_linear: matrix is not square");
  if (m.rows() != rhs.rows()) throw DimensionError("solve_linear: rhs rows mismatch");
  Matrix lu = m;
  const auto perm = lu_factor(lu);
  const Matrix rhs_t = rhs.transpose();
  Matrix x_t(rhs.cols(), rhs.rows());
  Vector col(m.rows());
  for (std::size_t j = 0; j < rhs.cols(); ++j) {
    lu_solve_column(lu, perm, rhs_t.row(j), col);
    for (std::size_t i = 0; i < m.rows(); ++i) x_t(j, i) = col[i];
  }
  return x_t.transpose();
}

Matrix cholesky(const Matrix& m) {
  const std::size_t n = m.rows();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) return {};
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

Matrix cholesky_solve(const Matrix& m, const Matrix& rhs) {
  if (!m.is_square() || m.rows() != rhs.rows()) {
    throw DimensionError("cholesky_solve: dimension mismatch");
  }
  const Matrix l = cholesky(m);
  if (l.empty() && m.rows() != 0) throw SingularMatrixError("cholesky_solve: matrix is not PD");
  const std::size_t n = m.rows();
  Matrix x = rhs;
  for (std::size_t c = 0; c < rhs.cols(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = x(i, c);
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * x(k, c);
      x(i, c) = s / l(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
      double s = x(i, c);
      for (std::size_t k = i + 1; k < n; ++k) s -= l(k, i) * x(k, c);
      x(i, c) = s / l(i, i);
    }
  }
  return x;
}

bool check_pd(const Matrix& m) {
  require_symmetric(m, "check_pd");
  return m.rows() == 0 || !cholesky(m).empty();
}

bool check_psd(const Matrix& m) {
  require_symmetric(m, "check_psd");
  if (m.rows() == 0) return true;
  const double delta = 1e-12 * std::max(1.0, m.norm_inf());
  Matrix shifted = m;
  for (std::size_t i = 0; i < m.rows(); ++i) shifted(i, i) += delta;
  return !cholesky(shifted).empty();
}

Grid::Grid(double t0, double tf, std::size_t intervals)
    : t0_(t0), tf_(tf), intervals_(intervals) {
  if (!std::isfinite(t0) || !std::isfinite(tf) || !(tf > t0)) {
    throw ValidationError("Grid: require finite t0 < tf");
  }
  if (intervals < 2) throw ValidationError("Grid: require at least 2 intervals");
}

double Grid::time(std::size_t k) const noexcept {
  if (k + 1 == sample_count()) return tf_;
  return t0_ + static_cast<double>(k) * 0.5 * step();
}

Trajectory::Trajectory(Grid grid, std::size_t dim)
    : grid_(grid), dim_(dim), samples_(grid.sample_count() * dim, 0.0) {}

Trajectory Trajectory::slice(std::size_t first, std::size_t count) const {
  if (first + count > dim_) throw DimensionError("Trajectory::slice out of range");
  Trajectory out(grid_, count);
  for (std::size_t k = 0; k < size(); ++k) {
    auto src = at(k);
    std::copy(src.begin() + static_cast<std::ptrdiff_t>(first),
              src.begin() + static_cast<std::ptrdiff_t>(first + count), out.at(k).begin());
  }
  return out;
}

double Trajectory::sup_norm() const noexcept { return norm_inf(samples_); }

Trajectory& Trajectory::operator+=(const Trajectory& o) {
  if (!(grid_ == o.grid_) || dim_ != o.dim_) throw DimensionError("Trajectory: shape mismatch");
  for (std::size_t k = 0; k < samples_.size(); ++k) samples_[k] += o.samples_[k];
  return *this;
}

Trajectory& Trajectory::operator-=(const Trajectory& o) {
  if (!(grid_ == o.grid_) || dim_ != o.dim_) throw DimensionError("Trajectory: shape mismatch");
  for (std::size_t k = 0; k < samples_.size(); ++k) samples_[k] -= o.samples_[k];
  return *this;
}

Trajectory& Trajectory::operator*=(double s) noexcept {
  for (double& v : samples_) v *= s;
  return *this;
}

Trajectory operator+(Trajectory a, const Trajectory& b) { return a += b; }
Trajectory operator-(Trajectory a, const Trajectory& b) { return a -= b; }
Trajectory operator*(Trajectory a, double s) { return a *= s; }
Trajectory operator*(double s, Trajectory a) { return a *= s; }

Trajectory rk4_integrate(const Matrix& h, const Trajectory& forcing, std::span<const double> z0,
                         const Grid& grid) {
  if (!h.is_square()) throw DimensionError("rk4_integrate: H is not square");
  const std::size_t dim = h.rows();
  if (z0.size() != dim) throw DimensionError("rk4_integrate: z0 length mismatch");
  if (!(forcing.grid() == grid)) throw DimensionError("rk4_integrate: forcing grid mismatch");
  if (forcing.dim() != dim) throw DimensionError("rk4_integrate: forcing dimension mismatch");

  Vector g(dim);
  auto rhs = [&](std::size_t i, detail::Stage stage, std::span<const double> z,
                 std::span<double> dz) {
    detail::sample_stage(forcing, i, stage, g);
    for (std::size_t r = 0; r < dim; ++r) {
      double s = g[r];
      for (std::size_t c = 0; c < dim; ++c) s += h(r, c) * z[c];
      dz[r] = s;
    }
  };
  return detail::rk4_staggered(grid, dim, z0, rhs, [](std::span<const double>) {});
}

Trajectory rk4_integrate(const Matrix& h, std::span<const double> z0, const Grid& grid) {
  return rk4_integrate(h, Trajectory(grid, h.rows()), z0, grid);
}

double simpson_quadrature(const Trajectory& values) {
  if (values.dim() != 1) throw DimensionError("simpson_quadrature: expected a scalar trajectory");
  const Grid& grid = values.grid();
  const double h = grid.step();
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.intervals(); ++i) {
    sum += values.at(2 * i)[0] + 4.0 * values.at(2 * i + 1)[0] + values.at(2 * i + 2)[0];
  }
  return sum * h / 6.0;
}

}  // namespace hpmocp
