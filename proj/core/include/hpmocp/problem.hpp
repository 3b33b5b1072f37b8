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
// The problem class: minimize 1/2 int (x'Qx + u'Ru) dt subject to
// dx/dt = Ax + Bu + f(x), x(t0) = x0, x(tf) = xf, with f a polynomial vector
// field built from monomials of total degree >= 2.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hpmocp/numerics.hpp"

namespace hpmocp {

inline constexpr int kMaxMonomialDegree = 8;

struct Monomial {
  double coefficient = 0.0;
  std::vector<int> exponents;  // power of each state variable

  int degree() const noexcept;
  double evaluate(std::span<const double> x) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

using MonomialList = std::vector<Monomial>;

double evaluate(const MonomialList& terms, std::span<const double> x);

/// f : R^n -> R^n, one monomial list per component.
struct PolyVectorField {
  std::size_t dim = 0;
  std::vector<MonomialList> components;

  static PolyVectorField zero(std::size_t n) { return {n, std::vector<MonomialList>(n)}; }
  bool is_zero() const noexcept;

  friend bool operator==(const PolyVectorField&, const PolyVectorField&) = default;
};

/// Symbolic Jacobian; entry (i, j) holds d f_i / d x_j.
struct PolyMatrixField {
  std::size_t dim = 0;
  std::vector<MonomialList> entries;  // row-major, dim * dim

  const MonomialList& operator()(std::size_t i, std::size_t j) const {
    return entries[i * dim + j];
  }
};

Vector eval_field(const PolyVectorField& f, std::span<const double> x);
PolyMatrixField differentiate(const PolyVectorField& f);
Matrix eval_jacobian(const PolyMatrixField& jac, std::span<const double> x);

struct OcpProblem {
  std::string name;
  Matrix A;  // n x n
  Matrix B;  // n x m
  Matrix Q;  // n x n, symmetric PSD
  Matrix R;  // m x m, symmetric PD
  PolyVectorField f;
  double t0 = 0.0;
  double tf = 1.0;
  Vector x0;
  Vector xf;
  // Costate coupling uses (df/dx)^T lambda when true, (df/dx) lambda otherwise.
  bool jacobian_transpose = true;

  std::size_t state_dim() const noexcept { return A.rows(); }
  std::size_t control_dim() const noexcept { return B.cols(); }

  friend bool operator==(const OcpProblem&, const OcpProblem&) = default;
};

struct ValidationIssue {
  std::string code;   // e.g. R_NOT_PD, MONOMIAL_DEGREE_LT_2
  std::string field;  // A, B, Q, R, x0, xf, horizon, f/<component>/<index>
  std::string message;
  std::string hint;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const noexcept { return issues.empty(); }
  bool has(std::string_view code) const noexcept;
  std::string describe() const;
};

/// Collects every violation; never throws.
ValidationReport validate(const OcpProblem& p);

/// Throws ValidationError listing all issues when validate() is not clean.
void require_valid(const OcpProblem& p);

/// Rigid asymmetric spacecraft detumbling: Euler's equations with
/// inertias (86.24, 85.07, 113.59) kg m^2, omega driven from
/// (0.01, 0.005, 0.001) rad/s to rest over 100 s with control-energy cost.
OcpProblem spacecraft_problem();

}  // namespace hpmocp
