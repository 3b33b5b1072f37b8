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
#include "hpmocp/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hpmocp/errors.hpp"

namespace hpmocp {

namespace {

double int_power(double base, int e) {
  double r = 1.0;
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

class IssueSink {
 public:
  explicit IssueSink(ValidationReport& report) : report_(report) {}

  void add(std::string code, std::string field, std::string message, std::string hint = {}) {
    report_.issues.push_back(
        {std::move(code), std::move(field), std::move(message), std::move(hint)});
  }

 private:
  ValidationReport& report_;
};

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void check_matrix(IssueSink& sink, const Matrix& m, const std::string& field, std::size_t rows,
                  std::size_t cols) {
  if (m.rows() != rows || m.cols() != cols) {
    sink.add("DIMENSION_MISMATCH", field,
             field + " is " + shape(m) + ", expected " + std::to_string(rows) + "x" +
                 std::to_string(cols));
  }
  if (!m.all_finite()) sink.add("NON_FINITE", field, field + " has non-finite entries");
}

void check_vector(IssueSink& sink, std::span<const double> v, const std::string& field,
                  std::size_t n) {
  if (v.size() != n) {
    sink.add("DIMENSION_MISMATCH", field,
             field + " has length " + std::to_string(v.size()) + ", expected " +
                 std::to_string(n));
  }
  if (!all_finite(v)) sink.add("NON_FINITE", field, field + " has non-finite entries");
}

void check_weight(IssueSink& sink, const Matrix& m, const std::string& field, bool definite) {
  if (!m.is_square() || !m.all_finite() || m.rows() == 0) return;
  if (!m.is_symmetric()) {
    sink.add(field + "_NOT_SYMMETRIC", field, field + " is not symmetric");
    return;
  }
  if (definite) {
    if (!check_pd(m)) sink.add(field + "_NOT_PD", field, field + " is not positive definite");
  } else if (!check_psd(m)) {
    sink.add(field + "_NOT_PSD", field, field + " is not positive semidefinite");
  }
}

void check_field(IssueSink& sink, const PolyVectorField& f, std::size_t n) {
  if (f.dim != n || f.components.size() != n) {
    sink.add("DIMENSION_MISMATCH", "f",
             "nonlinearity has " + std::to_string(f.components.size()) +
                 " components, expected " + std::to_string(n));
  }
  for (std::size_t i = 0; i < f.components.size(); ++i) {
    for (std::size_t k = 0; k < f.components[i].size(); ++k) {
      const Monomial& mono = f.components[i][k];
      const std::string field = "f/" + std::to_string(i) + "/" + std::to_string(k);
      if (mono.exponents.size() != n) {
        sink.add("MONOMIAL_DIMENSION", field,
                 "monomial has " + std::to_string(mono.exponents.size()) +
                     " exponents, expected " + std::to_string(n));
      }
      if (std::any_of(mono.exponents.begin(), mono.exponents.end(), [](int e) { return e < 0; })) {
        sink.add("MONOMIAL_NEGATIVE_EXPONENT", field, "monomial has a negative exponent");
        continue;
      }
      if (!std::isfinite(mono.coefficient)) {
        sink.add("NON_FINITE", field, "monomial coefficient is not finite");
      } else if (mono.coefficient == 0.0) {
        sink.add("MONOMIAL_ZERO_COEFFICIENT", field, "monomial coefficient is zero",
                 "drop the record");
      }
      const int degree = mono.degree();
      if (degree < 2) {
        sink.add("MONOMIAL_DEGREE_LT_2", field,
                 "monomial has total degree " + std::to_string(degree),
                 "fold linear terms into A");
      } else if (degree > kMaxMonomialDegree) {
        sink.add("MONOMIAL_DEGREE_GT_8", field,
                 "monomial has total degree " + std::to_string(degree));
      }
    }
  }
}

}  // namespace

int Monomial::degree() const noexcept {
  int d = 0;
  for (int e : exponents) d += e;
  return d;
}

double Monomial::evaluate(std::span<const double> x) const {
  if (x.size() != exponents.size()) throw DimensionError("Monomial: state dimension mismatch");
  double v = coefficient;
  for (std::size_t j = 0; j < x.size(); ++j) v *= int_power(x[j], exponents[j]);
  return v;
}

double evaluate(const MonomialList& terms, std::span<const double> x) {
  double s = 0.0;
  for (const auto& m : terms) s += m.evaluate(x);
  return s;
}

bool PolyVectorField::is_zero() const noexcept {
  return std::all_of(components.begin(), components.end(),
                     [](const MonomialList& c) { return c.empty(); });
}

Vector eval_field(const PolyVectorField& f, std::span<const double> x) {
  if (x.size() != f.dim || f.components.size() != f.dim) {
    throw DimensionError("eval_field: dimension mismatch");
  }
  Vector out(f.dim);
  for (std::size_t i = 0; i < f.dim; ++i) out[i] = evaluate(f.components[i], x);
  return out;
}

PolyMatrixField differentiate(const PolyVectorField& f) {
  PolyMatrixField jac{f.dim, std::vector<MonomialList>(f.dim * f.dim)};
  for (std::size_t i = 0; i < f.components.size(); ++i) {
    for (const Monomial& m : f.components[i]) {
      for (std::size_t j = 0; j < m.exponents.size(); ++j) {
        if (m.exponents[j] == 0) continue;
        Monomial d = m;
        d.coefficient *= m.exponents[j];
        d.exponents[j] -= 1;
        jac.entries[i * f.dim + j].push_back(std::move(d));
      }
    }
  }
  return jac;
}

Matrix eval_jacobian(const PolyMatrixField& jac, std::span<const double> x) {
  if (x.size() != jac.dim) throw DimensionError("eval_jacobian: dimension mismatch");
  Matrix out(jac.dim, jac.dim);
  for (std::size_t i = 0; i < jac.dim; ++i) {
    for (std::size_t j = 0; j < jac.dim; ++j) out(i, j) = evaluate(jac(i, j), x);
  }
  return out;
}

bool ValidationReport::has(std::string_view code) const noexcept {
  return std::any_of(issues.begin(), issues.end(),
                     [&](const ValidationIssue& i) { return i.code == code; });
}

std::string ValidationReport::describe() const {
  std::ostringstream os;
  for (const auto& issue : issues) {
    os << issue.code << " at " << issue.field << ": " << issue.message;
    if (!issue.hint.empty()) os << " (" << issue.hint << ")";
    os << '\n';
  }
  return os.str();
}

ValidationReport validate(const OcpProblem& p) {
  ValidationReport report;
  IssueSink sink(report);

  const std::size_t n = p.A.rows();
  const std::size_t m = p.B.cols();
  if (n == 0) sink.add("DIMENSION_MISMATCH", "A", "state dimension is zero");
  if (m == 0) sink.add("DIMENSION_MISMATCH", "B", "control dimension is zero");

  check_matrix(sink, p.A, "A", n, n);
  check_matrix(sink, p.B, "B", n, m);
  check_matrix(sink, p.Q, "Q", n, n);
  check_matrix(sink, p.R, "R", m, m);
  check_weight(sink, p.Q, "Q", false);
  check_weight(sink, p.R, "R", true);
  check_vector(sink, p.x0, "x0", n);
  check_vector(sink, p.xf, "xf", n);
  check_field(sink, p.f, n);

  if (!std::isfinite(p.t0) || !std::isfinite(p.tf) || !(p.tf > p.t0)) {
    sink.add("HORIZON_INVALID", "horizon", "require finite t0 < tf");
  }
  return report;
}

void require_valid(const OcpProblem& p) {
  const auto report = validate(p);
  if (!report.ok()) throw ValidationError("invalid problem:\n" + report.describe());
}

OcpProblem spacecraft_problem() {
  constexpr double i1 = 86.24;
  constexpr double i2 = 85.07;
  constexpr double i3 = 113.59;
  const double inv_inertia[] = {1.0 / i1, 1.0 / i2, 1.0 / i3};

  OcpProblem p;
  p.name = "spacecraft";
  p.A = Matrix(3, 3);
  p.B = Matrix::diagonal(inv_inertia);
  p.Q = Matrix(3, 3);
  p.R = Matrix::identity(3);
  p.f = PolyVectorField::zero(3);
  p.f.components[0].push_back({-(i3 - i2) / i1, {0, 1, 1}});
  p.f.components[1].push_back({-(i1 - i3) / i2, {1, 0, 1}});
  p.f.components[2].push_back({-(i2 - i1) / i3, {1, 1, 0}});
  p.t0 = 0.0;
  p.tf = 100.0;
  p.x0 = {0.01, 0.005, 0.001};
  p.xf = {0.0, 0.0, 0.0};
  return p;
}

}  // namespace hpmocp
