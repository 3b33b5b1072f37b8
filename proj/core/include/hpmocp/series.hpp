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
// Truncated power series in the homotopy parameter p, and the order-n
// forcing of the linear subproblem sequence.
//
// Substituting x~ = sum_k x^(k) p^k into the homotopy L(x~) + p N(x~) = 0 and
// matching powers of p gives, for n >= 1,
//
//   L(x^(n), lambda^(n)) = -[p^(n-1)] N(x~, lambda~),
//
// where [p^k] extracts the k-th series coefficient. N is polynomial, so that
// coefficient only involves orders 0..n-1 and is evaluated pointwise on the
// grid with series arithmetic truncated at order n-1.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hpmocp/numerics.hpp"
#include "hpmocp/problem.hpp"

namespace hpmocp {

class TruncatedSeries {
 public:
  explicit TruncatedSeries(std::size_t order) : coeffs_(order + 1, 0.0) {}
  TruncatedSeries(std::initializer_list<double> coeffs) : coeffs_(coeffs) {}

  static TruncatedSeries constant(double c, std::size_t order) {
    TruncatedSeries s(order);
    s.coeffs_[0] = c;
    return s;
  }

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  double& operator[](std::size_t k) { return coeffs_[k]; }
  double operator[](std::size_t k) const { return coeffs_[k]; }
  std::span<const double> coefficients() const noexcept { return coeffs_; }

  /// Coefficient k, or zero past the stored order.
  double coeff(std::size_t k) const noexcept { return k < coeffs_.size() ? coeffs_[k] : 0.0; }

 private:
  std::vector<double> coeffs_;
};

/// Cauchy product truncated at `order`: c_k = sum_{i+j=k} a_i b_j.
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b, std::size_t order);

/// sum_k c_k prod_j state_j^{e_kj}, truncated at `order`.
TruncatedSeries poly_on_series(const MonomialList& terms, std::span<const TruncatedSeries> state,
                               std::size_t order);

/// One homotopy order of the state/costate expansion.
struct SeriesTerm {
  std::size_t order = 0;
  Trajectory x;
  Trajectory lambda;
};

/// Forcing g of the order-n subproblem dz/dt = H z + g, stacked (state, costate).
/// State block is +[p^(n-1)] f(x~); costate block is -[p^(n-1)] (J_f(x~)^T lambda~),
/// or J_f(x~) lambda~ when the problem disables the transpose.
/// Throws SequencingError unless `prior` holds exactly orders 0..n-1.
Trajectory he_forcing(std::size_t order, std::span<const SeriesTerm> prior, const OcpProblem& p);

}  // namespace hpmocp
