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
#include "hpmocp/series.hpp"

#include <string>

#include "hpmocp/errors.hpp"

namespace hpmocp {

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b,
                           std::size_t order) {
  TruncatedSeries c(order);
  for (std::size_t k = 0; k <= order; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i <= k; ++i) s += a.coeff(i) * b.coeff(k - i);
    c[k] = s;
  }
  return c;
}

TruncatedSeries poly_on_series(const MonomialList& terms, std::span<const TruncatedSeries> state,
                               std::size_t order) {
  TruncatedSeries sum(order);
  for (const Monomial& m : terms) {
    if (m.exponents.size() != state.size()) {
      throw DimensionError("poly_on_series: exponent length does not match state dimension");
    }
    TruncatedSeries prod = TruncatedSeries::constant(m.coefficient, order);
    for (std::size_t j = 0; j < state.size(); ++j) {
      for (int e = 0; e < m.exponents[j]; ++e) prod = series_mul(prod, state[j], order);
    }
    for (std::size_t k = 0; k <= order; ++k) sum[k] += prod[k];
  }
  return sum;
}

Trajectory he_forcing(std::size_t order, std::span<const SeriesTerm> prior, const OcpProblem& p) {
  if (order == 0) throw SequencingError("he_forcing: order must be at least 1");
  if (prior.size() != order) {
    throw SequencingError("he_forcing: order " + std::to_string(order) + " needs " +
                          std::to_string(order) + " prior terms, got " +
                          std::to_string(prior.size()));
  }
  const std::size_t n = p.state_dim();
  const Grid grid = prior.front().x.grid();
  for (std::size_t k = 0; k < prior.size(); ++k) {
    if (prior[k].order != k) {
      throw SequencingError("he_forcing: prior term " + std::to_string(k) + " has order " +
                            std::to_string(prior[k].order));
    }
    if (!(prior[k].x.grid() == grid) || !(prior[k].lambda.grid() == grid) ||
        prior[k].x.dim() != n || prior[k].lambda.dim() != n) {
      throw DimensionError("he_forcing: prior terms do not share one grid and dimension");
    }
  }

  Trajectory g(grid, 2 * n);
  if (p.f.is_zero()) return g;

  const std::size_t bound = order - 1;
  const PolyMatrixField jac = differentiate(p.f);
  std::vector<TruncatedSeries> xs(n, TruncatedSeries(bound));
  std::vector<TruncatedSeries> ls(n, TruncatedSeries(bound));

  for (std::size_t s = 0; s < grid.sample_count(); ++s) {
    for (std::size_t k = 0; k <= bound; ++k) {
      auto xk = prior[k].x.at(s);
      auto lk = prior[k].lambda.at(s);
      for (std::size_t j = 0; j < n; ++j) {
        xs[j][k] = xk[j];
        ls[j][k] = lk[j];
      }
    }
    auto out = g.at(s);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = poly_on_series(p.f.components[i], xs, bound)[bound];
      double coupling = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const MonomialList& entry = p.jacobian_transpose ? jac(j, i) : jac(i, j);
        if (entry.empty()) continue;
        coupling += series_mul(poly_on_series(entry, xs, bound), ls[j], bound)[bound];
      }
      out[n + i] = -coupling;
    }
  }
  return g;
}

}  // namespace hpmocp
