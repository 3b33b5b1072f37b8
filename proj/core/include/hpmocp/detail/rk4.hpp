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
#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "hpmocp/numerics.hpp"

namespace hpmocp::detail {

// Position inside one grid interval [t_i, t_i + h].
enum class Stage { kStart, kQuarter, kMid, kEnd };

// Value of staggered samples at a stage of interval i. Quarter points use the
// quadratic through the node, midpoint and next node.
inline void sample_stage(const Trajectory& g, std::size_t interval, Stage stage,
                         std::span<double> out) {
  const std::size_t k = 2 * interval;
  switch (stage) {
    case Stage::kStart: {
      auto s = g.at(k);
      std::copy(s.begin(), s.end(), out.begin());
      return;
    }
    case Stage::kMid: {
      auto s = g.at(k + 1);
      std::copy(s.begin(), s.end(), out.begin());
      return;
    }
    case Stage::kEnd: {
      auto s = g.at(k + 2);
      std::copy(s.begin(), s.end(), out.begin());
      return;
    }
    case Stage::kQuarter: {
      auto a = g.at(k);
      auto m = g.at(k + 1);
      auto b = g.at(k + 2);
      for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = 0.375 * a[j] + 0.75 * m[j] - 0.125 * b[j];
      }
      return;
    }
  }
}

// Classical RK4 over a staggered grid. `rhs(interval, stage, z, dz)` writes
// dz/dt; `after_step(z)` sees every new node state and may throw.
template <class Rhs, class AfterStep>
Trajectory rk4_staggered(const Grid& grid, std::size_t dim, std::span<const double> z0,
                         Rhs&& rhs, AfterStep&& after_step) {
  Trajectory out(grid, dim);
  std::copy(z0.begin(), z0.end(), out.at(0).begin());

  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
  const double h = grid.step();

  auto step = [&](std::span<const double> z, std::size_t i, double dt, Stage mid, Stage end,
                  std::span<double> dest) {
    // k1 is shared between the half and full step and computed by the caller.
    for (std::size_t j = 0; j < dim; ++j) tmp[j] = z[j] + 0.5 * dt * k1[j];
    rhs(i, mid, std::span<const double>(tmp), std::span<double>(k2));
    for (std::size_t j = 0; j < dim; ++j) tmp[j] = z[j] + 0.5 * dt * k2[j];
    rhs(i, mid, std::span<const double>(tmp), std::span<double>(k3));
    for (std::size_t j = 0; j < dim; ++j) tmp[j] = z[j] + dt * k3[j];
    rhs(i, end, std::span<const double>(tmp), std::span<double>(k4));
    for (std::size_t j = 0; j < dim; ++j) {
      dest[j] = z[j] + dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
  };

  for (std::size_t i = 0; i < grid.intervals(); ++i) {
    const std::span<const double> z = out.at(2 * i);
    rhs(i, Stage::kStart, z, std::span<double>(k1));
    step(z, i, 0.5 * h, Stage::kQuarter, Stage::kMid, out.at(2 * i + 1));
    step(z, i, h, Stage::kMid, Stage::kEnd, out.at(2 * i + 2));
    after_step(std::span<const double>(out.at(2 * i + 2)));
  }
  return out;
}

}  // namespace hpmocp::detail
