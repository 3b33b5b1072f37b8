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
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "hpmocp/hpm.hpp"
#include "hpmocp/numerics.hpp"
#include "hpmocp/oracle.hpp"
#include "hpmocp/series.hpp"

namespace {

using namespace hpmocp;

void BM_MatExp(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Matrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) h(i, j) = std::sin(1.0 + 3.0 * i + 7.0 * j);
  }
  for (auto _ : state) benchmark::DoNotOptimize(mat_exp(h, 10.0));
}
BENCHMARK(BM_MatExp)->Arg(2)->Arg(6)->Arg(12);

void BM_Rk4Forced(benchmark::State& state) {
  const OcpProblem p = spacecraft_problem();
  const Grid grid(p.t0, p.tf, static_cast<std::size_t>(state.range(0)));
  const auto sys = build_hamiltonian(p);
  Trajectory g(grid, 6);
  for (std::size_t k = 0; k < g.size(); ++k) g.at(k)[0] = std::cos(0.1 * grid.time(k));
  const Vector z0(6, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(rk4_integrate(sys.H, g, z0, grid));
}
BENCHMARK(BM_Rk4Forced)->Arg(1000)->Arg(10000);

void BM_HeForcing(benchmark::State& state) {
  const OcpProblem p = spacecraft_problem();
  const Grid grid(p.t0, p.tf, 1000);
  const std::size_t order = static_cast<std::size_t>(state.range(0));
  std::vector<SeriesTerm> terms{solve_order_zero(p, grid)};
  while (terms.size() < order) terms.push_back(solve_order_n(p, terms, grid));
  for (auto _ : state) benchmark::DoNotOptimize(he_forcing(order, terms, p));
}
BENCHMARK(BM_HeForcing)->Arg(1)->Arg(3)->Arg(6);

void BM_SolveHpmSpacecraft(benchmark::State& state) {
  const OcpProblem p = spacecraft_problem();
  HpmConfig cfg;
  cfg.grid_intervals = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_hpm(p, cfg));
}
BENCHMARK(BM_SolveHpmSpacecraft)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ShootingSpacecraft(benchmark::State& state) {
  const OcpProblem p = spacecraft_problem();
  const Grid grid(p.t0, p.tf, 1000);
  const Trajectory lambda = solve_order_zero(p, grid).lambda;
  const Vector guess(lambda.front().begin(), lambda.front().end());
  for (auto _ : state) benchmark::DoNotOptimize(shooting_solve(p, grid, guess));
}
BENCHMARK(BM_ShootingSpacecraft)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
