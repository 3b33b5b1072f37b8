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
// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "app.hpp"
#include "hpmocp/hpm.hpp"
#include "hpmocp/numerics.hpp"
#include "hpmocp/oracle.hpp"
#include "hpmocp/series.hpp"
#include "hpmocp/tpbvp.hpp"
#include "problem_file.hpp"
#include "test_support.hpp"

namespace {

namespace fs = std::filesystem;
using namespace hpmocp;
using nlohmann::json;

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [miss]");
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::vector<double> split_csv(const std::string& line) {
  std::vector<double> out;
  std::istringstream s(line);
  for (std::string cell; std::getline(s, cell, ',');) out.push_back(std::stod(cell));
  return out;
}

std::string last_line(const std::string& text) {
  const auto end = text.find_last_not_of('\n');
  const auto start = text.rfind('\n', end);
  return text.substr(start == std::string::npos ? 0 : start + 1, end - start);
}

// Shared state: the preset run through the CLI workflows.
struct Runs {
  fs::path root;
  cli::ParsedProblem preset;
  int solve_exit = -1;
  int compare_exit = -1;
  double solve_seconds = 0.0;
  json solve_summary;
  json compare_summary;
  std::string trajectories;
};

Runs run_workflows() {
  Runs r;
  r.root = fs::temp_directory_path() / ("hpmocp_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(r.root);
  std::ostringstream preset_text, err;
  cli::run_preset("spacecraft", {}, preset_text, err);
  r.preset = cli::parse_problem_text(preset_text.str());
  r.preset.config.epsilon = 1e-12;
  r.preset.config.grid_intervals = 1000;

  const auto started = std::chrono::steady_clock::now();
  r.solve_exit = cli::run_solve(r.preset.problem, r.preset.config, r.root / "solve", err);
  r.solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  r.compare_exit = cli::run_compare(r.preset.problem, r.preset.config, r.root / "compare", err);

  r.solve_summary = json::parse(read_file(r.root / "solve" / "summary.json"));
  r.compare_summary = json::parse(read_file(r.root / "compare" / "summary.json"));
  r.trajectories = read_file(r.root / "solve" / "trajectories.csv");
  if (!err.str().empty()) std::fprintf(stderr, "%s", err.str().c_str());
  return r;
}

Outcome benchmark_cost(const Runs& r) {
  Outcome o;
  const json& s = r.solve_summary;
  const double j = s["cost_history"].back().get<double>();
  const int m = s["achieved_order"].get<int>();
  o.check(r.solve_exit == 0 && s["converged"].get<bool>(), "converged (exit " + std::to_string(r.solve_exit) + ")");
  o.check(std::abs(j - 0.004689) <= 2e-5, fmt("J = %.10f", j));
  o.check(m >= 2 && m <= 6, "M = " + std::to_string(m));
  o.check(r.solve_seconds < 10.0, fmt("%.3f s", r.solve_seconds));
  return o;
}

Outcome order_zero_closed_form(const Runs& r) {
  Outcome o;
  const double j0 = r.solve_summary["cost_history"][0].get<double>();
  const Grid grid(r.preset.problem.t0, r.preset.problem.tf, r.preset.config.grid_intervals);
  const double lam = solve_order_zero(r.preset.problem, grid).lambda.front()[0];
  o.check(std::abs(j0 - 0.0046878) <= 1e-6, fmt("J0 = %.10f", j0));
  o.check(std::abs(lam - 0.743734) <= 1e-6, fmt("lambda1(t0) = %.8f", lam));
  return o;
}

Outcome delta_behaviour(const Runs& r) {
  Outcome o;
  const auto deltas = r.solve_summary["cost_deltas"].get<std::vector<double>>();
  bool decreasing = !deltas.empty();
  for (std::size_t k = 1; k < deltas.size(); ++k) decreasing = decreasing && deltas[k] < deltas[k - 1];
  std::string seq;
  for (double d : deltas) seq += fmt(seq.empty() ? "%.2e" : " %.2e", d);
  o.check(decreasing, "strictly decreasing [" + seq + "]");
  o.check(!deltas.empty() && deltas.back() < 1e-12, "final below 1e-12");
  return o;
}

Outcome oracle_agreement(const Runs& r) {
  Outcome o;
  const json& oracle = r.compare_summary["oracle"];
  o.check(r.compare_exit == 0 && oracle["converged"].get<bool>(),
          "shooting converged (exit " + std::to_string(r.compare_exit) + ")");
  if (!oracle["converged"].get<bool>()) return o;
  const int its = oracle["iterations"].get<int>();
  const double dev = oracle["sup_state_deviation"].get<double>();
  const double gap = oracle["cost_gap"].get<double>();
  o.check(its <= 10, "iterations = " + std::to_string(its));
  o.check(dev <= 1e-5, fmt("state deviation = %.2e", dev));
  o.check(gap <= 1e-8, fmt("cost gap = %.2e", gap));
  return o;
}

Outcome terminal_accuracy(const Runs& r) {
  Outcome o;
  const auto row = split_csv(last_line(r.trajectories));
  const std::size_t n = 3;
  const std::size_t first = row.size() - n;  // x_sim columns are last
  o.check(row.size() == 1 + 3 * n + 3 && row[0] == 100.0, "final row at t = 100");
  for (std::size_t i = 0; i < n; ++i) {
    o.check(std::abs(row[first + i]) <= 1e-5, fmt("|w(100)| = %.2e", std::abs(row[first + i])));
  }
  return o;
}

Outcome linear_degeneration() {
  Outcome o;
  auto rng = testing::make_rng(2026);
  std::vector<OcpProblem> problems;
  OcpProblem sc = spacecraft_problem();
  sc.f = PolyVectorField::zero(3);
  problems.push_back(sc);
  for (int trial = 0; trial < 10; ++trial) {
    std::uniform_int_distribution<std::size_t> dim(1, 3);
    const std::size_t n = dim(rng), m = dim(rng);
    OcpProblem p;
    p.A = testing::random_matrix(rng, n, n, -0.5, 0.5);
    p.B = testing::random_matrix(rng, n, m);
    const Matrix g = testing::random_matrix(rng, n, n);
    p.Q = g * g.transpose();
    const Matrix h = testing::random_matrix(rng, m, m);
    p.R = h * h.transpose() + Matrix::identity(m);
    p.f = PolyVectorField::zero(n);
    p.tf = 2.0;
    p.x0 = testing::random_vector(rng, n);
    p.xf = testing::random_vector(rng, n);
    problems.push_back(p);
  }
  bool all_m1 = true;
  double worst_term = 0.0;
  for (const OcpProblem& p : problems) {
    const HpmSolution sol = solve_hpm(p, HpmConfig{});
    all_m1 = all_m1 && sol.converged && sol.achieved_order == 1;
    for (std::size_t k = 1; k < sol.terms.size(); ++k) {
      worst_term = std::max({worst_term, sol.terms[k].x.sup_norm(), sol.terms[k].lambda.sup_norm()});
    }
  }
  o.check(all_m1, std::to_string(problems.size()) + " problems converge at M = 1");
  o.check(worst_term <= 1e-12, fmt("higher terms <= %.1e", worst_term));

  OcpProblem scalar;
  scalar.A = Matrix{{1.0}};
  scalar.B = Matrix{{1.0}};
  scalar.Q = Matrix{{1.0}};
  scalar.R = Matrix{{1.0}};
  scalar.f = PolyVectorField::zero(1);
  scalar.x0 = {1.0};
  scalar.xf = {0.0};
  const Grid grid(0.0, 1.0, 1000);
  const SeriesTerm t0 = solve_order_zero(scalar, grid);
  const auto exact = analytic_scalar_lq(1.0, 1.0, 1.0, 1.0, 1.0, 0.0, grid);
  const double err = std::max((t0.x - exact.x).sup_norm(), (t0.lambda - exact.lambda).sup_norm());
  o.check(err <= 1e-9, fmt("scalar order 0 vs closed form %.2e", err));
  return o;
}

// Coefficient of p^(order-1) of f(x~(p)) and -J_f(x~(p))^T lambda~(p), with
// x~, lambda~ the partial sums over the prior orders, fitted from samples in p.
Outcome he_forcing_oracle() {
  Outcome o;
  auto rng = testing::make_rng(7);
  double worst = 0.0;
  int checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_int_distribution<std::size_t> dim(1, 3);
    const std::size_t n = dim(rng);
    OcpProblem p = spacecraft_problem();
    p.A = Matrix(n, n);
    p.B = Matrix::identity(n);
    p.Q = Matrix(n, n);
    p.R = Matrix::identity(n);
    p.f = testing::random_field(rng, n, 3);
    p.x0.assign(n, 0.0);
    p.xf.assign(n, 0.0);
    p.jacobian_transpose = trial % 5 != 0;
    const PolyMatrixField jf = differentiate(p.f);
    const Grid grid(0.0, 1.0, 3);
    std::vector<SeriesTerm> prior;
    for (std::size_t k = 0; k < 4; ++k) {
      SeriesTerm t{k, Trajectory(grid, n), Trajectory(grid, n)};
      for (std::size_t s = 0; s < grid.sample_count(); ++s) {
        for (std::size_t i = 0; i < n; ++i) {
          t.x.at(s)[i] = testing::uniform(rng, -1.0, 1.0);
          t.lambda.at(s)[i] = testing::uniform(rng, -1.0, 1.0);
        }
      }
      prior.push_back(std::move(t));
    }
    for (std::size_t order = 1; order <= 4; ++order) {
      const Trajectory g = he_forcing(order, std::span(prior).first(order), p);
      double diff = 0.0, scale = 0.0;
      for (std::size_t s = 0; s < grid.sample_count(); ++s) {
        auto partial = [&](double q, bool costate) {
          Vector v(n, 0.0);
          double power = 1.0;
          for (std::size_t k = 0; k < order; ++k, power *= q) {
            const auto src = costate ? prior[k].lambda.at(s) : prior[k].x.at(s);
            for (std::size_t i = 0; i < n; ++i) v[i] += power * src[i];
          }
          return v;
        };
        const int degree = 4 * static_cast<int>(order);
        for (std::size_t i = 0; i < 2 * n; ++i) {
          auto op = [&](double q) {
            const Vector x = partial(q, false);
            if (i < n) return eval_field(p.f, x)[i];
            const Vector l = partial(q, true);
            const Matrix jac = eval_jacobian(jf, x);
            const std::size_t r = i - n;
            double c = 0.0;
            for (std::size_t j = 0; j < n; ++j) c += (p.jacobian_transpose ? jac(j, r) : jac(r, j)) * l[j];
            return -c;
          };
          const double want = testing::taylor_coefficients(op, degree)[order - 1];
          const double got = g.at(s)[i];
          diff = std::max(diff, std::abs(got - want));
          scale = std::max(scale, std::abs(want));
          ++checked;
        }
      }
      // Relative to the sup-norm of the oracle forcing for this problem and order.
      worst = std::max(worst, scale > 0.0 ? diff / scale : diff);
    }
  }
  o.check(worst <= 1e-6, std::to_string(checked) + " coefficients, worst relative error " + fmt("%.2e", worst));
  return o;
}

Outcome residual_decay(const Runs& r) {
  Outcome o;
  const json& res = r.solve_summary["residuals"];
  o.check(res.size() >= 5, std::to_string(res.size()) + " orders computed");
  std::string seq;
  bool decreasing = true;
  double prev = INFINITY;
  for (std::size_t m = 0; m < std::min<std::size_t>(5, res.size()); ++m) {
    const double total = res[m]["state"].get<double>() + res[m]["costate"].get<double>();
    decreasing = decreasing && total < prev;
    prev = total;
    seq += fmt(seq.empty() ? "%.2e" : " %.2e", total);
  }
  o.check(decreasing, "orders 0-4 [" + seq + "]");
  return o;
}

Outcome numerics_floor() {
  Outcome o;
  // Matrix exponential against closed forms.
  double worst = 0.0;
  auto diff = [&](const Matrix& a, const Matrix& b) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    }
  };
  diff(mat_exp(Matrix(3, 3), 1.7), Matrix::identity(3));
  const std::vector<double> d{-1.0, 0.5, 2.0};
  diff(mat_exp(Matrix::diagonal(d), 1.3),
       Matrix::diagonal(std::vector<double>{std::exp(-1.3), std::exp(0.65), std::exp(2.6)}));
  const double w = 2.0, t = 1.1;
  diff(mat_exp(Matrix{{0.0, w}, {-w, 0.0}}, t),
       Matrix{{std::cos(w * t), std::sin(w * t)}, {-std::sin(w * t), std::cos(w * t)}});
  diff(mat_exp(Matrix{{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {0.0, 0.0, 0.0}}, t),
       Matrix{{1.0, t, t * t / 2.0}, {0.0, 1.0, t}, {0.0, 0.0, 1.0}});
  o.check(worst <= 1e-12, fmt("mat_exp %.1e", worst));

  // RK4 grid halving against a fine reference.
  const Matrix h{{0.0, 1.0}, {-4.0, -0.3}};
  auto rk4 = [&](std::size_t n) {
    const Grid grid(0.0, 4.0, n);
    Trajectory g(grid, 2);
    for (std::size_t k = 0; k < g.size(); ++k) {
      g.at(k)[0] = std::sin(grid.time(k));
      g.at(k)[1] = std::cos(2.0 * grid.time(k));
    }
    return rk4_integrate(h, g, Vector{1.0, 0.0}, grid);
  };
  const Trajectory ref = rk4(20000);
  auto rk4_err = [&](std::size_t n) {
    const Trajectory z = rk4(n);
    double e = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) {
      for (std::size_t i = 0; i < 2; ++i) e = std::max(e, std::abs(z.at(k)[i] - ref.at(k * (20000 / n))[i]));
    }
    return e;
  };
  const double rk4_ratio = rk4_err(40) / rk4_err(80);
  o.check(rk4_ratio >= 12.0 && rk4_ratio <= 20.0, fmt("RK4 ratio %.2f", rk4_ratio));

  auto simpson_err = [](std::size_t n) {
    const Grid grid(0.0, 2.0, n);
    Trajectory y(grid, 1);
    for (std::size_t k = 0; k < y.size(); ++k) {
      y.at(k)[0] = std::exp(-grid.time(k)) * std::cos(3.0 * grid.time(k));
    }
    return std::abs(simpson_quadrature(y) - (std::exp(-2.0) * (3.0 * std::sin(6.0) - std::cos(6.0)) + 1.0) / 10.0);
  };
  const double simpson_ratio = simpson_err(16) / simpson_err(32);
  o.check(simpson_ratio >= 12.0 && simpson_ratio <= 20.0, fmt("Simpson ratio %.2f", simpson_ratio));

  // Superposition of the linear TPBVP in forcing and boundary data.
  auto rng = testing::make_rng(9);
  double sup = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    OcpProblem p;
    p.A = testing::random_matrix(rng, 2, 2, -0.5, 0.5);
    p.B = testing::random_matrix(rng, 2, 2);
    const Matrix gq = testing::random_matrix(rng, 2, 2);
    p.Q = gq * gq.transpose();
    p.R = Matrix::identity(2);
    p.f = PolyVectorField::zero(2);
    p.tf = 2.0;
    p.x0 = {0.0, 0.0};
    p.xf = {0.0, 0.0};
    const Grid grid(0.0, 2.0, 300);
    const HamiltonianSystem sys = build_hamiltonian(p);
    auto forcing = [&]() {
      Trajectory g(grid, 4);
      for (std::size_t j = 0; j < 4; ++j) {
        const double amp = testing::uniform(rng, -1.0, 1.0), freq = testing::uniform(rng, 0.5, 2.0);
        for (std::size_t k = 0; k < g.size(); ++k) g.at(k)[j] = amp * std::sin(freq * grid.time(k));
      }
      return g;
    };
    const Trajectory g1 = forcing(), g2 = forcing();
    const Vector a1 = testing::random_vector(rng, 2), b1 = testing::random_vector(rng, 2);
    const Vector a2 = testing::random_vector(rng, 2), b2 = testing::random_vector(rng, 2);
    const Vector a{a1[0] + a2[0], a1[1] + a2[1]}, b{b1[0] + b2[0], b1[1] + b2[1]};
    const auto s1 = solve_linear_tpbvp({sys, g1, a1, b1, grid});
    const auto s2 = solve_linear_tpbvp({sys, g2, a2, b2, grid});
    const auto s = solve_linear_tpbvp({sys, g1 + g2, a, b, grid});
    sup = std::max({sup, (s.x - (s1.x + s2.x)).sup_norm(), (s.lambda - (s1.lambda + s2.lambda)).sup_norm()});
  }
  o.check(sup <= 1e-9, fmt("superposition %.1e", sup));
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& run) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
  };

  Runs runs;
  try {
    runs = run_workflows();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "workflow setup failed: %s\n", e.what());
  }
  report(1, "spacecraft benchmark cost", [&] { return benchmark_cost(runs); });
  report(2, "order-0 closed form", [&] { return order_zero_closed_form(runs); });
  report(3, "cost-difference behaviour", [&] { return delta_behaviour(runs); });
  report(4, "shooting oracle agreement", [&] { return oracle_agreement(runs); });
  report(5, "terminal accuracy", [&] { return terminal_accuracy(runs); });
  report(6, "linear degeneration", linear_degeneration);
  report(7, "series forcing coefficients", he_forcing_oracle);
  report(8, "residual decay", [&] { return residual_decay(runs); });
  report(9, "numerics floor", numerics_floor);
  if (!runs.root.empty()) fs::remove_all(runs.root);
  std::printf("%d of 9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
