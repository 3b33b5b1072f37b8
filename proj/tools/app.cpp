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
#include "app.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <system_error>

#include "hpmocp/oracle.hpp"
#include "hpmocp/tpbvp.hpp"
#include "json.hpp"

namespace hpmocp::cli {

namespace {

using Clock = std::chrono::steady_clock;
using ordered_json = nlohmann::ordered_json;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

// Full precision, locale independent.
void put_number(std::ostream& os, double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 16);
  os.write(buf, res.ptr - buf);
}

bool prepare_output_dir(const std::filesystem::path& dir, std::ostream& err) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    err << "error: cannot create output directory " << dir << "\n";
    return false;
  }
  const auto probe = dir / ".hpmocp_write_probe";
  {
    std::ofstream f(probe);
    if (!f || !(f << "probe") || !f.flush()) {
      err << "error: output directory " << dir << " is not writable\n";
      return false;
    }
  }
  std::filesystem::remove(probe, ec);
  return true;
}

struct HpmRun {
  std::optional<HpmSolution> solution;  // complete or partial
  std::string error;
  int exit_code = kFailure;
  std::vector<Residuals> residuals;
  double residual_ms = 0.0;
};

HpmRun run_hpm(const OcpProblem& problem, const HpmConfig& config, std::ostream& err) {
  HpmRun run;
  try {
    run.solution = solve_hpm(problem, config);
    run.exit_code = run.solution->converged ? kConverged : kMaxOrderExhausted;
    if (!run.solution->converged) {
      err << "warning: max_order " << config.max_order
          << " reached before the cost-difference test passed\n";
    }
  } catch (const HpmFailure& e) {
    run.solution = e.partial();
    run.error = e.what();
    err << "error: " << e.what() << "\n";
  } catch (const Error& e) {
    run.error = e.what();
    err << "error: " << e.what() << "\n";
  }

  if (run.solution && !run.solution->terms.empty()) {
    OcpProblem p = problem;
    if (config.jacobian_transpose) p.jacobian_transpose = *config.jacobian_transpose;
    const auto started = Clock::now();
    const auto& terms = run.solution->terms;
    for (std::size_t m = 0; m < terms.size(); ++m) {
      run.residuals.push_back(
          residual_norm(p, state_partial_sum(terms, m), costate_partial_sum(terms, m)));
    }
    run.residual_ms = elapsed_ms(started);
  }
  return run;
}

ordered_json summary_json(const OcpProblem& problem, const HpmConfig& config, const HpmRun& run) {
  ordered_json s;
  s["problem_name"] = problem.name;
  s["grid_intervals"] = config.grid_intervals;
  s["epsilon"] = config.epsilon;
  s["max_order"] = config.max_order;
  s["jacobian_transpose"] = config.jacobian_transpose.value_or(problem.jacobian_transpose);

  const HpmSolution* sol = run.solution ? &*run.solution : nullptr;
  s["achieved_order"] = sol && !sol->cost_history.empty() ? ordered_json(sol->achieved_order)
                                                           : ordered_json(nullptr);
  s["converged"] = sol ? sol->converged : false;
  s["cost_history"] = sol ? sol->cost_history : std::vector<double>{};
  std::vector<double> deltas;
  if (sol) {
    for (std::size_t k = 1; k < sol->cost_history.size(); ++k) {
      deltas.push_back(std::abs(sol->cost_history[k] - sol->cost_history[k - 1]));
    }
  }
  s["cost_deltas"] = deltas;
  ordered_json residuals = ordered_json::array();
  for (std::size_t m = 0; m < run.residuals.size(); ++m) {
    residuals.push_back({{"order", m},
                         {"state", run.residuals[m].state},
                         {"costate", run.residuals[m].costate}});
  }
  s["residuals"] = std::move(residuals);
  s["timings_ms"] = {{"series", sol ? sol->timings.series_ms : 0.0},
                     {"cost", sol ? sol->timings.cost_ms : 0.0},
                     {"residuals", run.residual_ms}};
  if (!run.error.empty()) s["error"] = run.error;
  return s;
}

void write_summary(const std::filesystem::path& out_dir, ordered_json summary, int exit_code) {
  summary["exit_code"] = exit_code;
  std::ofstream f(out_dir / "summary.json", std::ios::binary);
  f << summary.dump(2) << "\n";
}

void write_hpm_trajectories(const std::filesystem::path& out_dir, const HpmSolution& sol) {
  if (sol.cost_history.empty()) return;
  const std::size_t order = sol.cost_history.size() - 1;
  std::ofstream f(out_dir / "trajectories.csv", std::ios::binary);
  write_trajectories_csv(f, state_partial_sum(sol.terms, order),
                         costate_partial_sum(sol.terms, order), sol.control, sol.simulated_state);
}

}  // namespace

void write_trajectories_csv(std::ostream& os, const Trajectory& x, const Trajectory& lambda,
                            const Trajectory& u, const Trajectory& x_sim) {
  os << "t";
  for (std::size_t i = 1; i <= x.dim(); ++i) os << ",x" << i;
  for (std::size_t i = 1; i <= lambda.dim(); ++i) os << ",lambda" << i;
  for (std::size_t i = 1; i <= u.dim(); ++i) os << ",u" << i;
  for (std::size_t i = 1; i <= x_sim.dim(); ++i) os << ",x_sim" << i;
  os << "\n";

  const Grid& grid = x.grid();
  for (std::size_t k = 0; k < grid.sample_count(); ++k) {
    put_number(os, grid.time(k));
    for (const Trajectory* traj : {&x, &lambda, &u, &x_sim}) {
      for (double v : traj->at(k)) {
        os << ',';
        put_number(os, v);
      }
    }
    os << "\n";
  }
}

int run_solve(const OcpProblem& problem, const HpmConfig& config,
              const std::filesystem::path& out_dir, std::ostream& err) {
  if (!prepare_output_dir(out_dir, err)) return kFailure;
  const HpmRun run = run_hpm(problem, config, err);
  if (run.solution) write_hpm_trajectories(out_dir, *run.solution);
  write_summary(out_dir, summary_json(problem, config, run), run.exit_code);
  return run.exit_code;
}

int run_compare(const OcpProblem& problem, const HpmConfig& config,
                const std::filesystem::path& out_dir, std::ostream& err) {
  if (!prepare_output_dir(out_dir, err)) return kFailure;
  HpmRun run = run_hpm(problem, config, err);
  if (run.solution) write_hpm_trajectories(out_dir, *run.solution);
  ordered_json summary = summary_json(problem, config, run);

  OcpProblem p = problem;
  if (config.jacobian_transpose) p.jacobian_transpose = *config.jacobian_transpose;

  const std::size_t n = p.state_dim();
  const HpmSolution* sol = run.solution ? &*run.solution : nullptr;
  const bool have_series = sol && !sol->cost_history.empty();
  const std::size_t order = have_series ? sol->cost_history.size() - 1 : 0;

  int exit_code = run.exit_code;
  ordered_json oracle;
  const auto started = Clock::now();
  try {
    const Grid grid(p.t0, p.tf, config.grid_intervals);
    Vector warm(n, 0.0);
    if (have_series) {
      const Trajectory lambda_sum = costate_partial_sum(sol->terms, order);
      warm.assign(lambda_sum.front().begin(), lambda_sum.front().end());
    }
    const ShootingReport report = shooting_solve(p, grid, warm);
    oracle["converged"] = report.converged;
    oracle["iterations"] = report.iterations;
    oracle["terminal_residual"] = norm_inf(report.final_residual);
    oracle["sup_state_deviation"] = nullptr;
    oracle["cost_gap"] = nullptr;
    if (report.converged) {
      const Trajectory u = control_from_costate(p, report.lambda);
      const CostEvaluation eval = evaluate_cost(p, u);
      if (have_series) {
        const Trajectory deviation = state_partial_sum(sol->terms, order) - report.x;
        oracle["sup_state_deviation"] = deviation.sup_norm();
        oracle["cost_gap"] = std::abs(eval.cost - sol->cost_history.back());
      }
      oracle["cost"] = eval.cost;
      std::ofstream f(out_dir / "oracle_trajectories.csv", std::ios::binary);
      write_trajectories_csv(f, report.x, report.lambda, u, eval.simulated_state);
    } else {
      oracle["message"] = report.message;
      err << "error: shooting oracle did not converge: " << report.message << "\n";
      exit_code = kOracleNotConverged;
    }
  } catch (const Error& e) {
    oracle["converged"] = false;
    oracle["message"] = e.what();
    err << "error: shooting oracle failed: " << e.what() << "\n";
    exit_code = kOracleNotConverged;
  }
  summary["timings_ms"]["oracle"] = elapsed_ms(started);
  summary["oracle"] = std::move(oracle);
  write_summary(out_dir, std::move(summary), exit_code);
  return exit_code;
}

int run_validate(const std::filesystem::path& problem_path, std::ostream& out,
                 std::ostream& err) {
  try {
    const ParsedProblem parsed = parse_problem(problem_path);
    out << "valid: " << (parsed.problem.name.empty() ? problem_path.string() : parsed.problem.name)
        << " (n = " << parsed.problem.state_dim() << ", m = " << parsed.problem.control_dim()
        << ")\n";
    return kConverged;
  } catch (const ProblemFileError& e) {
    for (const auto& issue : e.issues()) {
      err << issue.code << " at " << issue.location << ": " << issue.message << "\n";
    }
    return kFailure;
  }
}

int run_preset(const std::string& name, const std::filesystem::path& path, std::ostream& out,
               std::ostream& err) {
  if (name != "spacecraft") {
    err << "error: unknown preset '" << name << "' (available: spacecraft)\n";
    return kFailure;
  }
  const std::string text = write_problem(spacecraft_problem());
  if (path.empty()) {
    out << text;
    return kConverged;
  }
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) {
    err << "error: cannot write " << path << "\n";
    return kFailure;
  }
  return kConverged;
}

}  // namespace hpmocp::cli
