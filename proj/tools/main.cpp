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
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "app.hpp"
#include "problem_file.hpp"

namespace {

struct SolveArgs {
  std::string problem;
  std::string out = "hpmocp_out";
  std::optional<double> epsilon;
  std::optional<long long> max_order;
  std::optional<long long> grid;
  std::optional<bool> jacobian_transpose;
};

void add_solve_options(CLI::App* cmd, SolveArgs& args) {
  cmd->add_option("--problem", args.problem, "Problem file (JSON)")->required();
  cmd->add_option("--out", args.out, "Output directory")->capture_default_str();
  cmd->add_option("--epsilon", args.epsilon, "Cost-difference tolerance");
  cmd->add_option("--max-order", args.max_order, "Highest series order to compute");
  cmd->add_option("--grid", args.grid, "Number of grid intervals");
  cmd->add_option("--jacobian-transpose", args.jacobian_transpose,
                  "Couple the costate through (df/dx)^T (true) or df/dx (false)");
}

// Returns an exit code when the inputs are unusable.
std::optional<int> load(const SolveArgs& args, hpmocp::cli::ParsedProblem& parsed) {
  try {
    parsed = hpmocp::cli::parse_problem(args.problem);
  } catch (const hpmocp::cli::ProblemFileError& e) {
    for (const auto& issue : e.issues()) {
      std::cerr << issue.code << " at " << issue.location << ": " << issue.message << "\n";
    }
    return hpmocp::cli::kFailure;
  }
  auto& cfg = parsed.config;
  if (args.epsilon) {
    if (!(*args.epsilon > 0.0)) {
      std::cerr << "error: --epsilon must be positive\n";
      return hpmocp::cli::kFailure;
    }
    cfg.epsilon = *args.epsilon;
  }
  if (args.max_order) {
    if (*args.max_order < 0) {
      std::cerr << "error: --max-order must be >= 0\n";
      return hpmocp::cli::kFailure;
    }
    cfg.max_order = static_cast<std::size_t>(*args.max_order);
  }
  if (args.grid) {
    if (*args.grid < 2) {
      std::cerr << "error: --grid must be >= 2\n";
      return hpmocp::cli::kFailure;
    }
    cfg.grid_intervals = static_cast<std::size_t>(*args.grid);
  }
  if (args.jacobian_transpose) parsed.problem.jacobian_transpose = *args.jacobian_transpose;
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Suboptimal control of polynomial nonlinear systems by homotopy perturbation"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Run the HPM solver; write trajectories.csv and summary.json");
  add_solve_options(solve, solve_args);

  SolveArgs compare_args;
  auto* compare = app.add_subcommand("compare", "Run HPM and the shooting oracle side by side");
  add_solve_options(compare, compare_args);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Parse and validate a problem file");
  validate->add_option("--problem", validate_path, "Problem file (JSON)")->required();

  std::string preset_name;
  std::string preset_out;
  auto* preset = app.add_subcommand("preset", "Write a bundled problem file");
  preset->add_option("name", preset_name, "Preset name (spacecraft)")->required();
  preset->add_option("--out", preset_out, "Destination file (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  if (*solve || *compare) {
    const SolveArgs& args = *solve ? solve_args : compare_args;
    hpmocp::cli::ParsedProblem parsed;
    if (auto code = load(args, parsed)) return *code;
    return *solve ? hpmocp::cli::run_solve(parsed.problem, parsed.config, args.out, std::cerr)
                  : hpmocp::cli::run_compare(parsed.problem, parsed.config, args.out, std::cerr);
  }
  if (*validate) return hpmocp::cli::run_validate(validate_path, std::cout, std::cerr);
  return hpmocp::cli::run_preset(preset_name, preset_out, std::cout, std::cerr);
}
