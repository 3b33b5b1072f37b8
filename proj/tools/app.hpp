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
// Workflows behind the command-line subcommands. Each returns the process
// exit code and writes diagnostics to `err`.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "hpmocp/hpm.hpp"
#include "hpmocp/problem.hpp"
#include "problem_file.hpp"

namespace hpmocp::cli {

enum ExitCode : int {
  kConverged = 0,
  kFailure = 1,
  kMaxOrderExhausted = 2,
  kOracleNotConverged = 3,
};

/// Columns: t, x1..xn (series partial sum), lambda1..lambdan, u1..um,
/// x_sim1..x_simn; one row per grid sample.
void write_trajectories_csv(std::ostream& os, const Trajectory& x, const Trajectory& lambda,
                            const Trajectory& u, const Trajectory& x_sim);

/// Writes trajectories.csv and summary.json into `out_dir`.
int run_solve(const OcpProblem& problem, const HpmConfig& config,
              const std::filesystem::path& out_dir, std::ostream& err);

/// As run_solve, plus a shooting solve warm-started from the HPM costate;
/// writes oracle_trajectories.csv and the summary's oracle block.
int run_compare(const OcpProblem& problem, const HpmConfig& config,
                const std::filesystem::path& out_dir, std::ostream& err);

/// Parse + validate only.
int run_validate(const std::filesystem::path& problem_path, std::ostream& out, std::ostream& err);

/// Writes a bundled problem file ("spacecraft") to `path`, or to `out` when
/// `path` is empty.
int run_preset(const std::string& name, const std::filesystem::path& path, std::ostream& out,
               std::ostream& err);

}  // namespace hpmocp::cli
