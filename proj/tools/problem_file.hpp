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
// JSON problem files: matrices as nested arrays, the nonlinearity as
// {component, coefficient, exponents} records, optional solver overrides.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hpmocp/errors.hpp"
#include "hpmocp/hpm.hpp"
#include "hpmocp/problem.hpp"

namespace hpmocp::cli {

struct InputIssue {
  std::string code;      // SYNTAX_ERROR, TYPE_ERROR, or a validation code
  std::string location;  // JSON pointer, or "line L, column C" for syntax errors
  std::string message;
};

class ProblemFileError : public Error {
 public:
  explicit ProblemFileError(std::vector<InputIssue> issues);
  const std::vector<InputIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<InputIssue> issues_;
};

struct ParsedProblem {
  OcpProblem problem;
  HpmConfig config;  // defaults overlaid with the file's "solver" block
};

/// Parses and fully validates; throws ProblemFileError listing every issue.
ParsedProblem parse_problem_text(std::string_view text);
ParsedProblem parse_problem(const std::filesystem::path& path);

/// Serializes a problem (and the solver block) so it re-parses losslessly.
std::string write_problem(const OcpProblem& p, const HpmConfig& config = {});

}  // namespace hpmocp::cli
