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
#include "problem_file.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "json.hpp"

namespace hpmocp::cli {

namespace {

using nlohmann::json;

constexpr const char* kKnownKeys[] = {"name", "n",  "m",  "A",  "B",  "Q",  "R",
                                      "nonlinearity", "x0", "xf", "t0", "tf", "solver"};
constexpr const char* kSolverKeys[] = {"epsilon", "max_order", "grid_intervals",
                                       "jacobian_transpose"};

std::string describe_issues(const std::vector<InputIssue>& issues) {
  std::ostringstream os;
  os << "problem file has " << issues.size() << " issue(s)";
  for (const auto& i : issues) os << "\n  " << i.code << " at " << i.location << ": " << i.message;
  return os.str();
}

class Reader {
 public:
  std::vector<InputIssue> issues;

  void add(std::string code, std::string location, std::string message) {
    for (const auto& i : issues) {
      if (i.code == code && i.location == location) return;
    }
    issues.push_back({std::move(code), std::move(location), std::move(message)});
  }

  const json* member(const json& obj, const std::string& key, bool required) {
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) add("MISSING_FIELD", "/" + key, "required field '" + key + "' is missing");
      return nullptr;
    }
    return &*it;
  }

  std::optional<double> number(const json& j, const std::string& loc) {
    if (!j.is_number()) {
      add("TYPE_ERROR", loc, "expected a number");
      return std::nullopt;
    }
    return j.get<double>();
  }

  std::optional<long long> integer(const json& j, const std::string& loc) {
    if (!j.is_number_integer()) {
      add("TYPE_ERROR", loc, "expected an integer");
      return std::nullopt;
    }
    return j.get<long long>();
  }

  std::optional<Vector> vector(const json& j, const std::string& loc, std::size_t n) {
    if (!j.is_array()) {
      add("TYPE_ERROR", loc, "expected an array of numbers");
      return std::nullopt;
    }
    if (j.size() != n) {
      add("DIMENSION_MISMATCH", loc,
          "has length " + std::to_string(j.size()) + ", expected " + std::to_string(n));
    }
    Vector v;
    for (std::size_t i = 0; i < j.size(); ++i) {
      auto x = number(j[i], loc + "/" + std::to_string(i));
      if (!x) return std::nullopt;
      v.push_back(*x);
    }
    return v;
  }

  // Ragged or mistyped arrays yield an empty matrix after recording the issue.
  Matrix matrix(const json& j, const std::string& loc, std::size_t rows, std::size_t cols) {
    if (!j.is_array()) {
      add("TYPE_ERROR", loc, "expected an array of rows");
      return {};
    }
    const std::size_t width = j.empty() || !j[0].is_array() ? 0 : j[0].size();
    if (j.size() != rows || width != cols) {
      add("DIMENSION_MISMATCH", loc,
          "is " + std::to_string(j.size()) + "x" + std::to_string(width) + ", expected " +
              std::to_string(rows) + "x" + std::to_string(cols));
    }
    Matrix m(j.size(), width);
    for (std::size_t r = 0; r < j.size(); ++r) {
      const std::string row_loc = loc + "/" + std::to_string(r);
      if (!j[r].is_array() || j[r].size() != width) {
        add("DIMENSION_MISMATCH", row_loc, "row length differs from the first row");
        return {};
      }
      for (std::size_t c = 0; c < width; ++c) {
        auto x = number(j[r][c], row_loc + "/" + std::to_string(c));
        if (!x) return {};
        m(r, c) = *x;
      }
    }
    return m;
  }
};

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  const std::size_t end = std::min(byte == 0 ? 0 : byte - 1, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

std::string pointer_for(const std::string& field,
                        const std::map<std::pair<std::size_t, std::size_t>, std::size_t>& records) {
  if (field == "horizon") return "/tf";
  if (field == "f") return "/nonlinearity";
  if (field.rfind("f/", 0) == 0) {
    const auto slash = field.find('/', 2);
    const std::size_t component = std::stoul(field.substr(2, slash - 2));
    const std::size_t index = std::stoul(field.substr(slash + 1));
    auto it = records.find({component, index});
    if (it != records.end()) return "/nonlinearity/" + std::to_string(it->second);
    return "/nonlinearity";
  }
  return "/" + field;
}

void read_solver(Reader& rd, const json& solver, ParsedProblem& out) {
  if (!solver.is_object()) {
    rd.add("TYPE_ERROR", "/solver", "expected an object");
    return;
  }
  for (const auto& [key, value] : solver.items()) {
    if (std::find(std::begin(kSolverKeys), std::end(kSolverKeys), key) == std::end(kSolverKeys)) {
      rd.add("UNKNOWN_FIELD", "/solver/" + key, "unknown solver option '" + key + "'");
    }
  }
  if (auto* j = rd.member(solver, "epsilon", false)) {
    if (auto eps = rd.number(*j, "/solver/epsilon")) {
      if (!(*eps > 0.0) || !std::isfinite(*eps)) {
        rd.add("EPSILON_NOT_POSITIVE", "/solver/epsilon", "epsilon must be positive");
      }
      out.config.epsilon = *eps;
    }
  }
  if (auto* j = rd.member(solver, "max_order", false)) {
    if (auto v = rd.integer(*j, "/solver/max_order")) {
      if (*v < 0) {
        rd.add("MAX_ORDER_NEGATIVE", "/solver/max_order", "max_order must be >= 0");
      } else {
        out.config.max_order = static_cast<std::size_t>(*v);
      }
    }
  }
  if (auto* j = rd.member(solver, "grid_intervals", false)) {
    if (auto v = rd.integer(*j, "/solver/grid_intervals")) {
      if (*v < 2) {
        rd.add("GRID_TOO_COARSE", "/solver/grid_intervals", "grid_intervals must be >= 2");
      } else {
        out.config.grid_intervals = static_cast<std::size_t>(*v);
      }
    }
  }
  if (auto* j = rd.member(solver, "jacobian_transpose", false)) {
    if (!j->is_boolean()) {
      rd.add("TYPE_ERROR", "/solver/jacobian_transpose", "expected true or false");
    } else {
      out.problem.jacobian_transpose = j->get<bool>();
    }
  }
}

}  // namespace

ProblemFileError::ProblemFileError(std::vector<InputIssue> issues)
    : Error(describe_issues(issues)), issues_(std::move(issues)) {}

ParsedProblem parse_problem_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ProblemFileError({{"SYNTAX_ERROR", line_column(text, e.byte), e.what()}});
  }

  Reader rd;
  if (!doc.is_object()) {
    rd.add("TYPE_ERROR", "/", "top level must be an object");
    throw ProblemFileError(rd.issues);
  }
  for (const auto& [key, value] : doc.items()) {
    if (std::find(std::begin(kKnownKeys), std::end(kKnownKeys), key) == std::end(kKnownKeys)) {
      rd.add("UNKNOWN_FIELD", "/" + key, "unknown field '" + key + "'");
    }
  }

  ParsedProblem out{};
  OcpProblem& p = out.problem;

  if (auto* j = rd.member(doc, "name", false)) {
    if (j->is_string()) {
      p.name = j->get<std::string>();
    } else {
      rd.add("TYPE_ERROR", "/name", "expected a string");
    }
  }

  std::size_t n = 0;
  std::size_t m = 0;
  for (auto [key, dim] : {std::pair{"n", &n}, std::pair{"m", &m}}) {
    const std::string loc = std::string("/") + key;
    if (auto* j = rd.member(doc, key, true)) {
      if (auto v = rd.integer(*j, loc)) {
        if (*v < 1) {
          rd.add("DIMENSION_MISMATCH", loc, "must be at least 1");
        } else {
          *dim = static_cast<std::size_t>(*v);
        }
      }
    }
  }
  if (n == 0 || m == 0) throw ProblemFileError(rd.issues);

  if (auto* j = rd.member(doc, "A", true)) p.A = rd.matrix(*j, "/A", n, n);
  if (auto* j = rd.member(doc, "B", true)) p.B = rd.matrix(*j, "/B", n, m);
  if (auto* j = rd.member(doc, "Q", true)) p.Q = rd.matrix(*j, "/Q", n, n);
  if (auto* j = rd.member(doc, "R", true)) p.R = rd.matrix(*j, "/R", m, m);
  if (auto* j = rd.member(doc, "x0", true)) p.x0 = rd.vector(*j, "/x0", n).value_or(Vector{});
  if (auto* j = rd.member(doc, "xf", true)) p.xf = rd.vector(*j, "/xf", n).value_or(Vector{});
  if (auto* j = rd.member(doc, "t0", true)) p.t0 = rd.number(*j, "/t0").value_or(NAN);
  if (auto* j = rd.member(doc, "tf", true)) p.tf = rd.number(*j, "/tf").value_or(NAN);

  // (component, index within component) -> record index in the file
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> records;
  p.f = PolyVectorField::zero(n);
  if (auto* j = rd.member(doc, "nonlinearity", false)) {
    if (!j->is_array()) {
      rd.add("TYPE_ERROR", "/nonlinearity", "expected an array of monomial records");
    } else {
      for (std::size_t r = 0; r < j->size(); ++r) {
        const json& rec = (*j)[r];
        const std::string loc = "/nonlinearity/" + std::to_string(r);
        if (!rec.is_object()) {
          rd.add("TYPE_ERROR", loc, "expected {component, coefficient, exponents}");
          continue;
        }
        const json* comp = rd.member(rec, "component", false);
        const json* coef = rd.member(rec, "coefficient", false);
        const json* exps = rd.member(rec, "exponents", false);
        if (!comp || !coef || !exps) {
          rd.add("MISSING_FIELD", loc, "monomial record needs component, coefficient, exponents");
          continue;
        }
        auto component = rd.integer(*comp, loc + "/component");
        auto coefficient = rd.number(*coef, loc + "/coefficient");
        if (!exps->is_array()) rd.add("TYPE_ERROR", loc + "/exponents", "expected an array");
        if (!component || !coefficient || !exps->is_array()) continue;
        if (*component < 0 || static_cast<std::size_t>(*component) >= n) {
          rd.add("COMPONENT_OUT_OF_RANGE", loc + "/component",
                 "record " + std::to_string(r) + ": component " + std::to_string(*component) +
                     " outside [0, " + std::to_string(n) + ")");
          continue;
        }
        Monomial mono{*coefficient, {}};
        bool typed = true;
        for (std::size_t e = 0; e < exps->size(); ++e) {
          auto v = rd.integer((*exps)[e], loc + "/exponents/" + std::to_string(e));
          if (!v) {
            typed = false;
            break;
          }
          mono.exponents.push_back(static_cast<int>(std::clamp<long long>(*v, -1, 1000)));
        }
        if (!typed) continue;
        if (mono.exponents.size() != n) {
          rd.add("MONOMIAL_DIMENSION", loc,
                 "record " + std::to_string(r) + " (component " + std::to_string(*component) +
                     ") has " + std::to_string(mono.exponents.size()) + " exponents, expected " +
                     std::to_string(n));
        }
        auto& list = p.f.components[static_cast<std::size_t>(*component)];
        records[{static_cast<std::size_t>(*component), list.size()}] = r;
        list.push_back(std::move(mono));
      }
    }
  }

  if (auto* j = rd.member(doc, "solver", false)) read_solver(rd, *j, out);

  // Semantic checks; anything already reported structurally at the same
  // location is not repeated.
  for (const auto& issue : validate(p).issues) {
    const std::string loc = pointer_for(issue.field, records);
    std::string message = issue.message;
    if (!issue.hint.empty()) message += " (" + issue.hint + ")";
    const bool duplicate = std::any_of(rd.issues.begin(), rd.issues.end(), [&](const auto& i) {
      return i.location == loc && (i.code == issue.code || issue.code == "DIMENSION_MISMATCH" ||
                                   issue.code == "NON_FINITE");
    });
    if (!duplicate) rd.add(issue.code, loc, message);
  }

  if (!rd.issues.empty()) throw ProblemFileError(rd.issues);
  return out;
}

ParsedProblem parse_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProblemFileError({{"IO_ERROR", path.string(), "cannot open problem file"}});
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_problem_text(buffer.str());
}

std::string write_problem(const OcpProblem& p, const HpmConfig& config) {
  auto matrix = [](const Matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      rows.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
    }
    return rows;
  };

  nlohmann::ordered_json doc;
  doc["name"] = p.name;
  doc["n"] = p.state_dim();
  doc["m"] = p.control_dim();
  doc["A"] = matrix(p.A);
  doc["B"] = matrix(p.B);
  doc["Q"] = matrix(p.Q);
  doc["R"] = matrix(p.R);
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < p.f.components.size(); ++i) {
    for (const Monomial& mono : p.f.components[i]) {
      nlohmann::ordered_json rec;
      rec["component"] = i;
      rec["coefficient"] = mono.coefficient;
      rec["exponents"] = mono.exponents;
      terms.push_back(std::move(rec));
    }
  }
  doc["nonlinearity"] = std::move(terms);
  doc["x0"] = p.x0;
  doc["xf"] = p.xf;
  doc["t0"] = p.t0;
  doc["tf"] = p.tf;
  doc["solver"] = {{"epsilon", config.epsilon},
                   {"max_order", config.max_order},
                   {"grid_intervals", config.grid_intervals},
                   {"jacobian_transpose", config.jacobian_transpose.value_or(p.jacobian_transpose)}};
  return doc.dump(2) + "\n";
}

}  // namespace hpmocp::cli
