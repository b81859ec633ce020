// Copyright 2026 the bkcurv developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Scenario runner: a JSON description selects a fixture or inline family,
// a check kind, and expectations; the run returns a deterministic JSON
// report with one pass/fail verdict per check, plus optional CSV tables.
//
// Kinds: toy, convexity, tangency, geodesic, interpolation, norm, bergman,
// vf1, vf2, psh, motion, fibre_derivative.

#ifndef BKCURV_SCENARIO_HPP
#define BKCURV_SCENARIO_HPP

#include <json.hpp>
#include <string>
#include <vector>

#include "common.hpp"

namespace bk {

using njson = nlohmann::json;

struct RunOptions {
  double tol_scale = 1.0;  // multiplies every tolerance
  int grid = 0;            // overrides scan resolutions when positive
  bool timings = true;     // include timing_ms in the report
};

struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct RunResult {
  njson report;
  std::vector<Table> tables;
  bool pass = false;
};

RunResult run_scenario(const njson& scenario, const RunOptions& opt);
RunResult run_scenario_text(const std::string& text, const RunOptions& opt);
RunResult run_scenario_file(const std::string& path, const RunOptions& opt);

// RFC 4180 encoding: CRLF rows, quoting only where needed.
std::string csv_encode(const Table& table);

// Catalog listing for tooling: [{name, kind, summary}, ...].
njson fixtures_json();

}  // namespace bk

#endif
