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

// Scenario runner front end.  Talks to the library exclusively through the
// C surface in bkcurv.h; the only other dependencies are vendored headers.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bkcurv.h"

namespace {

// Scoped holder for strings the library hands back.
struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { bk_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

std::string stem_of(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

bool write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << body;
  return bool(out);
}

int run_command(const std::vector<std::string>& files, double tol_scale,
                int grid, bool no_timings, const std::string& out_dir) {
  bool any_fail = false;
  for (const std::string& file : files) {
    OwnedString report;
    OwnedString tables;
    int pass = 0;
    bk_status st = bk_run_scenario_file(file.c_str(), tol_scale, grid,
                                        no_timings ? 0 : 1, &report.p,
                                        &tables.p, &pass);
    if (st != BK_OK) {
      std::cerr << "error: " << file << ": " << bk_last_error() << "\n";
      return 2;
    }
    std::cout << (pass ? "pass" : "fail") << ": " << file << "\n";
    if (!pass) any_fail = true;
    if (!out_dir.empty()) {
      std::filesystem::path dir(out_dir);
      std::error_code ec;
      std::filesystem::create_directories(dir, ec);
      if (ec) {
        std::cerr << "error: cannot create " << out_dir << ": " << ec.message()
                  << "\n";
        return 2;
      }
      std::string stem = stem_of(file);
      if (!write_file(dir / (stem + ".report.json"), report.str() + "\n")) {
        std::cerr << "error: cannot write report for " << file << "\n";
        return 2;
      }
      // Tables arrive as [{"name": ..., "csv": ...}]; one file apiece.
      nlohmann::json tj =
          nlohmann::json::parse(tables.str(), nullptr, false);
      if (tj.is_discarded() || !tj.is_array()) {
        std::cerr << "error: bad table payload for " << file << "\n";
        return 2;
      }
      for (const auto& one : tj) {
        std::string name = one.at("name").get<std::string>();
        if (!write_file(dir / (stem + "." + name + ".csv"),
                        one.at("csv").get<std::string>())) {
          std::cerr << "error: cannot write table " << name << " for " << file
                    << "\n";
          return 2;
        }
      }
    }
  }
  return any_fail ? 1 : 0;
}

int list_fixtures_command() {
  OwnedString listing;
  bk_status st = bk_list_fixtures_json(&listing.p);
  if (st != BK_OK) {
    std::cerr << "error: " << bk_last_error() << "\n";
    return 2;
  }
  std::cout << listing.str() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curvature laboratory for families of planar domains"};
  app.set_version_flag("--version", std::string(bk_version()));
  app.require_subcommand(1);

  std::vector<std::string> files;
  double tol_scale = 1.0;
  int grid = 0;
  bool no_timings = false;
  std::string out_dir;

  CLI::App* run = app.add_subcommand("run", "evaluate scenario files");
  run->add_option("files", files, "scenario files in JSON form")
      ->required()
      ->expected(-1);
  run->add_option("--tol-scale", tol_scale,
                  "multiply every scenario tolerance by this factor");
  run->add_option("--grid", grid,
                  "override the sample count of gridded scans");
  run->add_flag("--no-timings", no_timings,
                "omit wall clock timings so reports compare bytewise");
  run->add_option("--out", out_dir,
                  "directory for report JSON and table CSV files");

  CLI::App* fixtures =
      app.add_subcommand("list-fixtures", "print the fixture catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    // CLI11 reserves 0 for --help/--version; anything else is a usage error.
    return code == 0 ? 0 : 2;
  }

  try {
    if (fixtures->parsed()) return list_fixtures_command();
    return run_command(files, tol_scale, grid, no_timings, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
