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

// Exercises the C surface only; this binary deliberately links the shared
// library and nothing from src/core.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include <json.hpp>

#include "bkcurv.h"

namespace {

// Scoped holder so failed CHECKs cannot leak library strings.
struct Str {
  char* p = nullptr;
  ~Str() { bk_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

struct Expr {
  bk_expr* p = nullptr;
  ~Expr() { bk_expr_free(p); }
};

struct Family {
  bk_family* p = nullptr;
  ~Family() { bk_family_free(p); }
};

}  // namespace

TEST_CASE("version and error state") {
  CHECK(std::string(bk_version()) == "0.1.0");
  Expr e;
  REQUIRE(bk_expr_parse("abs2(z1) - 1", 1, 1, &e.p) == BK_OK);
  CHECK(std::string(bk_last_error()).empty());
}

TEST_CASE("expression round trip through the C surface") {
  Expr e;
  REQUIRE(bk_expr_parse("abs2(z1)*exp(abs2(t1)) - 1", 1, 1, &e.p) == BK_OK);
  Str printed;
  REQUIRE(bk_expr_print(e.p, &printed.p) == BK_OK);
  Expr again;
  REQUIRE(bk_expr_parse(printed.str().c_str(), 1, 1, &again.p) == BK_OK);

  bk_complex t{0.5, 0.0};
  bk_complex z{0.3, 0.4};
  bk_complex v1{0, 0}, v2{0, 0};
  REQUIRE(bk_expr_eval(e.p, &t, 1, &z, 1, &v1) == BK_OK);
  REQUIRE(bk_expr_eval(again.p, &t, 1, &z, 1, &v2) == BK_OK);
  CHECK(v1.re == doctest::Approx(0.25 * std::exp(0.25) - 1.0).epsilon(1e-14));
  CHECK(v1.im == doctest::Approx(0.0));
  CHECK(v1.re == doctest::Approx(v2.re).epsilon(1e-15));
}

TEST_CASE("wirtinger derivative through the C surface") {
  Expr e;
  REQUIRE(bk_expr_parse("abs2(z1)", 1, 1, &e.p) == BK_OK);
  Expr d;
  // d/dz1 abs2(z1) = conj(z1).
  REQUIRE(bk_expr_wirtinger(e.p, 1, 0, 0, &d.p) == BK_OK);
  bk_complex z{0.3, 0.4};
  bk_complex v{0, 0};
  REQUIRE(bk_expr_eval(d.p, nullptr, 0, &z, 1, &v) == BK_OK);
  CHECK(v.re == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(v.im == doctest::Approx(-0.4).epsilon(1e-14));
}

TEST_CASE("parse failure reports code and offset") {
  Expr e;
  bk_status st = bk_expr_parse("abs2(z1) +", 1, 1, &e.p);
  CHECK(st == BK_ERR_PARSE);
  CHECK(!std::string(bk_last_error()).empty());
  CHECK(bk_last_error_offset() != (size_t)-1);
  CHECK(bk_last_error_offset() <= std::strlen("abs2(z1) +"));

  Expr bad;
  CHECK(bk_expr_parse("z2", 1, 1, &bad.p) == BK_ERR_PARSE);
}

TEST_CASE("null arguments map to the invalid code") {
  CHECK(bk_expr_parse(nullptr, 1, 1, nullptr) == BK_ERR_INVALID);
  CHECK(bk_expr_print(nullptr, nullptr) == BK_ERR_INVALID);
  CHECK(bk_run_scenario_text(nullptr, 1.0, 0, 1, nullptr, nullptr, nullptr) ==
        BK_ERR_INVALID);
  CHECK(bk_list_fixtures_json(nullptr) == BK_ERR_INVALID);
  CHECK(!std::string(bk_last_error()).empty());
}

TEST_CASE("family boundary and curvature") {
  Family f;
  REQUIRE(bk_family_create("abs2(z1)*exp(abs2(t1)) - 1", nullptr, 1, 1,
                           &f.p) == BK_OK);
  bk_complex t{0.4, -0.3};
  bk_complex dir{1.0, 0.0};
  bk_complex zb{0, 0};
  REQUIRE(bk_family_boundary(f.p, &t, &dir, &zb) == BK_OK);
  // |z| on the boundary is exp(-|t|^2/2).
  CHECK(std::hypot(zb.re, zb.im) ==
        doctest::Approx(std::exp(-0.125)).epsilon(1e-12));

  bk_complex theta{0, 0};
  double gap = -1.0;
  REQUIRE(bk_family_curvature(f.p, &t, &zb, &theta, &gap) == BK_OK);
  CHECK(theta.re == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(theta.im) < 1e-12);
  CHECK(gap >= 0.0);
  CHECK(gap < 1e-8);
}

TEST_CASE("scenario text runs and reports") {
  const char* sc = R"({
    "name": "inline toy",
    "kind": "toy",
    "fixture": "parabolic-ceiling",
    "t_min": -0.5, "t_max": 0.5, "count": 5
  })";
  Str report, tables;
  int pass = -1;
  REQUIRE(bk_run_scenario_text(sc, 1.0, 0, 0, &report.p, &tables.p, &pass) ==
          BK_OK);
  CHECK(pass == 1);

  nlohmann::json rj = nlohmann::json::parse(report.str());
  CHECK(rj.at("pass").get<bool>());
  CHECK(rj.at("kind").get<std::string>() == "toy");
  CHECK(!rj.contains("timing_ms"));

  nlohmann::json tj = nlohmann::json::parse(tables.str());
  REQUIRE(tj.is_array());
  REQUIRE(tj.size() == 1);
  CHECK(tj[0].at("name").get<std::string>() == "rows");
  std::string csv = tj[0].at("csv").get<std::string>();
  CHECK(csv.find("\r\n") != std::string::npos);
  CHECK(csv.rfind("t,", 0) == 0);
}

TEST_CASE("scenario verdict failure is not an error") {
  const char* sc = R"({
    "name": "wrong curvature",
    "kind": "geodesic",
    "fixture": "shrinking-disk",
    "t": [[0.4, -0.3]],
    "dir": [[1.0, 0.0]],
    "expect_theta": [[[2.0, 0.0]]]
  })";
  int pass = -1;
  REQUIRE(bk_run_scenario_text(sc, 1.0, 0, 1, nullptr, nullptr, &pass) ==
          BK_OK);
  CHECK(pass == 0);
}

TEST_CASE("scenario error codes") {
  int pass = -1;
  CHECK(bk_run_scenario_text("{ nope", 1.0, 0, 1, nullptr, nullptr, &pass) ==
        BK_ERR_PARSE);
  CHECK(bk_run_scenario_text(R"({"kind": "unheard-of"})", 1.0, 0, 1, nullptr,
                             nullptr, &pass) == BK_ERR_INVALID);
  CHECK(bk_run_scenario_file("/definitely/missing.json", 1.0, 0, 1, nullptr,
                             nullptr, &pass) == BK_ERR_IO);
}

TEST_CASE("scenario file from the shipped set") {
  std::string path = std::string(SCENARIO_DIR) + "/geodesic_shrinking.json";
  Str report;
  int pass = -1;
  REQUIRE(bk_run_scenario_file(path.c_str(), 1.0, 0, 1, &report.p, nullptr,
                               &pass) == BK_OK);
  CHECK(pass == 1);
  nlohmann::json rj = nlohmann::json::parse(report.str());
  CHECK(rj.at("pass").get<bool>());
  CHECK(rj.contains("timing_ms"));
}

TEST_CASE("tolerance scale reaches the checks") {
  // An absurdly small scale turns the toy decomposition check red.
  const char* sc = R"({
    "name": "inline toy",
    "kind": "toy",
    "fixture": "parabolic-ceiling",
    "t_min": -0.5, "t_max": 0.5, "count": 5
  })";
  int pass = -1;
  REQUIRE(bk_run_scenario_text(sc, 1e-18, 0, 1, nullptr, nullptr, &pass) ==
          BK_OK);
  CHECK(pass == 0);
}

TEST_CASE("fixture listing") {
  Str listing;
  REQUIRE(bk_list_fixtures_json(&listing.p) == BK_OK);
  nlohmann::json lj = nlohmann::json::parse(listing.str());
  REQUIRE(lj.is_array());
  CHECK(lj.size() >= 15);
  bool found = false;
  for (const auto& fx : lj)
    if (fx.at("name") == "shrinking-disk") found = true;
  CHECK(found);
}
