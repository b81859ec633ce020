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

#include "bkcurv.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "core/expr.hpp"
#include "core/jets.hpp"
#include "core/lifts.hpp"
#include "core/scenario.hpp"

struct bk_expr {
  bk::ExprP e;
};
struct bk_family {
  bk::DomainFamily fam;
};

namespace {

thread_local std::string g_error;
thread_local std::size_t g_error_offset = static_cast<std::size_t>(-1);

// Runs the body, translating exceptions into status codes and stashing the
// message for bk_last_error.
template <typename F>
bk_status guarded(F&& body) noexcept {
  try {
    body();
    g_error.clear();
    g_error_offset = static_cast<std::size_t>(-1);
    return BK_OK;
  } catch (const bk::Error& e) {
    g_error = e.what();
    g_error_offset = e.offset;
    return static_cast<bk_status>(static_cast<int>(e.code));
  } catch (const std::exception& e) {
    g_error = e.what();
    g_error_offset = static_cast<std::size_t>(-1);
    return BK_ERR_INTERNAL;
  } catch (...) {
    g_error = "unknown failure";
    g_error_offset = static_cast<std::size_t>(-1);
    return BK_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool cond, const char* what) {
  if (!cond) throw bk::Error{bk::ErrCode::Invalid, what};
}

std::vector<bk::cplx> to_vec(const bk_complex* p, int count) {
  std::vector<bk::cplx> v(count);
  for (int i = 0; i < count; ++i) v[i] = bk::cplx(p[i].re, p[i].im);
  return v;
}

bk::RunOptions options_of(double tol_scale, int grid, int with_timings) {
  bk::RunOptions opt;
  if (tol_scale > 0.0) opt.tol_scale = tol_scale;
  if (grid > 0) opt.grid = grid;
  opt.timings = with_timings != 0;
  return opt;
}

void emit_run(const bk::RunResult& run, char** out_report, char** out_tables,
              int* out_pass) {
  if (out_report) *out_report = dup_string(run.report.dump(2));
  if (out_tables) {
    bk::njson tables = bk::njson::array();
    for (const bk::Table& t : run.tables) {
      bk::njson one;
      one["name"] = t.name;
      one["csv"] = bk::csv_encode(t);
      tables.push_back(std::move(one));
    }
    *out_tables = dup_string(tables.dump(2));
  }
  if (out_pass) *out_pass = run.pass ? 1 : 0;
}

}  // namespace

extern "C" {

const char* bk_version(void) { return "0.1.0"; }

const char* bk_last_error(void) { return g_error.c_str(); }

size_t bk_last_error_offset(void) { return g_error_offset; }

void bk_string_free(char* s) { std::free(s); }

bk_status bk_expr_parse(const char* src, int m, int n, bk_expr** out) {
  return guarded([&] {
    require(src && out, "null argument");
    *out = new bk_expr{bk::parse_expr(src, m, n)};
  });
}

void bk_expr_free(bk_expr* e) { delete e; }

bk_status bk_expr_print(const bk_expr* e, char** out) {
  return guarded([&] {
    require(e && out, "null argument");
    *out = dup_string(bk::print_expr(e->e));
  });
}

bk_status bk_expr_eval(const bk_expr* e, const bk_complex* t, int m,
                       const bk_complex* z, int n, bk_complex* out) {
  return guarded([&] {
    require(e && out, "null argument");
    require(m == 0 || t, "null t with positive m");
    require(n == 0 || z, "null z with positive n");
    std::vector<bk::cplx> tv = to_vec(t, m);
    std::vector<bk::cplx> zv = to_vec(z, n);
    bk::cplx v = bk::eval_expr(e->e, tv, zv);
    out->re = v.real();
    out->im = v.imag();
  });
}

bk_status bk_expr_wirtinger(const bk_expr* e, int fibre, int index,
                            int conjugated, bk_expr** out) {
  return guarded([&] {
    require(e && out, "null argument");
    require(index >= 0, "negative variable index");
    bk::VarRef v{fibre != 0, index};
    *out = new bk_expr{bk::wirtinger(e->e, v, conjugated != 0)};
  });
}

bk_status bk_family_create(const char* rho, const char* phi, int m, int n,
                           bk_family** out) {
  return guarded([&] {
    require(rho && out, "null argument");
    *out = new bk_family{
        bk::build_family(rho, phi ? std::string(phi) : std::string(), m, n)};
  });
}

void bk_family_free(bk_family* f) { delete f; }

bk_status bk_family_boundary(const bk_family* f, const bk_complex* t,
                             const bk_complex* dir, bk_complex* out_z) {
  return guarded([&] {
    require(f && t && dir && out_z, "null argument");
    std::vector<bk::cplx> tv = to_vec(t, f->fam.m);
    std::vector<bk::cplx> dv = to_vec(dir, f->fam.n);
    std::vector<bk::cplx> zb = bk::boundary_locate(f->fam, tv, dv);
    for (int a = 0; a < f->fam.n; ++a) {
      out_z[a].re = zb[a].real();
      out_z[a].im = zb[a].imag();
    }
  });
}

bk_status bk_family_curvature(const bk_family* f, const bk_complex* t,
                              const bk_complex* z, bk_complex* out_theta,
                              double* out_route_gap) {
  return guarded([&] {
    require(f && t && z, "null argument");
    std::vector<bk::cplx> tv = to_vec(t, f->fam.m);
    std::vector<bk::cplx> zv = to_vec(z, f->fam.n);
    bk::GeodesicCurvature gc = bk::geodesic_curvature(f->fam, tv, zv);
    if (out_theta) {
      for (int j = 0; j < f->fam.m; ++j)
        for (int k = 0; k < f->fam.m; ++k) {
          out_theta[j * f->fam.m + k].re = gc.theta(j, k).real();
          out_theta[j * f->fam.m + k].im = gc.theta(j, k).imag();
        }
    }
    if (out_route_gap) *out_route_gap = gc.route_gap;
  });
}

bk_status bk_run_scenario_text(const char* json_text, double tol_scale,
                               int grid, int with_timings, char** out_report,
                               char** out_tables, int* out_pass) {
  return guarded([&] {
    require(json_text, "null scenario text");
    bk::RunResult run = bk::run_scenario_text(
        json_text, options_of(tol_scale, grid, with_timings));
    emit_run(run, out_report, out_tables, out_pass);
  });
}

bk_status bk_run_scenario_file(const char* path, double tol_scale, int grid,
                               int with_timings, char** out_report,
                               char** out_tables, int* out_pass) {
  return guarded([&] {
    require(path, "null scenario path");
    bk::RunResult run = bk::run_scenario_file(
        path, options_of(tol_scale, grid, with_timings));
    emit_run(run, out_report, out_tables, out_pass);
  });
}

bk_status bk_list_fixtures_json(char** out) {
  return guarded([&] {
    require(out, "null argument");
    *out = dup_string(bk::fixtures_json().dump(2));
  });
}

}  // extern "C"
