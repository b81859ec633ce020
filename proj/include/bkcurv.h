/* Copyright 2026 the bkcurv developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C binding for the curvature laboratory.  Every function returns a status
 * code; outputs travel through pointers.  Strings returned through char**
 * are heap copies owned by the caller: release them with bk_string_free.
 * Failure details for the current thread come from bk_last_error. */

#ifndef BKCURV_H
#define BKCURV_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Stable status codes; the library keeps these values fixed. */
typedef enum bk_status {
  BK_OK = 0,
  BK_ERR_PARSE = 1,        /* malformed expression or scenario text */
  BK_ERR_DOMAIN = 2,       /* input outside the operation's domain */
  BK_ERR_PRECONDITION = 3, /* structural precondition violated */
  BK_ERR_NUMERIC = 4,      /* iteration stalled or a guard tripped */
  BK_ERR_INVALID = 5,      /* bad argument (null handle, bad index, ...) */
  BK_ERR_IO = 6,           /* file read or write failure */
  BK_ERR_INTERNAL = 7      /* internal cross-check mismatch */
} bk_status;

typedef struct bk_expr bk_expr;     /* opaque parsed expression */
typedef struct bk_family bk_family; /* opaque family of domains */

typedef struct bk_complex {
  double re;
  double im;
} bk_complex;

/* Semantic version of the library. */
const char* bk_version(void);

/* Message of the most recent failure on this thread; empty after success. */
const char* bk_last_error(void);

/* Byte offset of the most recent parse failure, or (size_t)-1. */
size_t bk_last_error_offset(void);

/* Releases any string handed out through a char** output. */
void bk_string_free(char* s);

/* -------- expressions: t1..tm and z1..zn over complex scalars -------- */

bk_status bk_expr_parse(const char* src, int m, int n, bk_expr** out);
void bk_expr_free(bk_expr* e);

/* Canonical text form; parses back to the same expression. */
bk_status bk_expr_print(const bk_expr* e, char** out);

bk_status bk_expr_eval(const bk_expr* e, const bk_complex* t, int m,
                       const bk_complex* z, int n, bk_complex* out);

/* Derivative in t_{index+1} (fibre = 0) or z_{index+1} (fibre = 1);
 * conjugated != 0 selects the conjugate-variable derivative. */
bk_status bk_expr_wirtinger(const bk_expr* e, int fibre, int index,
                            int conjugated, bk_expr** out);

/* -------- families {z : rho(t, z) < 0} with an optional weight -------- */

/* phi may be NULL or empty for an unweighted family. */
bk_status bk_family_create(const char* rho, const char* phi, int m, int n,
                           bk_family** out);
void bk_family_free(bk_family* f);

/* Boundary point along dir (n entries) from the fibre origin at t (m
 * entries); writes n entries to out_z. */
bk_status bk_family_boundary(const bk_family* f, const bk_complex* t,
                             const bk_complex* dir, bk_complex* out_z);

/* Boundary curvature form at a boundary point: writes the row-major m x m
 * matrix to out_theta and the internal route disagreement to out_route_gap
 * (either output may be NULL to skip it). */
bk_status bk_family_curvature(const bk_family* f, const bk_complex* t,
                              const bk_complex* z, bk_complex* out_theta,
                              double* out_route_gap);

/* -------- scenarios -------- */

/* Runs a JSON scenario.  tol_scale <= 0 means 1; grid <= 0 keeps scenario
 * defaults; with_timings == 0 omits timing data for byte-stable reports.
 * *out_report receives the report JSON; *out_tables receives a JSON array
 * [{"name": ..., "csv": ...}, ...] of the run's tables (pass NULL to skip);
 * *out_pass receives 1 when every check passed. */
bk_status bk_run_scenario_text(const char* json_text, double tol_scale,
                               int grid, int with_timings, char** out_report,
                               char** out_tables, int* out_pass);
bk_status bk_run_scenario_file(const char* path, double tol_scale, int grid,
                               int with_timings, char** out_report,
                               char** out_tables, int* out_pass);

/* -------- fixtures -------- */

/* JSON array [{"name", "kind", "summary"}, ...] of the built-in catalog. */
bk_status bk_list_fixtures_json(char** out);

#ifdef __cplusplus
}
#endif

#endif /* BKCURV_H */
