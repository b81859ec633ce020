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

// Families of domains D_t = {z : rho(t,z) < 0} in C^n over a base in C^m,
// with an optional weight phi.  The family precomputes the symbolic first
// and mixed second Wirtinger derivatives of rho and phi; jets evaluate them
// at a point.

#ifndef BKCURV_JETS_HPP
#define BKCURV_JETS_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "expr.hpp"

namespace bk {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

// Symbolic derivative table for one real-valued scalar field.
struct DerivTable {
  ExprP value;
  std::vector<ExprP> d_t;                // m entries: d/dt_j
  std::vector<ExprP> d_z;                // n entries: d/dz_a
  std::vector<std::vector<ExprP>> d_ttbar;  // m x m: d2/dt_j dtbar_k
  std::vector<std::vector<ExprP>> d_tzbar;  // m x n: d2/dt_j dzbar_a
  std::vector<std::vector<ExprP>> d_zzbar;  // n x n: d2/dz_a dzbar_b
};

DerivTable build_deriv_table(const ExprP& e, int m, int n);

struct DomainFamily {
  int m = 1;
  int n = 1;
  ExprP rho;
  ExprP phi;  // never null; literal 0 when unweighted
  DerivTable rho_d;
  DerivTable phi_d;
};

// phi_src may be empty (weight 0).  Validates that the declared dimensions
// cover the variables used.
DomainFamily build_family(const std::string& rho_src, const std::string& phi_src,
                          int m, int n);
DomainFamily build_family_expr(ExprP rho, ExprP phi, int m, int n);

// Value and first/second Wirtinger derivatives of a real field at (t,z).
struct Jet11 {
  double value = 0.0;
  VectorXcd d_t;       // m
  VectorXcd d_z;       // n
  MatrixXcd d_ttbar;   // m x m, Hermitian
  MatrixXcd d_tzbar;   // m x n
  MatrixXcd d_zzbar;   // n x n, Hermitian
};

// Evaluates a derivative table.  Checks the field is real at the point and
// that both second-derivative diagonal blocks are Hermitian.
Jet11 eval_jet(const DerivTable& d, int m, int n, std::span<const cplx> t,
               std::span<const cplx> z);

Jet11 rho_jet(const DomainFamily& fam, std::span<const cplx> t,
              std::span<const cplx> z);
Jet11 phi_jet(const DomainFamily& fam, std::span<const cplx> t,
              std::span<const cplx> z);

// Fibre-direction frame at a point: Levi form of rho along the fibre, its
// inverse, the gradient, and the two gradient norms that enter the lift and
// curvature formulas.
struct FibreFrame {
  double rho = 0.0;         // value of rho at the point
  MatrixXcd levi;           // n x n, rho_{a bbar}
  MatrixXcd levi_inv;
  VectorXcd grad;           // rho_a
  VectorXcd grad_up;        // raised gradient, conj(levi_inv * grad)
  double grad_sq = 0.0;     // sum |rho_a|^2 (plain norm, used by a2 reporting)
  double levi_grad_sq = 0.;  // grad^* levi^{-1} grad (norm in the Levi metric)
};

// Throws Error{Precondition} when the fibre Levi form is not positive
// definite (Cholesky failure = strict plurisubharmonicity fails).
FibreFrame fibre_frame(const Jet11& jet);

// Hermitian (m+n) x (m+n) Hessian over the joint (t,z) variables, and the
// joint gradient; used for total-space pseudoconvexity diagnostics.
MatrixXcd full_hessian(const Jet11& jet);
VectorXcd full_gradient(const Jet11& jet);

// Smallest eigenvalue of the Hessian restricted to the complex tangent space
// {W : sum_A rho_A W^A = 0} at a boundary point.
double tangential_levi_min(const Jet11& jet);

struct A2Report {
  bool ok = true;
  double min_levi_eig = 0.0;   // over the sampled boundary points
  double min_grad_sq = 0.0;    // plain gradient norm^2, must stay away from 0
  int samples = 0;
  std::string detail;
};

// Samples the fibre boundary along rays from the origin (n = 1: uniform
// angles; n >= 2: deterministic pseudo-random directions) and checks strict
// fibre plurisubharmonicity plus a nonvanishing fibre gradient.
A2Report a2_check(const DomainFamily& fam, std::span<const cplx> t, int samples,
                  double levi_tol = 1e-10, double grad_tol = 1e-10);

// Boundary point along `dir` from the fibre origin: smallest s > 0 with
// rho(t, s*dir) = 0, found by bracketing (doubling up to 64) and bisection
// to |rho| < 1e-12.  Requires rho(t,0) < 0.
std::vector<cplx> boundary_locate(const DomainFamily& fam, std::span<const cplx> t,
                                  std::span<const cplx> dir);

}  // namespace bk

#endif
