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

// Variational identities for the weighted kernel on moving planar fibres:
// the first variation of kernel derivatives (interior weight term plus a
// boundary flux along the horizontal lift), the second variation for
// product families with a pluriharmonic weight, subharmonicity scans of
// log dual norms over the base, total-space convexity diagnostics, and the
// transport identity for integrals over moving interval fibres.

#ifndef BKCURV_VARIATION_HPP
#define BKCURV_VARIATION_HPP

#include "bergman.hpp"
#include "lifts.hpp"

namespace bk {

struct ModelOptions {
  int degree = 16;
  int radial = 20;
  int angular = 40;
};

// A continuous linear functional on the model space.
struct FunctionalSpec {
  enum class Kind { PointDeriv, DiskCurrent };
  Kind kind = Kind::PointDeriv;
  int alpha = 0;       // derivative order (PointDeriv)
  cplx at{0.0, 0.0};   // evaluation point / disk centre
  double radius = 0.0; // disk radius (DiskCurrent)
};
VectorXcd functional_moments(const BergmanModel& model,
                             const FunctionalSpec& spec);

// First variation of K_{alpha betabar}(zeta, eta; t) along t_j:
//   d/dt_j K = integral phi_j u_beta,eta conj(u_alpha,zeta) e^{-phi}
//              - boundary flux of the same density along the lift V_j,
// with u the Riesz representatives at the centre t.  The left side is a
// Richardson-extrapolated Wirtinger difference of rebuilt models.
struct Vf1Report {
  cplx lhs{0, 0};
  cplx rhs_interior{0, 0};
  cplx rhs_boundary{0, 0};
  cplx rhs{0, 0};  // interior - boundary
  double residual = 0.0;
};
Vf1Report vf1_check(const DomainFamily& fam, std::span<const cplx> t, int j,
                    int alpha, cplx zeta, int beta, cplx eta,
                    const ModelOptions& opt, double fd_h = 1e-3);

// Second variation for a product family (fibre independent of t) whose
// weight is pluriharmonic in t:
//   d/dt d/dtbar K_{alpha betabar} = (dbar_t u_beta,eta, dbar_t u_alpha,zeta).
// Both preconditions are verified on random samples before the check runs.
struct Vf2Report {
  cplx lhs{0, 0};
  cplx rhs{0, 0};
  double residual = 0.0;
};
Vf2Report vf2_product_check(const DomainFamily& fam, std::span<const cplx> t,
                            int alpha, cplx zeta, int beta, cplx eta,
                            const ModelOptions& opt, double fd_h = 1e-3);

// Scans u(t) = log |L|_t^2 (squared dual norm of the functional against the
// t-model) over a square grid centred at `centre` with half-width `radius`,
// m = 1 only.  ddbar holds the nine-point d/dt d/dtbar values on the k x k
// interior nodes; models on the extended grid are built once and shared.
struct PshScan {
  int grid = 0;
  double spacing = 0.0;
  std::vector<double> u;      // (k+2) x (k+2) row-major, extended grid
  std::vector<double> ddbar;  // k x k row-major
  double min_ddbar = 0.0;
  bool subharmonic = false;
};
PshScan psh_scan(const DomainFamily& fam, const FunctionalSpec& spec,
                 cplx centre, double radius, int grid, const ModelOptions& opt,
                 double tol = 0.0);

// Total-space convexity diagnostics behind the subharmonicity statement:
// smallest tangential Levi eigenvalue of rho over sampled boundary points
// (t in the polydisc of base_radius about centre) and smallest eigenvalue
// of the full complex Hessian of the weight at interior samples.
struct SteinReport {
  double min_tangential = 0.0;
  double min_weight_eig = 0.0;
  bool pseudoconvex = false;
  bool weight_psh = false;
  int samples = 0;
};
SteinReport stein_check(const DomainFamily& fam, cplx centre,
                        double base_radius, int base_samples,
                        int boundary_samples, double tol = 1e-8);

// Transport identity on interval fibres {x : rho(t, x) < 0} with t and x
// real (t = t1, x = z1):
//   d/dt integral f dx = integral (df/dt + d(w f)/dx) dx
// for any w making V = d/dt + w d/dx tangent at both endpoints; the
// tangency V(rho) = 0 is checked there first.
struct FibreDerivativeReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double tangency = 0.0;  // max |V(rho)| at the endpoints
};
FibreDerivativeReport fibre_derivative_check(const DomainFamily& fam,
                                             double t, double x_seed,
                                             const ExprP& f, const ExprP& w,
                                             int order = 64,
                                             double fd_h = 1e-4);

}  // namespace bk

#endif
