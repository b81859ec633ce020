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

// Horizontal lifts of base directions through a family of domains, and the
// geodesic curvature of the family along its boundary.
//
// Conventions: a lift is V_j = d/dt_j - sum_a v[j][a] d/dz_a, so the matrix
// returned below stores v with the minus sign NOT applied.  The raised
// gradient norm used throughout is the Levi-metric one,
// |drho|^2_L = grad^* Levi^{-1} grad; the plain norm breaks the reduction of
// the boundary assembly to the one-dimensional closed form.

#ifndef BKCURV_LIFTS_HPP
#define BKCURV_LIFTS_HPP

#include "jets.hpp"

namespace bk {

// Lift against i ddbar log(1/-rho) at an interior point:
//   v[j][a] = sum_b psi_{j bbar} psi^{bbar a},  psi = -log(-rho).
MatrixXcd lift_log(const DomainFamily& fam, std::span<const cplx> t,
                   std::span<const cplx> z);

// Boundary-limit assembly of the same lift; finite on the boundary where the
// interior formula degenerates.  Aborts when |rho - |drho|^2_L| < 1e-10.
MatrixXcd lift_log_boundary(const DomainFamily& fam, std::span<const cplx> t,
                            std::span<const cplx> z);

// Lift against the fibre Levi form: vhat[j][a] = sum_b rho_{j bbar} rho^{bbar a}.
// Also returns Vhat_j(rho) = rho_j - sum vhat[j][a] rho_a per direction.
struct LeviLift {
  MatrixXcd v;          // m x n
  VectorXcd vhat_rho;   // m
};
LeviLift lift_levi(const Jet11& jet, const FibreFrame& fr);
LeviLift lift_levi(const DomainFamily& fam, std::span<const cplx> t,
                   std::span<const cplx> z);

// V_j(rho) for a lift matrix v: rho_j - sum_a v[j][a] rho_a.  Zero on the
// boundary for the boundary lift (tangency).
VectorXcd lift_apply_to_rho(const Jet11& jet, const MatrixXcd& v);

// Geodesic curvature of the family at a boundary point, m x m Hermitian,
// computed two ways and cross-checked:
//  (1) decomposition  theta = c + |drho|^2_L Vhat(rho) Vhat(rho)^* / (rho - |drho|^2_L)^2
//      with c_{jk} = rho_{j kbar} - sum rho_{j abar} rho^{abar b} rho_{kbar b};
//  (2) the direct pairing <V_j, V_k> against i ddbar rho over the joint
//      (t,z) coordinates, with V from lift_log_boundary.
struct GeodesicCurvature {
  MatrixXcd theta;        // route 1 (reported value)
  MatrixXcd theta_pair;   // route 2
  MatrixXcd c;            // Levi-lift part
  VectorXcd vhat_rho;
  double route_gap = 0.0;  // max abs entry difference between the routes
};

// Throws Error{Internal} when the two routes disagree beyond cross_tol.
GeodesicCurvature geodesic_curvature(const DomainFamily& fam,
                                     std::span<const cplx> t,
                                     std::span<const cplx> z,
                                     double cross_tol = 1e-8);

// Independent construction of the boundary lift through adapted fibre
// coordinates (Levi form = identity, gradient along the first axis): the
// transported simple formulas v'_1 = rho_j / rho_1, v'_a = rho_{j abar}
// mapped back to the original coordinates.  Returns the max abs difference
// against lift_log_boundary; meaningful for boundary points.
double adapted_lift_gap(const DomainFamily& fam, std::span<const cplx> t,
                        std::span<const cplx> z);

// Max spectral norm of theta over sampled boundary points; below tol the
// family behaves as an interpolation family (flat geodesic curvature).
struct InterpolationReport {
  double max_theta_norm = 0.0;
  double max_route_gap = 0.0;
  bool flat = false;
  int samples = 0;
};
InterpolationReport interpolation_check(const DomainFamily& fam,
                                        std::span<const cplx> t, int samples,
                                        double tol);

}  // namespace bk

#endif
