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

// Families of Hermitian norms N(t, xi) = sum h_{a bbar}(t) xi_a conj(xi_b)
// on C^n over a base in C^m, their curvature tensor
//   theta_{jk}(t, xi) = xi^T (d_j d_kbar H - d_j H H^{-1} (d_k H)^*) conj(xi),
// a flatness scan, and the bridge to the unit-ball domain family
// {N(t, z) < 1}: at w = z / sqrt(N(t,z)) the geodesic curvature of the ball
// boundary equals theta(t, z) / N(t, z).

#ifndef BKCURV_NORMFAM_HPP
#define BKCURV_NORMFAM_HPP

#include <string>
#include <vector>

#include "lifts.hpp"

namespace bk {

struct NormFamily {
  int m = 1;
  int n = 1;
  // entry (a, b) holds h_{a bbar}; rows/columns follow the xi index
  std::vector<std::vector<ExprP>> h;
  // first and mixed second base derivatives of each entry
  std::vector<std::vector<std::vector<ExprP>>> h_t;                   // [j][a][b]
  std::vector<std::vector<std::vector<std::vector<ExprP>>>> h_ttbar;  // [j][k][a][b]
};

// entries are row-major n*n expression strings in t1..tm only.  Hermitian
// symmetry of H(t) is checked numerically at a few sample points.
NormFamily build_norm_family(const std::vector<std::string>& entries, int m,
                             int n);

// H(t); throws Error{Precondition} if the matrix fails to be Hermitian.
MatrixXcd norm_matrix(const NormFamily& nf, std::span<const cplx> t);

// m x m curvature pairing at (t, xi).  H(t) must be positive definite.
MatrixXcd norm_theta(const NormFamily& nf, std::span<const cplx> t,
                     std::span<const cplx> xi);

struct SemmesReport {
  double max_abs_theta = 0.0;  // largest |theta_{jk}| over all samples
  bool flat = false;
  int samples = 0;
};

// Scans theta over deterministic pseudo-random base points in the polydisc
// of the given radius and unit fibre directions.  flat iff the tensor stays
// below tol everywhere sampled: exactly the families N = |M(t) xi|^2 with
// M holomorphic in t.
SemmesReport semmes_flat_check(const NormFamily& nf, double radius,
                               int base_samples, int fibre_samples, double tol);

// The unit-ball domain family rho = N(t, z) - 1.
DomainFamily norm_to_domain(const NormFamily& nf);

// Curvature of the norm at (t, z), of the ball boundary at w = z/sqrt(N),
// and the mismatch of the bridge between them.  The domain-side value is
// itself computed by two routes inside geodesic_curvature, making three
// independent evaluations in total.
struct ThreeWayReport {
  MatrixXcd theta_norm;       // m x m at (t, z)
  MatrixXcd theta_domain;     // m x m at the projected boundary point
  double q = 0.0;             // N(t, z)
  double bridge_gap = 0.0;    // max |theta_norm/q - theta_domain|
  double route_gap = 0.0;     // disagreement of the two domain routes
  double vhat_max = 0.0;      // quadratic families keep Vhat(rho) = 0
};
ThreeWayReport three_way_check(const NormFamily& nf, std::span<const cplx> t,
                               std::span<const cplx> z);

}  // namespace bk

#endif
