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

// Finite-dimensional model of the weighted space of holomorphic functions
// on a planar fibre: span of the monomials 1, zeta, ..., zeta^{N-1} with
//   (f, g) = integral f conj(g) e^{-phi(t, .)}  i dzeta ^ dzetabar.
// The Gram matrix is built on the fibre quadrature; its pivoted Cholesky
// factor (small pivots dropped) backs the kernel, dual norms of linear
// functionals, and their extremal functions.

#ifndef BKCURV_BERGMAN_HPP
#define BKCURV_BERGMAN_HPP

#include "quadrature.hpp"

namespace bk {

struct BergmanModel {
  std::vector<cplx> t;
  int degree = 0;  // number of monomials
  FibreQuadrature quad;
  std::vector<double> wmass;  // quad weight times e^{-phi} per interior node
  MatrixXcd gram;             // degree x degree, Hermitian
  // partial pivoted Cholesky of gram: gram[kept,kept] ~ L L^H with L the
  // kept rows/columns of chol
  MatrixXcd chol;             // degree x rank, rows in original order
  std::vector<int> kept;      // pivot order, length rank
  int rank = 0;
  int dropped = 0;            // pivots below the drop threshold
};

// Monomial Gram model of the fibre of `fam` at t; the weight is fam.phi.
// Pivots below 1e-13 * (largest diagonal) are dropped, which restricts all
// solves to the numerically independent monomials.
BergmanModel build_bergman(const DomainFamily& fam, std::span<const cplx> t,
                           int degree, int radial_order, int angular_order);

// G^{-1} b through the retained pivots (components outside them are 0).
VectorXcd gram_solve(const BergmanModel& model, const VectorXcd& b);

// Reproducing kernel K(zeta, eta) = m(zeta)^T conj(G^{-1} m(eta)) and its
// derivatives d^alpha_zeta d^beta_etabar K.
cplx kernel(const BergmanModel& model, cplx zeta, cplx eta);
cplx kernel_deriv(const BergmanModel& model, int alpha, int beta, cplx zeta,
                  cplx eta);

// Moment vector of a linear functional L: d_k = L(zeta^k).
// point_moments: L(f) = f^{(alpha)}(eta).
// disk_moments: L(f) = integral of f over {|zeta - c| < r} against
// i dzeta ^ dzetabar; the mean value property gives d_k = 2 pi r^2 c^k.
VectorXcd point_moments(const BergmanModel& model, int alpha, cplx eta);
VectorXcd disk_moments(const BergmanModel& model, cplx center, double radius);

// Riesz representative of the functional with moments d (coefficients in
// the monomial basis) and its dual norm squared = d^H G^{-1} d.
struct DualFunctional {
  VectorXcd coeffs;
  double norm_sq = 0.0;
};
DualFunctional dual_functional(const BergmanModel& model, const VectorXcd& d);

// Polynomial evaluation in the monomial basis.
cplx eval_poly(const VectorXcd& coeffs, cplx zeta);
cplx eval_poly_deriv(const VectorXcd& coeffs, int alpha, cplx zeta);

// Applies the functional with moments d to the polynomial with the given
// coefficients (plain pairing sum c_k d_k).
cplx apply_functional(const VectorXcd& d, const VectorXcd& coeffs);

// (f, g) under the model's quadrature measure.
cplx inner_product(const BergmanModel& model, const VectorXcd& f,
                   const VectorXcd& g);

// Feeds random polynomials through the kernel and reports
// max |(f, K(., eta)) - f(eta)| over the trials.
struct ReproducingReport {
  double max_residual = 0.0;
  int trials = 0;
};
ReproducingReport reproducing_check(const BergmanModel& model, int trials);

// The extremal function for L is rep/|rep|; checks L attains its dual norm
// there: gap = |L(extremal) - |L||.
struct ExtremalReport {
  double norm = 0.0;      // dual norm |L|
  double attained = 0.0;  // |L(extremal)|
  double gap = 0.0;
};
ExtremalReport extremal_check(const BergmanModel& model, const VectorXcd& d);

}  // namespace bk

#endif
