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

#include "bergman.hpp"

#include <cmath>
#include <random>

namespace bk {

namespace {

// falling factorial k (k-1) ... (k-alpha+1); zero when alpha > k
double ffac(int k, int alpha) {
  double f = 1.0;
  for (int s = 0; s < alpha; ++s) f *= (k - s);
  return (alpha > k) ? 0.0 : f;
}

// z^k for k >= 0 without the pow(0,0) pitfall
cplx ipow(cplx z, int k) {
  cplx r = 1.0;
  for (int s = 0; s < k; ++s) r *= z;
  return r;
}

// Partial pivoted Cholesky of the Hermitian PSD matrix A.  Fills L (n x rank,
// rows in original order), the pivot list, and the drop count.
void pivoted_cholesky(const MatrixXcd& A, double droptol, MatrixXcd& L,
                      std::vector<int>& kept, int& rank, int& dropped) {
  const int n = static_cast<int>(A.rows());
  Eigen::VectorXd d = A.diagonal().real();
  double dmax0 = d.maxCoeff();
  if (dmax0 <= 0.0)
    throw Error(ErrCode::Numeric, "gram matrix has no positive diagonal");
  L = MatrixXcd::Zero(n, n);
  kept.clear();
  std::vector<bool> used(n, false);
  rank = 0;
  for (int k = 0; k < n; ++k) {
    int p = -1;
    double best = -1.0;
    for (int i = 0; i < n; ++i)
      if (!used[i] && d(i) > best) { best = d(i); p = i; }
    if (best < droptol * dmax0) break;
    used[p] = true;
    kept.push_back(p);
    double lpp = std::sqrt(best);
    L(p, k) = lpp;
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      cplx s = A(i, p);
      for (int q = 0; q < k; ++q) s -= L(i, q) * std::conj(L(p, q));
      L(i, k) = s / lpp;
      d(i) -= std::norm(L(i, k));
    }
    ++rank;
  }
  dropped = n - rank;
  L.conservativeResize(n, rank);
}

}  // namespace

BergmanModel build_bergman(const DomainFamily& fam, std::span<const cplx> t,
                           int degree, int radial_order, int angular_order) {
  if (degree < 1)
    throw Error(ErrCode::Invalid, "model needs at least one monomial");
  BergmanModel model;
  model.t.assign(t.begin(), t.end());
  model.degree = degree;
  model.quad = build_quadrature(fam, t, radial_order, angular_order);
  const std::size_t Q = model.quad.nodes.size();
  model.wmass.resize(Q);
  std::vector<cplx> zbuf(1);
  for (std::size_t q = 0; q < Q; ++q) {
    zbuf[0] = model.quad.nodes[q];
    cplx ph = eval_expr(fam.phi, t, zbuf);
    if (std::abs(ph.imag()) > 1e-9 * (1.0 + std::abs(ph.real())))
      throw Error(ErrCode::Domain, "weight is not real on the fibre");
    model.wmass[q] = model.quad.weights[q] * std::exp(-ph.real());
  }
  // monomial values scaled by sqrt of the node mass: gram = V V^H
  MatrixXcd V(degree, Q);
  for (std::size_t q = 0; q < Q; ++q) {
    double sw = std::sqrt(model.wmass[q]);
    cplx zq = model.quad.nodes[q];
    cplx p = 1.0;
    for (int k = 0; k < degree; ++k) {
      V(k, q) = p * sw;
      p *= zq;
    }
  }
  model.gram = V * V.adjoint();
  pivoted_cholesky(model.gram, 1e-13, model.chol, model.kept, model.rank,
                   model.dropped);
  return model;
}

VectorXcd gram_solve(const BergmanModel& model, const VectorXcd& b) {
  const int r = model.rank;
  // triangular solves on the kept rows: B y = b[kept], B^H x = y
  MatrixXcd B(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) B(i, j) = model.chol(model.kept[i], j);
  VectorXcd bk(r);
  for (int i = 0; i < r; ++i) bk(i) = b(model.kept[i]);
  VectorXcd y = B.triangularView<Eigen::Lower>().solve(bk);
  VectorXcd xk = B.adjoint().triangularView<Eigen::Upper>().solve(y);
  VectorXcd x = VectorXcd::Zero(model.degree);
  for (int i = 0; i < r; ++i) x(model.kept[i]) = xk(i);
  return x;
}

cplx kernel(const BergmanModel& model, cplx zeta, cplx eta) {
  return kernel_deriv(model, 0, 0, zeta, eta);
}

cplx kernel_deriv(const BergmanModel& model, int alpha, int beta, cplx zeta,
                  cplx eta) {
  VectorXcd y = gram_solve(model, point_moments(model, beta, eta));
  VectorXcd mz = point_moments(model, alpha, zeta);
  cplx s = 0.0;
  for (int k = 0; k < model.degree; ++k) s += mz(k) * std::conj(y(k));
  return s;
}

VectorXcd point_moments(const BergmanModel& model, int alpha, cplx eta) {
  VectorXcd d(model.degree);
  for (int k = 0; k < model.degree; ++k) {
    d(k) = (k >= alpha) ? cplx(ffac(k, alpha)) * ipow(eta, k - alpha)
                        : cplx(0.0);
  }
  return d;
}

VectorXcd disk_moments(const BergmanModel& model, cplx center, double radius) {
  VectorXcd d(model.degree);
  double area2 = 2.0 * M_PI * radius * radius;  // i dz^dzbar mass of the disk
  cplx p = 1.0;
  for (int k = 0; k < model.degree; ++k) {
    d(k) = area2 * p;
    p *= center;
  }
  return d;
}

DualFunctional dual_functional(const BergmanModel& model, const VectorXcd& d) {
  DualFunctional out;
  VectorXcd x = gram_solve(model, d);  // conj of the coefficient vector
  out.coeffs = x.conjugate();
  cplx ns = 0.0;
  for (int k = 0; k < model.degree; ++k) ns += out.coeffs(k) * d(k);
  out.norm_sq = ns.real();
  return out;
}

cplx eval_poly(const VectorXcd& coeffs, cplx zeta) {
  cplx s = 0.0;
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k)
    s = s * zeta + coeffs(k);
  return s;
}

cplx eval_poly_deriv(const VectorXcd& coeffs, int alpha, cplx zeta) {
  cplx s = 0.0;
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= alpha; --k)
    s = s * zeta + coeffs(k) * ffac(k, alpha);
  return s;
}

cplx apply_functional(const VectorXcd& d, const VectorXcd& coeffs) {
  cplx s = 0.0;
  for (int k = 0; k < coeffs.size(); ++k) s += coeffs(k) * d(k);
  return s;
}

cplx inner_product(const BergmanModel& model, const VectorXcd& f,
                   const VectorXcd& g) {
  cplx s = 0.0;
  for (std::size_t q = 0; q < model.quad.nodes.size(); ++q) {
    cplx zq = model.quad.nodes[q];
    s += model.wmass[q] * eval_poly(f, zq) * std::conj(eval_poly(g, zq));
  }
  return s;
}

ReproducingReport reproducing_check(const BergmanModel& model, int trials) {
  ReproducingReport rep;
  rep.trials = trials;
  std::mt19937 rng(1357);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double rmax = 0.0;
  for (double r : model.quad.radii) rmax = std::max(rmax, r);
  for (int s = 0; s < trials; ++s) {
    VectorXcd f(model.degree);
    for (int k = 0; k < model.degree; ++k) f(k) = cplx(u(rng), u(rng));
    // evaluation points strictly inside the fibre
    cplx eta = 0.5 * rmax * cplx(u(rng), u(rng));
    VectorXcd krep = gram_solve(model, point_moments(model, 0, eta)).conjugate();
    cplx lhs = inner_product(model, f, krep);
    cplx rhs = eval_poly(f, eta);
    rep.max_residual = std::max(rep.max_residual, std::abs(lhs - rhs));
  }
  return rep;
}

ExtremalReport extremal_check(const BergmanModel& model, const VectorXcd& d) {
  ExtremalReport rep;
  DualFunctional df = dual_functional(model, d);
  if (df.norm_sq <= 0.0)
    throw Error(ErrCode::Numeric, "functional vanishes on the model space");
  rep.norm = std::sqrt(df.norm_sq);
  VectorXcd extremal = df.coeffs / rep.norm;
  rep.attained = std::abs(apply_functional(d, extremal));
  rep.gap = std::abs(rep.attained - rep.norm);
  return rep;
}

}  // namespace bk
