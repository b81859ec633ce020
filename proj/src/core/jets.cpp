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

#include "jets.hpp"

#include <cmath>
#include <random>

namespace bk {

DerivTable build_deriv_table(const ExprP& e, int m, int n) {
  DerivTable d;
  d.value = e;
  d.d_t.resize(m);
  d.d_z.resize(n);
  for (int j = 0; j < m; ++j) d.d_t[j] = wirtinger(e, {false, j}, false);
  for (int a = 0; a < n; ++a) d.d_z[a] = wirtinger(e, {true, a}, false);
  d.d_ttbar.assign(m, std::vector<ExprP>(m));
  d.d_tzbar.assign(m, std::vector<ExprP>(n));
  d.d_zzbar.assign(n, std::vector<ExprP>(n));
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k)
      d.d_ttbar[j][k] = wirtinger(d.d_t[j], {false, k}, true);
  for (int j = 0; j < m; ++j)
    for (int a = 0; a < n; ++a)
      d.d_tzbar[j][a] = wirtinger(d.d_t[j], {true, a}, true);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      d.d_zzbar[a][b] = wirtinger(d.d_z[a], {true, b}, true);
  return d;
}

DomainFamily build_family_expr(ExprP rho, ExprP phi, int m, int n) {
  if (m < 1 || n < 1) throw Error(ErrCode::Invalid, "family needs m >= 1, n >= 1");
  if (!phi) phi = lit(0.0);
  int mu = 0, nu = 0;
  expr_var_extent(rho, mu, nu);
  expr_var_extent(phi, mu, nu);
  if (mu > m || nu > n)
    throw Error(ErrCode::Invalid, "expression uses variables beyond declared dimensions");
  DomainFamily fam;
  fam.m = m;
  fam.n = n;
  fam.rho = rho;
  fam.phi = phi;
  fam.rho_d = build_deriv_table(rho, m, n);
  fam.phi_d = build_deriv_table(phi, m, n);
  return fam;
}

DomainFamily build_family(const std::string& rho_src, const std::string& phi_src,
                          int m, int n) {
  ExprP rho = parse_expr(rho_src, m, n);
  ExprP phi = phi_src.empty() ? lit(0.0) : parse_expr(phi_src, m, n);
  return build_family_expr(rho, phi, m, n);
}

Jet11 eval_jet(const DerivTable& d, int m, int n, std::span<const cplx> t,
               std::span<const cplx> z) {
  Jet11 jet;
  cplx v = eval_expr(d.value, t, z);
  if (std::abs(v.imag()) > 1e-9 * (1.0 + std::abs(v.real())))
    throw Error(ErrCode::Domain, "field is not real at the evaluation point");
  jet.value = v.real();
  jet.d_t.resize(m);
  jet.d_z.resize(n);
  jet.d_ttbar.resize(m, m);
  jet.d_tzbar.resize(m, n);
  jet.d_zzbar.resize(n, n);
  for (int j = 0; j < m; ++j) jet.d_t(j) = eval_expr(d.d_t[j], t, z);
  for (int a = 0; a < n; ++a) jet.d_z(a) = eval_expr(d.d_z[a], t, z);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k)
      jet.d_ttbar(j, k) = eval_expr(d.d_ttbar[j][k], t, z);
  for (int j = 0; j < m; ++j)
    for (int a = 0; a < n; ++a)
      jet.d_tzbar(j, a) = eval_expr(d.d_tzbar[j][a], t, z);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      jet.d_zzbar(a, b) = eval_expr(d.d_zzbar[a][b], t, z);
  double scale_tt = 1.0 + jet.d_ttbar.cwiseAbs().maxCoeff();
  double scale_zz = 1.0 + jet.d_zzbar.cwiseAbs().maxCoeff();
  if ((jet.d_ttbar - jet.d_ttbar.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale_tt ||
      (jet.d_zzbar - jet.d_zzbar.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale_zz)
    throw Error(ErrCode::Numeric, "second-derivative block is not Hermitian");
  return jet;
}

Jet11 rho_jet(const DomainFamily& fam, std::span<const cplx> t,
              std::span<const cplx> z) {
  return eval_jet(fam.rho_d, fam.m, fam.n, t, z);
}

Jet11 phi_jet(const DomainFamily& fam, std::span<const cplx> t,
              std::span<const cplx> z) {
  return eval_jet(fam.phi_d, fam.m, fam.n, t, z);
}

FibreFrame fibre_frame(const Jet11& jet) {
  FibreFrame fr;
  fr.rho = jet.value;
  fr.levi = jet.d_zzbar;
  Eigen::LLT<MatrixXcd> llt(fr.levi);
  if (llt.info() != Eigen::Success)
    throw Error(ErrCode::Precondition,
                "fibre Levi form is not positive definite (strict "
                "plurisubharmonicity fails at the point)");
  const int n = static_cast<int>(fr.levi.rows());
  fr.levi_inv = llt.solve(MatrixXcd::Identity(n, n));
  fr.grad = jet.d_z;
  VectorXcd q = fr.levi_inv * fr.grad;          // (L^{-1} g)_a
  fr.grad_up = q.conjugate();                   // rho^a = conj(L^{-1} g)_a
  fr.grad_sq = fr.grad.squaredNorm();
  fr.levi_grad_sq = fr.grad.dot(q).real();      // g^* L^{-1} g, real and >= 0
  return fr;
}

MatrixXcd full_hessian(const Jet11& jet) {
  const int m = static_cast<int>(jet.d_t.size());
  const int n = static_cast<int>(jet.d_z.size());
  MatrixXcd h(m + n, m + n);
  h.topLeftCorner(m, m) = jet.d_ttbar;
  h.topRightCorner(m, n) = jet.d_tzbar;
  h.bottomLeftCorner(n, m) = jet.d_tzbar.adjoint();
  h.bottomRightCorner(n, n) = jet.d_zzbar;
  return h;
}

VectorXcd full_gradient(const Jet11& jet) {
  const int m = static_cast<int>(jet.d_t.size());
  const int n = static_cast<int>(jet.d_z.size());
  VectorXcd g(m + n);
  g.head(m) = jet.d_t;
  g.tail(n) = jet.d_z;
  return g;
}

double tangential_levi_min(const Jet11& jet) {
  MatrixXcd h = full_hessian(jet);
  VectorXcd g = full_gradient(jet);
  const int d = static_cast<int>(g.size());
  double gn = g.norm();
  if (gn < 1e-13)
    throw Error(ErrCode::Domain, "vanishing gradient, no tangent space");
  // Orthonormal basis of {W : g^T W = 0}: the last d-1 columns of a unitary
  // whose first column is conj(g)/|g|.
  VectorXcd first = g.conjugate() / gn;
  Eigen::HouseholderQR<MatrixXcd> qr(first);
  MatrixXcd Q = qr.householderQ();
  MatrixXcd B = Q.rightCols(d - 1);
  MatrixXcd restricted = B.adjoint() * h * B;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(restricted);
  return es.eigenvalues().minCoeff();
}

std::vector<cplx> boundary_locate(const DomainFamily& fam, std::span<const cplx> t,
                                  std::span<const cplx> dir) {
  if (static_cast<int>(dir.size()) != fam.n)
    throw Error(ErrCode::Invalid, "direction has wrong dimension");
  double dn = 0.0;
  for (const cplx& c : dir) dn += std::norm(c);
  if (dn < 1e-30) throw Error(ErrCode::Invalid, "zero direction");
  std::vector<cplx> z(fam.n);
  auto rho_at = [&](double s) {
    for (int a = 0; a < fam.n; ++a) z[a] = s * dir[a];
    cplx v = eval_expr(fam.rho, t, z);
    return v.real();
  };
  if (rho_at(0.0) >= 0.0)
    throw Error(ErrCode::Domain, "fibre origin is not interior (rho(t,0) >= 0)");
  double lo = 0.0, hi = 1.0;
  while (rho_at(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 64.0)
      throw Error(ErrCode::Domain, "no boundary crossing within radius 64 along ray");
  }
  // Bisection on rho itself down to |rho| < 1e-12.
  for (int it = 0; it < 400; ++it) {
    double mid = 0.5 * (lo + hi);
    double v = rho_at(mid);
    if (std::abs(v) < 1e-12) {
      rho_at(mid);
      return z;
    }
    (v < 0.0 ? lo : hi) = mid;
  }
  throw Error(ErrCode::Numeric, "bisection failed to reach |rho| < 1e-12");
}

A2Report a2_check(const DomainFamily& fam, std::span<const cplx> t, int samples,
                  double levi_tol, double grad_tol) {
  A2Report rep;
  rep.samples = samples;
  rep.min_levi_eig = std::numeric_limits<double>::infinity();
  rep.min_grad_sq = std::numeric_limits<double>::infinity();
  std::mt19937 rng(12345);  // fixed seed: deterministic sampling for n >= 2
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int s = 0; s < samples; ++s) {
    std::vector<cplx> dir(fam.n);
    if (fam.n == 1) {
      double th = 2.0 * M_PI * s / samples;
      dir[0] = cplx(std::cos(th), std::sin(th));
    } else {
      for (int a = 0; a < fam.n; ++a) dir[a] = cplx(gauss(rng), gauss(rng));
    }
    std::vector<cplx> zb;
    try {
      zb = boundary_locate(fam, t, dir);
    } catch (const Error& e) {
      rep.ok = false;
      rep.detail = e.what();
      return rep;
    }
    Jet11 jet = rho_jet(fam, t, zb);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(jet.d_zzbar);
    double lmin = es.eigenvalues().minCoeff();
    double gsq = jet.d_z.squaredNorm();
    rep.min_levi_eig = std::min(rep.min_levi_eig, lmin);
    rep.min_grad_sq = std::min(rep.min_grad_sq, gsq);
  }
  if (rep.min_levi_eig <= levi_tol) {
    rep.ok = false;
    rep.detail = "fibre Levi form not strictly positive on boundary samples";
  } else if (rep.min_grad_sq <= grad_tol) {
    rep.ok = false;
    rep.detail = "fibre gradient vanishes on boundary samples";
  }
  return rep;
}

}  // namespace bk
