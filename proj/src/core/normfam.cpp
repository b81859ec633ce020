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

#include "normfam.hpp"

#include <cmath>
#include <random>

namespace bk {

namespace {

MatrixXcd eval_entry_matrix(const std::vector<std::vector<ExprP>>& e,
                            std::span<const cplx> t) {
  const int n = static_cast<int>(e.size());
  MatrixXcd out(n, n);
  std::vector<cplx> z;  // entries never use fibre variables
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out(a, b) = eval_expr(e[a][b], t, z);
  return out;
}

}  // namespace

NormFamily build_norm_family(const std::vector<std::string>& entries, int m,
                             int n) {
  if (m < 1 || n < 1)
    throw Error(ErrCode::Invalid, "norm family needs m >= 1, n >= 1");
  if (static_cast<int>(entries.size()) != n * n)
    throw Error(ErrCode::Invalid, "norm family needs n*n entries row-major");
  NormFamily nf;
  nf.m = m;
  nf.n = n;
  nf.h.assign(n, std::vector<ExprP>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      ExprP e = parse_expr(entries[a * n + b], m, 0);
      int mu = 0, nu = 0;
      expr_var_extent(e, mu, nu);
      if (nu > 0)
        throw Error(ErrCode::Invalid, "norm entries depend on base variables only");
      nf.h[a][b] = e;
    }
  }
  nf.h_t.resize(m);
  for (int j = 0; j < m; ++j) {
    nf.h_t[j].assign(n, std::vector<ExprP>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        nf.h_t[j][a][b] = wirtinger(nf.h[a][b], {false, j}, false);
  }
  nf.h_ttbar.resize(m);
  for (int j = 0; j < m; ++j) {
    nf.h_ttbar[j].resize(m);
    for (int k = 0; k < m; ++k) {
      nf.h_ttbar[j][k].assign(n, std::vector<ExprP>(n));
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          nf.h_ttbar[j][k][a][b] = wirtinger(nf.h_t[j][a][b], {false, k}, true);
    }
  }
  // Hermitian symmetry spot check on a handful of base points.
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int s = 0; s < 5; ++s) {
    std::vector<cplx> t(m);
    for (int j = 0; j < m; ++j) t[j] = cplx(u(rng), u(rng));
    MatrixXcd H = eval_entry_matrix(nf.h, t);
    double scale = 1.0 + H.cwiseAbs().maxCoeff();
    if ((H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
      throw Error(ErrCode::Precondition, "norm matrix is not Hermitian");
  }
  return nf;
}

MatrixXcd norm_matrix(const NormFamily& nf, std::span<const cplx> t) {
  MatrixXcd H = eval_entry_matrix(nf.h, t);
  double scale = 1.0 + H.cwiseAbs().maxCoeff();
  if ((H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw Error(ErrCode::Precondition, "norm matrix is not Hermitian");
  return H;
}

MatrixXcd norm_theta(const NormFamily& nf, std::span<const cplx> t,
                     std::span<const cplx> xi) {
  const int m = nf.m, n = nf.n;
  if (static_cast<int>(xi.size()) != n)
    throw Error(ErrCode::Invalid, "fibre vector has wrong dimension");
  MatrixXcd H = norm_matrix(nf, t);
  Eigen::LLT<MatrixXcd> llt(H);
  if (llt.info() != Eigen::Success)
    throw Error(ErrCode::Precondition, "norm matrix is not positive definite");
  VectorXcd z = Eigen::Map<const VectorXcd>(xi.data(), n);
  std::vector<MatrixXcd> Hj(m);
  for (int j = 0; j < m; ++j) Hj[j] = eval_entry_matrix(nf.h_t[j], t);
  MatrixXcd theta(m, m);
  for (int j = 0; j < m; ++j) {
    // H^{-1} (d_j H)^* once per row
    MatrixXcd hinv_adj = llt.solve(Hj[j].adjoint());
    for (int k = 0; k < m; ++k) {
      MatrixXcd D2 = eval_entry_matrix(nf.h_ttbar[k][j], t);
      // theta_{kj} = z^T (D2_{kj} - H_k H^{-1} H_j^*) conj(z)
      theta(k, j) =
          (z.transpose() * (D2 - Hj[k] * hinv_adj) * z.conjugate()).value();
    }
  }
  return theta;
}

SemmesReport semmes_flat_check(const NormFamily& nf, double radius,
                               int base_samples, int fibre_samples,
                               double tol) {
  SemmesReport rep;
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> u(-radius, radius);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int s = 0; s < base_samples; ++s) {
    std::vector<cplx> t(nf.m);
    for (int j = 0; j < nf.m; ++j) t[j] = cplx(u(rng), u(rng));
    for (int q = 0; q < fibre_samples; ++q) {
      VectorXcd xi(nf.n);
      for (int a = 0; a < nf.n; ++a) xi(a) = cplx(gauss(rng), gauss(rng));
      xi /= xi.norm();
      std::vector<cplx> xv(xi.data(), xi.data() + nf.n);
      MatrixXcd th = norm_theta(nf, t, xv);
      rep.max_abs_theta = std::max(rep.max_abs_theta, th.cwiseAbs().maxCoeff());
      ++rep.samples;
    }
  }
  rep.flat = rep.max_abs_theta < tol;
  return rep;
}

DomainFamily norm_to_domain(const NormFamily& nf) {
  ExprP rho = lit(-1.0);
  for (int a = 0; a < nf.n; ++a)
    for (int b = 0; b < nf.n; ++b)
      rho = add(rho, mul(nf.h[a][b], mul(var_z(a), fconj(var_z(b)))));
  return build_family_expr(rho, nullptr, nf.m, nf.n);
}

ThreeWayReport three_way_check(const NormFamily& nf, std::span<const cplx> t,
                               std::span<const cplx> z) {
  ThreeWayReport rep;
  rep.theta_norm = norm_theta(nf, t, z);
  MatrixXcd H = norm_matrix(nf, t);
  VectorXcd zv = Eigen::Map<const VectorXcd>(z.data(), nf.n);
  cplx qc = (zv.transpose() * H * zv.conjugate()).value();
  if (std::abs(qc.imag()) > 1e-10 * (1.0 + std::abs(qc.real())))
    throw Error(ErrCode::Numeric, "norm value is not real");
  rep.q = qc.real();
  if (rep.q <= 0.0)
    throw Error(ErrCode::Domain, "norm check needs a nonzero fibre vector");
  DomainFamily dom = norm_to_domain(nf);
  std::vector<cplx> w(nf.n);
  double scale = 1.0 / std::sqrt(rep.q);
  for (int a = 0; a < nf.n; ++a) w[a] = z[a] * scale;
  GeodesicCurvature gc = geodesic_curvature(dom, t, w);
  rep.theta_domain = gc.theta;
  rep.route_gap = gc.route_gap;
  rep.vhat_max = gc.vhat_rho.cwiseAbs().maxCoeff();
  rep.bridge_gap =
      (rep.theta_norm / rep.q - rep.theta_domain).cwiseAbs().maxCoeff();
  return rep;
}

}  // namespace bk
