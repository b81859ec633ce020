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

#include "lifts.hpp"

#include <cmath>

namespace bk {

MatrixXcd lift_log(const DomainFamily& fam, std::span<const cplx> t,
                   std::span<const cplx> z) {
  Jet11 jet = rho_jet(fam, t, z);
  if (jet.value >= 0.0)
    throw Error(ErrCode::Domain, "interior lift needs rho < 0 at the point");
  const int m = fam.m, n = fam.n;
  const double rho = jet.value;
  // psi = -log(-rho):
  //   psi_{j bbar} = rho_{j bbar}/(-rho) + rho_j rho_bbar / rho^2
  //   psi_{a bbar} = rho_{a bbar}/(-rho) + rho_a rho_bbar / rho^2
  MatrixXcd psi_f(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      psi_f(a, b) = jet.d_zzbar(a, b) / (-rho) +
                    jet.d_z(a) * std::conj(jet.d_z(b)) / (rho * rho);
  Eigen::LLT<MatrixXcd> llt(psi_f);
  if (llt.info() != Eigen::Success)
    throw Error(ErrCode::Precondition,
                "i ddbar log(1/-rho) is not positive definite along the fibre");
  MatrixXcd psi_inv = llt.solve(MatrixXcd::Identity(n, n));
  MatrixXcd v(m, n);
  for (int j = 0; j < m; ++j) {
    VectorXcd s(n);
    for (int b = 0; b < n; ++b)
      s(b) = jet.d_tzbar(j, b) / (-rho) +
             jet.d_t(j) * std::conj(jet.d_z(b)) / (rho * rho);
    // v_j^a = sum_b s_b psi^{bbar a}  (inverse indexed barred-row first)
    v.row(j) = (psi_inv.transpose() * s).transpose();
  }
  return v;
}

namespace {

MatrixXcd boundary_lift_from_jet(const Jet11& jet, const FibreFrame& fr) {
  const int m = static_cast<int>(jet.d_t.size());
  const int n = static_cast<int>(jet.d_z.size());
  double denom = fr.rho - fr.levi_grad_sq;
  if (std::abs(denom) < 1e-10)
    throw Error(ErrCode::Numeric,
                "degenerate boundary assembly: |rho - |drho|^2_L| < 1e-10");
  MatrixXcd v(m, n);
  for (int j = 0; j < m; ++j) {
    VectorXcd r = jet.d_tzbar.row(j).transpose();  // rho_{j abar}
    // sum_a rho^{abar} rho_{j abar} = r^T (Levi^{-1} grad)
    cplx mixed = (r.transpose() * (fr.levi_inv * fr.grad)).value();
    // v_j = Levi^{-T} r + ((mixed - rho_j)/denom) rho^
    VectorXcd vj = fr.levi_inv.transpose() * r +
                   ((mixed - jet.d_t(j)) / denom) * fr.grad_up;
    v.row(j) = vj.transpose();
  }
  return v;
}

}  // namespace

MatrixXcd lift_log_boundary(const DomainFamily& fam, std::span<const cplx> t,
                            std::span<const cplx> z) {
  Jet11 jet = rho_jet(fam, t, z);
  FibreFrame fr = fibre_frame(jet);
  return boundary_lift_from_jet(jet, fr);
}

LeviLift lift_levi(const Jet11& jet, const FibreFrame& fr) {
  const int m = static_cast<int>(jet.d_t.size());
  const int n = static_cast<int>(jet.d_z.size());
  LeviLift out;
  out.v.resize(m, n);
  out.vhat_rho.resize(m);
  for (int j = 0; j < m; ++j) {
    VectorXcd r = jet.d_tzbar.row(j).transpose();
    VectorXcd vj = fr.levi_inv.transpose() * r;  // rho_{j abar} rho^{abar b}
    out.v.row(j) = vj.transpose();
    out.vhat_rho(j) = jet.d_t(j) - (vj.transpose() * fr.grad).value();
  }
  return out;
}

LeviLift lift_levi(const DomainFamily& fam, std::span<const cplx> t,
                   std::span<const cplx> z) {
  Jet11 jet = rho_jet(fam, t, z);
  FibreFrame fr = fibre_frame(jet);
  return lift_levi(jet, fr);
}

VectorXcd lift_apply_to_rho(const Jet11& jet, const MatrixXcd& v) {
  const int m = static_cast<int>(jet.d_t.size());
  VectorXcd out(m);
  for (int j = 0; j < m; ++j)
    out(j) = jet.d_t(j) - (v.row(j) * jet.d_z).value();
  return out;
}

GeodesicCurvature geodesic_curvature(const DomainFamily& fam,
                                     std::span<const cplx> t,
                                     std::span<const cplx> z, double cross_tol) {
  Jet11 jet = rho_jet(fam, t, z);
  FibreFrame fr = fibre_frame(jet);
  const int m = fam.m, n = fam.n;
  GeodesicCurvature out;

  // Route 1: Levi-lift part plus the rank-one gradient correction.
  LeviLift levi = lift_levi(jet, fr);
  out.vhat_rho = levi.vhat_rho;
  out.c.resize(m, m);
  for (int j = 0; j < m; ++j) {
    VectorXcd rj = jet.d_tzbar.row(j).transpose();
    for (int k = 0; k < m; ++k) {
      VectorXcd rk = jet.d_tzbar.row(k).transpose();
      // c_{jk} = rho_{j kbar} - r_j^T Levi^{-1} conj(r_k)
      out.c(j, k) = jet.d_ttbar(j, k) -
                    (rj.transpose() * (fr.levi_inv * rk.conjugate())).value();
    }
  }
  double denom = fr.rho - fr.levi_grad_sq;
  if (std::abs(denom) < 1e-10)
    throw Error(ErrCode::Numeric,
                "degenerate boundary assembly: |rho - |drho|^2_L| < 1e-10");
  out.theta = out.c + (fr.levi_grad_sq / (denom * denom)) *
                          (levi.vhat_rho * levi.vhat_rho.adjoint());

  // Route 2: direct pairing of the boundary lifts against i ddbar rho over
  // the joint (t,z) coordinates.
  MatrixXcd v = boundary_lift_from_jet(jet, fr);
  out.theta_pair.resize(m, m);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      cplx s = jet.d_ttbar(j, k);
      for (int b = 0; b < n; ++b) s -= jet.d_tzbar(j, b) * std::conj(v(k, b));
      for (int a = 0; a < n; ++a) s -= v(j, a) * std::conj(jet.d_tzbar(k, a));
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          s += v(j, a) * std::conj(v(k, b)) * jet.d_zzbar(a, b);
      out.theta_pair(j, k) = s;
    }
  }

  double scale = 1.0 + out.theta.cwiseAbs().maxCoeff();
  out.route_gap = (out.theta - out.theta_pair).cwiseAbs().maxCoeff();
  if (out.route_gap > cross_tol * scale)
    throw Error(ErrCode::Internal,
                "geodesic curvature routes disagree: gap " +
                    format_double(out.route_gap));
  return out;
}

double adapted_lift_gap(const DomainFamily& fam, std::span<const cplx> t,
                        std::span<const cplx> z) {
  Jet11 jet = rho_jet(fam, t, z);
  FibreFrame fr = fibre_frame(jet);
  const int m = fam.m, n = fam.n;

  // Fibre coordinate change z = C w with C = conj(L_chol^{-H}) making the
  // transformed Levi form the identity, then a unitary rotating the
  // transformed gradient onto the first axis.
  Eigen::LLT<MatrixXcd> llt(fr.levi);
  if (llt.info() != Eigen::Success)
    throw Error(ErrCode::Precondition, "Levi form not positive definite");
  MatrixXcd lchol = llt.matrixL();
  MatrixXcd B = lchol.adjoint()
                    .triangularView<Eigen::Upper>()
                    .solve(MatrixXcd::Identity(n, n));  // L^{-H}
  MatrixXcd C = B.conjugate();
  VectorXcd gt = C.transpose() * fr.grad;  // gradient in the new coordinates
  double gn = gt.norm();
  if (gn < 1e-13)
    throw Error(ErrCode::Domain, "vanishing fibre gradient at adapted point");
  MatrixXcd U;
  if (n == 1) {
    U = MatrixXcd::Identity(1, 1) * (std::conj(gt(0)) / gn);
  } else {
    VectorXcd first = gt.conjugate() / gn;
    Eigen::HouseholderQR<MatrixXcd> qr(first);
    MatrixXcd Q = qr.householderQ();
    // Householder may flip the first column by a phase; force it.
    cplx phase = (Q.col(0).adjoint() * first).value();
    Q.col(0) *= phase / std::abs(phase);
    U = Q;
    U.col(0) = first;
  }
  MatrixXcd Cfull = C * U;

  // Transformed jets: gradient (C^T g), mixed block (C^H r_j per row).
  VectorXcd g_new = Cfull.transpose() * fr.grad;
  MatrixXcd v_adapted(m, n);
  for (int j = 0; j < m; ++j) {
    VectorXcd rj = jet.d_tzbar.row(j).transpose();
    VectorXcd r_new = Cfull.adjoint() * rj;
    VectorXcd vp(n);
    // In adapted coordinates at a boundary point the assembly collapses to
    // v'_1 = rho_j / rho~_1 and v'_a = rho~_{j abar} for a >= 2.
    vp(0) = jet.d_t(j) / g_new(0);
    for (int a = 1; a < n; ++a) vp(a) = r_new(a);
    v_adapted.row(j) = (Cfull * vp).transpose();
  }
  MatrixXcd v_direct = boundary_lift_from_jet(jet, fr);
  return (v_adapted - v_direct).cwiseAbs().maxCoeff();
}

InterpolationReport interpolation_check(const DomainFamily& fam,
                                        std::span<const cplx> t, int samples,
                                        double tol) {
  if (fam.n != 1)
    throw Error(ErrCode::Invalid, "interpolation check samples rays, needs n = 1");
  InterpolationReport rep;
  rep.samples = samples;
  for (int s = 0; s < samples; ++s) {
    double th = 2.0 * M_PI * s / samples;
    std::vector<cplx> dir{cplx(std::cos(th), std::sin(th))};
    std::vector<cplx> zb = boundary_locate(fam, t, dir);
    GeodesicCurvature gc = geodesic_curvature(fam, t, zb);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(gc.theta);
    double norm = es.eigenvalues().cwiseAbs().maxCoeff();
    rep.max_theta_norm = std::max(rep.max_theta_norm, norm);
    rep.max_route_gap = std::max(rep.max_route_gap, gc.route_gap);
  }
  rep.flat = rep.max_theta_norm < tol;
  return rep;
}

}  // namespace bk
