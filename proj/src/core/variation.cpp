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

#include "variation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace bk {

VectorXcd functional_moments(const BergmanModel& model,
                             const FunctionalSpec& spec) {
  switch (spec.kind) {
    case FunctionalSpec::Kind::PointDeriv:
      return point_moments(model, spec.alpha, spec.at);
    case FunctionalSpec::Kind::DiskCurrent:
      return disk_moments(model, spec.at, spec.radius);
  }
  throw Error{ErrCode::Invalid, "unknown functional kind"};
}

namespace {

// Representative coefficients of the functional with moment vector d:
// G conj(u) = d, so pairing any section against u reproduces the functional.
VectorXcd representative(const BergmanModel& model, const VectorXcd& d) {
  return gram_solve(model, d).conjugate();
}

cplx kernel_at(const DomainFamily& fam, const std::vector<cplx>& t, int alpha,
               cplx zeta, int beta, cplx eta, const ModelOptions& opt) {
  BergmanModel mdl =
      build_bergman(fam, t, opt.degree, opt.radial, opt.angular);
  return kernel_deriv(mdl, alpha, beta, zeta, eta);
}

// d/dt_j of t -> kernel_deriv via a Wirtinger central difference of step h:
// (d/dx - i d/dy)/2 on rebuilt models.
cplx kernel_wirtinger(const DomainFamily& fam, std::span<const cplx> t, int j,
                      int alpha, cplx zeta, int beta, cplx eta,
                      const ModelOptions& opt, double h) {
  std::vector<cplx> tv(t.begin(), t.end());
  auto shifted = [&](cplx dt) {
    std::vector<cplx> ts = tv;
    ts[j] += dt;
    return kernel_at(fam, ts, alpha, zeta, beta, eta, opt);
  };
  cplx dx = shifted(cplx(h, 0.0)) - shifted(cplx(-h, 0.0));
  cplx dy = shifted(cplx(0.0, h)) - shifted(cplx(0.0, -h));
  return (dx - cplx(0.0, 1.0) * dy) / (4.0 * h);
}

}  // namespace

Vf1Report vf1_check(const DomainFamily& fam, std::span<const cplx> t, int j,
                    int alpha, cplx zeta, int beta, cplx eta,
                    const ModelOptions& opt, double fd_h) {
  if (fam.n != 1) throw Error{ErrCode::Invalid, "planar fibres only"};
  if (j < 0 || j >= fam.m) throw Error{ErrCode::Invalid, "direction index"};
  Vf1Report rep;

  // Left side: Richardson-extrapolated Wirtinger difference of the kernel
  // derivative; each sample rebuilds the model on its own moved fibre.
  cplx dh = kernel_wirtinger(fam, t, j, alpha, zeta, beta, eta, opt, fd_h);
  cplx dh2 =
      kernel_wirtinger(fam, t, j, alpha, zeta, beta, eta, opt, fd_h / 2.0);
  rep.lhs = (4.0 * dh2 - dh) / 3.0;

  // Right side at the centre.
  BergmanModel mdl = build_bergman(fam, t, opt.degree, opt.radial, opt.angular);
  VectorXcd ua = representative(mdl, point_moments(mdl, alpha, zeta));
  VectorXcd ub = representative(mdl, point_moments(mdl, beta, eta));

  // Interior term: weighted pairing against d phi / dt_j (wmass already
  // carries the area weight times e^{-phi}).
  const ExprP& phi_j = fam.phi_d.d_t[j];
  cplx interior = 0.0;
  for (std::size_t q = 0; q < mdl.quad.nodes.size(); ++q) {
    cplx zq = mdl.quad.nodes[q];
    std::vector<cplx> zv{zq};
    cplx pj = eval_expr(phi_j, t, zv);
    interior +=
        mdl.wmass[q] * pj * eval_poly(ub, zq) * std::conj(eval_poly(ua, zq));
  }
  rep.rhs_interior = interior;

  // Boundary flux of the density u_b conj(u_a) e^{-phi} along the lift
  // V_j = d/dt_j - v_j d/dz: the moving boundary sweeps out
  // -i v_j conj(dz/dtheta) dtheta per unit angle.
  cplx boundary = 0.0;
  for (std::size_t k = 0; k < mdl.quad.bnodes.size(); ++k) {
    cplx bz = mdl.quad.bnodes[k];
    std::vector<cplx> zv{bz};
    MatrixXcd v = lift_log_boundary(fam, t, zv);
    double ph = eval_expr(fam.phi, t, zv).real();
    cplx dens = std::exp(-ph) * eval_poly(ub, bz) * std::conj(eval_poly(ua, bz));
    boundary += mdl.quad.bweight * cplx(0.0, 1.0) * dens * (-v(j, 0)) *
                std::conj(mdl.quad.btangents[k]);
  }
  rep.rhs_boundary = boundary;

  rep.rhs = rep.rhs_interior - rep.rhs_boundary;
  rep.residual = std::abs(rep.lhs - rep.rhs);
  return rep;
}

Vf2Report vf2_product_check(const DomainFamily& fam, std::span<const cplx> t,
                            int alpha, cplx zeta, int beta, cplx eta,
                            const ModelOptions& opt, double fd_h) {
  if (fam.m != 1 || fam.n != 1)
    throw Error{ErrCode::Invalid, "one base and one fibre variable"};

  // Preconditions, sampled: the fibre must not move with t, and the weight
  // must be pluriharmonic in t.
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> unif(-0.7, 0.7);
  for (int s = 0; s < 12; ++s) {
    std::vector<cplx> ts{cplx(unif(rng), unif(rng))};
    std::vector<cplx> zs{cplx(unif(rng), unif(rng))};
    if (std::abs(eval_expr(fam.rho_d.d_t[0], ts, zs)) > 1e-10)
      throw Error{ErrCode::Precondition, "fibre moves with t"};
    if (std::abs(eval_expr(fam.phi_d.d_ttbar[0][0], ts, zs)) > 1e-10)
      throw Error{ErrCode::Precondition, "weight not pluriharmonic in t"};
  }

  cplx t0 = t[0];
  auto model_at = [&](cplx tc) {
    std::vector<cplx> tv{tc};
    return build_bergman(fam, tv, opt.degree, opt.radial, opt.angular);
  };
  double h = fd_h;
  BergmanModel mC = model_at(t0);
  BergmanModel mE = model_at(t0 + cplx(h, 0.0));
  BergmanModel mW = model_at(t0 - cplx(h, 0.0));
  BergmanModel mN = model_at(t0 + cplx(0.0, h));
  BergmanModel mS = model_at(t0 - cplx(0.0, h));

  // Five-point d/dt d/dtbar = Laplacian / 4 of the kernel derivative.
  cplx kC = kernel_deriv(mC, alpha, beta, zeta, eta);
  cplx kE = kernel_deriv(mE, alpha, beta, zeta, eta);
  cplx kW = kernel_deriv(mW, alpha, beta, zeta, eta);
  cplx kN = kernel_deriv(mN, alpha, beta, zeta, eta);
  cplx kS = kernel_deriv(mS, alpha, beta, zeta, eta);
  Vf2Report rep;
  rep.lhs = (kE + kW + kN + kS - 4.0 * kC) / (4.0 * h * h);

  // dbar_t of the representative coefficient vectors, paired in the centre
  // model; the bases agree because the fibre is fixed.
  auto rep_at = [&](const BergmanModel& m, int ord, cplx pt) {
    return representative(m, point_moments(m, ord, pt));
  };
  VectorXcd dbar_ua = ((rep_at(mE, alpha, zeta) - rep_at(mW, alpha, zeta)) +
                       cplx(0.0, 1.0) *
                           (rep_at(mN, alpha, zeta) - rep_at(mS, alpha, zeta))) /
                      (4.0 * h);
  VectorXcd dbar_ub = ((rep_at(mE, beta, eta) - rep_at(mW, beta, eta)) +
                       cplx(0.0, 1.0) *
                           (rep_at(mN, beta, eta) - rep_at(mS, beta, eta))) /
                      (4.0 * h);
  rep.rhs = inner_product(mC, dbar_ub, dbar_ua);
  rep.residual = std::abs(rep.lhs - rep.rhs);
  return rep;
}

PshScan psh_scan(const DomainFamily& fam, const FunctionalSpec& spec,
                 cplx centre, double radius, int grid, const ModelOptions& opt,
                 double tol) {
  if (fam.m != 1) throw Error{ErrCode::Invalid, "scalar base only"};
  if (grid < 2) throw Error{ErrCode::Invalid, "grid must be at least 2"};
  if (!(radius > 0.0)) throw Error{ErrCode::Invalid, "radius must be positive"};

  PshScan scan;
  scan.grid = grid;
  double g = 2.0 * radius / (grid - 1);
  scan.spacing = g;

  // u on the extended (grid+2)^2 lattice; each node costs one model build.
  int ext = grid + 2;
  scan.u.assign(static_cast<std::size_t>(ext) * ext, 0.0);
  for (int iy = 0; iy < ext; ++iy) {
    for (int ix = 0; ix < ext; ++ix) {
      cplx tc = centre + cplx((ix - 1) * g - radius, (iy - 1) * g - radius);
      std::vector<cplx> tv{tc};
      BergmanModel mdl =
          build_bergman(fam, tv, opt.degree, opt.radial, opt.angular);
      DualFunctional df = dual_functional(mdl, functional_moments(mdl, spec));
      if (!(df.norm_sq > 0.0))
        throw Error{ErrCode::Numeric, "functional vanishes on the model"};
      scan.u[static_cast<std::size_t>(iy) * ext + ix] = std::log(df.norm_sq);
    }
  }

  // Nine-point d/dt d/dtbar on the interior nodes.
  scan.ddbar.assign(static_cast<std::size_t>(grid) * grid, 0.0);
  double minv = std::numeric_limits<double>::infinity();
  auto at = [&](int iy, int ix) {
    return scan.u[static_cast<std::size_t>(iy) * ext + ix];
  };
  for (int iy = 1; iy <= grid; ++iy) {
    for (int ix = 1; ix <= grid; ++ix) {
      double cross = at(iy, ix + 1) + at(iy, ix - 1) + at(iy + 1, ix) +
                     at(iy - 1, ix);
      double diag = at(iy + 1, ix + 1) + at(iy + 1, ix - 1) +
                    at(iy - 1, ix + 1) + at(iy - 1, ix - 1);
      double val = (4.0 * cross + diag - 20.0 * at(iy, ix)) / (24.0 * g * g);
      scan.ddbar[static_cast<std::size_t>(iy - 1) * grid + (ix - 1)] = val;
      minv = std::min(minv, val);
    }
  }
  scan.min_ddbar = minv;
  scan.subharmonic = minv >= -tol;
  return scan;
}

SteinReport stein_check(const DomainFamily& fam, cplx centre,
                        double base_radius, int base_samples,
                        int boundary_samples, double tol) {
  if (fam.m != 1) throw Error{ErrCode::Invalid, "scalar base only"};
  if (fam.n != 1) throw Error{ErrCode::Invalid, "planar fibres only"};
  SteinReport rep;
  rep.min_tangential = std::numeric_limits<double>::infinity();
  rep.min_weight_eig = std::numeric_limits<double>::infinity();

  const double golden = 2.399963229728653;  // golden-angle spiral over the base
  for (int s = 0; s < base_samples; ++s) {
    double r = base_radius * std::sqrt((s + 0.5) / base_samples);
    cplx tc = centre + r * std::exp(cplx(0.0, golden * s));
    std::vector<cplx> tv{tc};
    for (int k = 0; k < boundary_samples; ++k) {
      double th = 2.0 * M_PI * k / boundary_samples;
      std::vector<cplx> dir{std::exp(cplx(0.0, th))};
      std::vector<cplx> zb = boundary_locate(fam, tv, dir);

      Jet11 rj = rho_jet(fam, tv, zb);
      rep.min_tangential = std::min(rep.min_tangential, tangential_levi_min(rj));

      // Weight Hessian over the joint variables at an interior point on the
      // same ray.
      std::vector<cplx> zi{0.5 * zb[0]};
      Jet11 pj = phi_jet(fam, tv, zi);
      Eigen::SelfAdjointEigenSolver<MatrixXcd> es(full_hessian(pj));
      rep.min_weight_eig =
          std::min(rep.min_weight_eig, es.eigenvalues().minCoeff());
      ++rep.samples;
    }
  }
  rep.pseudoconvex = rep.min_tangential >= -tol;
  rep.weight_psh = rep.min_weight_eig >= -tol;
  return rep;
}

namespace {

// d/dx along the real fibre axis: holomorphic plus antiholomorphic part.
ExprP real_fibre_derivative(const ExprP& e) {
  return add(wirtinger(e, VarRef{true, 0}, false),
             wirtinger(e, VarRef{true, 0}, true));
}

double real_eval(const ExprP& e, double t, double x) {
  std::vector<cplx> tv{cplx(t, 0.0)};
  std::vector<cplx> zv{cplx(x, 0.0)};
  return eval_expr(e, tv, zv).real();
}

}  // namespace

FibreDerivativeReport fibre_derivative_check(const DomainFamily& fam, double t,
                                             double x_seed, const ExprP& f,
                                             const ExprP& w, int order,
                                             double fd_h) {
  if (fam.m != 1 || fam.n != 1)
    throw Error{ErrCode::Invalid, "one base and one fibre variable"};
  FibreDerivativeReport rep;

  std::vector<cplx> tv{cplx(t, 0.0)};
  IntervalFibre iv = locate_interval(fam, tv, x_seed);

  // Tangency of V = d/dt + w d/dx at both endpoints.
  ExprP rho_t = real_derivative(fam.rho, 0);
  ExprP rho_x = real_fibre_derivative(fam.rho);
  for (double xe : {iv.lo, iv.hi}) {
    double vrho = real_eval(rho_t, t, xe) + real_eval(w, t, xe) *
                                                real_eval(rho_x, t, xe);
    rep.tangency = std::max(rep.tangency, std::abs(vrho));
  }

  // Left side: Richardson central difference of F(s) = integral of f over
  // the fibre at s, relocating the interval at each sample.
  auto F = [&](double s) {
    std::vector<cplx> ts{cplx(s, 0.0)};
    IntervalFibre ivs = locate_interval(fam, ts, x_seed);
    return integrate_interval([&](double x) { return real_eval(f, s, x); },
                              ivs.lo, ivs.hi, order);
  };
  auto central = [&](double h) { return (F(t + h) - F(t - h)) / (2.0 * h); };
  rep.lhs = (4.0 * central(fd_h / 2.0) - central(fd_h)) / 3.0;

  // Right side: transport integrand df/dt + d(w f)/dx over the frozen fibre.
  ExprP f_t = real_derivative(f, 0);
  ExprP wf_x = real_fibre_derivative(mul(w, f));
  rep.rhs = integrate_interval(
      [&](double x) { return real_eval(f_t, t, x) + real_eval(wf_x, t, x); },
      iv.lo, iv.hi, order);

  rep.residual = std::abs(rep.lhs - rep.rhs);
  return rep;
}

}  // namespace bk
