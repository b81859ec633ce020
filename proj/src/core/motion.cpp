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

#include "motion.hpp"

#include <cmath>
#include <random>

namespace bk {

namespace {

void finish_motion(Motion& mo) {
  mo.f_z = wirtinger(mo.f, VarRef{true, 0}, false);
  mo.f_zbar = wirtinger(mo.f, VarRef{true, 0}, true);
  mo.jbel = divide(mo.f_zbar, mo.f_z);
  mo.jbel_t = wirtinger(mo.jbel, VarRef{false, 0}, false);
}

cplx eval1(const ExprP& e, cplx t, cplx z) {
  std::vector<cplx> tv{t};
  std::vector<cplx> zv{z};
  return eval_expr(e, tv, zv);
}

}  // namespace

Motion build_motion(const std::string& f_src, const std::string& finv_src) {
  Motion mo;
  mo.f = parse_expr(f_src, 1, 1);
  finish_motion(mo);
  if (!finv_src.empty()) {
    mo.finv = parse_expr(finv_src, 1, 1);
    std::mt19937_64 rng(31415);
    std::uniform_real_distribution<double> unif(-0.5, 0.5);
    for (int s = 0; s < 8; ++s) {
      cplx t(unif(rng), unif(rng));
      cplx z(unif(rng), unif(rng));
      cplx w = eval1(mo.f, t, z);
      if (std::abs(eval1(mo.finv, t, w) - z) > 1e-9)
        throw Error{ErrCode::Invalid, "inverse does not match the motion"};
    }
  }
  return mo;
}

Motion affine_motion(const std::string& a_src) {
  ExprP a = parse_expr(a_src, 1, 0);
  Motion mo;
  ExprP z = var_z(0);
  mo.f = add(z, mul(a, fconj(z)));
  // w = z + a conj(z)  =>  z = (w - a conj(w)) / (1 - |a|^2)
  mo.finv = divide(sub(z, mul(a, fconj(z))), sub(lit(1.0), fabs2(a)));
  finish_motion(mo);
  return mo;
}

cplx motion_apply(const Motion& mo, cplx t, cplx z) {
  return eval1(mo.f, t, z);
}

cplx motion_invert(const Motion& mo, cplx t, cplx w) {
  if (mo.finv) return eval1(mo.finv, t, w);
  // Newton for the non-holomorphic equation f(z) = w: the update solves
  // f_z d + f_zbar conj(d) = w - f.
  cplx z = w;
  for (int it = 0; it < 50; ++it) {
    cplx r = w - eval1(mo.f, t, z);
    if (std::abs(r) < 1e-12) return z;
    cplx fz = eval1(mo.f_z, t, z);
    cplx fzb = eval1(mo.f_zbar, t, z);
    double denom = std::norm(fz) - std::norm(fzb);
    if (std::abs(denom) < 1e-14)
      throw Error{ErrCode::Numeric, "degenerate motion differential"};
    z += (std::conj(fz) * r - fzb * std::conj(r)) / denom;
  }
  throw Error{ErrCode::Numeric, "motion inversion did not converge"};
}

cplx beltrami(const Motion& mo, cplx t, cplx z) {
  return eval1(mo.jbel, t, z);
}

DomainFamily motion_family(const Motion& mo) {
  if (!mo.finv)
    throw Error{ErrCode::Precondition, "motion has no closed-form inverse"};
  return build_family_expr(sub(fabs2(mo.finv), lit(1.0)), nullptr, 1, 1);
}

cplx motion_flatness(const Motion& mo, cplx t0, cplx eta,
                     const ModelOptions& opt) {
  DomainFamily fam = motion_family(mo);
  std::vector<cplx> tv{t0};
  BergmanModel mdl = build_bergman(fam, tv, opt.degree, opt.radial, opt.angular);
  cplx acc = 0.0;
  for (std::size_t q = 0; q < mdl.quad.nodes.size(); ++q) {
    cplx zeta = mdl.quad.nodes[q];
    cplx z = eval1(mo.finv, t0, zeta);
    cplx fz = eval1(mo.f_z, t0, z);
    cplx jb = eval1(mo.jbel, t0, z);
    cplx jt = eval1(mo.jbel_t, t0, z);
    double dn = std::norm(fz) * (1.0 - std::norm(jb));
    if (!(dn > 0.0))
      throw Error{ErrCode::Domain, "motion is not quasiconformal there"};
    cplx dens = fz * fz * jt / dn;
    acc += mdl.wmass[q] * kernel(mdl, zeta, eta) * dens;
  }
  return acc;
}

MotionTriviality motion_trivial_check(const Motion& mo, double t_radius,
                                      int t_samples, const ModelOptions& opt,
                                      double tol) {
  MotionTriviality rep;
  const double golden = 2.399963229728653;
  for (int s = 0; s < t_samples; ++s) {
    double r = t_radius * std::sqrt((s + 0.5) / t_samples);
    cplx t0 = r * std::exp(cplx(0.0, golden * s));
    // Beltrami coefficient over a fibre sample
    for (int k = 0; k < 8; ++k) {
      cplx z = 0.8 * std::exp(cplx(0.0, 2.0 * M_PI * k / 8)) *
               std::sqrt((k + 1.0) / 8.0);
      rep.max_beltrami = std::max(rep.max_beltrami, std::abs(beltrami(mo, t0, z)));
    }
    if (mo.finv) {
      rep.max_flatness =
          std::max(rep.max_flatness, std::abs(motion_flatness(mo, t0, 0.0, opt)));
    }
    ++rep.samples;
  }
  rep.trivial = rep.max_beltrami < tol && rep.max_flatness < tol;
  return rep;
}

InterpolationReport motion_levi_flat_check(const Motion& mo, double t_radius,
                                           int t_samples, int boundary_samples,
                                           double tol) {
  DomainFamily fam = motion_family(mo);
  InterpolationReport worst;
  worst.flat = true;
  const double golden = 2.399963229728653;
  for (int s = 0; s < t_samples; ++s) {
    double r = t_radius * std::sqrt((s + 0.5) / t_samples);
    std::vector<cplx> tv{r * std::exp(cplx(0.0, golden * s))};
    InterpolationReport one =
        interpolation_check(fam, tv, boundary_samples, tol);
    worst.max_theta_norm = std::max(worst.max_theta_norm, one.max_theta_norm);
    worst.max_route_gap = std::max(worst.max_route_gap, one.max_route_gap);
    worst.flat = worst.flat && one.flat;
    worst.samples += one.samples;
  }
  return worst;
}

}  // namespace bk
