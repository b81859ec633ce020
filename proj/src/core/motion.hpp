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

// Motions of the unit disk w = f(t, z), holomorphic in the parameter t,
// quasiconformal in z: the Beltrami coefficient, the moved-domain family
// they induce, the kernel-weighted flatness integral whose vanishing
// characterises conformal (trivial) motions, and the Levi-flatness of the
// swept boundary.

#ifndef BKCURV_MOTION_HPP
#define BKCURV_MOTION_HPP

#include "lifts.hpp"
#include "variation.hpp"

namespace bk {

struct Motion {
  ExprP f;       // moved point as a function of (t, z)
  ExprP finv;    // inverse in (t, w), w entering as z1; null when unknown
  ExprP f_z;     // cached Wirtinger derivatives of f
  ExprP f_zbar;
  ExprP jbel;    // Beltrami coefficient f_zbar / f_z
  ExprP jbel_t;  // d/dt of the Beltrami coefficient
};

// Builds a motion from source text (m = 1, n = 1).  A nonempty finv_src is
// validated against f on random samples.
Motion build_motion(const std::string& f_src, const std::string& finv_src);

// f = z + a(t) conj(z) with a depending on t only; the inverse is closed
// form.  Requires |a| < 1 where used.
Motion affine_motion(const std::string& a_src);

cplx motion_apply(const Motion& mo, cplx t, cplx z);

// Closed-form inverse when available, otherwise a Wirtinger Newton solve of
// f(t, z) = w (50 iterations to 1e-12; throws Error{Numeric} on stall).
cplx motion_invert(const Motion& mo, cplx t, cplx w);

cplx beltrami(const Motion& mo, cplx t, cplx z);

// Moving-domain family swept by the motion: rho(t, w) = |f^{-1}(t, w)|^2 - 1.
// Requires the closed-form inverse.
DomainFamily motion_family(const Motion& mo);

// Kernel-weighted flatness integral at base point t0:
//   integral over D_t0 of K(zeta, eta) b(t0, f^{-1}(zeta)) i dzeta dzetabar,
// with density b = f_z^2 (dJ/dt) / (|f_z|^2 (1 - |J|^2)).  Conformal motions
// give 0; the value is independent of eta for z-free densities.
cplx motion_flatness(const Motion& mo, cplx t0, cplx eta,
                     const ModelOptions& opt);

// Scans |t| <= t_radius: the motion is trivial exactly when the Beltrami
// coefficient vanishes throughout, and then every flatness integral is 0.
struct MotionTriviality {
  double max_beltrami = 0.0;
  double max_flatness = 0.0;
  bool trivial = false;
  int samples = 0;
};
MotionTriviality motion_trivial_check(const Motion& mo, double t_radius,
                                      int t_samples, const ModelOptions& opt,
                                      double tol = 1e-8);

// The boundary swept by a motion holomorphic in t is foliated by the orbits
// t -> f(t, z0), so the induced family has vanishing geodesic curvature;
// returns the worst interpolation report over sampled base points.
InterpolationReport motion_levi_flat_check(const Motion& mo, double t_radius,
                                           int t_samples, int boundary_samples,
                                           double tol = 1e-6);

}  // namespace bk

#endif
