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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/motion.hpp"

using namespace bk;

TEST_CASE("affine motion closed-form inverse round trip") {
  Motion mo = affine_motion("0.5*t");
  cplx t(0.4, 0.3);
  for (cplx z : {cplx(0.5, 0.2), cplx(-0.3, 0.7), cplx(0.0, -0.9)}) {
    cplx w = motion_apply(mo, t, z);
    CHECK(std::abs(motion_invert(mo, t, w) - z) < 1e-13);
  }
  CHECK(std::abs(beltrami(mo, t, cplx(0.1, 0.1)) - 0.5 * t) < 1e-14);
}

TEST_CASE("general motion inverts by Newton") {
  Motion mo = build_motion("z + 0.3*t*conj(z)^2", "");
  cplx t(0.5, -0.2);
  for (cplx z : {cplx(0.6, 0.1), cplx(-0.2, -0.5), cplx(0.35, 0.35)}) {
    cplx w = motion_apply(mo, t, z);
    CHECK(std::abs(motion_invert(mo, t, w) - z) < 1e-11);
  }
}

TEST_CASE("a wrong closed-form inverse is rejected") {
  CHECK_THROWS_AS(build_motion("z + t*conj(z)", "z - t*conj(z)"), const Error&);
}

TEST_CASE("flatness of the half-speed affine motion at the centre") {
  // a = t/2: at t = 0 the domain is the unit disk and the density is the
  // constant 1/2, so the integral reproduces the constant: exactly 1/2,
  // independent of eta.
  Motion mo = affine_motion("0.5*t");
  ModelOptions opt;
  opt.degree = 12;
  opt.radial = 16;
  opt.angular = 32;
  cplx v0 = motion_flatness(mo, 0.0, 0.0, opt);
  CHECK(std::abs(v0 - cplx(0.5, 0.0)) < 1e-6);
  cplx v1 = motion_flatness(mo, 0.0, cplx(0.2, -0.1), opt);
  CHECK(std::abs(v1 - cplx(0.5, 0.0)) < 1e-6);
}

TEST_CASE("flatness of the quadratic affine motion off centre") {
  // a = t^2 at t0 = 1/2: J = 1/4, dJ/dt = 1, f_z = 1, so the density is
  // 1/(1 - 1/16) = 16/15 over the moved ellipse.
  Motion mo = affine_motion("t^2");
  ModelOptions opt;
  opt.degree = 16;
  opt.radial = 20;
  opt.angular = 48;
  cplx v = motion_flatness(mo, 0.5, cplx(0.1, 0.1), opt);
  CHECK(std::abs(v - cplx(16.0 / 15.0, 0.0)) < 1e-6);
}

TEST_CASE("conformal motions are trivial, stretching ones are not") {
  ModelOptions opt;
  opt.degree = 10;
  opt.radial = 12;
  opt.angular = 24;

  Motion still = affine_motion("0");
  MotionTriviality a = motion_trivial_check(still, 0.5, 5, opt);
  CHECK(a.trivial);
  CHECK(a.max_beltrami == 0.0);
  CHECK(a.max_flatness < 1e-10);

  Motion shear = affine_motion("0.5*t");
  MotionTriviality b = motion_trivial_check(shear, 0.5, 5, opt);
  CHECK_FALSE(b.trivial);
  CHECK(b.max_beltrami > 0.1);
  CHECK(b.max_flatness > 0.3);

  // a = t^2 vanishes to second order at 0: only the off-centre samples see
  // it, which is why the scan uses several base points.
  Motion quad = affine_motion("t^2");
  MotionTriviality c = motion_trivial_check(quad, 0.5, 5, opt);
  CHECK_FALSE(c.trivial);
}

TEST_CASE("swept boundary is Levi-flat for a t-holomorphic motion") {
  Motion mo = affine_motion("0.5*t");
  InterpolationReport rep = motion_levi_flat_check(mo, 0.4, 4, 12);
  CHECK(rep.flat);
  CHECK(rep.max_theta_norm < 1e-6);
  CHECK(rep.samples == 48);
}

TEST_CASE("motion family matches the moved disk") {
  Motion mo = affine_motion("0.5*t");
  DomainFamily fam = motion_family(mo);
  cplx t(0.6, 0.0);  // a = 0.3: ellipse with semi-axes 1.3 and 0.7
  std::vector<cplx> tv{t};
  std::vector<cplx> z_in{cplx(1.25, 0.0)};
  std::vector<cplx> z_out{cplx(0.0, 0.75)};
  CHECK(eval_expr(fam.rho, tv, z_in).real() < 0.0);
  CHECK(eval_expr(fam.rho, tv, z_out).real() > 0.0);
}
