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

#include <cmath>
#include <vector>

#include "core/lifts.hpp"

using namespace bk;

namespace {

std::vector<cplx> C(std::initializer_list<cplx> v) { return {v}; }

}  // namespace

TEST_CASE("interior lift of the moving-radius family is -z") {
  // rho = |z|^2 - e^{t+tbar}: fibres are disks of radius e^{re t}, carried
  // by the motion z(t) = z0 e^t, so the lift is d/dt + z d/dz.
  DomainFamily fam = build_family("abs2(z1) - exp(t1 + conj(t1))", "", 1, 1);
  auto t = C({cplx(0, 0)});
  for (cplx z0 : {cplx(0.5, 0.0), cplx(0.2, -0.3), cplx(0.0, 0.9)}) {
    auto z = C({z0});
    MatrixXcd v = lift_log(fam, t, z);
    CHECK(std::abs(v(0, 0) - (-z0)) < 1e-12);
  }
  // boundary assembly gives the same vector on the boundary circle
  auto zb = C({cplx(1, 0)});
  MatrixXcd vb = lift_log_boundary(fam, t, zb);
  CHECK(std::abs(vb(0, 0) - cplx(-1, 0)) < 1e-12);
}

TEST_CASE("interior lift needs an interior point") {
  DomainFamily fam = build_family("abs2(z1) - 1", "", 1, 1);
  auto t = C({cplx(0, 0)});
  CHECK_THROWS_AS(lift_log(fam, t, C({cplx(2, 0)})), Error);
}

TEST_CASE("boundary lifts are tangent to the boundary") {
  const char* rhos[] = {
      "abs2(z1) - 1",
      "abs2(z1) - exp(t1 + conj(t1))",
      "abs2(z1)*exp(abs2(t1)) - 1",
      "abs2(z1) - 1 - abs2(t1)",
  };
  auto t = C({cplx(0.4, -0.3)});
  for (const char* src : rhos) {
    CAPTURE(src);
    DomainFamily fam = build_family(src, "", 1, 1);
    for (int k = 0; k < 8; ++k) {
      double th = 2.0 * M_PI * k / 8.0;
      auto zb = boundary_locate(fam, t, C({cplx(std::cos(th), std::sin(th))}));
      Jet11 jet = rho_jet(fam, t, zb);
      MatrixXcd v = lift_log_boundary(fam, t, zb);
      VectorXcd vrho = lift_apply_to_rho(jet, v);
      CHECK(std::abs(vrho(0)) < 1e-10);
    }
  }
}

TEST_CASE("geodesic curvature of the reference families") {
  auto t = C({cplx(0.5, 0.0)});
  auto dir = C({cplx(0.6, 0.8)});

  // product family: flat
  DomainFamily prod = build_family("abs2(z1) - 1", "", 1, 1);
  auto zb = boundary_locate(prod, t, dir);
  GeodesicCurvature g = geodesic_curvature(prod, t, zb);
  CHECK(std::abs(g.theta(0, 0)) < 1e-12);
  CHECK(g.route_gap < 1e-12);

  // moving radius: flat but with a nonzero lift
  DomainFamily radius = build_family("abs2(z1) - exp(t1 + conj(t1))", "", 1, 1);
  zb = boundary_locate(radius, t, dir);
  g = geodesic_curvature(radius, t, zb);
  CHECK(std::abs(g.theta(0, 0)) < 1e-10);

  // shrinking weighted disks: curvature exactly 1 at every boundary point,
  // and the Levi lift already satisfies Vhat(rho) = 0
  DomainFamily shrink = build_family("abs2(z1)*exp(abs2(t1)) - 1", "", 1, 1);
  zb = boundary_locate(shrink, t, dir);
  g = geodesic_curvature(shrink, t, zb);
  CHECK(std::abs(g.theta(0, 0) - 1.0) < 1e-10);
  CHECK(std::abs(g.vhat_rho(0)) < 1e-12);
  CHECK(std::abs(g.c(0, 0) - 1.0) < 1e-10);

  // growing disks: negative curvature -1/(1+|t|^2) = -0.8 at t = 0.5
  DomainFamily grow = build_family("abs2(z1) - 1 - abs2(t1)", "", 1, 1);
  zb = boundary_locate(grow, t, dir);
  g = geodesic_curvature(grow, t, zb);
  CHECK(g.theta(0, 0).real() == doctest::Approx(-0.8).epsilon(1e-9));
  CHECK(std::abs(g.theta(0, 0).imag()) < 1e-12);
  CHECK(g.route_gap < 1e-10);
}

TEST_CASE("two-parameter quadratic norm family has constant curvature matrix") {
  // rho = |z|^2 e^Q - 1 with Q = |t1|^2 + |t2|^2 + 0.5 re(t1 conj t2):
  // theta_{jk} equals the coefficient matrix [[1, 1/4], [1/4, 1]].
  DomainFamily fam = build_family(
      "abs2(z1)*exp(abs2(t1) + abs2(t2) + 0.5*re(t1*conj(t2))) - 1", "", 2, 1);
  auto t = C({cplx(0.3, 0.1), cplx(-0.2, 0.4)});
  auto zb = boundary_locate(fam, t, C({cplx(0, 1)}));
  GeodesicCurvature g = geodesic_curvature(fam, t, zb);
  CHECK(std::abs(g.theta(0, 0) - 1.0) < 1e-9);
  CHECK(std::abs(g.theta(1, 1) - 1.0) < 1e-9);
  CHECK(std::abs(g.theta(0, 1) - 0.25) < 1e-9);
  CHECK(std::abs(g.theta(1, 0) - 0.25) < 1e-9);
  // Hermitian output
  CHECK((g.theta - g.theta.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("coordinate-free assembly matches the adapted-frame construction") {
  auto t1 = C({cplx(0.3, 0.2)});
  DomainFamily two = build_family(
      "abs2(z1) + abs2(z2) + 0.4*re(z1*conj(z2)) + 0.3*abs2(t1*z1)"
      " + 0.2*re(t1*z1*conj(z2)) - 1",
      "", 1, 2);
  for (auto dir : {C({cplx(0.6, 0.1), cplx(0.7, -0.2)}),
                   C({cplx(1, 0), cplx(0, 0)}),
                   C({cplx(-0.3, 0.4), cplx(0.5, 0.5)})}) {
    auto zb = boundary_locate(two, t1, dir);
    CHECK(adapted_lift_gap(two, t1, zb) < 1e-8);
    Jet11 jet = rho_jet(two, t1, zb);
    MatrixXcd v = lift_log_boundary(two, t1, zb);
    CHECK(std::abs(lift_apply_to_rho(jet, v)(0)) < 1e-10);
  }
  // one-dimensional fibre reduces to the closed form
  DomainFamily shrink = build_family("abs2(z1)*exp(abs2(t1)) - 1", "", 1, 1);
  auto zb = boundary_locate(shrink, t1, C({cplx(1, 0)}));
  CHECK(adapted_lift_gap(shrink, t1, zb) < 1e-10);
}

TEST_CASE("route disagreement guard stays quiet on generic samples") {
  DomainFamily two = build_family(
      "abs2(z1) + abs2(z2) + 0.4*re(z1*conj(z2)) + 0.3*abs2(t1*z1)"
      " + 0.2*re(t1*z1*conj(z2)) - 1",
      "", 1, 2);
  auto t = C({cplx(0.25, -0.15)});
  auto zb = boundary_locate(two, t, C({cplx(0.5, 0.3), cplx(-0.4, 0.6)}));
  GeodesicCurvature g = geodesic_curvature(two, t, zb);
  CHECK(g.route_gap < 1e-10);
}

TEST_CASE("flatness scan separates interpolation families from curved ones") {
  auto t = C({cplx(0.5, 0.0)});
  DomainFamily radius = build_family("abs2(z1) - exp(t1 + conj(t1))", "", 1, 1);
  InterpolationReport flat = interpolation_check(radius, t, 32, 1e-8);
  CHECK(flat.flat);
  CHECK(flat.max_route_gap < 1e-9);

  DomainFamily shrink = build_family("abs2(z1)*exp(abs2(t1)) - 1", "", 1, 1);
  InterpolationReport curved = interpolation_check(shrink, t, 32, 1e-8);
  CHECK(!curved.flat);
  CHECK(curved.max_theta_norm == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("interior lift follows the weighted family inward from the boundary") {
  // rho = |z|^2 e^{|t|^2} - 1: the lift is z tbar at every interior point and
  // extends the boundary assembly continuously.
  DomainFamily fam = build_family("abs2(z1)*exp(abs2(t1)) - 1", "", 1, 1);
  auto t = C({cplx(0.5, 0.0)});
  for (double r : {0.2, 0.5, 0.8}) {
    auto z = C({cplx(r, r / 2)});
    if (std::norm(z[0]) * std::exp(0.25) >= 1.0) continue;
    MatrixXcd v = lift_log(fam, t, z);
    CHECK(std::abs(v(0, 0) - z[0] * 0.5) < 1e-10);
  }
  auto zb = boundary_locate(fam, t, C({cplx(0.8, 0.6)}));
  MatrixXcd vb = lift_log_boundary(fam, t, zb);
  CHECK(std::abs(vb(0, 0) - zb[0] * 0.5) < 1e-10);
}
