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

#include "core/jets.hpp"
#include "core/quadrature.hpp"

using namespace bk;

namespace {

const double kPi = 3.14159265358979323846;

std::vector<cplx> C(std::initializer_list<cplx> v) { return {v}; }

}  // namespace

TEST_CASE("jet of a weighted disk family matches hand values") {
  // rho = |z|^2 e^{|t|^2} - 1 at t = 0.5, z = 0.6
  DomainFamily fam = build_family("abs2(z1)*exp(abs2(t1)) - 1", "", 1, 1);
  auto t = C({cplx(0.5, 0.0)});
  auto z = C({cplx(0.6, 0.0)});
  Jet11 jet = rho_jet(fam, t, z);
  double e = std::exp(0.25);
  CHECK(jet.value == doctest::Approx(0.36 * e - 1.0).epsilon(1e-12));
  CHECK(std::abs(jet.d_t(0) - cplx(0.36 * e * 0.5, 0)) < 1e-12);
  CHECK(std::abs(jet.d_z(0) - cplx(0.6 * e, 0)) < 1e-12);
  CHECK(std::abs(jet.d_ttbar(0, 0) - cplx(0.36 * e * 1.25, 0)) < 1e-12);
  CHECK(std::abs(jet.d_tzbar(0, 0) - cplx(0.6 * e * 0.5, 0)) < 1e-12);
  CHECK(std::abs(jet.d_zzbar(0, 0) - cplx(e, 0)) < 1e-12);
}

TEST_CASE("symbolic jet agrees with finite differences on a generic family") {
  DomainFamily fam = build_family(
      "abs2(z1) + abs2(z2) + 0.4*re(z1*conj(z2)) + 0.3*abs2(t1*z1)"
      " + 0.2*re(t1*z1*conj(z2)) - 1",
      "", 1, 2);
  auto t = C({cplx(0.3, 0.2)});
  auto z = C({cplx(0.4, -0.1), cplx(-0.2, 0.3)});
  Jet11 jet = rho_jet(fam, t, z);
  // first derivatives against the FD oracle on rho itself
  CHECK(std::abs(jet.d_t(0) - fd_wirtinger(fam.rho, {false, 0}, false, t, z)) < 1e-8);
  for (int a = 0; a < 2; ++a)
    CHECK(std::abs(jet.d_z(a) - fd_wirtinger(fam.rho, {true, a}, false, t, z)) < 1e-8);
  // mixed seconds against the FD oracle on the symbolic firsts
  for (int a = 0; a < 2; ++a) {
    CHECK(std::abs(jet.d_tzbar(0, a) -
                   fd_wirtinger(fam.rho_d.d_t[0], {true, a}, true, t, z)) < 1e-8);
    for (int b = 0; b < 2; ++b)
      CHECK(std::abs(jet.d_zzbar(a, b) -
                     fd_wirtinger(fam.rho_d.d_z[a], {true, b}, true, t, z)) < 1e-8);
  }
  CHECK(std::abs(jet.d_ttbar(0, 0) -
                 fd_wirtinger(fam.rho_d.d_t[0], {false, 0}, true, t, z)) < 1e-8);
  // Hermitian blocks
  CHECK((jet.d_zzbar - jet.d_zzbar.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("jet evaluation rejects a complex-valued field") {
  DomainFamily fam = build_family_expr(parse_expr("z1", 1, 1), nullptr, 1, 1);
  auto t = C({cplx(0, 0)});
  auto z = C({cplx(0.3, 0.4)});
  CHECK_THROWS_AS(rho_jet(fam, t, z), Error);
}

TEST_CASE("fibre frame carries both gradient norms") {
  DomainFamily fam = build_family("abs2(z1)*exp(abs2(t1)) - 1", "", 1, 1);
  auto t = C({cplx(0.5, 0.0)});
  std::vector<cplx> zb = boundary_locate(fam, t, C({cplx(1, 0)}));
  double e = std::exp(0.25);
  CHECK(std::abs(zb[0]) == doctest::Approx(std::exp(-0.125)).epsilon(1e-10));
  FibreFrame fr = fibre_frame(rho_jet(fam, t, zb));
  CHECK(std::abs(fr.rho) < 1e-10);
  // |drho|^2 = |z|^2 e^2 = e on the boundary, Levi norm |z|^2 e = 1
  CHECK(fr.grad_sq == doctest::Approx(e).epsilon(1e-9));
  CHECK(fr.levi_grad_sq == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(fr.levi(0, 0) - cplx(e, 0)) < 1e-12);
}

TEST_CASE("fibre frame rejects an indefinite Levi form") {
  DomainFamily fam = build_family("-abs2(z1) + re(z1) - 0.1", "", 1, 1);
  auto t = C({cplx(0, 0)});
  auto z = C({cplx(0, 0)});
  CHECK_THROWS_AS(fibre_frame(rho_jet(fam, t, z)), Error);
}

TEST_CASE("boundary radii of the reference families") {
  auto t = C({cplx(0.5, 0.0)});
  auto dir = C({cplx(0, 1)});
  DomainFamily prod = build_family("abs2(z1) - 1", "", 1, 1);
  CHECK(std::abs(boundary_locate(prod, t, dir)[0]) == doctest::Approx(1.0));
  DomainFamily grow = build_family("abs2(z1) - 1 - abs2(t1)", "", 1, 1);
  CHECK(std::abs(boundary_locate(grow, t, dir)[0]) ==
        doctest::Approx(std::sqrt(1.25)).epsilon(1e-10));
  DomainFamily radius = build_family("abs2(z1) - exp(t1 + conj(t1))", "", 1, 1);
  CHECK(std::abs(boundary_locate(radius, t, dir)[0]) ==
        doctest::Approx(std::exp(0.5)).epsilon(1e-10));
}

TEST_CASE("boundary search reports non-interior seeds and unbounded rays") {
  auto t = C({cplx(0, 0)});
  auto dir = C({cplx(1, 0)});
  DomainFamily outside = build_family("1 - abs2(z1)", "", 1, 1);
  CHECK_THROWS_WITH_AS(boundary_locate(outside, t, dir),
                       doctest::Contains("not interior"), Error);
  DomainFamily unbounded = build_family("-1 - abs2(z1)", "", 1, 1);
  CHECK_THROWS_AS(boundary_locate(unbounded, t, dir), Error);
}

TEST_CASE("tangential Levi eigenvalue detects total-space non-pseudoconvexity") {
  auto t = C({cplx(0.5, 0.0)});
  // growing family: tangential Levi form is -1/(1+2|t|^2) at the boundary
  DomainFamily grow = build_family("abs2(z1) - 1 - abs2(t1)", "", 1, 1);
  std::vector<cplx> zb = boundary_locate(grow, t, C({cplx(1, 0)}));
  CHECK(tangential_levi_min(rho_jet(grow, t, zb)) ==
        doctest::Approx(-1.0 / 1.5).epsilon(1e-9));
  // shrinking family: Stein total space, tangential form stays positive
  DomainFamily shrink = build_family("abs2(z1)*exp(abs2(t1)) - 1", "", 1, 1);
  zb = boundary_locate(shrink, t, C({cplx(1, 0)}));
  CHECK(tangential_levi_min(rho_jet(shrink, t, zb)) > 0.0);
}

TEST_CASE("strict fibre convexity scan accepts and rejects correctly") {
  auto t = C({cplx(0.5, 0.0)});
  DomainFamily shrink = build_family("abs2(z1)*exp(abs2(t1)) - 1", "", 1, 1);
  A2Report ok = a2_check(shrink, t, 32);
  CHECK(ok.ok);
  CHECK(ok.min_levi_eig == doctest::Approx(std::exp(0.25)).epsilon(1e-9));
  CHECK(ok.min_grad_sq > 0.5);

  // Levi form degenerates to -1 exactly on the unit circle boundary
  DomainFamily flatb = build_family("abs2(z1) - 0.5*abs2(z1)^2 - 0.5", "", 1, 1);
  A2Report bad = a2_check(flatb, t, 16);
  CHECK(!bad.ok);
  CHECK(bad.min_levi_eig == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("disk quadrature integrates radial monomials exactly") {
  DomainFamily prod = build_family("abs2(z1) - 1", "", 1, 1);
  auto t = C({cplx(0, 0)});
  FibreQuadrature q = build_quadrature(prod, t, 20, 40);
  for (int a = 0; a <= 3; ++a) {
    double s = 0.0;
    for (std::size_t k = 0; k < q.nodes.size(); ++k)
      s += q.weights[k] * std::pow(std::norm(q.nodes[k]), a);
    // integral of |z|^{2a} against i dz^dzbar over the unit disk; the
    // boundary radius itself is only bisected to ~5e-13
    CHECK(s == doctest::Approx(2.0 * kPi / (a + 1)).epsilon(1e-10));
  }
}

TEST_CASE("boundary rule reproduces residues and kills exact differentials") {
  DomainFamily prod = build_family("abs2(z1) - 1", "", 1, 1);
  auto t = C({cplx(0, 0)});
  FibreQuadrature q = build_quadrature(prod, t, 8, 64);
  cplx res = boundary_integral(q, [](cplx z) { return 1.0 / z; },
                               [](cplx) { return cplx(0, 0); });
  CHECK(std::abs(res - cplx(0, 2 * kPi)) < 1e-10);
  cplx ddz = boundary_integral(q, [](cplx z) { return 2.0 * z; },
                               [](cplx) { return cplx(0, 0); });
  CHECK(std::abs(ddz) < 1e-10);
  cplx stokes = boundary_integral(q, [](cplx z) { return std::conj(z); },
                                  [](cplx) { return cplx(0, 0); });
  CHECK(std::abs(stokes - cplx(0, 2 * kPi)) < 1e-10);
}

TEST_CASE("off-centre fibre keeps quadrature accuracy") {
  // {|z|^2 < 1 + 0.2 re z}: disk of radius^2 1.01 centred at 0.1
  DomainFamily fam = build_family("abs2(z1) - 1 - 0.2*re(z1)", "", 1, 1);
  auto t = C({cplx(0, 0)});
  FibreQuadrature q = build_quadrature(fam, t, 24, 256);
  double area2 = 0.0;
  for (double w : q.weights) area2 += w;
  CHECK(area2 == doctest::Approx(2.0 * kPi * 1.01).epsilon(1e-10));
  cplx res = boundary_integral(q, [](cplx z) { return 1.0 / (z - 0.1); },
                               [](cplx) { return cplx(0, 0); });
  CHECK(std::abs(res - cplx(0, 2 * kPi)) < 1e-7);
}

TEST_CASE("gauss-legendre nodes integrate polynomials exactly") {
  // order p integrates degree 2p-1
  double v = integrate_interval([](double x) { return x * x * x * x; }, -1.0,
                                2.0, 6);
  CHECK(v == doctest::Approx((std::pow(2.0, 5) + 1.0) / 5.0).epsilon(1e-14));
}

TEST_CASE("interval fibres are located from an interior seed") {
  // rho = x (x - 1 - t): fibre (0, 1+t), origin sits on the boundary
  DomainFamily fam = build_family_expr(parse_expr("z1*(z1 - 1 - t1)", 1, 1),
                                       nullptr, 1, 1);
  auto t = C({cplx(0.25, 0.0)});
  IntervalFibre f = locate_interval(fam, t, 0.5);
  CHECK(f.lo == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(f.hi == doctest::Approx(1.25).epsilon(1e-10));
  CHECK_THROWS_AS(locate_interval(fam, t, -1.0), Error);
}
