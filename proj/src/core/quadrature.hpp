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

// Quadrature for planar fibres (n = 1) star-shaped about the origin, and
// one-dimensional Gauss-Legendre helpers.  The area form convention is
// i dz ^ dzbar = 2 dx dy; every interior weight already contains it.

#ifndef BKCURV_QUADRATURE_HPP
#define BKCURV_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "jets.hpp"

namespace bk {

// Nodes/weights of the N-point Gauss-Legendre rule on [-1,1] (cached).
struct GaussLegendre {
  std::vector<double> x;
  std::vector<double> w;
};
const GaussLegendre& gauss_legendre(int order);

// integral of f over [a,b] with an N-point rule
double integrate_interval(const std::function<double(double)>& f, double a,
                          double b, int order);

struct FibreQuadrature {
  // Interior rule: sum w_q f(node_q) approximates the integral of f against
  // i dz ^ dzbar over the fibre.
  std::vector<cplx> nodes;
  std::vector<double> weights;
  // Boundary rule: angular grid theta_k = 2 pi k / K, boundary point
  // b_k = r(theta_k) e^{i theta_k}, tangent = dz/dtheta there; line integrals
  // of P dz + Q dzbar are sum (2pi/K) [P(b_k) tan_k + Q(b_k) conj(tan_k)].
  std::vector<cplx> bnodes;
  std::vector<cplx> btangents;
  double bweight = 0.0;  // 2 pi / K
  std::vector<double> radii;
};

// Builds the polar rule for the fibre of `fam` at t: Gauss-Legendre radially
// (radial_order nodes per ray), trapezoid in angle (angular_order rays).
// Validates star-shapedness: rho must be negative and increasing along each
// ray at 8 interior fractions.  Boundary tangents come from a 5-point
// periodic stencil on r(theta).
FibreQuadrature build_quadrature(const DomainFamily& fam, std::span<const cplx> t,
                                 int radial_order, int angular_order);

// Complex line integral over the boundary rule: sum of P dz + Q dzbar.
cplx boundary_integral(const FibreQuadrature& q,
                       const std::function<cplx(cplx)>& P,
                       const std::function<cplx(cplx)>& Q);

// Interval fibre {x : rho(t,x) < 0} on the real line, located by bisection
// from the interior seed x0 in both directions.  Requires rho(t,x0) < 0.
struct IntervalFibre {
  double lo = 0.0;
  double hi = 0.0;
};
IntervalFibre locate_interval(const DomainFamily& fam, std::span<const cplx> t,
                              double x0 = 0.0);

}  // namespace bk

#endif
