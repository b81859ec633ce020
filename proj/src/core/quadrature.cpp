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

#include "quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace bk {

namespace {

// Newton iteration on Legendre P_n; standard Golub-Welsch-free construction.
GaussLegendre compute_gl(int n) {
  GaussLegendre gl;
  gl.x.resize(n);
  gl.w.resize(n);
  for (int k = 0; k < n; ++k) {
    // Chebyshev-like initial guess for the k-th root.
    double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Evaluate P_n(x) and P_n'(x) by the three-term recurrence.
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    gl.x[k] = x;
    gl.w[k] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return gl;
}

std::map<int, GaussLegendre> gl_cache;
std::mutex gl_mutex;

}  // namespace

const GaussLegendre& gauss_legendre(int order) {
  if (order < 1 || order > 4096)
    throw Error(ErrCode::Invalid, "Gauss-Legendre order out of range");
  std::lock_guard<std::mutex> lock(gl_mutex);
  auto it = gl_cache.find(order);
  if (it == gl_cache.end()) it = gl_cache.emplace(order, compute_gl(order)).first;
  return it->second;
}

double integrate_interval(const std::function<double(double)>& f, double a,
                          double b, int order) {
  const GaussLegendre& gl = gauss_legendre(order);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t k = 0; k < gl.x.size(); ++k)
    s += gl.w[k] * f(mid + half * gl.x[k]);
  return s * half;
}

FibreQuadrature build_quadrature(const DomainFamily& fam, std::span<const cplx> t,
                                 int radial_order, int angular_order) {
  if (fam.n != 1)
    throw Error(ErrCode::Invalid, "planar quadrature requires a one-dimensional fibre");
  if (radial_order < 2 || angular_order < 8)
    throw Error(ErrCode::Invalid, "quadrature orders too small");
  FibreQuadrature q;
  const int K = angular_order;
  q.bweight = 2.0 * M_PI / K;
  q.radii.resize(K);
  q.bnodes.resize(K);
  std::vector<cplx> zbuf(1);
  // Locate r(theta) on each ray, then validate that rho is negative and
  // increasing along the ray (star-shaped about 0).
  for (int k = 0; k < K; ++k) {
    double th = q.bweight * k;
    cplx dir(std::cos(th), std::sin(th));
    std::vector<cplx> d{dir};
    std::vector<cplx> zb = boundary_locate(fam, t, d);
    double r = std::abs(zb[0]);
    q.radii[k] = r;
    q.bnodes[k] = zb[0];
    double prev = -std::numeric_limits<double>::infinity();
    for (int s = 1; s <= 8; ++s) {
      zbuf[0] = dir * (r * s / 9.0);
      double v = eval_expr(fam.rho, t, zbuf).real();
      if (v >= 0.0)
        throw Error(ErrCode::Domain, "fibre is not star-shaped about 0 (rho >= 0 inside a ray)");
      if (v < prev - 1e-12)
        throw Error(ErrCode::Domain, "fibre is not star-shaped about 0 (rho not monotone on a ray)");
      prev = v;
    }
  }
  // Tangents dz/dtheta = (r'(theta) + i r(theta)) e^{i theta}, with r' from a
  // 5-point periodic central stencil.
  q.btangents.resize(K);
  for (int k = 0; k < K; ++k) {
    double rp = (-q.radii[(k + 2) % K] + 8.0 * q.radii[(k + 1) % K] -
                 8.0 * q.radii[(k + K - 1) % K] + q.radii[(k + K - 2) % K]) /
                (12.0 * q.bweight);
    double th = q.bweight * k;
    cplx eith(std::cos(th), std::sin(th));
    q.btangents[k] = (cplx(rp, 0.0) + cplx(0.0, q.radii[k])) * eith;
  }
  // Interior nodes: i dz ^ dzbar = 2 r dr dtheta in polar coordinates.
  const GaussLegendre& gl = gauss_legendre(radial_order);
  q.nodes.reserve(static_cast<std::size_t>(K) * radial_order);
  q.weights.reserve(static_cast<std::size_t>(K) * radial_order);
  for (int k = 0; k < K; ++k) {
    double th = q.bweight * k;
    cplx eith(std::cos(th), std::sin(th));
    double R = q.radii[k];
    for (int j = 0; j < radial_order; ++j) {
      double r = 0.5 * R * (gl.x[j] + 1.0);
      double wr = 0.5 * R * gl.w[j];
      q.nodes.push_back(r * eith);
      q.weights.push_back(2.0 * r * wr * q.bweight);
    }
  }
  return q;
}

cplx boundary_integral(const FibreQuadrature& q,
                       const std::function<cplx(cplx)>& P,
                       const std::function<cplx(cplx)>& Q) {
  cplx s = 0.0;
  for (std::size_t k = 0; k < q.bnodes.size(); ++k) {
    cplx tan = q.btangents[k];
    if (P) s += P(q.bnodes[k]) * tan;
    if (Q) s += Q(q.bnodes[k]) * std::conj(tan);
  }
  return s * q.bweight;
}

IntervalFibre locate_interval(const DomainFamily& fam, std::span<const cplx> t,
                              double x0) {
  if (fam.n != 1)
    throw Error(ErrCode::Invalid, "interval fibres require n = 1");
  std::vector<cplx> z(1);
  auto rho_at = [&](double x) {
    z[0] = cplx(x, 0.0);
    return eval_expr(fam.rho, t, z).real();
  };
  if (rho_at(x0) >= 0.0)
    throw Error(ErrCode::Domain, "seed point is not interior to the interval fibre");
  auto cross = [&](double sgn) {
    double lo = x0, step = sgn;
    double hi = x0 + step;
    while (rho_at(hi) < 0.0) {
      lo = hi;
      step *= 2.0;
      hi = x0 + step;
      if (std::abs(step) > 64.0)
        throw Error(ErrCode::Domain, "no interval endpoint within radius 64");
    }
    for (int it = 0; it < 400; ++it) {
      double mid = 0.5 * (lo + hi);
      double v = rho_at(mid);
      if (std::abs(v) < 1e-12) return mid;
      (v < 0.0 ? lo : hi) = mid;
    }
    throw Error(ErrCode::Numeric, "interval bisection failed");
  };
  IntervalFibre f;
  f.hi = cross(1.0);
  f.lo = cross(-1.0);
  return f;
}

}  // namespace bk
