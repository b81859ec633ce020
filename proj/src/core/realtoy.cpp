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

#include "realtoy.hpp"

#include <cmath>

#include "quadrature.hpp"

namespace bk {

namespace {

double eval_real_t(const ExprP& e, double t) {
  cplx tv(t, 0.0);
  cplx v = eval_expr(e, std::span<const cplx>(&tv, 1), {});
  if (std::abs(v.imag()) > 1e-10 * (1.0 + std::abs(v.real())))
    throw Error(ErrCode::Domain, "toy boundary expression is not real");
  return v.real();
}

}  // namespace

ToyFamily build_toy(const std::string& a_src, const std::string& b_src) {
  ToyFamily fam;
  fam.a = parse_expr(a_src, 1, 0);
  fam.b = parse_expr(b_src, 1, 0);
  fam.ad = real_derivative(fam.a, 0);
  fam.bd = real_derivative(fam.b, 0);
  fam.add = real_derivative(fam.ad, 0);
  fam.bdd = real_derivative(fam.bd, 0);
  return fam;
}

std::vector<ToyRow> toy_report(const ToyFamily& fam, std::span<const double> ts) {
  std::vector<ToyRow> rows;
  rows.reserve(ts.size());
  for (double t : ts) {
    ToyRow r;
    r.t = t;
    r.a = eval_real_t(fam.a, t);
    r.b = eval_real_t(fam.b, t);
    double gap = r.b - r.a;
    if (gap <= 0.0)
      throw Error(ErrCode::Domain,
                  "degenerate fibre: b - a <= 0 at t = " + format_double(t));
    r.adot = eval_real_t(fam.ad, t);
    r.bdot = eval_real_t(fam.bd, t);
    r.addot = eval_real_t(fam.add, t);
    r.bddot = eval_real_t(fam.bdd, t);
    r.theta_a = r.addot;
    r.theta_b = -r.bddot;
    r.phi = -std::log(gap);
    // Phi'' = [ (b-a)(a''-b'') + (a'-b')^2 ] / (b-a)^2
    r.phiddot = (gap * (r.addot - r.bddot) + (r.adot - r.bdot) * (r.adot - r.bdot)) /
                (gap * gap);
    r.geo = (r.theta_a + r.theta_b) / gap;
    r.r = (r.adot - r.bdot) * (r.adot - r.bdot) / (gap * gap);
    r.residual = std::abs(r.phiddot - (r.geo + r.r));
    rows.push_back(r);
  }
  return rows;
}

double toy_fd_phiddot(const ToyFamily& fam, double t, double h) {
  auto phi = [&](double s) {
    double gap = eval_real_t(fam.b, s) - eval_real_t(fam.a, s);
    if (gap <= 0.0)
      throw Error(ErrCode::Domain, "degenerate fibre in finite-difference stencil");
    return -std::log(gap);
  };
  auto second = [&](double hh) {
    return (phi(t + hh) - 2.0 * phi(t) + phi(t - hh)) / (hh * hh);
  };
  double d1 = second(h);
  double d2 = second(0.5 * h);
  return (4.0 * d2 - d1) / 3.0;  // Richardson: kills the h^2 term
}

ToyTriviality toy_triviality(const ToyFamily& fam, std::span<const double> ts,
                             double tol) {
  if (ts.size() < 2)
    throw Error(ErrCode::Invalid, "triviality check needs at least two grid points");
  ToyTriviality out;
  double t0 = ts[0];
  double a0 = eval_real_t(fam.a, t0);
  double b0 = eval_real_t(fam.b, t0);
  // Least-squares fit of the translation speed on a's increments.
  double num = 0.0, den = 0.0;
  for (double t : ts) {
    double dt = t - t0;
    num += (eval_real_t(fam.a, t) - a0) * dt;
    den += dt * dt;
  }
  out.speed = den > 0.0 ? num / den : 0.0;
  for (double t : ts) {
    double dt = t - t0;
    out.max_dev_a = std::max(out.max_dev_a,
                             std::abs(eval_real_t(fam.a, t) - a0 - out.speed * dt));
    out.max_dev_b = std::max(out.max_dev_b,
                             std::abs(eval_real_t(fam.b, t) - b0 - out.speed * dt));
  }
  for (const ToyRow& r : toy_report(fam, ts))
    out.max_abs_phiddot = std::max(out.max_abs_phiddot, std::abs(r.phiddot));
  out.trivial = out.max_dev_a < tol && out.max_dev_b < tol;
  return out;
}

namespace {

// log of the integrand at (t,x): sign * phi for holder (+) / prekopa (-).
double log_integrand(const ExprP& phi, double sign, double t, double x) {
  cplx tv(t, 0.0), zv(x, 0.0);
  cplx v = eval_expr(phi, std::span<const cplx>(&tv, 1), std::span<const cplx>(&zv, 1));
  if (std::abs(v.imag()) > 1e-10 * (1.0 + std::abs(v.real())))
    throw Error(ErrCode::Domain, "weight phi is not real on the real axis");
  return sign * v.real();
}

// F contribution: log integral of e^{lf(x)} dx over an adaptively truncated
// window, computed in the log domain to dodge overflow.
double log_integral(const ExprP& phi, double sign, double t) {
  double X = 1.0;
  double lmax = -std::numeric_limits<double>::infinity();
  for (int round = 0; round < 24; ++round) {
    lmax = -std::numeric_limits<double>::infinity();
    const int probes = 129;
    for (int k = 0; k < probes; ++k) {
      double x = -X + 2.0 * X * k / (probes - 1);
      lmax = std::max(lmax, log_integrand(phi, sign, t, x));
    }
    double lend = std::max(log_integrand(phi, sign, t, -X),
                           log_integrand(phi, sign, t, X));
    if (lend < lmax + std::log(1e-14)) {
      // Composite Gauss-Legendre over [-X, X].
      int panels = std::max(8, static_cast<int>(std::ceil(X)));
      double sum = 0.0;
      for (int p = 0; p < panels; ++p) {
        double a = -X + 2.0 * X * p / panels;
        double b = -X + 2.0 * X * (p + 1) / panels;
        sum += integrate_interval(
            [&](double x) { return std::exp(log_integrand(phi, sign, t, x) - lmax); },
            a, b, 48);
      }
      if (!(sum > 0.0) || !std::isfinite(sum))
        throw Error(ErrCode::Numeric, "integrand quadrature failed");
      return lmax + std::log(sum);
    }
    X *= 2.0;
  }
  throw Error(ErrCode::Domain,
              "integrand does not decay: divergence detected at truncation boundary");
}

}  // namespace

ConvexityScan convexity_scan(const ExprP& phi, ConvexMode mode,
                             std::span<const double> ts, double tol, double h) {
  int mu = 0, nu = 0;
  expr_var_extent(phi, mu, nu);
  if (mu > 1 || nu > 1)
    throw Error(ErrCode::Invalid, "convexity scan expects phi in (t, x) only");
  double sign = mode == ConvexMode::Holder ? 1.0 : -1.0;
  auto F = [&](double t) {
    double li = log_integral(phi, sign, t);
    return mode == ConvexMode::Holder ? li : -li;
  };
  ConvexityScan scan;
  scan.min_fddot = std::numeric_limits<double>::infinity();
  for (double t : ts) {
    ConvexityRow row;
    row.t = t;
    row.f = F(t);
    // 5-point second-derivative stencil, O(h^4).
    row.fddot = (-F(t + 2.0 * h) + 16.0 * F(t + h) - 30.0 * row.f +
                 16.0 * F(t - h) - F(t - 2.0 * h)) /
                (12.0 * h * h);
    scan.min_fddot = std::min(scan.min_fddot, row.fddot);
    scan.rows.push_back(row);
  }
  scan.convex = scan.min_fddot >= -tol;
  return scan;
}

}  // namespace bk
