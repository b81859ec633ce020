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

// Real interval model: moving intervals (a(t), b(t)) with the convexity
// functional Phi = -log(b-a), its curvature decomposition
//   Phi'' = Geo + R,  Geo = (a'' - b'')/(b-a) ... written via the boundary
// accelerations theta(a) = a'', theta(b) = -b'', and the slack term
//   R = (a' - b')^2 / (b-a)^2,
// plus scans of log / minus-log integral convexity for weights e^{phi}.

#ifndef BKCURV_REALTOY_HPP
#define BKCURV_REALTOY_HPP

#include <vector>

#include "expr.hpp"

namespace bk {

struct ToyFamily {
  ExprP a, b;
  ExprP ad, bd;    // first t-derivatives
  ExprP add, bdd;  // second t-derivatives
};

// a and b are expressions in the single real variable t (alias t1).
ToyFamily build_toy(const std::string& a_src, const std::string& b_src);

struct ToyRow {
  double t = 0.0;
  double a = 0.0, b = 0.0;
  double adot = 0.0, bdot = 0.0;
  double addot = 0.0, bddot = 0.0;
  double theta_a = 0.0, theta_b = 0.0;  // a'' and -b''
  double phi = 0.0;                     // -log(b-a)
  double phiddot = 0.0;
  double geo = 0.0;  // (theta(a) + theta(b)) / (b-a)
  double r = 0.0;    // (a'-b')^2 / (b-a)^2
  double residual = 0.0;  // |phiddot - (geo + r)|
};

// Throws Error{Domain} when b-a <= 0 at some grid point.
std::vector<ToyRow> toy_report(const ToyFamily& fam, std::span<const double> ts);

// Finite-difference oracle for Phi'' (second difference, two step sizes,
// Richardson extrapolated).
double toy_fd_phiddot(const ToyFamily& fam, double t, double h = 1e-3);

struct ToyTriviality {
  bool trivial = false;
  double speed = 0.0;        // fitted common translation speed c
  double max_dev_a = 0.0;    // max |a(t) - a(t0) - c (t - t0)|
  double max_dev_b = 0.0;
  double max_abs_phiddot = 0.0;
};

// The family is a translation [a,b](t) = [a,b](t0) + c (t-t0) iff both
// deviations stay below tol; then Phi is affine (Phi'' = 0).
ToyTriviality toy_triviality(const ToyFamily& fam, std::span<const double> ts,
                             double tol);

enum class ConvexMode {
  Holder,   // F(t) = log integral e^{phi(t,x)} dx
  Prekopa,  // F(t) = -log integral e^{-phi(t,x)} dx
};

struct ConvexityRow {
  double t = 0.0;
  double f = 0.0;
  double fddot = 0.0;
};

struct ConvexityScan {
  std::vector<ConvexityRow> rows;
  double min_fddot = 0.0;
  bool convex = false;
};

// phi is an expression in (t, x) with x aliased to z1.  The x-integral is
// truncated where the integrand falls below 1e-14 of its max (window found
// by doubling; failure to decay at the ends raises Error{Domain}).  F'' by
// 5-point central stencil with step h.
ConvexityScan convexity_scan(const ExprP& phi, ConvexMode mode,
                             std::span<const double> ts, double tol,
                             double h = 1e-3);

}  // namespace bk

#endif
