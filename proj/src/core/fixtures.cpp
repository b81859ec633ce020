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

#include "fixtures.hpp"

namespace bk {

const std::vector<FixtureDef>& fixture_catalog() {
  static const std::vector<FixtureDef> cat = [] {
    std::vector<FixtureDef> v;
    auto dom = [&](std::string name, std::string summary, std::string rho,
                   std::string phi, int m, int n) {
      FixtureDef f;
      f.name = std::move(name);
      f.kind = "domain";
      f.summary = std::move(summary);
      f.rho = std::move(rho);
      f.phi = std::move(phi);
      f.m = m;
      f.n = n;
      v.push_back(std::move(f));
    };

    dom("unit-disk-product",
        "fixed unit disk for every t; zero boundary curvature",
        "abs2(z1) - 1", "", 1, 1);
    dom("exp-radius-flat",
        "disk of radius e^{2 re t}; boundary swept by orbits, curvature 0",
        "abs2(z1) - exp(2*re(t1))", "", 1, 1);
    dom("shrinking-disk",
        "disk of radius e^{-|t|^2/2}; constant boundary curvature 1",
        "abs2(z1)*exp(abs2(t1)) - 1", "", 1, 1);
    dom("growing-disk",
        "disk of radius sqrt(1+|t|^2); negative curvature, not pseudoconvex",
        "abs2(z1) - 1 - abs2(t1)", "", 1, 1);
    dom("two-parameter-disk",
        "shrinking disk over a two-dimensional base; curvature [[1, 1/4], "
        "[1/4, 1]]",
        "abs2(z1)*exp(abs2(t1) + abs2(t2) + 0.5*re(t1*conj(t2))) - 1", "", 2,
        1);
    dom("coupled-plane-pair",
        "generic strictly convex quadric in two fibre variables",
        "abs2(z1) + abs2(z2) + 0.4*re(z1*conj(z2)) + 0.3*abs2(t1*z1) + "
        "0.2*re(t1*z1*conj(z2)) - 1",
        "", 1, 2);
    dom("gaussian-weighted-disk",
        "fixed unit disk under the radial Gaussian weight e^{-|z|^2}",
        "abs2(z1) - 1", "abs2(z1)", 1, 1);
    dom("moving-weighted-disk",
        "off-centre moving disk with a t-coupled weight; both variational "
        "terms active",
        "abs2(z1) - 1 - 0.3*re(t1*z1)", "0.5*abs2(z1) + 0.2*re(t1*z1)", 1, 1);

    auto norm = [&](std::string name, std::string summary,
                    std::vector<std::string> entries, int m, int n) {
      FixtureDef f;
      f.name = std::move(name);
      f.kind = "norm";
      f.summary = std::move(summary);
      f.entries = std::move(entries);
      f.m = m;
      f.n = n;
      v.push_back(std::move(f));
    };
    norm("scalar-flat-norm", "|e^t xi|^2: flat, curvature tensor 0",
         {"exp(t1 + conj(t1))"}, 1, 1);
    norm("scalar-curved-norm", "e^{|t|^2} |xi|^2: curvature 1 at xi = 1",
         {"exp(abs2(t1))"}, 1, 1);
    norm("triangular-flat-norm",
         "|M(t) xi|^2 for the unipotent M = [[1, t], [0, 1]]: flat",
         {"1", "conj(t1)", "t1", "1 + abs2(t1)"}, 1, 2);
    norm("two-parameter-norm",
         "two-parameter exponential norm matching two-parameter-disk",
         {"exp(abs2(t1) + abs2(t2) + 0.5*re(t1*conj(t2)))"}, 2, 1);

    auto mot = [&](std::string name, std::string summary, std::string a) {
      FixtureDef f;
      f.name = std::move(name);
      f.kind = "motion";
      f.summary = std::move(summary);
      f.motion_a = std::move(a);
      v.push_back(std::move(f));
    };
    mot("identity-motion", "a = 0: conformal, trivial, zero flatness", "0");
    mot("half-shear-motion",
        "a = t/2: first-order stretch; flatness 1/2 at the centre", "0.5*t");
    mot("quadratic-shear-motion",
        "a = t^2: stretch invisible at t = 0, caught only off centre", "t^2");

    auto toy = [&](std::string name, std::string summary, std::string a,
                   std::string b) {
      FixtureDef f;
      f.name = std::move(name);
      f.kind = "toy";
      f.summary = std::move(summary);
      f.toy_a = std::move(a);
      f.toy_b = std::move(b);
      v.push_back(std::move(f));
    };
    toy("parabolic-ceiling", "fixed floor, parabolic ceiling b = 1 + t - t^2",
        "0", "1 + t - t^2");
    toy("breathing-slab", "symmetric slab (-1-t^2, 1+t^2): log-width concave",
        "-1 - t^2", "1 + t^2");
    toy("drifting-slab", "pure translation at speed 2: trivial family",
        "1 + 2*t", "3 + 2*t");
    toy("skew-slab", "independently curving endpoints", "t^2 - 1",
        "1 + t + 0.5*t^2");

    auto wgt = [&](std::string name, std::string summary, std::string phi) {
      FixtureDef f;
      f.name = std::move(name);
      f.kind = "weight";
      f.summary = std::move(summary);
      f.weight = std::move(phi);
      v.push_back(std::move(f));
    };
    wgt("tilted-gaussian",
        "phi = t x - x^2: log integral e^phi has second derivative 1/2",
        "t*x - x^2");
    wgt("separable-parabola",
        "phi = t^2 + x^2: minus-log integral e^{-phi} has second derivative 2",
        "t^2 + x^2");
    wgt("concave-bump",
        "phi = -t^2 - x^2: log integral e^phi is concave in t",
        "-t^2 - x^2");
    return v;
  }();
  return cat;
}

const FixtureDef* find_fixture(const std::string& name) {
  for (const FixtureDef& f : fixture_catalog())
    if (f.name == name) return &f;
  return nullptr;
}

namespace {
void require_kind(const FixtureDef& fx, const char* kind) {
  if (fx.kind != kind)
    throw Error{ErrCode::Invalid,
                "fixture " + fx.name + " is not of kind " + kind};
}
}  // namespace

DomainFamily fixture_family(const FixtureDef& fx) {
  require_kind(fx, "domain");
  return build_family(fx.rho, fx.phi, fx.m, fx.n);
}

NormFamily fixture_norm(const FixtureDef& fx) {
  require_kind(fx, "norm");
  return build_norm_family(fx.entries, fx.m, fx.n);
}

Motion fixture_motion(const FixtureDef& fx) {
  require_kind(fx, "motion");
  if (!fx.motion_a.empty()) return affine_motion(fx.motion_a);
  return build_motion(fx.motion_f, fx.motion_finv);
}

ToyFamily fixture_toy(const FixtureDef& fx) {
  require_kind(fx, "toy");
  return build_toy(fx.toy_a, fx.toy_b);
}

ExprP fixture_weight(const FixtureDef& fx) {
  require_kind(fx, "weight");
  return parse_expr(fx.weight, 1, 1);
}

}  // namespace bk
