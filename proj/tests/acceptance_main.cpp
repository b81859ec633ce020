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

// Acceptance suite: twelve end-to-end criteria, one verdict line each.
// Every tolerance is pinned here in plain numbers; a criterion fails loudly
// with the offending values rather than being loosened.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "core/fixtures.hpp"
#include "core/variation.hpp"

namespace {

using bk::cplx;
constexpr double kTwoPi = 2.0 * M_PI;

struct Tally {
  std::vector<std::string> failures;
  void check(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void near(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol)) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%s: got %.12g, want %.12g within %.3g",
                    what.c_str(), got, want, tol);
      failures.push_back(buf);
    }
  }
  void below(double value, double limit, const std::string& what) {
    if (!(std::abs(value) <= limit)) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%s: |%.12g| exceeds %.3g", what.c_str(),
                    value, limit);
      failures.push_back(buf);
    }
  }
  void at_least(double value, double floor, const std::string& what) {
    if (!(value >= floor)) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%s: %.12g is below %.3g", what.c_str(),
                    value, floor);
      failures.push_back(buf);
    }
  }
};

const bk::FixtureDef& fx(const std::string& name) {
  const bk::FixtureDef* def = bk::find_fixture(name);
  if (!def) throw bk::Error(bk::ErrCode::Invalid, "missing fixture " + name);
  return *def;
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i)
    out[i] = lo + (hi - lo) * i / double(count - 1);
  return out;
}

// Random polynomial in t of the given degree with coefficients in
// hundredths, emitted as parseable source text.
std::string random_poly(std::mt19937& rng, int degree, int cent_lo,
                        int cent_hi) {
  std::uniform_int_distribution<int> cents(cent_lo, cent_hi);
  std::string src;
  for (int k = 0; k <= degree; ++k) {
    char term[48];
    double c = cents(rng) / 100.0;
    if (k == 0)
      std::snprintf(term, sizeof(term), "(%.2f)", c);
    else if (k == 1)
      std::snprintf(term, sizeof(term), " + (%.2f)*t", c);
    else
      std::snprintf(term, sizeof(term), " + (%.2f)*t^%d", c, k);
    src += term;
  }
  return src;
}

// 1. Interval families: the second derivative of -log(b-a) splits into the
// boundary-acceleration part plus the nonnegative slack square, and matches
// a finite-difference oracle.
void criterion_toy_decomposition(Tally& tally) {
  std::mt19937 rng(99173);
  std::uniform_int_distribution<int> degree_of(0, 4);
  std::vector<double> ts = linspace(-0.5, 0.5, 9);
  double worst_split = 0.0, worst_fd = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::string a_src = random_poly(rng, degree_of(rng), -30, 30);
    // Width = 1 + small poly stays above 0.9 on |t| <= 1/2.
    std::string gap_src = "1 + " + random_poly(rng, degree_of(rng), -10, 10);
    bk::ToyFamily toy =
        bk::build_toy(a_src, "(" + a_src + ") + (" + gap_src + ")");
    for (const bk::ToyRow& row : bk::toy_report(toy, ts))
      worst_split = std::max(worst_split, row.residual);
    for (double t : {-0.25, 0.0, 0.25}) {
      std::vector<bk::ToyRow> row = bk::toy_report(toy, std::vector<double>{t});
      worst_fd = std::max(
          worst_fd, std::abs(bk::toy_fd_phiddot(toy, t) - row[0].phiddot));
    }
  }
  tally.below(worst_split, 1e-10, "curvature split residual over 50 families");
  tally.below(worst_fd, 1e-6, "finite-difference gap over 50 families");
}

// 2. The slack term is a square, so never negative; on families whose total
// space is convex the boundary-acceleration part is nonnegative too.
void criterion_toy_positivity(Tally& tally) {
  std::vector<double> ts = linspace(-0.5, 0.5, 21);
  double min_r = 0.0;
  for (const char* name :
       {"parabolic-ceiling", "breathing-slab", "drifting-slab", "skew-slab"}) {
    bk::ToyFamily toy = bk::fixture_toy(fx(name));
    for (const bk::ToyRow& row : bk::toy_report(toy, ts))
      min_r = std::min(min_r, row.r);
  }
  tally.at_least(min_r, -1e-12, "slack term over all interval fixtures");

  double min_geo = 0.0;
  for (const char* name : {"parabolic-ceiling", "drifting-slab"}) {
    bk::ToyFamily toy = bk::fixture_toy(fx(name));
    for (const bk::ToyRow& row : bk::toy_report(toy, ts))
      min_geo = std::min(min_geo, row.geo);
  }
  tally.at_least(min_geo, -1e-10,
                 "boundary acceleration on convex-total-space fixtures");
}

// 3. Gaussian closed forms: F(t) = -log int e^{-t^2-x^2} dx has F'' = 2;
// F(t) = log int e^{tx-x^2} dx has F'' = 1/2.
void criterion_convexity_scans(Tally& tally) {
  std::vector<double> ts = {-0.2, 0.0, 0.2};
  bk::ConvexityScan prekopa =
      bk::convexity_scan(bk::fixture_weight(fx("separable-parabola")),
                         bk::ConvexMode::Prekopa, ts, 1e-8);
  for (const bk::ConvexityRow& row : prekopa.rows)
    tally.near(row.fddot, 2.0, 1e-4, "separable-parabola second derivative");
  tally.check(prekopa.convex, "separable-parabola scan flagged non-convex");

  bk::ConvexityScan holder =
      bk::convexity_scan(bk::fixture_weight(fx("tilted-gaussian")),
                         bk::ConvexMode::Holder, ts, 1e-8);
  for (const bk::ConvexityRow& row : holder.rows)
    tally.near(row.fddot, 0.5, 1e-4, "tilted-gaussian second derivative");
  tally.check(holder.convex, "tilted-gaussian scan flagged non-convex");
}

// 4. The boundary lift is tangent to the boundary: V_j(rho) vanishes at 64
// boundary samples on each of the four reference domain families.
void criterion_lift_tangency(Tally& tally) {
  for (const char* name : {"unit-disk-product", "exp-radius-flat",
                           "shrinking-disk", "growing-disk"}) {
    bk::DomainFamily fam = bk::fixture_family(fx(name));
    std::vector<cplx> t = {cplx(0.3, -0.2)};
    double worst = 0.0;
    for (int s = 0; s < 64; ++s) {
      double ang = kTwoPi * s / 64.0;
      std::vector<cplx> dir = {std::polar(1.0, ang)};
      std::vector<cplx> z = bk::boundary_locate(fam, t, dir);
      bk::Jet11 jet = bk::rho_jet(fam, t, z);
      Eigen::MatrixXcd v = bk::lift_log_boundary(fam, t, z);
      Eigen::VectorXcd vrho = bk::lift_apply_to_rho(jet, v);
      worst = std::max(worst, vrho.cwiseAbs().maxCoeff());
    }
    tally.below(worst, 1e-8, std::string("lift tangency on ") + name);
  }
}

// 5. Closed-form geodesic curvature of the three scalar families, with the
// decomposition route and the direct pairing route agreeing.
void criterion_curvature_values(Tally& tally) {
  auto theta_at = [&](const char* name, std::vector<cplx> t, double ang,
                      double want, double tol) {
    bk::DomainFamily fam = bk::fixture_family(fx(name));
    std::vector<cplx> dir = {std::polar(1.0, ang)};
    std::vector<cplx> z = bk::boundary_locate(fam, t, dir);
    bk::GeodesicCurvature gc = bk::geodesic_curvature(fam, t, z);
    tally.near(gc.theta(0, 0).real(), want, tol,
               std::string("curvature value on ") + name);
    tally.below(gc.theta(0, 0).imag(), tol,
                std::string("curvature imaginary part on ") + name);
    tally.below(gc.route_gap, 1e-8, std::string("route gap on ") + name);
  };
  for (double ang : {0.3, 2.1, 4.4}) {
    theta_at("shrinking-disk", {cplx(0.4, -0.3)}, ang, 1.0, 1e-10);
    theta_at("exp-radius-flat", {cplx(0.2, 0.1)}, ang, 0.0, 1e-10);
    theta_at("growing-disk", {cplx(0.5, 0.0)}, ang, -0.8, 1e-8);
  }
}

// 6. The curvature dominates its Levi-lift part (the difference is a scaled
// rank-one square), and the flat/curved verdicts of the three curvature
// descriptions (norm tensor scan, norm value, domain value) agree.
void criterion_domination_and_equivalence(Tally& tally) {
  double min_eig = 0.0;
  for (const char* name : {"shrinking-disk", "exp-radius-flat", "growing-disk",
                           "two-parameter-disk"}) {
    bk::DomainFamily fam = bk::fixture_family(fx(name));
    std::vector<cplx> t(fam.m);
    t[0] = cplx(0.35, -0.15);
    if (fam.m > 1) t[1] = cplx(-0.2, 0.25);
    for (double ang : {0.5, 1.7, 3.9, 5.2}) {
      std::vector<cplx> dir = {std::polar(1.0, ang)};
      std::vector<cplx> z = bk::boundary_locate(fam, t, dir);
      bk::GeodesicCurvature gc = bk::geodesic_curvature(fam, t, z);
      Eigen::MatrixXcd excess = gc.theta - gc.c;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(excess);
      min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
    }
  }
  tally.at_least(min_eig, -1e-10, "smallest eigenvalue of theta minus c");

  // Flat side: the triangular family factors as |M(t) xi|^2.
  bk::NormFamily flat = bk::fixture_norm(fx("triangular-flat-norm"));
  bk::SemmesReport flat_scan = bk::semmes_flat_check(flat, 0.5, 6, 6, 1e-10);
  tally.check(flat_scan.flat, "triangular norm tensor scan not flat");
  std::vector<cplx> tf = {cplx(0.3, 0.1)};
  std::vector<cplx> zf = {cplx(0.5, 0.0), cplx(0.2, -0.1)};
  bk::ThreeWayReport flat3 = bk::three_way_check(flat, tf, zf);
  tally.below(flat3.theta_norm.cwiseAbs().maxCoeff(), 1e-10,
              "triangular norm curvature value");
  tally.below(flat3.theta_domain.cwiseAbs().maxCoeff(), 1e-8,
              "triangular ball-boundary curvature value");
  tally.below(flat3.bridge_gap, 1e-8, "triangular norm-to-domain bridge gap");

  // Curved side: e^{|t|^2} |xi|^2 keeps all three descriptions away from 0.
  bk::NormFamily curved = bk::fixture_norm(fx("scalar-curved-norm"));
  bk::SemmesReport curved_scan =
      bk::semmes_flat_check(curved, 0.5, 6, 6, 1e-10);
  tally.check(!curved_scan.flat, "curved norm tensor scan reported flat");
  std::vector<cplx> tc = {cplx(0.5, 0.0)};
  std::vector<cplx> zc = {cplx(0.3, 0.0)};
  bk::ThreeWayReport curved3 = bk::three_way_check(curved, tc, zc);
  tally.near(curved3.theta_norm(0, 0).real(), 0.09 * std::exp(0.25), 1e-10,
             "curved norm curvature value");
  tally.near(curved3.theta_domain(0, 0).real(), 1.0, 1e-8,
             "curved ball-boundary curvature value");
  tally.below(curved3.bridge_gap, 1e-8, "curved norm-to-domain bridge gap");
}

// 7. Unit-disk kernel against 1 / (2 pi (1 - zeta conj(eta))^2) and the
// reproducing identity for the constant function.
void criterion_disk_kernel(Tally& tally) {
  bk::DomainFamily fam = bk::fixture_family(fx("unit-disk-product"));
  std::vector<cplx> t = {cplx(0.0, 0.0)};
  bk::BergmanModel model = bk::build_bergman(fam, t, 30, 60, 120);
  double worst = 0.0;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) {
      cplx zeta = 0.16 * a * std::polar(1.0, 0.7 * a);
      cplx eta = 0.16 * b * std::polar(1.0, -0.5 * b);
      cplx exact = 1.0 / (kTwoPi * std::pow(1.0 - zeta * std::conj(eta), 2));
      worst = std::max(worst, std::abs(bk::kernel(model, zeta, eta) - exact));
    }
  tally.below(worst, 1e-6, "disk kernel against the closed form");

  for (cplx eta : {cplx(0.0, 0.0), cplx(0.3, 0.2)}) {
    cplx mass{0.0, 0.0};
    for (std::size_t q = 0; q < model.quad.nodes.size(); ++q)
      mass += model.wmass[q] * bk::kernel(model, eta, model.quad.nodes[q]);
    tally.below(std::abs(mass - 1.0), 1e-10, "kernel mass identity");
  }
  bk::ReproducingReport rep = bk::reproducing_check(model, 6);
  tally.below(rep.max_residual, 1e-10, "reproducing residual");
}

// 8. First variation of the kernel: closed-form radius family, then a fixed
// disk with a weight pluriharmonic in the parameter.
void criterion_first_variation(Tally& tally) {
  bk::ModelOptions opt;
  bk::DomainFamily radius = bk::fixture_family(fx("exp-radius-flat"));
  std::vector<cplx> t0 = {cplx(0.0, 0.0)};
  bk::Vf1Report rep = bk::vf1_check(radius, t0, 0, 0, cplx(0, 0), 0,
                                    cplx(0, 0), opt);
  tally.near(rep.lhs.real(), -1.0 / kTwoPi, 1e-4, "radius family derivative");
  tally.below(rep.lhs.imag(), 1e-6, "radius family derivative imaginary part");
  tally.below(std::abs(rep.rhs_interior), 1e-8, "radius family interior term");
  tally.near(rep.rhs_boundary.real(), 1.0 / kTwoPi, 1e-4,
             "radius family boundary flux");

  bk::DomainFamily product =
      bk::build_family("abs2(z1) - 1", "2*re(t1*z1)", 1, 1);
  std::vector<cplx> tp = {cplx(0.1, 0.0)};
  bk::Vf1Report prep =
      bk::vf1_check(product, tp, 0, 0, cplx(0.2, 0.0), 0, cplx(0.3, 0.0), opt);
  tally.below(prep.residual / std::max(1.0, std::abs(prep.lhs)), 2e-4,
              "pluriharmonic-weight product residual");
  tally.below(std::abs(prep.rhs_boundary), 1e-10,
              "fixed-fibre boundary flux");
}

// 9. Subharmonicity of log dual norms over the base: value 1 on the
// shrinking disk, nonnegative for derivative and current functionals on the
// well-behaved fixtures, and a clean negative flag on the growing disk.
void criterion_psh_scans(Tally& tally) {
  bk::ModelOptions opt;
  bk::DomainFamily shrinking = bk::fixture_family(fx("shrinking-disk"));
  bk::DomainFamily weighted = bk::fixture_family(fx("gaussian-weighted-disk"));

  bk::FunctionalSpec eval0;
  bk::PshScan base = bk::psh_scan(shrinking, eval0, cplx(0, 0), 0.3, 3, opt);
  for (double v : base.ddbar)
    tally.near(v, 1.0, 1e-3, "shrinking-disk log kernel curvature");

  for (int alpha : {0, 1, 2}) {
    bk::FunctionalSpec spec;
    spec.alpha = alpha;
    spec.at = cplx(0.1, 0.0);
    bk::PshScan scan = bk::psh_scan(shrinking, spec, cplx(0, 0), 0.3, 3, opt);
    tally.at_least(scan.min_ddbar, -1e-3,
                   "shrinking-disk derivative functional order " +
                       std::to_string(alpha));
    bk::PshScan wscan = bk::psh_scan(weighted, spec, cplx(0, 0), 0.3, 3, opt);
    tally.at_least(wscan.min_ddbar, -1e-3,
                   "weighted-disk derivative functional order " +
                       std::to_string(alpha));
  }
  bk::FunctionalSpec current;
  current.kind = bk::FunctionalSpec::Kind::DiskCurrent;
  current.at = cplx(0.1, 0.0);
  current.radius = 0.3;
  bk::PshScan cscan = bk::psh_scan(shrinking, current, cplx(0, 0), 0.3, 3, opt);
  tally.at_least(cscan.min_ddbar, -1e-3, "compact current functional");

  bk::DomainFamily growing = bk::fixture_family(fx("growing-disk"));
  bk::PshScan bad =
      bk::psh_scan(growing, eval0, cplx(0, 0), 0.01, 3, opt, 1e-3);
  tally.check(!bad.subharmonic, "growing-disk scan not flagged");
  tally.near(bad.min_ddbar, -1.0, 1e-3, "growing-disk diagnostic value");

  bk::SteinReport good = bk::stein_check(shrinking, cplx(0, 0), 0.4, 6, 12);
  tally.check(good.pseudoconvex && good.weight_psh,
              "shrinking-disk total space misdiagnosed");
  bk::SteinReport flagged = bk::stein_check(growing, cplx(0, 0), 0.4, 6, 12);
  tally.check(!flagged.pseudoconvex, "growing-disk total space not flagged");
}

// 10. Second variation on fixed-fibre families with weights pluriharmonic
// in the parameter.
void criterion_second_variation(Tally& tally) {
  bk::ModelOptions opt;
  std::vector<cplx> t = {cplx(0.2, 0.0)};
  bk::DomainFamily zfree = bk::build_family("abs2(z1) - 1", "2*re(t1)", 1, 1);
  bk::Vf2Report rep =
      bk::vf2_product_check(zfree, t, 0, cplx(0.1, 0.0), 0, cplx(0.3, 0.0), opt);
  tally.below(rep.residual / std::max(1.0, std::abs(rep.lhs)), 1e-3,
              "z-free weight residual");

  bk::DomainFamily coupled =
      bk::build_family("abs2(z1) - 1", "2*re(t1*z1)", 1, 1);
  bk::Vf2Report crep = bk::vf2_product_check(coupled, t, 0, cplx(0.1, 0.0), 0,
                                             cplx(0.3, 0.0), opt);
  tally.below(crep.residual / std::max(1.0, std::abs(crep.lhs)), 1e-3,
              "coupled weight residual");
}

// 11. Motions of the disk: flatness integral value, triviality verdicts on
// the three reference motions, and Levi-flatness of the swept boundary.
void criterion_motions(Tally& tally) {
  bk::ModelOptions opt;
  bk::Motion half = bk::fixture_motion(fx("half-shear-motion"));
  for (cplx eta : {cplx(0.0, 0.0), cplx(0.2, 0.1)}) {
    cplx flat = bk::motion_flatness(half, cplx(0, 0), eta, opt);
    tally.near(flat.real(), 0.5, 1e-6, "half-shear flatness integral");
    tally.below(flat.imag(), 1e-6, "half-shear flatness imaginary part");
  }

  bk::MotionTriviality id = bk::motion_trivial_check(
      bk::fixture_motion(fx("identity-motion")), 0.5, 5, opt);
  tally.check(id.trivial, "identity motion not reported trivial");
  tally.below(id.max_flatness, 1e-8, "identity motion flatness bound");
  bk::MotionTriviality sheared =
      bk::motion_trivial_check(half, 0.5, 5, opt);
  tally.check(!sheared.trivial, "half-shear motion reported trivial");
  bk::MotionTriviality quad = bk::motion_trivial_check(
      bk::fixture_motion(fx("quadratic-shear-motion")), 0.5, 5, opt);
  tally.check(!quad.trivial,
              "quadratic shear (invisible at the centre) reported trivial");

  for (const char* name : {"half-shear-motion", "quadratic-shear-motion"}) {
    bk::InterpolationReport swept = bk::motion_levi_flat_check(
        bk::fixture_motion(fx(name)), 0.4, 4, 12, 1e-6);
    tally.check(swept.flat,
                std::string("swept boundary of ") + name + " not flat");
    tally.below(swept.max_theta_norm, 1e-6,
                std::string("swept boundary curvature of ") + name);
  }
}

// 12. Transport identity for integrals over moving interval fibres.
void criterion_fibre_transport(Tally& tally) {
  bk::DomainFamily moving = bk::build_family("z1*(z1 - 1 - t1)", "", 1, 1);
  bk::FibreDerivativeReport rep = bk::fibre_derivative_check(
      moving, 0.0, 0.5, bk::parse_expr("x^2", 1, 1),
      bk::parse_expr("x / (1 + t)", 1, 1));
  tally.near(rep.lhs, 1.0, 1e-6, "moving fibre derivative");
  tally.near(rep.rhs, 1.0, 1e-6, "moving fibre transport integral");

  bk::DomainFamily fixed = bk::build_family("z1*(z1 - 1)", "", 1, 1);
  bk::FibreDerivativeReport frep = bk::fibre_derivative_check(
      fixed, 0.3, 0.5, bk::parse_expr("t * x", 1, 1),
      bk::parse_expr("0", 1, 1));
  tally.near(frep.lhs, 0.5, 1e-6, "fixed fibre derivative");
  tally.near(frep.rhs, 0.5, 1e-6, "fixed fibre transport integral");
}

struct Criterion {
  const char* label;
  double budget_s;
  std::function<void(Tally&)> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"interval curvature decomposition on random polynomial families", 1.0,
       criterion_toy_decomposition},
      {"slack positivity and convex-total-space geodesic sign", 1.0,
       criterion_toy_positivity},
      {"gaussian convexity scans", 5.0, criterion_convexity_scans},
      {"boundary lift tangency on four domain families", 5.0,
       criterion_lift_tangency},
      {"closed-form geodesic curvature values via both routes", 5.0,
       criterion_curvature_values},
      {"curvature domination and norm/domain equivalences", 5.0,
       criterion_domination_and_equivalence},
      {"unit-disk kernel and reproducing identity", 10.0,
       criterion_disk_kernel},
      {"first variation of kernel derivatives", 60.0,
       criterion_first_variation},
      {"subharmonicity scans of log dual norms", 120.0, criterion_psh_scans},
      {"second variation on pluriharmonic product families", 60.0,
       criterion_second_variation},
      {"motion flatness, triviality verdicts, swept boundary", 30.0,
       criterion_motions},
      {"transport identity on moving interval fibres", 1.0,
       criterion_fibre_transport},
  };

  int passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Tally tally;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].body(tally);
    } catch (const std::exception& e) {
      tally.failures.push_back(std::string("exception: ") + e.what());
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (elapsed > criteria[i].budget_s) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "runtime %.2f s exceeds budget %.0f s",
                    elapsed, criteria[i].budget_s);
      tally.failures.push_back(buf);
    }
    bool ok = tally.failures.empty();
    if (ok) ++passed;
    std::printf("%2zu  %s  %s  [%.2f s]\n", i + 1, ok ? "PASS" : "FAIL",
                criteria[i].label, elapsed);
    for (const std::string& why : tally.failures)
      std::printf("      - %s\n", why.c_str());
  }
  std::printf("%d/%zu criteria passed\n", passed, criteria.size());
  return passed == int(criteria.size()) ? 0 : 1;
}
