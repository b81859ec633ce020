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

#include "scenario.hpp"

#include <chrono>
#include <fstream>

#include "bergman.hpp"
#include "fixtures.hpp"
#include "lifts.hpp"
#include "motion.hpp"
#include "normfam.hpp"
#include "quadrature.hpp"
#include "realtoy.hpp"
#include "variation.hpp"

namespace bk {

std::string csv_encode(const Table& table) {
  auto field = [](const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += "\"\"";
      else out += c;
    }
    out += '"';
    return out;
  };
  std::string out;
  auto row = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += field(cells[i]);
    }
    out += "\r\n";
  };
  row(table.header);
  for (const auto& r : table.rows) row(r);
  return out;
}

njson fixtures_json() {
  njson arr = njson::array();
  for (const FixtureDef& f : fixture_catalog()) {
    njson one;
    one["name"] = f.name;
    one["kind"] = f.kind;
    one["summary"] = f.summary;
    arr.push_back(std::move(one));
  }
  return arr;
}

namespace {

[[noreturn]] void bad(const std::string& msg) {
  throw Error{ErrCode::Invalid, "scenario: " + msg};
}

cplx jcplx(const njson& j) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return cplx(j[0].get<double>(), j[1].get<double>());
  bad("expected a number or [re, im] pair");
}

std::vector<cplx> jcvec(const njson& j) {
  if (!j.is_array()) bad("expected an array of points");
  std::vector<cplx> out;
  for (const njson& e : j) out.push_back(jcplx(e));
  return out;
}

njson jofc(cplx v) { return njson::array({v.real(), v.imag()}); }

njson jofmat(const MatrixXcd& a) {
  njson rows = njson::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    njson r = njson::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) r.push_back(jofc(a(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

const FixtureDef& fixture_of(const njson& sc) {
  std::string name = sc.at("fixture").get<std::string>();
  const FixtureDef* fx = find_fixture(name);
  if (!fx) bad("unknown fixture " + name);
  return *fx;
}

DomainFamily family_from(const njson& sc) {
  if (sc.contains("fixture")) return fixture_family(fixture_of(sc));
  if (!sc.contains("rho")) bad("needs a fixture or rho");
  return build_family(sc.at("rho").get<std::string>(),
                      sc.value("phi", std::string()), sc.value("m", 1),
                      sc.value("n", 1));
}

NormFamily norm_from(const njson& sc) {
  if (sc.contains("fixture")) return fixture_norm(fixture_of(sc));
  if (!sc.contains("entries")) bad("needs a fixture or entries");
  std::vector<std::string> entries;
  for (const njson& e : sc.at("entries")) entries.push_back(e.get<std::string>());
  return build_norm_family(entries, sc.value("m", 1), sc.value("n", 1));
}

Motion motion_from(const njson& sc) {
  if (sc.contains("fixture")) return fixture_motion(fixture_of(sc));
  if (sc.contains("a")) return affine_motion(sc.at("a").get<std::string>());
  if (sc.contains("f"))
    return build_motion(sc.at("f").get<std::string>(),
                        sc.value("finv", std::string()));
  bad("needs a fixture, a, or f");
}

ToyFamily toy_from(const njson& sc) {
  if (sc.contains("fixture")) return fixture_toy(fixture_of(sc));
  if (!sc.contains("a") || !sc.contains("b")) bad("needs a fixture or a and b");
  return build_toy(sc.at("a").get<std::string>(),
                   sc.at("b").get<std::string>());
}

ExprP weight_from(const njson& sc) {
  if (sc.contains("fixture")) return fixture_weight(fixture_of(sc));
  if (!sc.contains("phi")) bad("needs a fixture or phi");
  return parse_expr(sc.at("phi").get<std::string>(), 1, 1);
}

ModelOptions model_opts_from(const njson& sc) {
  ModelOptions opt;
  if (sc.contains("model")) {
    const njson& mo = sc.at("model");
    opt.degree = mo.value("degree", opt.degree);
    opt.radial = mo.value("radial", opt.radial);
    opt.angular = mo.value("angular", opt.angular);
  }
  return opt;
}

FunctionalSpec functional_from(const njson& j) {
  FunctionalSpec spec;
  std::string type = j.value("type", std::string("point"));
  if (type == "point") {
    spec.kind = FunctionalSpec::Kind::PointDeriv;
  } else if (type == "disk") {
    spec.kind = FunctionalSpec::Kind::DiskCurrent;
    spec.radius = j.at("radius").get<double>();
  } else {
    bad("functional type must be point or disk");
  }
  spec.alpha = j.value("alpha", 0);
  if (j.contains("at")) spec.at = jcplx(j.at("at"));
  return spec;
}

std::vector<double> ts_from(const njson& sc, const RunOptions& opt,
                            double dmin, double dmax, int dcount) {
  if (sc.contains("ts")) {
    std::vector<double> ts;
    for (const njson& e : sc.at("ts")) ts.push_back(e.get<double>());
    if (ts.empty()) bad("ts must not be empty");
    return ts;
  }
  double lo = sc.value("t_min", dmin);
  double hi = sc.value("t_max", dmax);
  int count = sc.value("count", dcount);
  if (opt.grid > 0) count = opt.grid;
  if (count < 1 || hi < lo) bad("bad t range");
  std::vector<double> ts;
  for (int k = 0; k < count; ++k)
    ts.push_back(count == 1 ? lo : lo + (hi - lo) * k / (count - 1));
  return ts;
}

// Accumulates named verdicts; every limit is scaled by tol_scale.
struct CheckSet {
  njson arr = njson::array();
  bool pass = true;
  double scale = 1.0;

  void add(njson item, bool ok) {
    item["pass"] = ok;
    pass = pass && ok;
    arr.push_back(std::move(item));
  }
  // |value| below the scaled limit
  void below(const std::string& name, double value, double limit) {
    double lim = limit * scale;
    add({{"name", name}, {"value", value}, {"limit", lim}},
        std::abs(value) < lim);
  }
  // value at least the (negated, scaled) slack: value >= -limit*scale
  void at_least(const std::string& name, double value, double slack) {
    double lim = -slack * scale;
    add({{"name", name}, {"value", value}, {"limit", lim}}, value >= lim);
  }
  void near(const std::string& name, cplx value, cplx want, double tol) {
    double lim = tol * scale;
    double gap = std::abs(value - want);
    add({{"name", name},
         {"value", jofc(value)},
         {"want", jofc(want)},
         {"gap", gap},
         {"limit", lim}},
        gap < lim);
  }
  void near_real(const std::string& name, double value, double want,
                 double tol) {
    double lim = tol * scale;
    double gap = std::abs(value - want);
    add({{"name", name},
         {"value", value},
         {"want", want},
         {"gap", gap},
         {"limit", lim}},
        gap < lim);
  }
  void truth(const std::string& name, bool got, bool want) {
    add({{"name", name}, {"value", got}, {"want", want}}, got == want);
  }
};

void run_toy(const njson& sc, const RunOptions& opt, CheckSet& cs, njson& data,
             std::vector<Table>& tables) {
  ToyFamily fam = toy_from(sc);
  std::vector<double> ts = ts_from(sc, opt, -0.5, 0.5, 11);
  std::vector<ToyRow> rows = toy_report(fam, ts);

  double max_residual = 0.0;
  for (const ToyRow& r : rows) max_residual = std::max(max_residual, r.residual);
  cs.below("decomposition residual", max_residual, sc.value("tol", 1e-10));

  // independent finite-difference oracle at three of the grid points
  double fd_gap = 0.0;
  for (std::size_t idx : {std::size_t(0), rows.size() / 2, rows.size() - 1}) {
    double fd = toy_fd_phiddot(fam, rows[idx].t);
    fd_gap = std::max(fd_gap, std::abs(fd - rows[idx].phiddot));
  }
  cs.below("second derivative vs finite differences", fd_gap,
           sc.value("fd_tol", 1e-6));

  if (sc.contains("expect_trivial")) {
    ToyTriviality tr = toy_triviality(fam, ts, 1e-8 * cs.scale);
    cs.truth("translation family", tr.trivial,
             sc.at("expect_trivial").get<bool>());
    data["speed"] = tr.speed;
  }

  Table tab;
  tab.name = "rows";
  tab.header = {"t",       "a",       "b",   "adot",    "bdot",
                "addot",   "bddot",   "phi", "phiddot", "geo",
                "slack",   "residual"};
  for (const ToyRow& r : rows)
    tab.rows.push_back({format_double(r.t), format_double(r.a), format_double(r.b),
                        format_double(r.adot), format_double(r.bdot),
                        format_double(r.addot), format_double(r.bddot),
                        format_double(r.phi), format_double(r.phiddot),
                        format_double(r.geo), format_double(r.r),
                        format_double(r.residual)});
  tables.push_back(std::move(tab));
  data["max_residual"] = max_residual;
  data["points"] = rows.size();
}

void run_convexity(const njson& sc, const RunOptions& opt, CheckSet& cs,
                   njson& data, std::vector<Table>& tables) {
  ExprP phi = weight_from(sc);
  std::string mode_s = sc.value("mode", std::string("log"));
  ConvexMode mode;
  if (mode_s == "log") mode = ConvexMode::Holder;
  else if (mode_s == "minus-log") mode = ConvexMode::Prekopa;
  else bad("mode must be log or minus-log");

  std::vector<double> ts = ts_from(sc, opt, -0.3, 0.3, 5);
  ConvexityScan scan = convexity_scan(phi, mode, ts, 1e-9 * cs.scale);
  cs.truth("convex in t", scan.convex, sc.value("expect_convex", true));
  if (sc.contains("expect_fddot")) {
    double want = sc.at("expect_fddot").get<double>();
    double gap = 0.0;
    for (const ConvexityRow& r : scan.rows)
      gap = std::max(gap, std::abs(r.fddot - want));
    cs.below("second derivative against closed form", gap,
             sc.value("tol", 1e-4));
  }
  Table tab;
  tab.name = "rows";
  tab.header = {"t", "f", "fddot"};
  for (const ConvexityRow& r : scan.rows)
    tab.rows.push_back({format_double(r.t), format_double(r.f), format_double(r.fddot)});
  tables.push_back(std::move(tab));
  data["min_fddot"] = scan.min_fddot;
}

void run_tangency(const njson& sc, const RunOptions& opt, CheckSet& cs,
                  njson& data, std::vector<Table>&) {
  DomainFamily fam = family_from(sc);
  std::vector<cplx> t = jcvec(sc.at("t"));
  int samples = sc.value("samples", 16);
  if (opt.grid > 0) samples = opt.grid;

  A2Report a2 = a2_check(fam, t, samples);
  cs.truth("strictly convex fibres with steep boundary", a2.ok, true);

  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    std::vector<cplx> dir(fam.n, 0.0);
    if (fam.n == 1) {
      dir[0] = std::exp(cplx(0.0, 2.0 * M_PI * k / samples));
    } else {
      for (int a = 0; a < fam.n; ++a)
        dir[a] = std::exp(cplx(0.0, 2.0 * M_PI * (k + a * 0.37) / samples)) *
                 (1.0 + 0.2 * a);
    }
    std::vector<cplx> zb = boundary_locate(fam, t, dir);
    Jet11 jet = rho_jet(fam, t, zb);
    MatrixXcd v = lift_log_boundary(fam, t, zb);
    VectorXcd vr = lift_apply_to_rho(jet, v);
    worst = std::max(worst, vr.cwiseAbs().maxCoeff());
  }
  cs.below("boundary lift tangency", worst, sc.value("tol", 1e-8));
  data["min_levi_eig"] = a2.min_levi_eig;
  data["samples"] = samples;
}

void run_geodesic(const njson& sc, const RunOptions&, CheckSet& cs, njson& data,
                  std::vector<Table>&) {
  DomainFamily fam = family_from(sc);
  std::vector<cplx> t = jcvec(sc.at("t"));
  std::vector<cplx> z;
  if (sc.contains("dir")) z = boundary_locate(fam, t, jcvec(sc.at("dir")));
  else z = jcvec(sc.at("z"));

  GeodesicCurvature gc =
      geodesic_curvature(fam, t, z, 1e-8 * cs.scale);
  cs.below("route agreement", gc.route_gap, 1e-8);

  // theta - c is a positive multiple of a rank-one projector by construction;
  // its smallest eigenvalue must not dip below zero.
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(gc.theta - gc.c);
  cs.at_least("curvature dominates the Levi part", es.eigenvalues().minCoeff(),
              sc.value("psd_tol", 1e-10));

  if (sc.contains("expect_theta")) {
    const njson& want = sc.at("expect_theta");
    double gap = 0.0;
    for (int j = 0; j < fam.m; ++j)
      for (int k = 0; k < fam.m; ++k)
        gap = std::max(gap, std::abs(gc.theta(j, k) - jcplx(want.at(j).at(k))));
    cs.below("curvature against expectation", gap, sc.value("tol", 1e-8));
  }
  data["theta"] = jofmat(gc.theta);
  data["c"] = jofmat(gc.c);
  data["route_gap"] = gc.route_gap;
  data["z"] = [&] {
    njson a = njson::array();
    for (cplx v : z) a.push_back(jofc(v));
    return a;
  }();
}

void run_interpolation(const njson& sc, const RunOptions& opt, CheckSet& cs,
                       njson& data, std::vector<Table>&) {
  DomainFamily fam = family_from(sc);
  std::vector<cplx> t = jcvec(sc.at("t"));
  int samples = sc.value("samples", 16);
  if (opt.grid > 0) samples = opt.grid;
  InterpolationReport rep =
      interpolation_check(fam, t, samples, sc.value("tol", 1e-8) * cs.scale);
  cs.truth("flat curvature verdict", rep.flat, sc.value("expect_flat", true));
  cs.below("route agreement", rep.max_route_gap, 1e-8);
  data["max_theta_norm"] = rep.max_theta_norm;
  data["samples"] = rep.samples;
}

void run_norm(const njson& sc, const RunOptions& opt, CheckSet& cs, njson& data,
              std::vector<Table>&) {
  NormFamily nf = norm_from(sc);
  if (sc.contains("flat_scan")) {
    const njson& fs = sc.at("flat_scan");
    int base = fs.value("base_samples", 12);
    if (opt.grid > 0) base = opt.grid;
    SemmesReport rep =
        semmes_flat_check(nf, fs.value("radius", 0.5), base,
                          fs.value("fibre_samples", 6),
                          fs.value("tol", 1e-10) * cs.scale);
    cs.truth("flat norm verdict", rep.flat, fs.value("expect_flat", true));
    data["max_abs_theta"] = rep.max_abs_theta;
  }
  if (sc.contains("bridge")) {
    const njson& br = sc.at("bridge");
    std::vector<cplx> t = jcvec(br.at("t"));
    std::vector<cplx> z = jcvec(br.at("z"));
    ThreeWayReport rep = three_way_check(nf, t, z);
    double tol = br.value("tol", 1e-8);
    cs.below("norm to domain bridge", rep.bridge_gap, tol);
    cs.below("domain route agreement", rep.route_gap, tol);
    cs.below("quadratic lift drift", rep.vhat_max, tol);
    if (br.contains("expect_theta")) {
      const njson& want = br.at("expect_theta");
      double gap = 0.0;
      for (int j = 0; j < nf.m; ++j)
        for (int k = 0; k < nf.m; ++k)
          gap = std::max(gap,
                         std::abs(rep.theta_norm(j, k) - jcplx(want.at(j).at(k))));
      cs.below("norm curvature against expectation", gap, tol);
    }
    data["theta_norm"] = jofmat(rep.theta_norm);
    data["q"] = rep.q;
  }
}

void run_bergman(const njson& sc, const RunOptions&, CheckSet& cs, njson& data,
                 std::vector<Table>&) {
  DomainFamily fam = family_from(sc);
  std::vector<cplx> t = jcvec(sc.at("t"));
  ModelOptions opt = model_opts_from(sc);
  BergmanModel mdl = build_bergman(fam, t, opt.degree, opt.radial, opt.angular);

  ReproducingReport rp = reproducing_check(mdl, sc.value("trials", 6));
  cs.below("reproducing residual", rp.max_residual, sc.value("tol", 1e-9));

  if (sc.contains("kernel")) {
    int idx = 0;
    for (const njson& kr : sc.at("kernel")) {
      cplx zeta = jcplx(kr.at("zeta"));
      cplx eta = jcplx(kr.at("eta"));
      cplx got = kernel_deriv(mdl, kr.value("alpha", 0), kr.value("beta", 0),
                              zeta, eta);
      cs.near("kernel value " + std::to_string(idx++), got,
              jcplx(kr.at("expect")), kr.value("tol", 1e-8));
    }
  }
  if (sc.contains("extremal")) {
    const njson& ex = sc.at("extremal");
    VectorXcd d = functional_moments(mdl, functional_from(ex.at("functional")));
    ExtremalReport er = extremal_check(mdl, d);
    cs.below("extremal attainment gap", er.gap, ex.value("tol", 1e-10));
    data["dual_norm"] = er.norm;
  }
  data["rank"] = mdl.rank;
  data["dropped"] = mdl.dropped;
}

void run_vf1(const njson& sc, const RunOptions&, CheckSet& cs, njson& data,
             std::vector<Table>&) {
  DomainFamily fam = family_from(sc);
  std::vector<cplx> t = jcvec(sc.at("t"));
  ModelOptions opt = model_opts_from(sc);
  Vf1Report rep = vf1_check(fam, t, sc.value("j", 0), sc.value("alpha", 0),
                            sc.contains("zeta") ? jcplx(sc.at("zeta")) : 0.0,
                            sc.value("beta", 0),
                            sc.contains("eta") ? jcplx(sc.at("eta")) : 0.0, opt,
                            sc.value("fd_h", 1e-3));
  double rel = std::max(1.0, std::abs(rep.lhs));
  cs.below("first variation residual", rep.residual / rel,
           sc.value("tol", 1e-4));
  if (sc.contains("expect_lhs"))
    cs.near("kernel derivative", rep.lhs, jcplx(sc.at("expect_lhs")),
            sc.value("value_tol", 1e-4));
  if (sc.contains("expect_boundary"))
    cs.near("boundary flux", rep.rhs_boundary, jcplx(sc.at("expect_boundary")),
            sc.value("value_tol", 1e-4));
  data["lhs"] = jofc(rep.lhs);
  data["rhs_interior"] = jofc(rep.rhs_interior);
  data["rhs_boundary"] = jofc(rep.rhs_boundary);
}

void run_vf2(const njson& sc, const RunOptions&, CheckSet& cs, njson& data,
             std::vector<Table>&) {
  DomainFamily fam = family_from(sc);
  std::vector<cplx> t = jcvec(sc.at("t"));
  ModelOptions opt = model_opts_from(sc);
  Vf2Report rep = vf2_product_check(
      fam, t, sc.value("alpha", 0),
      sc.contains("zeta") ? jcplx(sc.at("zeta")) : 0.0, sc.value("beta", 0),
      sc.contains("eta") ? jcplx(sc.at("eta")) : 0.0, opt,
      sc.value("fd_h", 1e-3));
  double rel = std::max(1.0, std::abs(rep.lhs));
  cs.below("second variation residual", rep.residual / rel,
           sc.value("tol", 1e-3));
  if (sc.contains("expect"))
    cs.near("second derivative", rep.lhs, jcplx(sc.at("expect")),
            sc.value("value_tol", 1e-3));
  data["lhs"] = jofc(rep.lhs);
  data["rhs"] = jofc(rep.rhs);
}

void run_psh(const njson& sc, const RunOptions& ropt, CheckSet& cs, njson& data,
             std::vector<Table>& tables) {
  DomainFamily fam = family_from(sc);
  FunctionalSpec spec;
  if (sc.contains("functional")) spec = functional_from(sc.at("functional"));
  cplx centre = sc.contains("centre") ? jcplx(sc.at("centre")) : 0.0;
  int grid = sc.value("grid", 9);
  if (ropt.grid > 0) grid = ropt.grid;
  ModelOptions mopt = model_opts_from(sc);
  PshScan scan = psh_scan(fam, spec, centre, sc.value("radius", 0.04), grid,
                          mopt, sc.value("tol", 1e-3) * cs.scale);
  cs.truth("log dual norm subharmonic", scan.subharmonic,
           sc.value("expect_subharmonic", true));
  if (sc.contains("expect_ddbar")) {
    double want = sc.at("expect_ddbar").get<double>();
    double gap = 0.0;
    for (double v : scan.ddbar) gap = std::max(gap, std::abs(v - want));
    cs.below("curvature level against closed form", gap,
             sc.value("ddbar_tol", 1e-2));
  }
  if (sc.contains("stein")) {
    const njson& st = sc.at("stein");
    SteinReport rep = stein_check(
        fam, centre, st.value("radius", 0.3), st.value("base_samples", 5),
        st.value("boundary_samples", 12), st.value("tol", 1e-8) * cs.scale);
    cs.truth("total space pseudoconvex", rep.pseudoconvex,
             st.value("expect_pseudoconvex", true));
    cs.truth("weight plurisubharmonic", rep.weight_psh,
             st.value("expect_weight_psh", true));
    data["min_tangential"] = rep.min_tangential;
    data["min_weight_eig"] = rep.min_weight_eig;
  }

  Table tab;
  tab.name = "ddbar";
  tab.header = {"t_im"};
  for (int ix = 0; ix < grid; ++ix)
    tab.header.push_back(format_double(centre.real() - sc.value("radius", 0.04) +
                                    ix * scan.spacing));
  for (int iy = 0; iy < grid; ++iy) {
    std::vector<std::string> row;
    row.push_back(format_double(centre.imag() - sc.value("radius", 0.04) +
                             iy * scan.spacing));
    for (int ix = 0; ix < grid; ++ix)
      row.push_back(format_double(scan.ddbar[std::size_t(iy) * grid + ix]));
    tab.rows.push_back(std::move(row));
  }
  tables.push_back(std::move(tab));
  data["min_ddbar"] = scan.min_ddbar;
  data["spacing"] = scan.spacing;
}

void run_motion(const njson& sc, const RunOptions&, CheckSet& cs, njson& data,
                std::vector<Table>&) {
  Motion mo = motion_from(sc);
  ModelOptions opt = model_opts_from(sc);
  if (sc.contains("flatness")) {
    int idx = 0;
    for (const njson& fl : sc.at("flatness")) {
      cplx t0 = jcplx(fl.at("t0"));
      cplx eta = fl.contains("eta") ? jcplx(fl.at("eta")) : 0.0;
      cplx got = motion_flatness(mo, t0, eta, opt);
      cs.near("flatness integral " + std::to_string(idx++), got,
              jcplx(fl.at("expect")), fl.value("tol", 1e-6));
    }
  }
  if (sc.contains("trivial_scan")) {
    const njson& tr = sc.at("trivial_scan");
    MotionTriviality rep =
        motion_trivial_check(mo, tr.value("radius", 0.5),
                             tr.value("samples", 5), opt,
                             tr.value("tol", 1e-8) * cs.scale);
    cs.truth("conformal motion verdict", rep.trivial,
             tr.value("expect_trivial", false));
    data["max_beltrami"] = rep.max_beltrami;
    data["max_flatness"] = rep.max_flatness;
  }
  if (sc.contains("levi_flat")) {
    const njson& lf = sc.at("levi_flat");
    InterpolationReport rep = motion_levi_flat_check(
        mo, lf.value("radius", 0.4), lf.value("t_samples", 4),
        lf.value("boundary_samples", 12), lf.value("tol", 1e-6) * cs.scale);
    cs.below("swept boundary curvature", rep.max_theta_norm,
             lf.value("tol", 1e-6));
    data["levi_flat_samples"] = rep.samples;
  }
}

void run_fibre_derivative(const njson& sc, const RunOptions&, CheckSet& cs,
                          njson& data, std::vector<Table>&) {
  DomainFamily fam = family_from(sc);
  ExprP f = parse_expr(sc.at("f").get<std::string>(), 1, 1);
  ExprP w = parse_expr(sc.value("w", std::string("0")), 1, 1);
  FibreDerivativeReport rep = fibre_derivative_check(
      fam, sc.value("t", 0.0), sc.value("x_seed", 0.0), f, w,
      sc.value("order", 64), sc.value("fd_h", 1e-4));
  cs.below("endpoint tangency", rep.tangency, sc.value("tangency_tol", 1e-8));
  cs.below("transport residual", rep.residual, sc.value("tol", 1e-6));
  if (sc.contains("expect"))
    cs.near_real("derivative of the fibre integral", rep.lhs,
                 sc.at("expect").get<double>(), sc.value("value_tol", 1e-6));
  data["lhs"] = rep.lhs;
  data["rhs"] = rep.rhs;
}

}  // namespace

RunResult run_scenario(const njson& scenario, const RunOptions& opt) {
  auto start = std::chrono::steady_clock::now();
  RunResult result;
  CheckSet cs;
  cs.scale = opt.tol_scale;
  njson data;

  std::string kind;
  try {
    kind = scenario.at("kind").get<std::string>();
    if (kind == "toy") run_toy(scenario, opt, cs, data, result.tables);
    else if (kind == "convexity")
      run_convexity(scenario, opt, cs, data, result.tables);
    else if (kind == "tangency")
      run_tangency(scenario, opt, cs, data, result.tables);
    else if (kind == "geodesic")
      run_geodesic(scenario, opt, cs, data, result.tables);
    else if (kind == "interpolation")
      run_interpolation(scenario, opt, cs, data, result.tables);
    else if (kind == "norm") run_norm(scenario, opt, cs, data, result.tables);
    else if (kind == "bergman")
      run_bergman(scenario, opt, cs, data, result.tables);
    else if (kind == "vf1") run_vf1(scenario, opt, cs, data, result.tables);
    else if (kind == "vf2") run_vf2(scenario, opt, cs, data, result.tables);
    else if (kind == "psh") run_psh(scenario, opt, cs, data, result.tables);
    else if (kind == "motion")
      run_motion(scenario, opt, cs, data, result.tables);
    else if (kind == "fibre_derivative")
      run_fibre_derivative(scenario, opt, cs, data, result.tables);
    else bad("unknown kind " + kind);
  } catch (const njson::exception& e) {
    throw Error{ErrCode::Invalid, std::string("scenario: ") + e.what()};
  }

  njson report;
  report["scenario"] = scenario.value("name", std::string("unnamed"));
  report["kind"] = kind;
  report["scenario_hash"] = fnv1a64_hex(scenario.dump());
  report["tol_scale"] = opt.tol_scale;
  report["checks"] = std::move(cs.arr);
  report["data"] = std::move(data);
  report["pass"] = cs.pass;
  njson names = njson::array();
  for (const Table& t : result.tables) names.push_back(t.name);
  report["tables"] = std::move(names);
  if (opt.timings) {
    std::chrono::duration<double, std::milli> ms =
        std::chrono::steady_clock::now() - start;
    report["timing_ms"] = ms.count();
  }
  result.report = std::move(report);
  result.pass = cs.pass;
  return result;
}

RunResult run_scenario_text(const std::string& text, const RunOptions& opt) {
  njson sc = njson::parse(text, nullptr, false);
  if (sc.is_discarded())
    throw Error{ErrCode::Parse, "scenario is not valid JSON"};
  return run_scenario(sc, opt);
}

RunResult run_scenario_file(const std::string& path, const RunOptions& opt) {
  std::ifstream in(path);
  if (!in) throw Error{ErrCode::Io, "cannot open " + path};
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return run_scenario_text(text, opt);
}

}  // namespace bk
