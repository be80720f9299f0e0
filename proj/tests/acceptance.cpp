// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run via ctest (test name "acceptance") or directly.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "warpcurv/config.hpp"
#include "warpcurv/errors.hpp"
#include "warpcurv/grid_ops.hpp"
#include "warpcurv/runner.hpp"
#include "warpcurv/verifier.hpp"

using namespace warpcurv;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s  (%s)\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  if (!pass) ++failures;
}

void run_criterion(int id, const std::string& title, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    const auto [pass, detail] = body();
    report(id, title, pass, detail);
  } catch (const std::exception& e) {
    report(id, title, false, std::string("exception: ") + e.what());
  }
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string read_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot read " + path);
  std::ostringstream os;
  os << file.rdbuf();
  return os.str();
}

char buf[512];

WarpedAmbient torus2() { return WarpedAmbient::torus(2, {1.0, 1.0}); }

TorusGraphFamily graph_a() {
  TorusGraphFamily g;
  g.modes = {FourierMode{{1, 0}, 0.3, 0.0}, FourierMode{{0, 1}, 0.0, 0.1}};
  return g;
}

TorusGraphFamily graph_b() {
  TorusGraphFamily g;
  g.modes = {FourierMode{{1, 0}, 0.02, 0.0}, FourierMode{{0, 1}, 0.0, 0.005}};
  return g;
}

TorusGraphFamily graph_c() {
  TorusGraphFamily g;
  g.base = 0.3;
  g.modes = {FourierMode{{1, 0}, 0.01, 0.0}};
  return g;
}

const Tolerances kTol;

// Frozen regression baseline for the Heintze-Karcher deficit of graph_b at
// resolution 128 (computed once by this implementation; drift bar 1e-6
// relative).
constexpr double kHkGraphBaselineRes128 = 0.09779817286367419;

} // namespace

int main() {
  const auto suite_start = std::chrono::steady_clock::now();

  run_criterion(1, "ambient potential identities at 1000 seeded points", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const PotentialSelfTest rep = potential_selftest(torus2(), 1000, 42);
    const double dt = seconds_since(t0);
    const bool pass =
        rep.max_hess_closed_dev < 1e-12 && rep.max_hess_fd_dev < 1e-6 && rep.max_trace_dev < 1e-12 && dt < 1.0;
    std::snprintf(buf, sizeof buf, "closed=%.2e fd=%.2e trace=%.2e runtime=%.2fs", rep.max_hess_closed_dev,
                  rep.max_hess_fd_dev, rep.max_trace_dev, dt);
    return std::make_pair(pass, std::string(buf));
  });

  run_criterion(2, "flat-fiber constant curvature -1 by FD Riemann", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const CurvatureSelfTest rep = curvature_selftest(torus2(), 1000, 42);
    const double dt = seconds_since(t0);
    const bool pass = rep.max_sectional_dev < 1e-5 && rep.max_scalar_dev < 1e-4 && dt < 5.0;
    std::snprintf(buf, sizeof buf, "sectional=%.2e scalar=%.2e ricci=%.2e runtime=%.2fs", rep.max_sectional_dev,
                  rep.max_scalar_dev, rep.max_ricci_dev, dt);
    return std::make_pair(pass, std::string(buf));
  });

  run_criterion(3, "slice exactness (n=2, unit periods)", [] {
    const WarpedAmbient amb = torus2();
    bool pass = true;
    double worst_lambda = 0.0, worst_residual = 0.0, worst_mink = 0.0, worst_scalar = 0.0;
    for (double s : {0.0, 0.7}) {
      const SurfaceFamily fam = SliceFamily{s};
      const SurfaceSweep sweep = sweep_family(fam, amb, torus_grid(amb.periods, 64), 1);
      for (const CurvatureData& d : sweep.nodes) {
        for (double lam : d.profile.lambda) worst_lambda = std::max(worst_lambda, std::abs(lam - 1.0));
        worst_lambda = std::max(worst_lambda, std::abs(d.profile.hk[2] - 1.0));
        worst_scalar = std::max(worst_scalar, std::abs(scalar_curvature(d)));
      }
      const HKReport hk = check_hk(sweep, fam, amb, 64, kTol);
      worst_residual = std::max(worst_residual, std::abs(hk.residual) / std::max(1.0, hk.scale));
      for (int k : {0, 1})
        worst_mink = std::max(worst_mink,
                              std::abs(check_minkowski(k, sweep, amb, kTol).residual) / std::max(1.0, sweep.scale));
    }
    pass = worst_lambda < 1e-12 && worst_scalar < 1e-12 && worst_residual < 1e-12 && worst_mink < 1e-12;
    std::snprintf(buf, sizeof buf, "|lambda-1|=%.2e |S|=%.2e hk=%.2e mink=%.2e", worst_lambda, worst_scalar,
                  worst_residual, worst_mink);
    return std::make_pair(pass, std::string(buf));
  });

  run_criterion(4, "geodesic spheres in H^3: curvature, area, HK equality", [] {
    const WarpedAmbient amb = WarpedAmbient::euclidean(2);
    bool pass = std::abs(1.0 / std::tanh(1.0) - 1.3130352855) < 1e-9;
    double worst_h = 0.0, worst_area = 0.0, worst_hk = 0.0, worst_defect = 0.0;
    for (double rho : {0.5, 1.0, 2.0}) {
      const SurfaceFamily fam = GeodesicSphereFamily{1.0, {0.0, 0.0}, rho};
      const SurfaceSweep sweep = sweep_family(fam, amb, sphere_grid(2, 64), 1);
      const double coth = 1.0 / std::tanh(rho);
      for (const CurvatureData& d : sweep.nodes)
        worst_h = std::max(worst_h, std::abs(d.profile.hk[1] - coth) / coth);
      const double area = integrate(sweep, [](const CurvatureData&) { return 1.0; });
      const double area_exact = 4.0 * std::numbers::pi * std::sinh(rho) * std::sinh(rho);
      worst_area = std::max(worst_area, std::abs(area - area_exact) / area_exact);
      const HKReport hk = check_hk(sweep, fam, amb, 64, kTol);
      worst_hk = std::max(worst_hk, std::abs(hk.residual) / hk.i1);
      worst_defect = std::max(worst_defect, hk.umbilicity_defect);
    }
    pass = pass && worst_h < 1e-8 && worst_area < 1e-8 && worst_hk < 1e-7 && worst_defect < 1e-9;
    std::snprintf(buf, sizeof buf, "H=%.2e area=%.2e hk=%.2e defect=%.2e", worst_h, worst_area, worst_hk,
                  worst_defect);
    return std::make_pair(pass, std::string(buf));
  });

  run_criterion(5, "Minkowski universality on the two-mode graph", [] {
    const WarpedAmbient amb = torus2();
    const SurfaceFamily fam = graph_a();
    const SurfaceSweep sweep = sweep_family(fam, amb, torus_grid(amb.periods, 64), 1);
    double worst = 0.0;
    for (int k : {0, 1})
      worst = std::max(worst, std::abs(check_minkowski(k, sweep, amb, kTol).normalized_residual));
    bool strict = true;
    for (int k : {0, 1}) {
      const ConvergenceTable t =
          convergence_study("minkowski:" + std::to_string(k), fam, amb, {8, 16, 32, 64}, 1, kTol);
      for (std::size_t i = 0; i + 1 < t.normalized.size(); ++i)
        strict = strict && std::abs(t.normalized[i + 1]) < std::abs(t.normalized[i]);
    }
    const bool pass = worst < 1e-8 && strict;
    std::snprintf(buf, sizeof buf, "max |normalized| = %.2e, ladders strictly decreasing = %s", worst,
                  strict ? "yes" : "no");
    return std::make_pair(pass, std::string(buf));
  });

  run_criterion(6, "HK strict inequality on a non-umbilic H>0 graph", [] {
    const WarpedAmbient amb = torus2();
    // the 0.3/0.1 graph's principal curvatures swing past zero (second
    // derivatives carry a (2 pi)^2 factor), so check_hk must reject it; the
    // strict inequality is exercised on the scaled-down two-mode graph
    bool literal_rejected = false;
    {
      const SurfaceFamily fam = graph_a();
      const SurfaceSweep sweep = sweep_family(fam, amb, torus_grid(amb.periods, 64), 1);
      try {
        (void)check_hk(sweep, fam, amb, 64, kTol);
      } catch (const HypothesisError&) {
        literal_rejected = true;
      }
    }
    const SurfaceFamily fam = graph_b();
    const SurfaceSweep sweep64 = sweep_family(fam, amb, torus_grid(amb.periods, 64), 1);
    const HKReport hk64 = check_hk(sweep64, fam, amb, 64, kTol);
    const SurfaceSweep sweep128 = sweep_family(fam, amb, torus_grid(amb.periods, 128), 1);
    const HKReport hk128 = check_hk(sweep128, fam, amb, 128, kTol);
    const double drift = std::abs(hk128.normalized_residual - kHkGraphBaselineRes128) / kHkGraphBaselineRes128;
    const bool pass =
        literal_rejected && hk64.normalized_residual > 1e-3 && hk64.umbilicity_defect > 0.1 && drift < 1e-6;
    std::snprintf(buf, sizeof buf, "residual/scale=%.4f defect=%.3f drift=%.2e literal-graph-rejected=%s",
                  hk64.normalized_residual, hk64.umbilicity_defect, drift, literal_rejected ? "yes" : "no");
    return std::make_pair(pass, std::string(buf));
  });

  run_criterion(7, "divergence-theorem linkage of the weighted volume", [] {
    const WarpedAmbient amb = torus2();
    double worst = 0.0;
    const std::vector<SurfaceFamily> fams = {SliceFamily{0.0}, SliceFamily{0.7}, graph_a(), graph_b()};
    for (const SurfaceFamily& fam : fams) {
      const SurfaceSweep sweep = sweep_family(fam, amb, torus_grid(amb.periods, 64), 1);
      const double flux = integrate(sweep, [](const CurvatureData& d) { return d.vn; });
      const double vol = weighted_volume(fam, amb, 64);
      worst = std::max(worst, std::abs(3.0 * vol + flux) / sweep.scale);
    }
    const bool pass = worst < 1e-10;
    std::snprintf(buf, sizeof buf, "max |(n+1) vol + flux| / scale = %.2e", worst);
    return std::make_pair(pass, std::string(buf));
  });

  run_criterion(8, "L1(e^h) identity on the two-mode graph", [] {
    const WarpedAmbient amb = torus2();
    const SurfaceFamily fam = graph_a();
    const SurfaceSweep sweep = sweep_family(fam, amb, torus_grid(amb.periods, 64), 1);
    const IntrinsicGridOps ops(fam, amb, sweep);
    GridField eh(sweep.grid.node_count());
    for (std::size_t i = 0; i < eh.size(); ++i) eh[i] = std::exp(sweep.nodes[i].height);
    const GridField l1 = ops.lk_apply(1, eh);
    double sup_err = 0.0, sup_rhs = 0.0;
    for (std::size_t i = 0; i < eh.size(); ++i) {
      const CurvatureData& d = sweep.nodes[i];
      const double rhs = 2.0 * std::exp(d.height) * (d.profile.hk[1] + d.normal[0] * d.profile.hk[2]);
      sup_err = std::max(sup_err, std::abs(l1[i] - rhs));
      sup_rhs = std::max(sup_rhs, std::abs(rhs));
    }
    const bool pass = sup_err / sup_rhs < 1e-4;
    std::snprintf(buf, sizeof buf, "sup-norm relative error = %.2e", sup_err / sup_rhs);
    return std::make_pair(pass, std::string(buf));
  });

  run_criterion(9, "Garding chain and lemma52 equality band", [] {
    const WarpedAmbient torus = torus2();
    const WarpedAmbient eucl = WarpedAmbient::euclidean(2);
    double worst_margin = 0.0; // most negative min(H - sqrt(H2))
    double worst_lemma = 0.0;

    const auto garding_on = [&](const SurfaceFamily& fam, const WarpedAmbient& amb) {
      const SurfaceSweep sweep = sweep_family(fam, amb, make_grid(fam, amb, 64), 1);
      worst_margin = std::min(worst_margin, check_garding(sweep, kTol).min_margin);
    };
    const auto lemma_on = [&](const SurfaceFamily& fam, const WarpedAmbient& amb) {
      const SurfaceSweep sweep = sweep_family(fam, amb, make_grid(fam, amb, 64), 1);
      worst_lemma = std::max(worst_lemma, std::abs(check_lemma52(sweep, kTol).normalized));
    };

    garding_on(SliceFamily{0.0}, torus);
    garding_on(SliceFamily{0.7}, torus);
    garding_on(graph_b(), torus);
    garding_on(graph_c(), torus);
    for (double rho : {0.5, 1.0, 2.0}) garding_on(GeodesicSphereFamily{1.0, {0.0, 0.0}, rho}, eucl);

    lemma_on(SliceFamily{0.0}, torus);
    lemma_on(SliceFamily{0.7}, torus);
    for (double rho : {0.5, 1.0, 2.0}) lemma_on(GeodesicSphereFamily{1.0, {0.0, 0.0}, rho}, eucl);

    const bool pass = worst_margin >= -1e-12 && worst_lemma <= 1e-9;
    std::snprintf(buf, sizeof buf, "min margin = %.2e, max |lemma52|/scale = %.2e", worst_margin, worst_lemma);
    return std::make_pair(pass, std::string(buf));
  });

  run_criterion(10, "shipped demo configs: runtime and thread reproducibility", [] {
    const std::string dir = WARPCURV_CONFIG_DIR;
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    std::ostringstream detail;
    for (const char* name : {"demo_torus.json", "demo_sphere.json"}) {
      const RunConfig cfg = parse_config(read_file(dir + "/" + name));
      RunOptions single, multi;
      single.include_timestamp = multi.include_timestamp = false;
      single.threads = 1;
      multi.threads = 4;
      const RunResult r1 = run(cfg, single);
      const RunResult r4 = run(cfg, multi);
      pass = pass && r1.exit_code == 0 && r1.report == r4.report;
      detail << name << " exit=" << r1.exit_code << " identical=" << (r1.report == r4.report ? "yes" : "no") << " ";
    }
    const double dt = seconds_since(t0);
    pass = pass && dt < 60.0;
    detail << "runtime=" << dt << "s";
    return std::make_pair(pass, detail.str());
  });

  std::printf("acceptance: %d of 10 criteria passed (%.1fs total)\n", 10 - failures, seconds_since(suite_start));
  return failures == 0 ? 0 : 1;
}
