#include "warpcurv/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "warpcurv/errors.hpp"

namespace warpcurv {

SurfaceGrid make_grid(const SurfaceFamily& fam, const WarpedAmbient& amb, int resolution) {
  if (std::holds_alternative<GeodesicSphereFamily>(fam)) return sphere_grid(amb.n, resolution);
  return torus_grid(amb.periods, resolution);
}

double umbilicity_defect(const SurfaceSweep& sweep) {
  double defect = 0.0;
  for (const CurvatureData& node : sweep.nodes) {
    const double h1 = node.profile.hk[1];
    for (double lam : node.profile.lambda) defect = std::max(defect, std::abs(lam - h1));
  }
  return defect;
}

HKReport check_hk(const SurfaceSweep& sweep, const SurfaceFamily& fam, const WarpedAmbient& amb, int resolution,
                  const Tolerances& tol) {
  HKReport rep;
  rep.min_h = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sweep.nodes.size(); ++i) {
    const double h = sweep.nodes[i].profile.hk[1];
    rep.min_h = std::min(rep.min_h, h);
    if (!(h > 0.0))
      throw HypothesisError("check_hk: mean curvature not positive at node " + std::to_string(i) +
                            " (H = " + std::to_string(h) + ")");
  }
  rep.i1 = integrate(sweep, [](const CurvatureData& d) { return d.v / d.profile.hk[1]; });
  rep.i2 = integrate(sweep, [](const CurvatureData& d) { return d.vn; });
  rep.residual = rep.i1 + rep.i2;
  rep.scale = sweep.scale;
  rep.normalized_residual = rep.residual / rep.scale;
  rep.umbilicity_defect = umbilicity_defect(sweep);
  rep.corollary_lhs = rep.i1;
  rep.corollary_rhs = (amb.n + 1.0) * weighted_volume(fam, amb, resolution);
  rep.linkage = (rep.corollary_rhs + rep.i2) / rep.scale;

  const bool nonneg = rep.normalized_residual >= -tol.identity_rel;
  const bool equality = std::abs(rep.normalized_residual) <= tol.identity_rel;
  const bool umbilic = rep.umbilicity_defect <= tol.umbilic;
  rep.pass = nonneg && (equality == umbilic) && std::abs(rep.linkage) <= tol.linkage_rel;
  return rep;
}

MinkowskiReport check_minkowski(int k, const SurfaceSweep& sweep, const WarpedAmbient& amb, const Tolerances& tol,
                                bool allow_constant_curvature) {
  if (k < 0) throw ArgumentError("check_minkowski: k must be non-negative");
  if (k + 1 > amb.n)
    throw ArgumentError("check_minkowski: k + 1 = " + std::to_string(k + 1) + " exceeds the hypersurface dimension");
  if (k >= 2 && !allow_constant_curvature)
    throw UnsupportedError(
        "check_minkowski: k >= 2 needs div T_k = 0, which only the constant-curvature (flat fiber) case provides; "
        "re-run with the constant-curvature flag enabled");
  MinkowskiReport rep;
  rep.k = k;
  rep.residual = integrate(sweep, [k](const CurvatureData& d) {
    return d.v * d.profile.hk[k] + d.vn * d.profile.hk[k + 1];
  });
  rep.scale = sweep.scale;
  rep.normalized_residual = rep.residual / rep.scale;
  rep.pass = std::abs(rep.normalized_residual) <= tol.identity_rel;
  return rep;
}

Lemma52Report check_lemma52(const SurfaceSweep& sweep, const Tolerances& tol) {
  double h2_min = std::numeric_limits<double>::infinity();
  double h2_max = -std::numeric_limits<double>::infinity();
  for (const CurvatureData& node : sweep.nodes) {
    h2_min = std::min(h2_min, node.profile.hk[2]);
    h2_max = std::max(h2_max, node.profile.hk[2]);
  }
  Lemma52Report rep;
  rep.h2_spread = h2_max - h2_min;
  if (!(h2_min > 0.0)) throw HypothesisError("check_lemma52: H2 must be positive (min H2 = " + std::to_string(h2_min) + ")");
  if (rep.h2_spread >= tol.h2_spread)
    throw HypothesisError("check_lemma52: H2 is not constant over the grid (spread = " + std::to_string(rep.h2_spread) + ")");
  rep.integral = integrate(sweep, [](const CurvatureData& d) {
    return (std::sqrt(d.profile.hk[2]) - d.profile.hk[1]) * d.vn;
  });
  rep.scale = sweep.scale;
  rep.normalized = rep.integral / rep.scale;
  rep.umbilicity_defect = umbilicity_defect(sweep);
  const bool nonpositive = rep.normalized <= tol.identity_rel;
  const bool zero = std::abs(rep.normalized) <= tol.lemma52_rel;
  const bool umbilic = rep.umbilicity_defect <= tol.umbilic;
  rep.pass = nonpositive && (zero == umbilic);
  return rep;
}

GardingReport check_garding(const SurfaceSweep& sweep, const Tolerances& tol) {
  bool some_node_all_positive = false;
  for (const CurvatureData& node : sweep.nodes) {
    if (node.profile.lambda.front() > 0.0) some_node_all_positive = true;
    if (!(node.profile.hk[2] > 0.0))
      throw HypothesisError("check_garding: H2 not positive everywhere (found H2 = " +
                            std::to_string(node.profile.hk[2]) + ")");
  }
  if (!some_node_all_positive)
    throw HypothesisError("check_garding: no node with all principal curvatures positive");
  GardingReport rep;
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (const CurvatureData& node : sweep.nodes)
    rep.min_margin = std::min(rep.min_margin, node.profile.hk[1] - std::sqrt(node.profile.hk[2]));
  rep.umbilicity_defect = umbilicity_defect(sweep);
  rep.pass = rep.min_margin >= -tol.garding;
  return rep;
}

AlexandrovReport alexandrov_classify(const std::string& name, const SurfaceSweep& sweep, const Tolerances& tol) {
  AlexandrovReport rep;
  rep.family = name;
  double s_min = std::numeric_limits<double>::infinity(), s_max = -s_min;
  double t_min = std::numeric_limits<double>::infinity(), t_max = -t_min;
  for (const CurvatureData& node : sweep.nodes) {
    const double s = scalar_curvature(node);
    s_min = std::min(s_min, s);
    s_max = std::max(s_max, s);
    t_min = std::min(t_min, node.height);
    t_max = std::max(t_max, node.height);
  }
  rep.scalar_spread = s_max - s_min;
  rep.height_spread = t_max - t_min;
  rep.umbilicity_defect = umbilicity_defect(sweep);
  if (rep.scalar_spread >= tol.alexandrov_spread) {
    rep.tag = "neither";
  } else if (rep.height_spread < tol.height_spread) {
    rep.tag = "slice";
  } else if (rep.umbilicity_defect <= tol.umbilic) {
    rep.tag = "sphere";
  } else {
    rep.tag = "neither";
  }
  // constant scalar curvature must mean slice or sphere
  rep.pass = !(rep.scalar_spread < tol.alexandrov_spread && rep.tag == "neither");
  return rep;
}

std::vector<AlexandrovReport> alexandrov_scan(const std::vector<std::pair<std::string, SurfaceFamily>>& families,
                                              const WarpedAmbient& amb, int resolution, int threads,
                                              const Tolerances& tol) {
  std::vector<AlexandrovReport> out;
  out.reserve(families.size());
  for (const auto& [name, fam] : families) {
    const SurfaceSweep sweep = sweep_family(fam, amb, make_grid(fam, amb, resolution), threads);
    out.push_back(alexandrov_classify(name, sweep, tol));
  }
  return out;
}

ConvergenceTable convergence_study(const std::string& check, const SurfaceFamily& fam, const WarpedAmbient& amb,
                                   std::vector<int> resolutions, int threads, const Tolerances& tol) {
  if (resolutions.size() < 3) throw ArgumentError("convergence_study: need at least 3 resolutions");
  int mink_k = -1;
  if (check.rfind("minkowski:", 0) == 0) {
    mink_k = std::stoi(check.substr(10));
  } else if (check != "hk") {
    throw UnsupportedError("convergence_study: only hk and minkowski:k have residual ladders");
  }
  ConvergenceTable table;
  table.check = check;
  table.resolutions = std::move(resolutions);
  for (int res : table.resolutions) {
    const SurfaceSweep sweep = sweep_family(fam, amb, make_grid(fam, amb, res), threads);
    if (mink_k >= 0) {
      const MinkowskiReport rep = check_minkowski(mink_k, sweep, amb, tol);
      table.residuals.push_back(rep.residual);
      table.normalized.push_back(rep.normalized_residual);
    } else {
      const HKReport rep = check_hk(sweep, fam, amb, res, tol);
      table.residuals.push_back(rep.residual);
      table.normalized.push_back(rep.normalized_residual);
    }
  }
  table.pass = true;
  for (std::size_t i = 0; i + 1 < table.normalized.size(); ++i)
    if (std::abs(table.normalized[i + 1]) > std::abs(table.normalized[i]) + 1e-14) table.pass = false;
  return table;
}

AmbientReport check_ambient(const WarpedAmbient& amb, int curvature_samples, int potential_samples, std::uint64_t seed,
                            const Tolerances& tol) {
  AmbientReport rep;
  rep.curvature = curvature_selftest(amb, curvature_samples, seed);
  rep.potential = potential_selftest(amb, potential_samples, seed);
  rep.pass = rep.curvature.max_sectional_dev <= tol.sectional && rep.curvature.max_ricci_dev <= tol.ricci &&
             rep.curvature.max_scalar_dev <= tol.scalar && rep.potential.max_hess_closed_dev <= tol.hess_closed &&
             rep.potential.max_hess_fd_dev <= tol.hess_fd && rep.potential.max_trace_dev <= tol.potential_trace;
  return rep;
}

} // namespace warpcurv
