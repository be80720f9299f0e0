#ifndef WARPCURV_VERIFIER_HPP
#define WARPCURV_VERIFIER_HPP

#include <string>
#include <vector>

#include "warpcurv/grid_ops.hpp"
#include "warpcurv/quadrature.hpp"

namespace warpcurv {

/// Pass bars for all checks. Scale-relative where noted; the scale of a
/// family is its integral of V over the surface.
struct Tolerances {
  double identity_rel = 1e-8;     // |normalized residual| for integral identities
  double umbilic = 1e-8;          // umbilicity defect bar
  double garding = 1e-12;         // min(H - sqrt(H2)) >= -garding
  double h2_spread = 1e-8;        // constant-H2 hypothesis gate
  double lemma52_rel = 1e-9;      // equality bar for the lemma52 integral
  double alexandrov_spread = 1e-8;
  double height_spread = 1e-8;
  double linkage_rel = 1e-9;      // divergence-theorem linkage bar
  double sectional = 1e-5;        // ambient self-test bars
  double ricci = 1e-5;
  double scalar = 1e-4;
  double hess_closed = 1e-12;
  double hess_fd = 1e-6;
  double potential_trace = 1e-12;
};

/// Heintze-Karcher report: I1 = integral of V/H, I2 = integral of <grad V, N>,
/// residual = I1 + I2 >= 0 with equality iff totally umbilical. The corollary
/// fields restate the inequality against (n+1) * weighted volume, linked to
/// the surface integral by the divergence theorem.
struct HKReport {
  double i1 = 0.0;
  double i2 = 0.0;
  double residual = 0.0;
  double normalized_residual = 0.0;
  double umbilicity_defect = 0.0;
  double corollary_lhs = 0.0;
  double corollary_rhs = 0.0;
  double linkage = 0.0; // ((n+1) vol + I2) / scale
  double min_h = 0.0;
  double scale = 0.0;
  bool pass = false;
};

HKReport check_hk(const SurfaceSweep& sweep, const SurfaceFamily& fam, const WarpedAmbient& amb, int resolution,
                  const Tolerances& tol);

/// Minkowski identity residual integral of (V H_k + <grad V, N> H_{k+1});
/// zero for k in {0, 1} on every closed hypersurface of these ambients.
/// k >= 2 only behind allow_constant_curvature (the classical identity, valid
/// because flat fibers make the ambient a space form).
struct MinkowskiReport {
  int k = 0;
  double residual = 0.0;
  double normalized_residual = 0.0;
  double scale = 0.0;
  bool pass = false;
};

MinkowskiReport check_minkowski(int k, const SurfaceSweep& sweep, const WarpedAmbient& amb, const Tolerances& tol,
                                bool allow_constant_curvature = false);

/// Integral of (sqrt(H2) - H) <grad V, N>, requiring constant positive H2.
/// Non-positive, zero iff umbilical.
struct Lemma52Report {
  double integral = 0.0;
  double normalized = 0.0;
  double h2_spread = 0.0;
  double umbilicity_defect = 0.0;
  double scale = 0.0;
  bool pass = false;
};

Lemma52Report check_lemma52(const SurfaceSweep& sweep, const Tolerances& tol);

/// min over nodes of (H - sqrt(H2)), gated on the positivity hypotheses.
struct GardingReport {
  double min_margin = 0.0;
  double umbilicity_defect = 0.0;
  bool pass = false;
};

GardingReport check_garding(const SurfaceSweep& sweep, const Tolerances& tol);

/// Scalar-curvature constancy scan: families with constant intrinsic scalar
/// curvature must classify as a slice or a geodesic sphere.
struct AlexandrovReport {
  std::string family;
  double scalar_spread = 0.0;
  double umbilicity_defect = 0.0;
  double height_spread = 0.0;
  std::string tag; // "slice" | "sphere" | "neither"
  bool pass = false;
};

AlexandrovReport alexandrov_classify(const std::string& name, const SurfaceSweep& sweep, const Tolerances& tol);

std::vector<AlexandrovReport> alexandrov_scan(const std::vector<std::pair<std::string, SurfaceFamily>>& families,
                                              const WarpedAmbient& amb, int resolution, int threads,
                                              const Tolerances& tol);

/// Residual of a named identity check over a resolution ladder; identity
/// residual magnitudes must not grow under refinement.
struct ConvergenceTable {
  std::string check; // "hk" or "minkowski:k"
  std::vector<int> resolutions;
  std::vector<double> residuals;
  std::vector<double> normalized;
  bool pass = false;
};

ConvergenceTable convergence_study(const std::string& check, const SurfaceFamily& fam, const WarpedAmbient& amb,
                                   std::vector<int> resolutions, int threads, const Tolerances& tol);

/// Ambient self-test wrapper: curvature via finite-difference Riemann tensor,
/// potential identities in closed form and against the FD oracle.
struct AmbientReport {
  CurvatureSelfTest curvature;
  PotentialSelfTest potential;
  bool pass = false;
};

AmbientReport check_ambient(const WarpedAmbient& amb, int curvature_samples, int potential_samples, std::uint64_t seed,
                            const Tolerances& tol);

/// Grid for the family kind at the given per-axis resolution.
SurfaceGrid make_grid(const SurfaceFamily& fam, const WarpedAmbient& amb, int resolution);

double umbilicity_defect(const SurfaceSweep& sweep);

} // namespace warpcurv

#endif
