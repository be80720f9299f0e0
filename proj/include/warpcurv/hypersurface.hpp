#ifndef WARPCURV_HYPERSURFACE_HPP
#define WARPCURV_HYPERSURFACE_HPP

#include <variant>
#include <vector>

#include "warpcurv/ambient.hpp"
#include "warpcurv/geometry_core.hpp"

namespace warpcurv {

/// One Fourier mode of a torus graph height function: contributes
/// cos_coeff * cos(phi) + sin_coeff * sin(phi) with
/// phi(p) = 2 pi sum_i k_i p_i / L_i.
struct FourierMode {
  std::vector<int> k;
  double cos_coeff = 0.0;
  double sin_coeff = 0.0;
};

/// Level hypersurface {s} x P. Torus fibers only.
struct SliceFamily {
  double s = 0.0;
};

/// Graph t = u(p) over a torus fiber, u given by a finite Fourier table on
/// top of the constant base height.
struct TorusGraphFamily {
  double base = 0.0;
  std::vector<FourierMode> modes;
};

/// Geodesic sphere of hyperbolic radius rho centered over half-space
/// coordinates (z0, x0), z0 > 0. Requires the Euclidean fiber; under
/// z = e^{-t} the ambient is the half-space model and the geodesic sphere is
/// the Euclidean sphere of center (z0 cosh rho, x0) and radius z0 sinh rho.
struct GeodesicSphereFamily {
  double z0 = 1.0;
  std::vector<double> x0;
  double rho = 1.0;
};

using SurfaceFamily = std::variant<SliceFamily, TorusGraphFamily, GeodesicSphereFamily>;

/// Chart coordinates on the parameter domain: torus coordinates for slices
/// and graphs, (polar angles..., azimuth) for spheres.
struct ParamPoint {
  std::vector<double> q;
};

/// Point, exact tangent columns dF/dq_a, and coordinate second derivatives
/// d2F/dq_a dq_b of the immersion, all in ambient (t, p) components.
struct ImmersionJet {
  AmbientPoint x;
  std::vector<std::vector<double>> tangents;
  std::vector<std::vector<double>> second; // row-major (a, b), symmetric

  const std::vector<double>& second_at(int a, int b) const {
    return second[static_cast<std::size_t>(a) * tangents.size() + b];
  }
};

/// Throws UnsupportedError when the family needs a different fiber kind
/// (slices and graphs need the torus, spheres the Euclidean fiber).
void require_compatible(const SurfaceFamily& fam, const WarpedAmbient& amb);

double graph_height(const TorusGraphFamily& fam, const WarpedAmbient& amb, std::span<const double> p);

ImmersionJet immerse(const SurfaceFamily& fam, const WarpedAmbient& amb, const ParamPoint& q);

/// Inward unit normal, upper-index ambient components. Inward means toward
/// the region of finite V-weighted volume: the t -> -infty side for slices and
/// graphs (the t-component of N is negative), toward the center for spheres.
std::vector<double> inward_normal(const SurfaceFamily& fam, const WarpedAmbient& amb, const ParamPoint& q);

/// Everything curvature-related at one parameter point.
struct CurvatureData {
  AmbientPoint x;
  std::vector<std::vector<double>> tangents;
  std::vector<double> normal;
  SymMatrix first_form;   // g1
  SymMatrix second_form;  // g2, with respect to the inward normal
  CurvatureProfile profile;
  double area_element = 0.0; // sqrt(det g1)
  double vn = 0.0;           // <grad V, N>
  double v = 0.0;            // potential value
  double height = 0.0;       // t coordinate
};

CurvatureData curvature_data(const SurfaceFamily& fam, const WarpedAmbient& amb, const ParamPoint& q);

/// Same assembly from a precomputed jet; reparametrized jets can be fed in
/// directly, which is what the frame-covariance tests do.
CurvatureData curvature_from_jet(const SurfaceFamily& fam, const WarpedAmbient& amb, const ImmersionJet& jet);

/// Intrinsic scalar curvature n(n-1)(H_2 - 1).
double scalar_curvature(const CurvatureData& data);

} // namespace warpcurv

#endif
