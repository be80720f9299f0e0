#ifndef WARPCURV_QUADRATURE_HPP
#define WARPCURV_QUADRATURE_HPP

#include <functional>
#include <span>
#include <vector>

#include "warpcurv/hypersurface.hpp"

namespace warpcurv {

enum class GridKind { Torus, Sphere };

/// Tensor-product quadrature rule on the parameter domain. Weights are pure
/// parameter-measure weights (they exclude the area element, which the
/// integrator picks up from CurvatureData); they sum to the measure of the
/// parameter domain. Sphere grids keep all nodes strictly inside the chart,
/// away from the poles.
struct SurfaceGrid {
  GridKind kind = GridKind::Torus;
  std::vector<int> shape;                 // nodes per axis
  std::vector<std::vector<double>> axes;  // node coordinates per axis
  std::vector<double> axis_weights_flat;  // per-axis weights, same layout as axes
  std::vector<double> weights;            // per-node weights, row-major over axes

  std::size_t node_count() const { return weights.size(); }
  ParamPoint node(std::size_t flat_index) const;
  std::span<const double> axis_weights(int axis) const;
};

/// Uniform periodic tensor grid with equal weights (trapezoid rule).
/// Spectrally accurate for smooth periodic integrands. res >= 4 per axis.
SurfaceGrid torus_grid(std::span<const double> periods, std::span<const int> res);
SurfaceGrid torus_grid(std::span<const double> periods, int res);

/// Gauss-Legendre nodes on (0, pi) in each polar angle, uniform nodes in the
/// azimuth. n is the hypersurface dimension (n - 1 polar axes + azimuth).
/// res >= 8.
SurfaceGrid sphere_grid(int n, int res);

/// Fixed-order pairwise (binary tree) reduction; bit-identical regardless of
/// how the summands were produced.
double pairwise_sum(std::span<const double> v);

/// Curvature data evaluated at every grid node, plus the run's scale
/// normalizer integral of V over the surface.
struct SurfaceSweep {
  SurfaceGrid grid;
  std::vector<CurvatureData> nodes;
  double scale = 0.0; // integral of V d(Sigma)
};

SurfaceSweep sweep_family(const SurfaceFamily& fam, const WarpedAmbient& amb, SurfaceGrid grid, int threads = 1);

/// Sum_i w_i f(data_i) areaElement_i with the fixed pairwise reduction.
/// Throws NumericalError naming the node if f produces a non-finite value.
double integrate(const SurfaceSweep& sweep, const std::function<double(const CurvatureData&)>& integrand);

/// One-shot form of the above.
double integrate_surface(const std::function<double(const CurvatureData&)>& integrand, const SurfaceFamily& fam,
                         const WarpedAmbient& amb, const SurfaceGrid& grid, int threads = 1);

/// Plain parameter-domain quadrature of per-node values (no area element).
double integrate_grid(const SurfaceGrid& grid, std::span<const double> values);

/// Weighted volume integral of V over the enclosed region: for slices and
/// graphs the region t < u(p), reduced exactly in t to
/// integral of c e^{(n+1)u}/(n+1) over the fiber; for geodesic spheres the
/// Euclidean ball in half-space coordinates, reduced to a radial quadrature.
double weighted_volume(const SurfaceFamily& fam, const WarpedAmbient& amb, int resolution);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace warpcurv

#endif
