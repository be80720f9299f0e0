#include "warpcurv/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "warpcurv/errors.hpp"
#include "warpcurv/parallel.hpp"

namespace warpcurv {

ParamPoint SurfaceGrid::node(std::size_t flat_index) const {
  const int naxes = static_cast<int>(shape.size());
  ParamPoint q;
  q.q.resize(naxes);
  std::size_t rem = flat_index;
  for (int a = naxes - 1; a >= 0; --a) {
    q.q[a] = axes[a][rem % shape[a]];
    rem /= shape[a];
  }
  return q;
}

std::span<const double> SurfaceGrid::axis_weights(int axis) const {
  std::size_t off = 0;
  for (int a = 0; a < axis; ++a) off += shape[a];
  return std::span<const double>(axis_weights_flat).subspan(off, shape[axis]);
}

namespace {

void tensor_weights(SurfaceGrid& grid) {
  std::size_t count = 1;
  for (int m : grid.shape) count *= m;
  grid.weights.resize(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    double w = 1.0;
    std::size_t rem = idx;
    for (int a = static_cast<int>(grid.shape.size()) - 1; a >= 0; --a) {
      w *= grid.axis_weights(a)[rem % grid.shape[a]];
      rem /= grid.shape[a];
    }
    grid.weights[idx] = w;
  }
}

} // namespace

SurfaceGrid torus_grid(std::span<const double> periods, std::span<const int> res) {
  if (periods.size() != res.size()) throw ArgumentError("torus_grid: axis count mismatch");
  SurfaceGrid grid;
  grid.kind = GridKind::Torus;
  for (std::size_t a = 0; a < res.size(); ++a) {
    const int m = res[a];
    if (m < 4) throw ArgumentError("torus_grid: resolution must be >= 4 per axis, got " + std::to_string(m));
    grid.shape.push_back(m);
    std::vector<double> nodes(m);
    const double L = periods[a];
    for (int j = 0; j < m; ++j) nodes[j] = L * j / m;
    grid.axes.push_back(std::move(nodes));
    for (int j = 0; j < m; ++j) grid.axis_weights_flat.push_back(L / m);
  }
  tensor_weights(grid);
  return grid;
}

SurfaceGrid torus_grid(std::span<const double> periods, int res) {
  std::vector<int> shape(periods.size(), res);
  return torus_grid(periods, shape);
}

void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(m);
  weights.resize(m);
  const int half = (m + 1) / 2;
  // Legendre recurrence evaluated at x; returns P_m and P_{m-1}.
  const auto legendre = [m](double x, double& pm, double& pm1) {
    pm = 1.0;
    pm1 = 0.0;
    for (int j = 0; j < m; ++j) {
      const double prev = pm1;
      pm1 = pm;
      pm = ((2.0 * j + 1.0) * x * pm1 - j * prev) / (j + 1.0);
    }
  };
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double pm = 0.0, pm1 = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      legendre(x, pm, pm1);
      const double dp = m * (x * pm - pm1) / (x * x - 1.0);
      const double dx = pm / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre(x, pm, pm1);
    const double dp = m * (x * pm - pm1) / (x * x - 1.0);
    nodes[i] = -x;
    nodes[m - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[m - 1 - i] = w;
  }
}

SurfaceGrid sphere_grid(int n, int res) {
  if (res < 8) throw ArgumentError("sphere_grid: resolution must be >= 8, got " + std::to_string(res));
  if (n < 2) throw ArgumentError("sphere_grid: hypersurface dimension must be >= 2");
  SurfaceGrid grid;
  grid.kind = GridKind::Sphere;
  std::vector<double> gl_nodes, gl_weights;
  gauss_legendre(res, gl_nodes, gl_weights);
  const double pi = std::numbers::pi;
  for (int a = 0; a < n - 1; ++a) {
    grid.shape.push_back(res);
    std::vector<double> nodes(res);
    for (int j = 0; j < res; ++j) nodes[j] = 0.5 * pi * (gl_nodes[j] + 1.0);
    grid.axes.push_back(std::move(nodes));
    for (int j = 0; j < res; ++j) grid.axis_weights_flat.push_back(0.5 * pi * gl_weights[j]);
  }
  grid.shape.push_back(res);
  std::vector<double> az(res);
  for (int j = 0; j < res; ++j) az[j] = 2.0 * pi * j / res;
  grid.axes.push_back(std::move(az));
  for (int j = 0; j < res; ++j) grid.axis_weights_flat.push_back(2.0 * pi / res);
  tensor_weights(grid);
  return grid;
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

SurfaceSweep sweep_family(const SurfaceFamily& fam, const WarpedAmbient& amb, SurfaceGrid grid, int threads) {
  require_compatible(fam, amb);
  if (std::holds_alternative<GeodesicSphereFamily>(fam)) {
    if (grid.kind != GridKind::Sphere) throw ArgumentError("sweep_family: sphere family needs a sphere grid");
  } else if (grid.kind != GridKind::Torus) {
    throw ArgumentError("sweep_family: torus family needs a torus grid");
  }
  SurfaceSweep sweep;
  const std::size_t count = grid.node_count();
  sweep.nodes = parallel_map<CurvatureData>(count, threads, [&](std::size_t i) {
    return curvature_data(fam, amb, grid.node(i));
  });
  sweep.grid = std::move(grid);
  sweep.scale = integrate(sweep, [](const CurvatureData& d) { return d.v; });
  return sweep;
}

double integrate(const SurfaceSweep& sweep, const std::function<double(const CurvatureData&)>& integrand) {
  std::vector<double> terms(sweep.nodes.size());
  for (std::size_t i = 0; i < sweep.nodes.size(); ++i) {
    const double t = sweep.grid.weights[i] * integrand(sweep.nodes[i]) * sweep.nodes[i].area_element;
    if (!std::isfinite(t)) throw NumericalError("integrate: non-finite integrand at node " + std::to_string(i));
    terms[i] = t;
  }
  return pairwise_sum(terms);
}

double integrate_surface(const std::function<double(const CurvatureData&)>& integrand, const SurfaceFamily& fam,
                         const WarpedAmbient& amb, const SurfaceGrid& grid, int threads) {
  const SurfaceSweep sweep = sweep_family(fam, amb, grid, threads);
  return integrate(sweep, integrand);
}

double integrate_grid(const SurfaceGrid& grid, std::span<const double> values) {
  if (values.size() != grid.node_count()) throw ArgumentError("integrate_grid: value count mismatch");
  std::vector<double> terms(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    terms[i] = grid.weights[i] * values[i];
    if (!std::isfinite(terms[i])) throw NumericalError("integrate_grid: non-finite term at node " + std::to_string(i));
  }
  return pairwise_sum(terms);
}

namespace {

// Unit n-ball volume pi^{n/2} / Gamma(n/2 + 1).
double unit_ball_volume(int n) {
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double sphere_weighted_volume(const GeodesicSphereFamily& fam, const WarpedAmbient& amb, int resolution) {
  // V dvol = c z^{-(n+2)} dz dx over the Euclidean ball of center
  // (zc, x0) and radius r; slicing in z and substituting z = zc + r cos(alpha)
  // gives omega_n r^{n+1} int_0^pi sin^{n+1}(alpha) (zc + r cos alpha)^{-(n+2)} d alpha.
  const int n = amb.n;
  const double zc = fam.z0 * std::cosh(fam.rho);
  const double r = fam.z0 * std::sinh(fam.rho);
  const int m = std::max(256, 8 * resolution);
  std::vector<double> nodes, weights;
  gauss_legendre(m, nodes, weights);
  std::vector<double> terms(m);
  const double pi = std::numbers::pi;
  for (int i = 0; i < m; ++i) {
    const double alpha = 0.5 * pi * (nodes[i] + 1.0);
    const double w = 0.5 * pi * weights[i];
    terms[i] = w * std::pow(std::sin(alpha), n + 1.0) * std::pow(zc + r * std::cos(alpha), -(n + 2.0));
  }
  return amb.potential_scale * unit_ball_volume(n) * std::pow(r, n + 1.0) * pairwise_sum(terms);
}

} // namespace

double weighted_volume(const SurfaceFamily& fam, const WarpedAmbient& amb, int resolution) {
  require_compatible(fam, amb);
  if (const auto* slice = std::get_if<SliceFamily>(&fam)) {
    double measure = 1.0;
    for (double L : amb.periods) measure *= L;
    return amb.potential_scale * measure * std::exp((amb.n + 1.0) * slice->s) / (amb.n + 1.0);
  }
  if (const auto* graph = std::get_if<TorusGraphFamily>(&fam)) {
    const SurfaceGrid grid = torus_grid(amb.periods, resolution);
    std::vector<double> values(grid.node_count());
    for (std::size_t i = 0; i < values.size(); ++i) {
      const ParamPoint q = grid.node(i);
      values[i] = std::exp((amb.n + 1.0) * graph_height(*graph, amb, q.q)) / (amb.n + 1.0);
    }
    return amb.potential_scale * integrate_grid(grid, values);
  }
  return sphere_weighted_volume(std::get<GeodesicSphereFamily>(fam), amb, resolution);
}

} // namespace warpcurv
