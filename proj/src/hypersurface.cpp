#include "warpcurv/hypersurface.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "warpcurv/errors.hpp"

namespace warpcurv {

namespace {

constexpr double kPoleTol = 1e-12;

void check_param(const SurfaceFamily& fam, const WarpedAmbient& amb, const ParamPoint& q) {
  if (static_cast<int>(q.q.size()) != amb.n)
    throw ArgumentError("ParamPoint: expected " + std::to_string(amb.n) + " chart coordinates");
  for (double v : q.q)
    if (!std::isfinite(v)) throw ArgumentError("ParamPoint: non-finite coordinate");
  if (std::holds_alternative<GeodesicSphereFamily>(fam)) {
    for (int k = 0; k + 1 < amb.n; ++k)
      if (std::abs(std::sin(q.q[k])) < kPoleTol)
        throw ChartError("sphere chart evaluated at a pole (polar angle " + std::to_string(k) + ")");
  }
}

struct GraphJet {
  double u;
  std::vector<double> du;
  std::vector<double> d2u; // row-major n x n
};

GraphJet graph_jet(const TorusGraphFamily& fam, const WarpedAmbient& amb, std::span<const double> p) {
  const int n = amb.n;
  GraphJet jet;
  jet.u = fam.base;
  jet.du.assign(n, 0.0);
  jet.d2u.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (const FourierMode& m : fam.modes) {
    if (static_cast<int>(m.k.size()) != n) throw ArgumentError("FourierMode: wave vector size mismatch");
    double phi = 0.0;
    std::vector<double> dphi(n);
    for (int i = 0; i < n; ++i) {
      dphi[i] = 2.0 * std::numbers::pi * m.k[i] / amb.periods[i];
      phi += dphi[i] * p[i];
    }
    const double c = std::cos(phi), s = std::sin(phi);
    jet.u += m.cos_coeff * c + m.sin_coeff * s;
    const double d1 = -m.cos_coeff * s + m.sin_coeff * c;
    const double d2 = -m.cos_coeff * c - m.sin_coeff * s;
    for (int i = 0; i < n; ++i) {
      jet.du[i] += d1 * dphi[i];
      for (int j = 0; j < n; ++j) jet.d2u[static_cast<std::size_t>(i) * n + j] += d2 * dphi[i] * dphi[j];
    }
  }
  return jet;
}

// Unit-sphere chart omega : (q_0..q_{n-1}) -> S^n in R^{n+1} with
// omega_0 = cos q_0, omega_j = sin q_0 .. sin q_{j-1} cos q_j,
// omega_n = sin q_0 .. sin q_{n-1}. Every factor satisfies f'' = -f, so the
// derivatives below are pure products of factor values and first derivatives.
struct SphereChart {
  int n;
  std::vector<double> sin_q, cos_q;

  explicit SphereChart(std::span<const double> q) : n(static_cast<int>(q.size())), sin_q(n), cos_q(n) {
    for (int k = 0; k < n; ++k) {
      sin_q[k] = std::sin(q[k]);
      cos_q[k] = std::cos(q[k]);
    }
  }

  // factor k of omega_j; kind: 0 none, 1 sin, 2 cos
  int factor_kind(int j, int k) const {
    if (j == n) return 1;
    if (k < j) return 1;
    if (k == j) return 2;
    return 0;
  }
  double factor(int j, int k) const {
    switch (factor_kind(j, k)) {
      case 1: return sin_q[k];
      case 2: return cos_q[k];
      default: return 1.0;
    }
  }
  double factor_deriv(int j, int k) const {
    switch (factor_kind(j, k)) {
      case 1: return cos_q[k];
      case 2: return -sin_q[k];
      default: return 0.0;
    }
  }

  double omega(int j) const {
    double v = 1.0;
    for (int k = 0; k < n; ++k) v *= factor(j, k);
    return v;
  }
  double domega(int j, int a) const {
    if (factor_kind(j, a) == 0) return 0.0;
    double v = factor_deriv(j, a);
    for (int k = 0; k < n; ++k)
      if (k != a) v *= factor(j, k);
    return v;
  }
  double d2omega(int j, int a, int b) const {
    if (factor_kind(j, a) == 0 || factor_kind(j, b) == 0) return 0.0;
    if (a == b) return -omega(j);
    double v = factor_deriv(j, a) * factor_deriv(j, b);
    for (int k = 0; k < n; ++k)
      if (k != a && k != b) v *= factor(j, k);
    return v;
  }
};

ImmersionJet immerse_slice(const SliceFamily& fam, const WarpedAmbient& amb, const ParamPoint& q) {
  const int n = amb.n;
  ImmersionJet jet;
  jet.x = make_point(amb, fam.s, q.q);
  jet.tangents.assign(n, std::vector<double>(n + 1, 0.0));
  for (int a = 0; a < n; ++a) jet.tangents[a][a + 1] = 1.0;
  jet.second.assign(static_cast<std::size_t>(n) * n, std::vector<double>(n + 1, 0.0));
  return jet;
}

ImmersionJet immerse_graph(const TorusGraphFamily& fam, const WarpedAmbient& amb, const ParamPoint& q) {
  const int n = amb.n;
  const GraphJet g = graph_jet(fam, amb, q.q);
  ImmersionJet jet;
  jet.x = make_point(amb, g.u, q.q);
  jet.tangents.assign(n, std::vector<double>(n + 1, 0.0));
  for (int a = 0; a < n; ++a) {
    jet.tangents[a][0] = g.du[a];
    jet.tangents[a][a + 1] = 1.0;
  }
  jet.second.assign(static_cast<std::size_t>(n) * n, std::vector<double>(n + 1, 0.0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) jet.second[static_cast<std::size_t>(a) * n + b][0] = g.d2u[static_cast<std::size_t>(a) * n + b];
  return jet;
}

ImmersionJet immerse_sphere(const GeodesicSphereFamily& fam, const WarpedAmbient& amb, const ParamPoint& q) {
  const int n = amb.n;
  if (!(fam.z0 > 0.0)) throw ArgumentError("GeodesicSphere: z0 must be positive");
  if (!(fam.rho > 0.0)) throw ArgumentError("GeodesicSphere: rho must be positive");
  if (static_cast<int>(fam.x0.size()) != n) throw ArgumentError("GeodesicSphere: center needs n fiber coordinates");

  const double zc = fam.z0 * std::cosh(fam.rho);
  const double r = fam.z0 * std::sinh(fam.rho);
  const SphereChart chart(q.q);

  // Euclidean half-space data: component 0 is the height z, 1..n are x.
  const double z = zc + r * chart.omega(0);
  std::vector<double> dz(n), d2z(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    dz[a] = r * chart.domega(0, a);
    for (int b = 0; b < n; ++b) d2z[static_cast<std::size_t>(a) * n + b] = r * chart.d2omega(0, a, b);
  }

  ImmersionJet jet;
  std::vector<double> p(n);
  for (int i = 0; i < n; ++i) p[i] = fam.x0[i] + r * chart.omega(i + 1);
  jet.x = make_point(amb, -std::log(z), std::move(p));

  jet.tangents.assign(n, std::vector<double>(n + 1, 0.0));
  for (int a = 0; a < n; ++a) {
    jet.tangents[a][0] = -dz[a] / z;
    for (int i = 0; i < n; ++i) jet.tangents[a][i + 1] = r * chart.domega(i + 1, a);
  }
  jet.second.assign(static_cast<std::size_t>(n) * n, std::vector<double>(n + 1, 0.0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto& vec = jet.second[static_cast<std::size_t>(a) * n + b];
      vec[0] = -d2z[static_cast<std::size_t>(a) * n + b] / z + dz[a] * dz[b] / (z * z);
      for (int i = 0; i < n; ++i) vec[i + 1] = r * chart.d2omega(i + 1, a, b);
    }
  return jet;
}

// G-orthonormal complement of the tangent columns. Classical Gram-Schmidt with
// re-orthogonalization on G^{1/2}-scaled columns; the seed for the complement
// is the standard basis vector with the largest projection residual.
std::vector<double> unit_normal(const WarpedAmbient& amb, const ImmersionJet& jet) {
  const int n = amb.n;
  const int d = n + 1;
  const double et = std::exp(jet.x.t);

  std::vector<std::vector<double>> basis;
  basis.reserve(n);
  for (int a = 0; a < n; ++a) {
    std::vector<double> v(d);
    v[0] = jet.tangents[a][0];
    for (int i = 1; i < d; ++i) v[i] = et * jet.tangents[a][i];
    double norm0 = 0.0;
    for (double c : v) norm0 += c * c;
    norm0 = std::sqrt(norm0);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) {
        double dot = 0.0;
        for (int i = 0; i < d; ++i) dot += v[i] * b[i];
        for (int i = 0; i < d; ++i) v[i] -= dot * b[i];
      }
    double norm = 0.0;
    for (double c : v) norm += c * c;
    norm = std::sqrt(norm);
    if (!(norm > 1e-12 * std::max(norm0, 1.0)))
      throw DegenerateMetricError("immersion has a degenerate tangent basis");
    for (double& c : v) c /= norm;
    basis.push_back(std::move(v));
  }

  int seed = 0;
  double best = -1.0;
  for (int k = 0; k < d; ++k) {
    double rk = 1.0;
    for (const auto& b : basis) rk -= b[k] * b[k];
    if (rk > best + 1e-15) {
      best = rk;
      seed = k;
    }
  }
  std::vector<double> y(d, 0.0);
  y[seed] = 1.0;
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) {
      double dot = 0.0;
      for (int i = 0; i < d; ++i) dot += y[i] * b[i];
      for (int i = 0; i < d; ++i) y[i] -= dot * b[i];
    }
  double norm = 0.0;
  for (double c : y) norm += c * c;
  norm = std::sqrt(norm);
  if (!(norm > 1e-10)) throw NumericalError("normal construction failed");
  for (double& c : y) c /= norm;

  std::vector<double> normal(d);
  normal[0] = y[0];
  for (int i = 1; i < d; ++i) normal[i] = y[i] / et;
  return normal;
}

void orient_inward(const SurfaceFamily& fam, const WarpedAmbient& amb, const ImmersionJet& jet, std::vector<double>& normal) {
  if (const auto* sphere = std::get_if<GeodesicSphereFamily>(&fam)) {
    // Euclidean direction of N in half-space coordinates; inward means
    // against the radial direction from the Euclidean center.
    const double z = std::exp(-jet.x.t);
    const double zc = sphere->z0 * std::cosh(sphere->rho);
    double dot = (-z * normal[0]) * (z - zc);
    for (int i = 0; i < amb.n; ++i) dot += normal[i + 1] * (jet.x.p[i] - sphere->x0[i]);
    if (dot > 0.0)
      for (double& c : normal) c = -c;
  } else {
    if (normal[0] > 0.0)
      for (double& c : normal) c = -c;
  }
}

} // namespace

void require_compatible(const SurfaceFamily& fam, const WarpedAmbient& amb) {
  if (std::holds_alternative<GeodesicSphereFamily>(fam)) {
    if (amb.fiber != FiberKind::Euclidean)
      throw UnsupportedError("geodesic spheres require the Euclidean fiber");
  } else {
    if (amb.fiber != FiberKind::FlatTorus)
      throw UnsupportedError("slices and torus graphs require a torus fiber");
  }
}

double graph_height(const TorusGraphFamily& fam, const WarpedAmbient& amb, std::span<const double> p) {
  return graph_jet(fam, amb, p).u;
}

ImmersionJet immerse(const SurfaceFamily& fam, const WarpedAmbient& amb, const ParamPoint& q) {
  require_compatible(fam, amb);
  check_param(fam, amb, q);
  if (const auto* slice = std::get_if<SliceFamily>(&fam)) return immerse_slice(*slice, amb, q);
  if (const auto* graph = std::get_if<TorusGraphFamily>(&fam)) return immerse_graph(*graph, amb, q);
  return immerse_sphere(std::get<GeodesicSphereFamily>(fam), amb, q);
}

std::vector<double> inward_normal(const SurfaceFamily& fam, const WarpedAmbient& amb, const ParamPoint& q) {
  const ImmersionJet jet = immerse(fam, amb, q);
  std::vector<double> n = unit_normal(amb, jet);
  orient_inward(fam, amb, jet, n);
  return n;
}

CurvatureData curvature_from_jet(const SurfaceFamily& fam, const WarpedAmbient& amb, const ImmersionJet& jet) {
  const int n = amb.n;
  const int d = n + 1;
  const SymMatrix g = metric_at(amb, jet.x);
  const Christoffel gamma = christoffel_at(amb, jet.x);

  SymMatrix g1(n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      double s = jet.tangents[a][0] * jet.tangents[b][0];
      for (int i = 1; i < d; ++i) s += g(i, i) * jet.tangents[a][i] * jet.tangents[b][i];
      g1.set(a, b, s);
    }

  std::vector<double> normal = unit_normal(amb, jet);
  orient_inward(fam, amb, jet, normal);
  std::vector<double> normal_low(d);
  normal_low[0] = normal[0];
  for (int i = 1; i < d; ++i) normal_low[i] = g(i, i) * normal[i];

  SymMatrix g2(n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      const std::vector<double> gam = gamma.contract(jet.tangents[a], jet.tangents[b]);
      const std::vector<double>& sec = jet.second_at(a, b);
      double s = 0.0;
      for (int i = 0; i < d; ++i) s += normal_low[i] * (sec[i] + gam[i]);
      g2.set(a, b, s);
    }

  CurvatureData data;
  data.x = jet.x;
  data.tangents = jet.tangents;
  data.normal = std::move(normal);
  const Cholesky chol(g1);
  data.first_form = g1;
  data.second_form = g2;
  data.profile = newton_tensors(chol.whiten(g2));
  data.area_element = chol.sqrt_det();
  const PotentialJet pot = potential_jet(amb, jet.x);
  data.v = pot.value;
  data.vn = pot.value * data.normal[0];
  data.height = jet.x.t;

  for (double lam : data.profile.lambda)
    if (!std::isfinite(lam))
      throw NumericalError("curvature_data: non-finite principal curvature at t = " + std::to_string(jet.x.t));
  return data;
}

CurvatureData curvature_data(const SurfaceFamily& fam, const WarpedAmbient& amb, const ParamPoint& q) {
  return curvature_from_jet(fam, amb, immerse(fam, amb, q));
}

double scalar_curvature(const CurvatureData& data) {
  const int n = data.profile.n;
  return n * (n - 1.0) * (data.profile.hk[2] - 1.0);
}

} // namespace warpcurv
