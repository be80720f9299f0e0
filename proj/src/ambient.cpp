#include "warpcurv/ambient.hpp"

#include <cmath>
#include <string>

#include "warpcurv/errors.hpp"
#include "warpcurv/rng.hpp"

namespace warpcurv {

WarpedAmbient WarpedAmbient::torus(int n, std::vector<double> periods, double potential_scale) {
  if (n < 2) throw ArgumentError("WarpedAmbient: fiber dimension must be >= 2");
  if (static_cast<int>(periods.size()) != n) throw ArgumentError("WarpedAmbient: need one period per fiber dimension");
  for (double L : periods)
    if (!(L > 0.0)) throw ArgumentError("WarpedAmbient: periods must be positive");
  if (!(potential_scale > 0.0)) throw ArgumentError("WarpedAmbient: potential_scale must be positive");
  return WarpedAmbient{n, FiberKind::FlatTorus, std::move(periods), potential_scale};
}

WarpedAmbient WarpedAmbient::euclidean(int n, double potential_scale) {
  if (n < 2) throw ArgumentError("WarpedAmbient: fiber dimension must be >= 2");
  if (!(potential_scale > 0.0)) throw ArgumentError("WarpedAmbient: potential_scale must be positive");
  return WarpedAmbient{n, FiberKind::Euclidean, {}, potential_scale};
}

AmbientPoint make_point(const WarpedAmbient& amb, double t, std::vector<double> p) {
  if (!std::isfinite(t)) throw ArgumentError("AmbientPoint: non-finite t");
  if (static_cast<int>(p.size()) != amb.n) throw ArgumentError("AmbientPoint: wrong fiber coordinate count");
  for (double& v : p) {
    if (!std::isfinite(v)) throw ArgumentError("AmbientPoint: non-finite fiber coordinate");
  }
  if (amb.fiber == FiberKind::FlatTorus) {
    for (int i = 0; i < amb.n; ++i) {
      const double L = amb.periods[i];
      p[i] -= L * std::floor(p[i] / L);
    }
  }
  return AmbientPoint{t, std::move(p)};
}

SymMatrix metric_at(const WarpedAmbient& amb, const AmbientPoint& x) {
  const double e2t = std::exp(2.0 * x.t);
  SymMatrix g(amb.dim());
  g.set(0, 0, 1.0);
  for (int i = 1; i <= amb.n; ++i) g.set(i, i, e2t);
  return g;
}

std::vector<double> Christoffel::contract(std::span<const double> x, std::span<const double> y) const {
  std::vector<double> out(dim_, 0.0);
  double fiber_dot = 0.0;
  for (int i = 1; i < dim_; ++i) fiber_dot += x[i] * y[i];
  out[0] = -e2t_ * fiber_dot;
  for (int i = 1; i < dim_; ++i) out[i] = x[0] * y[i] + x[i] * y[0];
  return out;
}

Christoffel christoffel_at(const WarpedAmbient& amb, const AmbientPoint& x) {
  return Christoffel(amb.dim(), std::exp(2.0 * x.t));
}

PotentialJet potential_jet(const WarpedAmbient& amb, const AmbientPoint& x) {
  const int d = amb.dim();
  const double v = amb.potential_scale * std::exp(x.t);
  PotentialJet jet;
  jet.value = v;
  jet.grad.assign(d, 0.0);
  jet.grad[0] = v; // g^{tt} dV/dt = V
  // Hess_ab = d_a d_b V - Gamma^c_ab d_c V, with dV = (V, 0, ..., 0)
  const Christoffel gamma = christoffel_at(amb, x);
  SymMatrix hess(d);
  hess.set(0, 0, v); // d_t d_t V, Gamma^t_tt = 0
  for (int i = 1; i < d; ++i)
    for (int j = i; j < d; ++j) hess.set(i, j, -gamma(0, i, j) * v);
  jet.hess = std::move(hess);
  return jet;
}

namespace {

constexpr double kFdStep = 1e-5;
// Second differences divide rounding noise by step^2; the balanced step for
// them is around eps^{1/4}, not the 1e-5 used for first differences.
constexpr double kFdStep2 = 3e-4;

// dGamma^a_{bc}/dx^d by central differences of the closed-form symbols.
double christoffel_fd_derivative(const WarpedAmbient& amb, const AmbientPoint& x, int a, int b, int c, int d) {
  AmbientPoint xp = x, xm = x;
  if (d == 0) {
    xp.t += kFdStep;
    xm.t -= kFdStep;
  } else {
    xp.p[d - 1] += kFdStep;
    xm.p[d - 1] -= kFdStep;
  }
  const Christoffel gp = christoffel_at(amb, xp);
  const Christoffel gm = christoffel_at(amb, xm);
  return (gp(a, b, c) - gm(a, b, c)) / (2.0 * kFdStep);
}

// R^a_{bcd} = d_c Gamma^a_{db} - d_d Gamma^a_{cb} + Gamma^a_{ce} Gamma^e_{db}
//           - Gamma^a_{de} Gamma^e_{cb}, derivative terms by finite differences.
double riemann_fd(const WarpedAmbient& amb, const AmbientPoint& x, const Christoffel& gamma, int a, int b, int c, int d) {
  double r = christoffel_fd_derivative(amb, x, a, d, b, c) - christoffel_fd_derivative(amb, x, a, c, b, d);
  for (int e = 0; e < amb.dim(); ++e) r += gamma(a, c, e) * gamma(e, d, b) - gamma(a, d, e) * gamma(e, c, b);
  return r;
}

} // namespace

CurvatureSelfTest curvature_selftest(const WarpedAmbient& amb, int sample_count, std::uint64_t seed) {
  if (amb.fiber != FiberKind::FlatTorus && amb.fiber != FiberKind::Euclidean)
    throw UnsupportedError("curvature_selftest: fiber must be flat");
  const int d = amb.dim();
  Rng rng(seed);
  CurvatureSelfTest rep;
  rep.samples = sample_count;
  for (int s = 0; s < sample_count; ++s) {
    std::vector<double> p(amb.n);
    for (int i = 0; i < amb.n; ++i) {
      const double span = amb.fiber == FiberKind::FlatTorus ? amb.periods[i] : 2.0;
      p[i] = rng.uniform(0.0, span);
    }
    const AmbientPoint x = make_point(amb, rng.uniform(-2.0, 2.0), std::move(p));
    const SymMatrix g = metric_at(amb, x);
    const Christoffel gamma = christoffel_at(amb, x);

    // random coordinate 2-plane
    const int a = static_cast<int>(rng.index(d));
    int b = static_cast<int>(rng.index(d - 1));
    if (b >= a) ++b;
    double r_abab = 0.0;
    for (int e = 0; e < d; ++e) r_abab += g(a, e) * riemann_fd(amb, x, gamma, e, b, a, b);
    const double sectional = r_abab / (g(a, a) * g(b, b) - g(a, b) * g(a, b));
    rep.max_sectional_dev = std::max(rep.max_sectional_dev, std::abs(sectional + 1.0));

    // one random Ricci entry plus the full scalar (scalar needs them all)
    double scalar = 0.0;
    for (int bb = 0; bb < d; ++bb)
      for (int dd = 0; dd < d; ++dd) {
        double ric = 0.0;
        for (int e = 0; e < d; ++e) ric += riemann_fd(amb, x, gamma, e, bb, e, dd);
        rep.max_ricci_dev = std::max(rep.max_ricci_dev, std::abs(ric + amb.n * g(bb, dd)));
        if (bb == dd) scalar += ric / g(bb, bb);
      }
    rep.max_scalar_dev = std::max(rep.max_scalar_dev, std::abs(scalar + amb.n * (amb.n + 1.0)));
  }
  return rep;
}

PotentialSelfTest potential_selftest(const WarpedAmbient& amb, int sample_count, std::uint64_t seed) {
  const int d = amb.dim();
  Rng rng(seed);
  PotentialSelfTest rep;
  rep.samples = sample_count;
  const auto value_at = [&](AmbientPoint x, int axis, double step) {
    if (axis == 0)
      x.t += step;
    else
      x.p[axis - 1] += step;
    return amb.potential_scale * std::exp(x.t);
  };
  for (int s = 0; s < sample_count; ++s) {
    std::vector<double> p(amb.n);
    for (int i = 0; i < amb.n; ++i) {
      const double span = amb.fiber == FiberKind::FlatTorus ? amb.periods[i] : 2.0;
      p[i] = rng.uniform(0.0, span);
    }
    const AmbientPoint x = make_point(amb, rng.uniform(-2.0, 2.0), std::move(p));
    const PotentialJet jet = potential_jet(amb, x);
    const SymMatrix g = metric_at(amb, x);
    const Christoffel gamma = christoffel_at(amb, x);

    double closed_dev = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) closed_dev = std::max(closed_dev, std::abs(jet.hess(i, j) - jet.value * g(i, j)));
    rep.max_hess_closed_dev = std::max(rep.max_hess_closed_dev, closed_dev);

    // trace_g Hess V = sum g^{aa} Hess_aa for the diagonal metric
    double lap = 0.0;
    for (int i = 0; i < d; ++i) lap += jet.hess(i, i) / g(i, i);
    rep.max_trace_dev = std::max(rep.max_trace_dev, std::abs(lap / jet.value - (amb.n + 1.0)));

    // finite-difference Hessian oracle
    double fd_dev = 0.0;
    const double v0 = jet.value;
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        double second;
        if (i == j) {
          second = (value_at(x, i, kFdStep2) - 2.0 * v0 + value_at(x, i, -kFdStep2)) / (kFdStep2 * kFdStep2);
        } else {
          AmbientPoint xpp = x, xpm = x, xmp = x, xmm = x;
          auto bump = [&](AmbientPoint& q, int axis, double h) {
            if (axis == 0)
              q.t += h;
            else
              q.p[axis - 1] += h;
          };
          bump(xpp, i, kFdStep2);
          bump(xpp, j, kFdStep2);
          bump(xpm, i, kFdStep2);
          bump(xpm, j, -kFdStep2);
          bump(xmp, i, -kFdStep2);
          bump(xmp, j, kFdStep2);
          bump(xmm, i, -kFdStep2);
          bump(xmm, j, -kFdStep2);
          const auto val = [&](const AmbientPoint& q) { return amb.potential_scale * std::exp(q.t); };
          second = (val(xpp) - val(xpm) - val(xmp) + val(xmm)) / (4.0 * kFdStep2 * kFdStep2);
        }
        // partial derivatives of V vanish except d_t V = V
        const double hess_fd = second - gamma(0, i, j) * v0;
        fd_dev = std::max(fd_dev, std::abs(hess_fd - v0 * g(i, j)));
      }
    rep.max_hess_fd_dev = std::max(rep.max_hess_fd_dev, fd_dev);
  }
  return rep;
}

} // namespace warpcurv
