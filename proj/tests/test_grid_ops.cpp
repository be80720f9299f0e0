#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "warpcurv/errors.hpp"
#include "warpcurv/grid_ops.hpp"

using namespace warpcurv;

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

WarpedAmbient torus2() { return WarpedAmbient::torus(2, {1.0, 1.0}); }

} // namespace

TEST_CASE("spectral derivatives are exact on grid modes") {
  const WarpedAmbient amb = torus2();
  const SurfaceFamily fam = SliceFamily{0.0};
  const SurfaceSweep sweep = sweep_family(fam, amb, torus_grid(amb.periods, 16), 1);
  const IntrinsicGridOps ops(fam, amb, sweep);

  GridField u(sweep.grid.node_count());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const ParamPoint q = sweep.grid.node(i);
    u[i] = std::sin(kTau * q.q[0]) * std::cos(2.0 * kTau * q.q[1]);
  }
  const GridField du0 = ops.derivative(u, 0);
  const GridField d2u01 = ops.second_derivative(u, 0, 1);
  double worst0 = 0.0, worst01 = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const ParamPoint q = sweep.grid.node(i);
    const double exact0 = kTau * std::cos(kTau * q.q[0]) * std::cos(2.0 * kTau * q.q[1]);
    const double exact01 = -2.0 * kTau * kTau * std::cos(kTau * q.q[0]) * std::sin(2.0 * kTau * q.q[1]);
    worst0 = std::max(worst0, std::abs(du0[i] - exact0));
    worst01 = std::max(worst01, std::abs(d2u01[i] - exact01));
  }
  CHECK(worst0 < 1e-11);
  CHECK(worst01 < 1e-9);
}

TEST_CASE("hessian of a constant field vanishes") {
  const WarpedAmbient amb = torus2();
  TorusGraphFamily g;
  g.modes = {FourierMode{{1, 0}, 0.2, 0.0}};
  const SurfaceSweep sweep = sweep_family(g, amb, torus_grid(amb.periods, 16), 1);
  const IntrinsicGridOps ops(g, amb, sweep);
  const GridField c(sweep.grid.node_count(), 2.5);
  for (const SymMatrix& h : ops.hessian(c)) CHECK(h.inf_norm() < 1e-9);
}

TEST_CASE("L0 is the Laplace-Beltrami operator on a flat slice") {
  const WarpedAmbient amb = torus2();
  const double s = 0.4;
  const SurfaceFamily fam = SliceFamily{s};
  const SurfaceSweep sweep = sweep_family(fam, amb, torus_grid(amb.periods, 32), 1);
  const IntrinsicGridOps ops(fam, amb, sweep);

  GridField u(sweep.grid.node_count());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::cos(kTau * sweep.grid.node(i).q[0]);
  const GridField lap = ops.lk_apply(0, u);
  // induced metric e^{2s} delta: Laplacian = -(2 pi)^2 e^{-2s} u
  double worst = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    worst = std::max(worst, std::abs(lap[i] + kTau * kTau * std::exp(-2.0 * s) * u[i]));
  CHECK(worst < 1e-8);
}

TEST_CASE("L1(e^h) vanishes on slices") {
  const WarpedAmbient amb = torus2();
  const double s = 0.25;
  const SurfaceFamily fam = SliceFamily{s};
  const SurfaceSweep sweep = sweep_family(fam, amb, torus_grid(amb.periods, 16), 1);
  const IntrinsicGridOps ops(fam, amb, sweep);
  const GridField eh(sweep.grid.node_count(), std::exp(s));
  for (double v : ops.lk_apply(1, eh)) CHECK(std::abs(v) < 1e-9);
}

TEST_CASE("L1(e^h) identity on a perturbed graph") {
  // L_1(e^h) = n(n-1) e^h (H + <N, d/dt> H_2); finite-difference-limited by
  // the induced Christoffels.
  const WarpedAmbient amb = torus2();
  TorusGraphFamily g;
  g.modes = {FourierMode{{1, 0}, 0.2, 0.0}};
  const SurfaceSweep sweep = sweep_family(g, amb, torus_grid(amb.periods, 64), 1);
  const IntrinsicGridOps ops(g, amb, sweep);

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
  CHECK(sup_err / sup_rhs < 1e-4);
}

TEST_CASE("grid operators reject unsupported input") {
  const WarpedAmbient eucl = WarpedAmbient::euclidean(2);
  const SurfaceFamily sph = GeodesicSphereFamily{1.0, {0.0, 0.0}, 1.0};
  const SurfaceSweep ssweep = sweep_family(sph, eucl, sphere_grid(2, 8), 1);
  CHECK_THROWS_AS(IntrinsicGridOps(sph, eucl, ssweep), UnsupportedError);

  const WarpedAmbient amb = torus2();
  const SurfaceFamily fam = SliceFamily{0.0};
  const SurfaceSweep sweep = sweep_family(fam, amb, torus_grid(amb.periods, 16), 1);
  const IntrinsicGridOps ops(fam, amb, sweep);
  CHECK_THROWS_AS((void)ops.lk_apply(2, GridField(sweep.grid.node_count(), 0.0)), ArgumentError);
  CHECK_THROWS_AS((void)ops.lk_apply(0, GridField(3, 0.0)), ArgumentError);
}
