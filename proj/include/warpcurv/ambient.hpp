#ifndef WARPCURV_AMBIENT_HPP
#define WARPCURV_AMBIENT_HPP

#include <cstdint>
#include <vector>

#include "warpcurv/geometry_core.hpp"

namespace warpcurv {

enum class FiberKind { FlatTorus, Euclidean };

/// The warped product R x_exp P with metric dt^2 + e^{2t} g_P over a flat
/// fiber P: a torus with the given periods, or all of R^n. Coordinates are
/// (t, p_1..p_n); the space is a hyperbolic space form of curvature -1.
/// potential_scale is the constant c in the potential V = c e^t.
struct WarpedAmbient {
  int n = 2;
  FiberKind fiber = FiberKind::FlatTorus;
  std::vector<double> periods; // size n for torus fibers, empty otherwise
  double potential_scale = 1.0;

  static WarpedAmbient torus(int n, std::vector<double> periods, double potential_scale = 1.0);
  static WarpedAmbient euclidean(int n, double potential_scale = 1.0);

  int dim() const { return n + 1; }
};

/// A point of the ambient space; torus fiber coordinates are reduced mod the
/// periods on construction (use WarpedAmbient::point / make_point).
struct AmbientPoint {
  double t = 0.0;
  std::vector<double> p;
};

AmbientPoint make_point(const WarpedAmbient& amb, double t, std::vector<double> p);

/// diag(1, e^{2t}, ..., e^{2t}) in coordinates (t, p).
SymMatrix metric_at(const WarpedAmbient& amb, const AmbientPoint& x);

/// Christoffel symbols Gamma^a_{bc}; only Gamma^t_{ij} = -e^{2t} delta_ij and
/// Gamma^i_{tj} = delta^i_j are nonzero.
class Christoffel {
public:
  Christoffel(int dim, double e2t) : dim_(dim), e2t_(e2t) {}
  int dim() const { return dim_; }
  double operator()(int a, int b, int c) const {
    if (a == 0) return (b != 0 && b == c) ? -e2t_ : 0.0;
    if (b == 0) return (a == c && c != 0) ? 1.0 : 0.0;
    if (c == 0) return (a == b && b != 0) ? 1.0 : 0.0;
    return 0.0;
  }
  /// Contraction Gamma(X, Y)^a = Gamma^a_{bc} X^b Y^c.
  std::vector<double> contract(std::span<const double> x, std::span<const double> y) const;

private:
  int dim_;
  double e2t_;
};

Christoffel christoffel_at(const WarpedAmbient& amb, const AmbientPoint& x);

/// Value, gradient (upper-index components) and covariant Hessian of the
/// potential V = c e^t. The Hessian is assembled through the Christoffel
/// symbols, not copied from V g; the identity Hess V = V g is then checked by
/// callers as an invariant.
struct PotentialJet {
  double value = 0.0;
  std::vector<double> grad;
  SymMatrix hess;
};

PotentialJet potential_jet(const WarpedAmbient& amb, const AmbientPoint& x);

/// Finite-difference curvature self-test at seeded random points and random
/// coordinate 2-planes: sectional curvature -1, Ricci = -n g, scalar
/// -n(n+1). Reports maximal deviations; pass/fail is left to the caller.
struct CurvatureSelfTest {
  int samples = 0;
  double max_sectional_dev = 0.0;  // |K + 1|
  double max_ricci_dev = 0.0;      // ||Ric + n g||_inf over sampled entries
  double max_scalar_dev = 0.0;     // |S + n(n+1)|
};

CurvatureSelfTest curvature_selftest(const WarpedAmbient& amb, int sample_count, std::uint64_t seed);

/// Potential identities at seeded random points with t in [-2, 2]:
/// ||Hess V - V g||_inf through the closed-form path and through the
/// finite-difference oracle (absolute), and the normalized trace identity
/// |Lap V / V - (n + 1)|.
struct PotentialSelfTest {
  int samples = 0;
  double max_hess_closed_dev = 0.0;
  double max_hess_fd_dev = 0.0;
  double max_trace_dev = 0.0;
};

PotentialSelfTest potential_selftest(const WarpedAmbient& amb, int sample_count, std::uint64_t seed);

} // namespace warpcurv

#endif
