#ifndef WARPCURV_GRID_OPS_HPP
#define WARPCURV_GRID_OPS_HPP

#include <vector>

#include "warpcurv/quadrature.hpp"

namespace warpcurv {

/// Scalar field sampled on all nodes of a periodic torus grid, row-major over
/// the axes like SurfaceGrid.
using GridField = std::vector<double>;

GridField sample_field(const SurfaceGrid& grid, const std::function<double(const ParamPoint&)>& f);

/// Intrinsic second-order calculus on a torus-graph (or slice) surface,
/// discretized on its parameter grid. First and second parameter derivatives
/// of fields are spectral (trigonometric differentiation matrices); the
/// induced Christoffel symbols come from central differences of the first
/// fundamental form on the grid.
///
/// Covariant Hessians are reported in the parameter frame; the L_k pairing
/// whitens them with the Cholesky factor of g1 so they meet the Newton
/// tensors in the frame those are stored in.
class IntrinsicGridOps {
public:
  IntrinsicGridOps(const SurfaceFamily& fam, const WarpedAmbient& amb, const SurfaceSweep& sweep);

  /// d(field)/dq_axis at all nodes.
  GridField derivative(const GridField& field, int axis) const;
  /// d2(field)/dq_a dq_b at all nodes.
  GridField second_derivative(const GridField& field, int a, int b) const;

  /// Covariant Hessian of the field in the induced metric, one SymMatrix per
  /// node (parameter frame).
  std::vector<SymMatrix> hessian(const GridField& field) const;

  /// L_k(field) = tr(T_k Hess field) at all nodes; k in {0, 1}.
  GridField lk_apply(int k, const GridField& field) const;

  /// Hessian at a single node (computes the full field pass; prefer the batch
  /// interface when evaluating many nodes).
  SymMatrix hessian_at(const GridField& field, std::size_t node) const;

  const SurfaceSweep& sweep() const { return *sweep_; }

private:
  const SurfaceSweep* sweep_;
  int n_;
  std::vector<std::vector<double>> d1_, d2_; // per-axis differentiation matrices
  // gamma_[node][l * n * n + i * n + j] = induced Christoffel Gamma^l_{ij}
  std::vector<std::vector<double>> gamma_;

  GridField apply_axis(const GridField& field, const std::vector<double>& mat, int axis) const;
};

} // namespace warpcurv

#endif
