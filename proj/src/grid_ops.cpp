#include "warpcurv/grid_ops.hpp"

#include <cmath>
#include <numbers>

#include "warpcurv/errors.hpp"

namespace warpcurv {

GridField sample_field(const SurfaceGrid& grid, const std::function<double(const ParamPoint&)>& f) {
  GridField out(grid.node_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(grid.node(i));
  return out;
}

namespace {

// Trigonometric differentiation matrices for a uniform periodic grid of m
// nodes on period L, built from the DFT symbol: first derivative multiplies
// mode k by i f_k (Nyquist zeroed), second by -f_k^2 (Nyquist kept).
std::vector<double> spectral_d1(int m, double L) {
  std::vector<double> d(static_cast<std::size_t>(m) * m, 0.0);
  const double base = 2.0 * std::numbers::pi / L;
  for (int j = 0; j < m; ++j)
    for (int l = 0; l < m; ++l) {
      double s = 0.0;
      for (int k = 0; k < m; ++k) {
        const int f = k <= m / 2 ? k : k - m;
        if (2 * k == m) continue; // Nyquist
        s += -static_cast<double>(f) * std::sin(2.0 * std::numbers::pi * k * (j - l) / m);
      }
      d[static_cast<std::size_t>(j) * m + l] = base * s / m;
    }
  return d;
}

std::vector<double> spectral_d2(int m, double L) {
  std::vector<double> d(static_cast<std::size_t>(m) * m, 0.0);
  const double base = 2.0 * std::numbers::pi / L;
  for (int j = 0; j < m; ++j)
    for (int l = 0; l < m; ++l) {
      double s = 0.0;
      for (int k = 0; k < m; ++k) {
        const double f = k <= m / 2 ? k : k - m;
        s += -f * f * std::cos(2.0 * std::numbers::pi * k * (j - l) / m);
      }
      d[static_cast<std::size_t>(j) * m + l] = base * base * s / m;
    }
  return d;
}

} // namespace

IntrinsicGridOps::IntrinsicGridOps(const SurfaceFamily& fam, const WarpedAmbient& amb, const SurfaceSweep& sweep)
    : sweep_(&sweep), n_(amb.n) {
  if (std::holds_alternative<GeodesicSphereFamily>(fam))
    throw UnsupportedError("intrinsic grid operators support torus families only");
  if (sweep.grid.kind != GridKind::Torus) throw ArgumentError("IntrinsicGridOps: torus grid required");
  for (int m : sweep.grid.shape)
    if (m < 8) throw ArgumentError("IntrinsicGridOps: resolution must be >= 8 per axis");

  for (int a = 0; a < n_; ++a) {
    const int m = sweep.grid.shape[a];
    const double L = amb.periods[a];
    d1_.push_back(spectral_d1(m, L));
    d2_.push_back(spectral_d2(m, L));
  }

  // Induced Christoffels: gamma^l_{ij} = g1^{lm}(d_i g_jm + d_j g_im - d_m g_ij)/2
  // with fourth-order central differences of g1 along the periodic axes.
  const std::size_t count = sweep.grid.node_count();
  const auto& shape = sweep.grid.shape;

  std::vector<std::size_t> strides(n_, 1);
  for (int a = n_ - 2; a >= 0; --a) strides[a] = strides[a + 1] * shape[a + 1];

  // dg[axis][node][i * n + j]
  std::vector<std::vector<std::vector<double>>> dg(
      n_, std::vector<std::vector<double>>(count, std::vector<double>(static_cast<std::size_t>(n_) * n_)));
  for (int axis = 0; axis < n_; ++axis) {
    const int m = shape[axis];
    const double step = amb.periods[axis] / m;
    for (std::size_t idx = 0; idx < count; ++idx) {
      const int pos = static_cast<int>(idx / strides[axis]) % m;
      const std::size_t base0 = idx - static_cast<std::size_t>(pos) * strides[axis];
      const auto shifted = [&](int offset) {
        const int p = ((pos + offset) % m + m) % m;
        return base0 + static_cast<std::size_t>(p) * strides[axis];
      };
      const SymMatrix& gp1 = sweep.nodes[shifted(1)].first_form;
      const SymMatrix& gm1 = sweep.nodes[shifted(-1)].first_form;
      const SymMatrix& gp2 = sweep.nodes[shifted(2)].first_form;
      const SymMatrix& gm2 = sweep.nodes[shifted(-2)].first_form;
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
          dg[axis][idx][static_cast<std::size_t>(i) * n_ + j] =
              (-gp2(i, j) + 8.0 * gp1(i, j) - 8.0 * gm1(i, j) + gm2(i, j)) / (12.0 * step);
    }
  }

  gamma_.assign(count, std::vector<double>(static_cast<std::size_t>(n_) * n_ * n_, 0.0));
  for (std::size_t idx = 0; idx < count; ++idx) {
    const SymMatrix ginv = Cholesky(sweep.nodes[idx].first_form).inverse();
    for (int l = 0; l < n_; ++l)
      for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j) {
          double s = 0.0;
          for (int mth = 0; mth < n_; ++mth) {
            const double term = dg[i][idx][static_cast<std::size_t>(j) * n_ + mth] +
                                dg[j][idx][static_cast<std::size_t>(i) * n_ + mth] -
                                dg[mth][idx][static_cast<std::size_t>(i) * n_ + j];
            s += ginv(l, mth) * term;
          }
          s *= 0.5;
          gamma_[idx][static_cast<std::size_t>(l) * n_ * n_ + static_cast<std::size_t>(i) * n_ + j] = s;
          gamma_[idx][static_cast<std::size_t>(l) * n_ * n_ + static_cast<std::size_t>(j) * n_ + i] = s;
        }
  }
}

GridField IntrinsicGridOps::apply_axis(const GridField& field, const std::vector<double>& mat, int axis) const {
  const auto& shape = sweep_->grid.shape;
  const int m = shape[axis];
  std::vector<std::size_t> strides(n_, 1);
  for (int a = n_ - 2; a >= 0; --a) strides[a] = strides[a + 1] * shape[a + 1];
  GridField out(field.size(), 0.0);
  for (std::size_t idx = 0; idx < field.size(); ++idx) {
    const int pos = static_cast<int>(idx / strides[axis]) % m;
    const std::size_t base0 = idx - static_cast<std::size_t>(pos) * strides[axis];
    double s = 0.0;
    for (int l = 0; l < m; ++l) s += mat[static_cast<std::size_t>(pos) * m + l] * field[base0 + static_cast<std::size_t>(l) * strides[axis]];
    out[idx] = s;
  }
  return out;
}

GridField IntrinsicGridOps::derivative(const GridField& field, int axis) const {
  if (field.size() != sweep_->grid.node_count()) throw ArgumentError("derivative: field size mismatch");
  return apply_axis(field, d1_[axis], axis);
}

GridField IntrinsicGridOps::second_derivative(const GridField& field, int a, int b) const {
  if (field.size() != sweep_->grid.node_count()) throw ArgumentError("second_derivative: field size mismatch");
  if (a == b) return apply_axis(field, d2_[a], a);
  return apply_axis(apply_axis(field, d1_[a], a), d1_[b], b);
}

std::vector<SymMatrix> IntrinsicGridOps::hessian(const GridField& field) const {
  const std::size_t count = sweep_->grid.node_count();
  if (field.size() != count) throw ArgumentError("hessian: field size mismatch");

  std::vector<GridField> first(n_);
  for (int a = 0; a < n_; ++a) first[a] = derivative(field, a);
  std::vector<GridField> second(static_cast<std::size_t>(n_) * n_);
  for (int a = 0; a < n_; ++a)
    for (int b = a; b < n_; ++b) second[static_cast<std::size_t>(a) * n_ + b] = second_derivative(field, a, b);

  std::vector<SymMatrix> out(count, SymMatrix(n_));
  for (std::size_t idx = 0; idx < count; ++idx) {
    for (int i = 0; i < n_; ++i)
      for (int j = i; j < n_; ++j) {
        double v = second[static_cast<std::size_t>(i) * n_ + j][idx];
        for (int l = 0; l < n_; ++l)
          v -= gamma_[idx][static_cast<std::size_t>(l) * n_ * n_ + static_cast<std::size_t>(i) * n_ + j] * first[l][idx];
        out[idx].set(i, j, v);
      }
  }
  return out;
}

GridField IntrinsicGridOps::lk_apply(int k, const GridField& field) const {
  if (k != 0 && k != 1) throw ArgumentError("lk_apply: k must be 0 or 1");
  const std::vector<SymMatrix> hess = hessian(field);
  GridField out(hess.size());
  for (std::size_t idx = 0; idx < hess.size(); ++idx) {
    const CurvatureData& node = sweep_->nodes[idx];
    const SymMatrix whitened = Cholesky(node.first_form).whiten(hess[idx]);
    out[idx] = trace_product(node.profile.newton[k], whitened);
  }
  return out;
}

SymMatrix IntrinsicGridOps::hessian_at(const GridField& field, std::size_t node) const {
  if (node >= sweep_->grid.node_count()) throw ArgumentError("hessian_at: node index out of range");
  return hessian(field)[node];
}

} // namespace warpcurv
