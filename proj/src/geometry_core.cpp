#include "warpcurv/geometry_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "warpcurv/errors.hpp"

namespace warpcurv {

namespace {

void check_dim(int n) {
  if (n < 1 || n > 8) throw ArgumentError("SymMatrix dimension must be in [1, 8], got " + std::to_string(n));
}

} // namespace

SymMatrix::SymMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) { check_dim(n); }

SymMatrix::SymMatrix(int n, std::span<const double> row_major) : n_(n) {
  check_dim(n);
  if (row_major.size() != static_cast<std::size_t>(n) * n)
    throw ArgumentError("SymMatrix: entry count does not match dimension");
  a_.resize(row_major.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double v = 0.5 * (row_major[static_cast<std::size_t>(i) * n + j] +
                              row_major[static_cast<std::size_t>(j) * n + i]);
      if (!std::isfinite(v)) throw ArgumentError("SymMatrix: non-finite entry");
      a_[static_cast<std::size_t>(i) * n + j] = v;
    }
}

SymMatrix SymMatrix::identity(int n) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  SymMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.dim(); ++i) m.set(i, i, d[i]);
  return m;
}

void SymMatrix::set(int i, int j, double v) {
  if (!std::isfinite(v)) throw ArgumentError("SymMatrix::set: non-finite value");
  a_[static_cast<std::size_t>(i) * n_ + j] = v;
  a_[static_cast<std::size_t>(j) * n_ + i] = v;
}

double SymMatrix::inf_norm() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

double SymMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

SymMatrix add(const SymMatrix& a, const SymMatrix& b) {
  SymMatrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i; j < a.dim(); ++j) r.set(i, j, a(i, j) + b(i, j));
  return r;
}

SymMatrix sub(const SymMatrix& a, const SymMatrix& b) {
  SymMatrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i; j < a.dim(); ++j) r.set(i, j, a(i, j) - b(i, j));
  return r;
}

SymMatrix scale(const SymMatrix& a, double s) {
  SymMatrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i; j < a.dim(); ++j) r.set(i, j, s * a(i, j));
  return r;
}

SymMatrix mul_sym(const SymMatrix& a, const SymMatrix& b) {
  const int n = a.dim();
  if (b.dim() != n) throw ArgumentError("mul_sym: dimension mismatch");
  std::vector<double> prod(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += a(i, k) * b(k, j);
      prod[static_cast<std::size_t>(i) * n + j] = s;
    }
  return SymMatrix(n, prod); // constructor symmetrizes
}

double trace_product(const SymMatrix& a, const SymMatrix& b) {
  const int n = a.dim();
  if (b.dim() != n) throw ArgumentError("trace_product: dimension mismatch");
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) s += a(i, k) * b(k, i);
  return s;
}

double trace(const SymMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a(i, i);
  return s;
}

namespace {

double off_diagonal_norm(const std::vector<double>& a, int n) {
  double s = 0.0;
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      const double v = a[static_cast<std::size_t>(p) * n + q];
      s += 2.0 * v * v;
    }
  return std::sqrt(s);
}

std::string matrix_to_string(const SymMatrix& s) {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  for (int i = 0; i < s.dim(); ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < s.dim(); ++j) os << (j ? " " : "") << s(i, j);
  }
  os << "]";
  return os.str();
}

} // namespace

Spectrum sym_eigen(const SymMatrix& s) {
  const int n = s.dim();
  const double scale = s.frobenius_norm();
  const double threshold = 1e-14 * scale;

  std::vector<double> a(s.data().begin(), s.data().end());
  std::vector<double> q(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) q[static_cast<std::size_t>(i) * n + i] = 1.0;

  auto at = [&](std::vector<double>& m, int i, int j) -> double& {
    return m[static_cast<std::size_t>(i) * n + j];
  };

  const int max_sweeps = 30;
  int sweep = 0;
  while (off_diagonal_norm(a, n) > threshold) {
    if (++sweep > max_sweeps)
      throw NumericalError("sym_eigen: no convergence after 30 sweeps on " + matrix_to_string(s));
    for (int p = 0; p < n; ++p)
      for (int qq = p + 1; qq < n; ++qq) {
        const double apq = at(a, p, qq);
        if (std::abs(apq) <= 0.0) continue;
        const double theta = (at(a, qq, qq) - at(a, p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        const double tau = sn / (1.0 + c);

        const double app = at(a, p, p), aqq2 = at(a, qq, qq);
        at(a, p, p) = app - t * apq;
        at(a, qq, qq) = aqq2 + t * apq;
        at(a, p, qq) = 0.0;
        at(a, qq, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r != p && r != qq) {
            const double arp = at(a, r, p), arq = at(a, r, qq);
            at(a, r, p) = arp - sn * (arq + tau * arp);
            at(a, p, r) = at(a, r, p);
            at(a, r, qq) = arq + sn * (arp - tau * arq);
            at(a, qq, r) = at(a, r, qq);
          }
          const double qrp = at(q, r, p), qrq = at(q, r, qq);
          at(q, r, p) = qrp - sn * (qrq + tau * qrp);
          at(q, r, qq) = qrq + sn * (qrp - tau * qrq);
        }
      }
  }

  // Sign convention first, then sort (value, then descending lexicographic).
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double v = at(q, i, j);
      if (std::abs(v) > 1e-12) {
        if (v < 0)
          for (int r = 0; r < n; ++r) at(q, r, j) = -at(q, r, j);
        break;
      }
    }
  }
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    const double vx = at(a, x, x), vy = at(a, y, y);
    if (vx != vy) return vx < vy;
    for (int r = 0; r < n; ++r) {
      const double cx = at(q, r, x), cy = at(q, r, y);
      if (cx != cy) return cx > cy;
    }
    return false;
  });

  Spectrum out;
  out.values.resize(n);
  out.basis.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j) {
    out.values[j] = at(a, order[j], order[j]);
    for (int i = 0; i < n; ++i) out.basis[static_cast<std::size_t>(i) * n + j] = at(q, i, order[j]);
  }
  return out;
}

double elementary_symmetric(std::span<const double> lambda, int k) {
  const int n = static_cast<int>(lambda.size());
  if (k < 0 || k > n)
    throw ArgumentError("elementary_symmetric: k = " + std::to_string(k) + " out of range [0, " + std::to_string(n) + "]");
  std::vector<double> e(static_cast<std::size_t>(n) + 1, 0.0);
  e[0] = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::min(i + 1, n); j >= 1; --j) e[j] += lambda[i] * e[j - 1];
  return e[k];
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::vector<long long> row(static_cast<std::size_t>(n) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j >= 1; --j) row[j] += row[j - 1];
  return row[k];
}

double mean_curvature_k(std::span<const double> lambda, int k) {
  const int n = static_cast<int>(lambda.size());
  if (k < 0 || k > n)
    throw ArgumentError("mean_curvature_k: k = " + std::to_string(k) + " out of range [0, " + std::to_string(n) + "]");
  return elementary_symmetric(lambda, k) / static_cast<double>(binomial(n, k));
}

CurvatureProfile newton_tensors(const SymMatrix& shape) {
  const int n = shape.dim();
  CurvatureProfile pr;
  pr.n = n;
  const Spectrum sp = sym_eigen(shape);
  pr.lambda = sp.values;
  pr.sigma.resize(static_cast<std::size_t>(n) + 1);
  pr.hk.resize(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    pr.sigma[k] = elementary_symmetric(pr.lambda, k);
    pr.hk[k] = pr.sigma[k] / static_cast<double>(binomial(n, k));
  }
  pr.newton.reserve(n);
  pr.newton.push_back(SymMatrix::identity(n));
  for (int k = 1; k < n; ++k) {
    SymMatrix tk = sub(scale(SymMatrix::identity(n), pr.sigma[k]), mul_sym(shape, pr.newton.back()));
    pr.newton.push_back(std::move(tk));
  }
  return pr;
}

Cholesky::Cholesky(const SymMatrix& g) : n_(g.dim()), l_(static_cast<std::size_t>(g.dim()) * g.dim(), 0.0) {
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = g(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      if (i == j) {
        if (!(s > 0.0))
          throw DegenerateMetricError("Cholesky: matrix not positive definite (pivot " + std::to_string(i) + ")");
        l_[static_cast<std::size_t>(i) * n_ + i] = std::sqrt(s);
      } else {
        l_[static_cast<std::size_t>(i) * n_ + j] = s / l(j, j);
      }
    }
  }
}

double Cholesky::det() const {
  double d = 1.0;
  for (int i = 0; i < n_; ++i) d *= l(i, i) * l(i, i);
  return d;
}

double Cholesky::sqrt_det() const {
  double d = 1.0;
  for (int i = 0; i < n_; ++i) d *= l(i, i);
  return d;
}

std::vector<double> Cholesky::forward(std::span<const double> b) const {
  std::vector<double> x(b.begin(), b.end());
  for (int i = 0; i < n_; ++i) {
    for (int k = 0; k < i; ++k) x[i] -= l(i, k) * x[k];
    x[i] /= l(i, i);
  }
  return x;
}

std::vector<double> Cholesky::backward(std::span<const double> b) const {
  std::vector<double> x(b.begin(), b.end());
  for (int i = n_ - 1; i >= 0; --i) {
    for (int k = i + 1; k < n_; ++k) x[i] -= l(k, i) * x[k];
    x[i] /= l(i, i);
  }
  return x;
}

std::vector<double> Cholesky::solve(std::span<const double> b) const { return backward(forward(b)); }

SymMatrix Cholesky::inverse() const {
  SymMatrix inv(n_);
  std::vector<double> e(n_, 0.0);
  for (int j = 0; j < n_; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    const std::vector<double> col = solve(e);
    for (int i = j; i < n_; ++i) inv.set(i, j, col[i]);
  }
  return inv;
}

SymMatrix Cholesky::whiten(const SymMatrix& m) const {
  // columns of Y = L^{-1} M
  std::vector<double> y(static_cast<std::size_t>(n_) * n_, 0.0);
  std::vector<double> col(n_);
  for (int j = 0; j < n_; ++j) {
    for (int i = 0; i < n_; ++i) col[i] = m(i, j);
    const std::vector<double> s = forward(col);
    for (int i = 0; i < n_; ++i) y[static_cast<std::size_t>(i) * n_ + j] = s[i];
  }
  // rows of W = Y L^{-T}: W^T = L^{-1} Y^T
  std::vector<double> w(static_cast<std::size_t>(n_) * n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) col[j] = y[static_cast<std::size_t>(i) * n_ + j];
    const std::vector<double> s = forward(col);
    for (int j = 0; j < n_; ++j) w[static_cast<std::size_t>(i) * n_ + j] = s[j];
  }
  return SymMatrix(n_, w);
}

SymMatrix shape_from_forms(const SymMatrix& g, const SymMatrix& h) {
  if (g.dim() != h.dim()) throw ArgumentError("shape_from_forms: dimension mismatch");
  return Cholesky(g).whiten(h);
}

} // namespace warpcurv
