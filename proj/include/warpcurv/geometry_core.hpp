#ifndef WARPCURV_GEOMETRY_CORE_HPP
#define WARPCURV_GEOMETRY_CORE_HPP

#include <span>
#include <vector>

namespace warpcurv {

/// Dense symmetric matrix, sized for shape operators and ambient metrics
/// (dimension 1..8). The constructor symmetrizes, so entries(i,j) == entries(j,i)
/// holds exactly, and rejects non-finite input.
class SymMatrix {
public:
  SymMatrix() = default;
  explicit SymMatrix(int n);
  SymMatrix(int n, std::span<const double> row_major);

  static SymMatrix identity(int n);
  static SymMatrix diagonal(std::span<const double> d);

  int dim() const { return n_; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  /// Sets both (i,j) and (j,i).
  void set(int i, int j, double v);

  double inf_norm() const;
  double frobenius_norm() const;

  std::span<const double> data() const { return a_; }

private:
  int n_ = 0;
  std::vector<double> a_;
};

SymMatrix add(const SymMatrix& a, const SymMatrix& b);
SymMatrix sub(const SymMatrix& a, const SymMatrix& b);
SymMatrix scale(const SymMatrix& a, double s);
/// Product of two symmetric matrices, symmetrized. Intended for operators that
/// commute in exact arithmetic (polynomials in the same matrix), where the
/// product is symmetric up to rounding.
SymMatrix mul_sym(const SymMatrix& a, const SymMatrix& b);
/// tr(a b) for symmetric a, b.
double trace_product(const SymMatrix& a, const SymMatrix& b);
double trace(const SymMatrix& a);

/// Eigen-decomposition of a SymMatrix. values sorted ascending; basis holds the
/// eigenvectors as columns (row-major storage), orthonormal to 1e-12. Each
/// eigenvector's first component of magnitude > 1e-12 is made positive, and
/// exact eigenvalue ties are ordered by descending lexicographic comparison of
/// the sign-fixed eigenvectors, so the decomposition is deterministic.
struct Spectrum {
  std::vector<double> values;
  std::vector<double> basis; // row-major n x n, column j = eigenvector j
  int dim() const { return static_cast<int>(values.size()); }
  double vec(int i, int j) const { return basis[static_cast<std::size_t>(i) * values.size() + j]; }
};

/// Cyclic Jacobi eigensolver. Fixed rotation order (p<q row-major), sweep cap
/// 30, convergence when off(A) <= 1e-14 * ||S||_F. Throws NumericalError with
/// the matrix printed if the cap is hit.
Spectrum sym_eigen(const SymMatrix& s);

/// k-th elementary symmetric function of the given values, by the polynomial
/// coefficient recurrence (expand prod (x + lambda_i)), not subset sums.
double elementary_symmetric(std::span<const double> lambda, int k);

long long binomial(int n, int k);

/// H_k = sigma_k / C(n,k).
double mean_curvature_k(std::span<const double> lambda, int k);

/// Full symmetric-function package of a shape operator: sigma_0..sigma_n,
/// H_0..H_n, and the Newton transformations T_0..T_{n-1} built by
/// T_0 = I, T_k = sigma_k I - A T_{k-1}. The tensors live in the same frame as
/// the input A (for curvature data: the Cholesky-whitened parameter frame), so
/// pairings tr(T_k Hess) must use that frame on both sides.
struct CurvatureProfile {
  int n = 0;
  std::vector<double> sigma;      // size n+1, sigma[0] = 1
  std::vector<double> hk;         // size n+1, hk[0] = 1
  std::vector<double> lambda;     // principal values, ascending
  std::vector<SymMatrix> newton;  // T_0..T_{n-1}
};

CurvatureProfile newton_tensors(const SymMatrix& shape);

/// Cholesky factorization g = L L^T of a positive definite SymMatrix.
/// Throws DegenerateMetricError if a pivot is not strictly positive.
class Cholesky {
public:
  explicit Cholesky(const SymMatrix& g);
  int dim() const { return n_; }
  double l(int i, int j) const { return l_[static_cast<std::size_t>(i) * n_ + j]; }
  double det() const;
  double sqrt_det() const;
  /// x := L^{-1} b
  std::vector<double> forward(std::span<const double> b) const;
  /// x := L^{-T} b
  std::vector<double> backward(std::span<const double> b) const;
  /// g^{-1} b
  std::vector<double> solve(std::span<const double> b) const;
  SymMatrix inverse() const;
  /// L^{-1} m L^{-T}, the congruence that whitens the metric.
  SymMatrix whiten(const SymMatrix& m) const;

private:
  int n_ = 0;
  std::vector<double> l_; // lower triangle, row-major full storage
};

/// Shape operator from fundamental forms: L^{-1} h L^{-T} with g = L L^T.
/// Symmetric, similar to g^{-1} h, so its eigenvalues are the principal
/// curvatures. Throws DegenerateMetricError when g is not positive definite.
SymMatrix shape_from_forms(const SymMatrix& g, const SymMatrix& h);

} // namespace warpcurv

#endif
