#pragma once

// Small dense linear algebra: just enough for modal models of a few dozen
// DOFs. Cyclic Jacobi for symmetric eigenproblems, Cholesky for the
// implicit time-stepping solve.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace modalkit {

struct Matrix {
  std::size_t n = 0;
  std::vector<double> a;  // row-major n*n

  Matrix() = default;
  explicit Matrix(std::size_t dim) : n(dim), a(dim * dim, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

  bool is_symmetric(double tol = 1e-12) const {
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (std::abs((*this)(i, j) - (*this)(j, i)) > tol * scale) return false;
    return true;
  }
};

struct EigenResult {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column r is the eigenvector of values[r]
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Deterministic
/// sweep order; converges quadratically for the small systems used here.
inline EigenResult eigen_symmetric(Matrix A) {
  const std::size_t n = A.n;
  if (!A.is_symmetric(1e-9)) throw std::invalid_argument("matrix not symmetric");

  Matrix V(n);
  for (std::size_t i = 0; i < n; ++i) V(i, i) = 1.0;

  auto off_diag_norm = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += A(i, j) * A(i, j);
    return std::sqrt(2.0 * s);
  };

  double scale = 0.0;
  for (double v : A.a) scale = std::max(scale, std::abs(v));
  const double tol = (scale == 0.0 ? 1.0 : scale) * 1e-15;

  for (int sweep = 0; sweep < 100 && off_diag_norm() > tol; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = A(p, q);
        if (std::abs(apq) <= tol) continue;
        const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = V(k, p), vkq = V(k, q);
          V(k, p) = c * vkp - s * vkq;
          V(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  // sort ascending, permuting eigenvector columns with the values
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::size_t best = i;
    for (std::size_t j = i + 1; j < n; ++j)
      if (A(order[j], order[j]) < A(order[best], order[best])) best = j;
    std::swap(order[i], order[best]);
  }

  EigenResult res;
  res.values.resize(n);
  res.vectors = Matrix(n);
  for (std::size_t r = 0; r < n; ++r) {
    res.values[r] = A(order[r], order[r]);
    // fix the sign so the largest-magnitude component is positive
    double big = 0.0;
    std::size_t big_i = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (std::abs(V(i, order[r])) > big) { big = std::abs(V(i, order[r])); big_i = i; }
    const double sgn = V(big_i, order[r]) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) res.vectors(i, r) = sgn * V(i, order[r]);
  }
  return res;
}

/// Cholesky factorization A = L L^T (lower triangle). Throws if A is not
/// positive definite.
inline Matrix cholesky(const Matrix& A) {
  const std::size_t n = A.n;
  Matrix L(n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = A(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
    if (!(d > 0.0)) throw std::invalid_argument("matrix not positive definite");
    L(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = A(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      L(i, j) = s / L(j, j);
    }
  }
  return L;
}

/// Solve L L^T x = b with a Cholesky factor.
inline std::vector<double> cholesky_solve(const Matrix& L, std::vector<double> b) {
  const std::size_t n = L.n;
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= L(i, k) * b[k];
    b[i] = s / L(i, i);
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= L(k, ii) * b[k];
    b[ii] = s / L(ii, ii);
  }
  return b;
}

}  // namespace modalkit
