#ifndef MONOMEQ_POLAR_HPP
#define MONOMEQ_POLAR_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "monomeq/eigen.hpp"
#include "monomeq/matrix.hpp"
#include "monomeq/tolerance.hpp"

namespace monomeq {

/// A = left * diag(values) * right^*, values descending.
struct SingularValueDecomposition {
  Matrix left;
  std::vector<double> values;
  Matrix right;
  std::size_t rank = 0;
};

/// Left polar decomposition A = P U (P positive semidefinite, U unitary).
struct PolarDecomposition {
  Matrix P;
  Matrix U;
  std::vector<double> singular_values;
  bool distinct = false;
  Matrix left;   // W of the SVD; columns rank.. span ker P
  Matrix right;  // X of the SVD
  std::size_t rank = 0;

  Matrix kernel_basis() const { return left.columns(rank, left.cols() - rank); }
};

namespace detail {

// Extends the first k orthonormal columns of m to an orthonormal basis, pulling
// standard basis vectors in order of largest residual.
inline void complete_orthonormal(Matrix& m, std::size_t k) {
  const std::size_t n = m.rows();
  for (std::size_t col = k; col < n; ++col) {
    std::vector<Complex> best;
    double best_norm = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Complex> v(n, 0.0);
      v[i] = 1.0;
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t j = 0; j < col; ++j) {
          const auto q = m.column(j);
          const Complex p = dot(q, v);
          for (std::size_t r = 0; r < n; ++r) v[r] -= p * q[r];
        }
      const double nv = norm2(v);
      if (nv > best_norm * (1.0 + 1e-9)) {
        best_norm = nv;
        best = std::move(v);
      }
    }
    for (auto& z : best) z /= best_norm;
    m.set_column(col, best);
  }
}

}  // namespace detail

/// One-sided (Hestenes) Jacobi SVD. Singular values at or below
/// zero_tol * max(1, ||A||_F) are reported as exactly zero and their left
/// vectors are completed deterministically.
inline SingularValueDecomposition svd(const Matrix& a, const ToleranceConfig& tol = {}) {
  if (!a.is_square()) throw DimensionMismatch("svd: matrix must be square");
  const std::size_t n = a.rows();
  Matrix g = a;
  Matrix x = Matrix::identity(n);
  constexpr double eps = 2.220446049250313e-16;

  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        Complex gamma = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          alpha += std::norm(g(i, p));
          beta += std::norm(g(i, q));
          gamma += std::conj(g(i, p)) * g(i, q);
        }
        if (std::abs(gamma) <= eps * std::sqrt(alpha * beta) || std::abs(gamma) < 1e-300) continue;
        rotated = true;
        const auto rot = detail::jacobi_rotation(alpha, beta, gamma);
        detail::rotate_columns(g, p, q, rot);
        detail::rotate_columns(x, p, q, rot);
      }
    }
    if (!rotated) break;
  }

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) norms[j] = norm2(g.column(j));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return norms[i] > norms[j]; });

  const double threshold = tol.zero_tol * rel_scale(a.frobenius_norm());
  SingularValueDecomposition out;
  out.left = Matrix(n);
  out.right = Matrix(n);
  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.right.set_column(k, x.column(j));
    if (norms[j] > threshold) {
      out.values[k] = norms[j];
      auto col = g.column(j);
      for (auto& z : col) z /= norms[j];
      out.left.set_column(k, col);
      out.rank = k + 1;
    } else {
      out.values[k] = 0.0;
    }
  }
  detail::complete_orthonormal(out.left, out.rank);
  return out;
}

inline bool pairwise_distinct(const std::vector<double>& sorted_desc, double gap) {
  for (std::size_t i = 1; i < sorted_desc.size(); ++i)
    if (sorted_desc[i - 1] - sorted_desc[i] <= gap) return false;
  return true;
}

/// Canonical left polar decomposition from the SVD A = W S X*:
/// P = W S W*, U = W X*.
inline PolarDecomposition polar_left(const Matrix& a, const ToleranceConfig& tol = {}) {
  const auto s = svd(a, tol);
  PolarDecomposition out;
  const Matrix wt = s.left.adjoint();
  out.P = hermitian_part(s.left * Matrix::diagonal(std::span<const double>(s.values)) * wt);
  out.U = s.left * s.right.adjoint();
  out.singular_values = s.values;
  out.distinct = pairwise_distinct(s.values, tol.cluster_tol * rel_scale(a.frobenius_norm()));
  out.left = s.left;
  out.right = s.right;
  out.rank = s.rank;
  return out;
}

}  // namespace monomeq

#endif  // MONOMEQ_POLAR_HPP
