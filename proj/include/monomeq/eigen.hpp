#ifndef MONOMEQ_EIGEN_HPP
#define MONOMEQ_EIGEN_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "monomeq/matrix.hpp"
#include "monomeq/tolerance.hpp"

namespace monomeq {

/// Eigendecomposition of a Hermitian matrix. Values are sorted descending;
/// clusters are maximal runs of values whose consecutive gaps are within
/// cluster_tol * max(1, ||H||_F).
struct HermitianEigen {
  std::vector<double> values;
  Matrix vectors;
  std::vector<std::vector<std::size_t>> clusters;

  std::vector<double> cluster_values() const {
    std::vector<double> out;
    out.reserve(clusters.size());
    for (const auto& c : clusters) {
      double s = 0.0;
      for (auto i : c) s += values[i];
      out.push_back(s / static_cast<double>(c.size()));
    }
    return out;
  }

  /// Orthonormal basis of the eigenspace of cluster c.
  Matrix cluster_basis(std::size_t c) const { return vectors.columns(clusters[c].front(), clusters[c].size()); }
};

namespace detail {

// Unitary G acting on coordinates (p, q) that annihilates the (p, q) entry of
// the Hermitian 2x2 block [[app, apq], [conj(apq), aqq]] under G* A G.
// Columns of G: g_p = c e_p - s e^{-i phi} e_q, g_q = s e_p + c e^{-i phi} e_q.
struct JacobiRotation {
  double c = 1.0;
  double s = 0.0;
  Complex phase{1.0, 0.0};  // e^{-i phi}
};

inline JacobiRotation jacobi_rotation(double app, double aqq, Complex apq) {
  const double mag = std::abs(apq);
  JacobiRotation r;
  if (mag == 0.0) return r;
  const double tau = (aqq - app) / (2.0 * mag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  r.c = 1.0 / std::sqrt(1.0 + t * t);
  r.s = t * r.c;
  r.phase = std::conj(apq) / mag;
  return r;
}

// M <- M G on columns p, q.
inline void rotate_columns(Matrix& m, std::size_t p, std::size_t q, const JacobiRotation& r) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const Complex mp = m(i, p);
    const Complex mq = m(i, q) * r.phase;
    m(i, p) = r.c * mp - r.s * mq;
    m(i, q) = r.s * mp + r.c * mq;
  }
}

// M <- G* M on rows p, q.
inline void rotate_rows(Matrix& m, std::size_t p, std::size_t q, const JacobiRotation& r) {
  const Complex ph = std::conj(r.phase);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const Complex mp = m(p, j);
    const Complex mq = m(q, j) * ph;
    m(p, j) = r.c * mp - r.s * mq;
    m(q, j) = r.s * mp + r.c * mq;
  }
}

inline double offdiag_sq(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return s;
}

// Makes the first entry of (near-)largest modulus real positive.
inline void fix_phase(std::vector<Complex>& v) {
  double best = 0.0;
  for (const auto& z : v) best = std::max(best, std::abs(z));
  if (best == 0.0) return;
  for (const auto& z : v) {
    if (std::abs(z) >= best * (1.0 - 1e-9)) {
      const Complex ph = std::conj(z) / std::abs(z);
      for (auto& w : v) w *= ph;
      return;
    }
  }
}

// Canonical orthonormal basis of span(basis): project standard basis vectors,
// Gram-Schmidt with pivoting on residual norm (lowest index wins ties).
inline Matrix canonical_basis(const Matrix& basis) {
  const std::size_t n = basis.rows();
  const std::size_t d = basis.cols();
  std::vector<std::vector<Complex>> candidates(n);
  for (std::size_t i = 0; i < n; ++i) {
    // projection of e_i onto the span: B B* e_i = B (row i of B)^*
    std::vector<Complex> v(n);
    for (std::size_t j = 0; j < d; ++j) {
      const Complex coeff = std::conj(basis(i, j));
      for (std::size_t r = 0; r < n; ++r) v[r] += basis(r, j) * coeff;
    }
    candidates[i] = std::move(v);
  }
  Matrix out(n, d);
  std::vector<bool> used(n, false);
  for (std::size_t k = 0; k < d; ++k) {
    std::size_t pick = n;
    double pick_norm = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      const double nr = norm2(candidates[i]);
      if (nr > pick_norm * (1.0 + 1e-9)) {
        pick = i;
        pick_norm = nr;
      }
    }
    used[pick] = true;
    std::vector<Complex> v = candidates[pick];
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < k; ++j) {
        const auto q = out.column(j);
        const Complex proj = dot(q, v);
        for (std::size_t r = 0; r < n; ++r) v[r] -= proj * q[r];
      }
    }
    const double nv = norm2(v);
    for (auto& z : v) z /= nv;
    out.set_column(k, v);
    // deflate remaining candidates against the new direction
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      const Complex proj = dot(v, candidates[i]);
      for (std::size_t r = 0; r < n; ++r) candidates[i][r] -= proj * v[r];
    }
  }
  return out;
}

}  // namespace detail

/// Cyclic Jacobi eigensolver for Hermitian matrices. Output is a pure
/// function of (H, tol): degenerate clusters get a canonical basis and every
/// column is phase-fixed so its first entry of largest modulus is real positive.
inline HermitianEigen hermitian_eig(const Matrix& h, const ToleranceConfig& tol = {}) {
  if (!h.is_square()) throw DimensionMismatch("hermitian_eig: matrix must be square");
  const std::size_t n = h.rows();
  const double hnorm = h.frobenius_norm();
  const double defect = hermitian_defect(h);
  if (defect > tol.commute_tol * rel_scale(hnorm)) throw NotHermitian(defect);

  Matrix a = hermitian_part(h);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  Matrix v = Matrix::identity(n);

  const double target = 1e-15 * std::max(hnorm, 1e-300);
  for (int sweep = 0; sweep < 100; ++sweep) {
    if (std::sqrt(detail::offdiag_sq(a)) <= target) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // negligible relative to both diagonals: zero it outright
        if (sweep > 3 && std::abs(apq) * 1e18 < std::abs(app) && std::abs(apq) * 1e18 < std::abs(aqq)) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const auto rot = detail::jacobi_rotation(app, aqq, apq);
        detail::rotate_columns(a, p, q, rot);
        detail::rotate_rows(a, p, q, rot);
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        detail::rotate_columns(v, p, q, rot);
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });

  HermitianEigen out;
  out.values.resize(n);
  out.vectors = Matrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    out.vectors.set_column(k, v.column(order[k]));
  }

  const double gap = tol.cluster_tol * rel_scale(hnorm);
  for (std::size_t k = 0; k < n; ++k) {
    if (k == 0 || out.values[k - 1] - out.values[k] > gap)
      out.clusters.emplace_back();
    out.clusters.back().push_back(k);
  }

  for (const auto& c : out.clusters) {
    if (c.size() > 1) {
      const Matrix canon = detail::canonical_basis(out.vectors.columns(c.front(), c.size()));
      for (std::size_t j = 0; j < c.size(); ++j) out.vectors.set_column(c[j], canon.column(j));
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    auto col = out.vectors.column(k);
    detail::fix_phase(col);
    out.vectors.set_column(k, col);
  }
  return out;
}

namespace detail {

// Householder reduction to upper Hessenberg form (similarity).
inline Matrix hessenberg(Matrix a) {
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm += std::norm(a(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    const Complex x0 = a(k + 1, k);
    const Complex ph = std::abs(x0) == 0.0 ? Complex(1.0) : x0 / std::abs(x0);
    std::vector<Complex> v(n, 0.0);
    for (std::size_t i = k + 1; i < n; ++i) v[i] = a(i, k);
    v[k + 1] += ph * xnorm;
    double vv = 0.0;
    for (auto& z : v) vv += std::norm(z);
    if (vv == 0.0) continue;
    // A <- (I - 2 v v*/vv) A (I - 2 v v*/vv)
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * a(i, j);
      s *= 2.0 / vv;
      for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= v[i] * s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
      s *= 2.0 / vv;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= s * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
  return a;
}

}  // namespace detail

/// Eigenvalues of a general complex matrix: Hessenberg reduction followed by
/// single-shift complex QR iteration with Wilkinson shifts and deflation.
inline std::vector<Complex> eigenvalues(const Matrix& m) {
  if (!m.is_square()) throw DimensionMismatch("eigenvalues: matrix must be square");
  const std::size_t n = m.rows();
  std::vector<Complex> ev(n);
  if (n == 0) return ev;
  Matrix h = detail::hessenberg(m);
  const double eps = 2.220446049250313e-16;
  const double hnorm = std::max(h.frobenius_norm(), 1e-300);

  std::size_t hi = n - 1;
  int iter = 0;
  int total = 0;
  while (hi > 0) {
    std::size_t l = hi;
    while (l > 0) {
      const double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      if (std::abs(h(l, l - 1)) <= eps * (s == 0.0 ? hnorm : s)) {
        h(l, l - 1) = 0.0;
        break;
      }
      --l;
    }
    if (l == hi) {
      ev[hi] = h(hi, hi);
      --hi;
      iter = 0;
      continue;
    }
    if (++total > 100 * static_cast<int>(n) + 1000) throw IllConditioned("eigenvalues: QR iteration did not converge");

    const Complex a = h(hi - 1, hi - 1), b = h(hi - 1, hi), c = h(hi, hi - 1), d = h(hi, hi);
    Complex mu;
    if (++iter % 11 == 0) {
      mu = d + std::abs(c) * 0.75;  // exceptional shift
    } else {
      const Complex half = (a - d) * 0.5;
      const Complex disc = std::sqrt(half * half + b * c);
      const Complex m1 = (a + d) * 0.5 + disc;
      const Complex m2 = (a + d) * 0.5 - disc;
      mu = std::abs(m1 - d) < std::abs(m2 - d) ? m1 : m2;
    }

    for (std::size_t k = l; k <= hi; ++k) h(k, k) -= mu;
    std::vector<std::pair<Complex, Complex>> rots;
    rots.reserve(hi - l);
    for (std::size_t k = l; k < hi; ++k) {
      const Complex x = h(k, k), y = h(k + 1, k);
      const double r = std::hypot(std::abs(x), std::abs(y));
      Complex cc = 1.0, ss = 0.0;
      if (r != 0.0) {
        cc = x / r;
        ss = y / r;
      }
      rots.emplace_back(cc, ss);
      for (std::size_t j = k; j <= hi; ++j) {
        const Complex t1 = h(k, j), t2 = h(k + 1, j);
        h(k, j) = std::conj(cc) * t1 + std::conj(ss) * t2;
        h(k + 1, j) = -ss * t1 + cc * t2;
      }
    }
    for (std::size_t k = l; k < hi; ++k) {
      const auto [cc, ss] = rots[k - l];
      const std::size_t last = std::min(k + 2, hi);
      for (std::size_t i = l; i <= last; ++i) {
        const Complex t1 = h(i, k), t2 = h(i, k + 1);
        h(i, k) = t1 * cc + t2 * ss;
        h(i, k + 1) = -t1 * std::conj(ss) + t2 * std::conj(cc);
      }
    }
    for (std::size_t k = l; k <= hi; ++k) h(k, k) += mu;
  }
  ev[0] = h(0, 0);
  return ev;
}

}  // namespace monomeq

#endif  // MONOMEQ_EIGEN_HPP
