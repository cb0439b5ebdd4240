#ifndef MONOMEQ_MONOMIAL_FORM_HPP
#define MONOMEQ_MONOMIAL_FORM_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "monomeq/matrix.hpp"
#include "monomeq/tolerance.hpp"

namespace monomeq {

/// Weighted permutation M = D * Perm(perm), with Perm(perm) e_j = e_{perm[j]}.
/// Column j of M holds weights[perm[j]] in row perm[j]. Indices are zero-based.
struct MonomialForm {
  std::vector<Complex> weights;
  std::vector<std::size_t> perm;

  std::size_t size() const { return perm.size(); }

  Matrix permutation_matrix() const {
    Matrix p(size());
    for (std::size_t j = 0; j < size(); ++j) p(perm[j], j) = 1.0;
    return p;
  }

  Matrix matrix() const {
    Matrix m(size());
    for (std::size_t j = 0; j < size(); ++j) m(perm[j], j) = weights[perm[j]];
    return m;
  }

  std::vector<std::size_t> inverse_perm() const {
    std::vector<std::size_t> inv(size());
    for (std::size_t j = 0; j < size(); ++j) inv[perm[j]] = j;
    return inv;
  }

  friend bool operator==(const MonomialForm&, const MonomialForm&) = default;
};

namespace detail {

// Unassigned columns take unassigned rows in ascending order.
inline void complete_permutation(std::vector<std::size_t>& perm, std::vector<bool>& row_used) {
  std::size_t next_row = 0;
  for (auto& p : perm) {
    if (p != static_cast<std::size_t>(-1)) continue;
    while (row_used[next_row]) ++next_row;
    p = next_row;
    row_used[next_row] = true;
  }
}

}  // namespace detail

/// Decomposes M as a weighted permutation, or returns nullopt when some row or
/// column holds two entries above zero_tol * (column norm).
inline std::optional<MonomialForm> detect_monomial(const Matrix& m, const ToleranceConfig& tol = {}) {
  if (!m.is_square()) return std::nullopt;
  const std::size_t n = m.rows();
  constexpr auto unset = static_cast<std::size_t>(-1);
  MonomialForm f{std::vector<Complex>(n, 0.0), std::vector<std::size_t>(n, unset)};
  std::vector<bool> row_used(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    double cn = 0.0;
    for (std::size_t i = 0; i < n; ++i) cn += std::norm(m(i, j));
    const double thr = tol.zero_tol * std::sqrt(cn);
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(m(i, j)) <= thr) continue;
      if (f.perm[j] != unset || row_used[i]) return std::nullopt;
      f.perm[j] = i;
      f.weights[i] = m(i, j);
      row_used[i] = true;
    }
  }
  detail::complete_permutation(f.perm, row_used);
  return f;
}

/// Nearest weighted permutation by greedy selection: columns in order of
/// decreasing norm each keep their largest entry among rows not yet taken.
/// Callers judge the fit through monomial_residual.
inline MonomialForm dominant_monomial(const Matrix& m) {
  const std::size_t n = m.rows();
  MonomialForm f{std::vector<Complex>(n, 0.0), std::vector<std::size_t>(n, 0)};
  std::vector<double> col_norm(n, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) col_norm[j] += std::norm(m(i, j));
  std::vector<std::size_t> order(n);
  for (std::size_t j = 0; j < n; ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return col_norm[a] > col_norm[b]; });
  std::vector<bool> row_used(n, false);
  for (auto j : order) {
    std::size_t arg = n;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (row_used[i]) continue;
      const double a = std::abs(m(i, j));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    row_used[arg] = true;
    f.perm[j] = arg;
    f.weights[arg] = m(arg, j);
  }
  return f;
}

inline double monomial_residual(const Matrix& m, const MonomialForm& f) { return (m - f.matrix()).frobenius_norm(); }

}  // namespace monomeq

#endif  // MONOMEQ_MONOMIAL_FORM_HPP
