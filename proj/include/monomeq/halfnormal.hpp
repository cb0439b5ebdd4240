#ifndef MONOMEQ_HALFNORMAL_HPP
#define MONOMEQ_HALFNORMAL_HPP

#include <optional>
#include <vector>

#include "monomeq/matrix.hpp"
#include "monomeq/tolerance.hpp"

namespace monomeq {

struct HalfNormalResult {
  bool half_normal = false;
  double norm = 0.0;  // ||[A*A, AA*]||_F
};

/// A is half-normal when A*A and AA* commute. The raw commutator norm is
/// returned alongside the verdict; the threshold is commute_tol * max(1, ||A||_F^4).
inline HalfNormalResult is_half_normal(const Matrix& a, const ToleranceConfig& tol = {}) {
  const Matrix ah = a.adjoint();
  const double norm = commutator_norm(ah * a, a * ah);
  const double an = a.frobenius_norm();
  return {norm <= tol.commute_tol * rel_scale(an * an * an * an), norm};
}

inline void require_unitary(const Matrix& u, const ToleranceConfig& tol) {
  if (!u.is_square()) throw DimensionMismatch("expected a square unitary");
  const double d = unitary_defect(u);
  if (d > tol.commute_tol * rel_scale(u.frobenius_norm())) throw NotUnitary(d);
}

inline void require_hermitian(const Matrix& h, const ToleranceConfig& tol) {
  if (!h.is_square()) throw DimensionMismatch("expected a square Hermitian matrix");
  const double d = hermitian_defect(h);
  if (d > tol.commute_tol * rel_scale(h.frobenius_norm())) throw NotHermitian(d);
}

/// members[k] = (U*)^k P U^k for k = 0..kmax, built by repeated conjugation.
struct ConjugateFamily {
  Matrix base_P;
  Matrix base_U;
  std::vector<Matrix> members;
};

inline ConjugateFamily conjugate_family(const Matrix& p, const Matrix& u, std::size_t kmax,
                                        const ToleranceConfig& tol = {}) {
  require_hermitian(p, tol);
  require_unitary(u, tol);
  if (p.rows() != u.rows()) throw DimensionMismatch("conjugate_family: P and U differ in dimension");
  ConjugateFamily fam{p, u, {}};
  fam.members.reserve(kmax + 1);
  fam.members.push_back(p);
  const Matrix ua = u.adjoint();
  for (std::size_t k = 1; k <= kmax; ++k) fam.members.push_back(hermitian_part(ua * fam.members.back() * u));
  return fam;
}

struct CommutantCheckResult {
  bool passed = true;
  std::optional<std::size_t> first_failing_k;
  std::vector<double> commutator_norms;  // index k -> ||[P, P_k]||_F, k = 0..K
  double threshold = 0.0;
};

/// Checks [P, P_k] = 0 for k = 1..max_k against commute_tol * max(1, ||P||_F^2).
inline CommutantCheckResult extended_commutant_check(const Matrix& p, const Matrix& u, std::size_t max_k,
                                                     const ToleranceConfig& tol = {}) {
  const std::size_t n = p.rows();
  if (n > 0 && max_k + 1 < n) throw PreconditionViolation("extended_commutant_check: K must be at least n - 1");
  const auto fam = conjugate_family(p, u, max_k, tol);
  const double pn = p.frobenius_norm();
  CommutantCheckResult r;
  r.threshold = tol.commute_tol * rel_scale(pn * pn);
  r.commutator_norms.reserve(max_k + 1);
  r.commutator_norms.push_back(0.0);
  for (std::size_t k = 1; k <= max_k; ++k) {
    const double c = commutator_norm(p, fam.members[k]);
    r.commutator_norms.push_back(c);
    if (c > r.threshold && r.passed) {
      r.passed = false;
      r.first_failing_k = k;
    }
  }
  return r;
}

/// Checks k = 1..n-1 only; that range certifies every k >= 1.
inline CommutantCheckResult bounded_commutant_check(const Matrix& p, const Matrix& u, const ToleranceConfig& tol = {}) {
  const std::size_t n = p.rows();
  return extended_commutant_check(p, u, n == 0 ? 0 : n - 1, tol);
}

/// The three equivalent forms of half-normality for A = P U.
struct HalfNormalFormulations {
  HalfNormalResult product;         // [A*A, AA*] with A = PU
  HalfNormalResult conjugate;       // [P, U*PU]
  HalfNormalResult inverse_conjugate;  // [P, UPU*]

  bool agree() const {
    return product.half_normal == conjugate.half_normal && conjugate.half_normal == inverse_conjugate.half_normal;
  }
};

inline HalfNormalFormulations half_normal_formulations(const Matrix& p, const Matrix& u,
                                                       const ToleranceConfig& tol = {}) {
  const double pn = p.frobenius_norm();
  const double thr = tol.commute_tol * rel_scale(pn * pn);
  const Matrix ua = u.adjoint();
  HalfNormalFormulations f;
  f.product = is_half_normal(p * u, tol);
  const double c1 = commutator_norm(p, ua * p * u);
  const double c2 = commutator_norm(p, u * p * ua);
  f.conjugate = {c1 <= thr, c1};
  f.inverse_conjugate = {c2 <= thr, c2};
  return f;
}

}  // namespace monomeq

#endif  // MONOMEQ_HALFNORMAL_HPP
