#ifndef MONOMEQ_MONOMIAL_HPP
#define MONOMEQ_MONOMIAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monomeq/eigen.hpp"
#include "monomeq/halfnormal.hpp"
#include "monomeq/masa.hpp"
#include "monomeq/monomial_form.hpp"
#include "monomeq/polar.hpp"
#include "monomeq/random.hpp"

namespace monomeq {

enum class Verdict { Equivalent, NotEquivalent, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Equivalent: return "Equivalent";
    case Verdict::NotEquivalent: return "NotEquivalent";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

struct Witness {
  MasaBasis basis;
  MonomialForm form;  // V*AV = D Perm(pi)
  double residual = 0.0;
};

struct Refutation {
  enum class Stage { HalfNormality, Commutant } stage = Stage::Commutant;
  std::optional<std::size_t> k;
  double norm = 0.0;
};

struct DecisionReport {
  HalfNormalResult half_normal;
  std::vector<double> singular_values;
  bool distinct = false;
  bool invertible = false;
  std::optional<CommutantCheckResult> commutant_check;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Witness> witness;
  std::optional<Refutation> refutation;
  std::string route;  // how the verdict was reached
  std::size_t kernel_attempts = 0;
  std::vector<std::string> diagnostics;

  std::optional<std::size_t> first_failing_k() const {
    return commutant_check ? commutant_check->first_failing_k : std::nullopt;
  }
};

struct DecideOptions {
  unsigned kernel_retries = 32;  // random kernel rotations tried for singular A
  std::uint64_t seed = 0;
};

/// Distinct singular values: with pairwise distinct singular values the eigenbasis of P
/// already turns U (hence A) into a weighted permutation.
inline std::pair<MasaBasis, MonomialForm> witness_from_distinct(const Matrix& a, const PolarDecomposition& polar,
                                                                const ToleranceConfig& tol = {}) {
  if (!polar.distinct) throw PreconditionViolation("witness_from_distinct: singular values are not pairwise distinct");
  if (!is_half_normal(a, tol).half_normal) throw PreconditionViolation("witness_from_distinct: matrix is not half-normal");
  const auto eig = hermitian_eig(polar.P, tol);
  MasaBasis basis = certify_masa(eig.vectors, {polar.P}, polar.U);
  const Matrix m = eig.vectors.adjoint() * a * eig.vectors;
  MonomialForm form = dominant_monomial(m);
  if (monomial_residual(m, form) > certificate_tol(tol) * rel_scale(a.frobenius_norm()))
    throw PreconditionViolation("witness_from_distinct: eigenbasis of P does not monomialize A");
  return {std::move(basis), std::move(form)};
}

namespace detail {

inline std::optional<Witness> witness_via_masa(const Matrix& a, const Matrix& p, const Matrix& u,
                                               const ToleranceConfig& tol, std::vector<std::string>& diagnostics) {
  const std::size_t n = a.rows();
  try {
    auto fam = conjugate_family(p, u, n == 0 ? 0 : n - 1, tol);
    MasaBasis basis = build_invariant_masa(fam.members, u, tol);
    const Matrix m = basis.V.adjoint() * a * basis.V;
    MonomialForm form = dominant_monomial(m);
    const double res = monomial_residual(m, form);
    if (res > certificate_tol(tol) * rel_scale(a.frobenius_norm())) {
      diagnostics.push_back("masa witness residual " + format_real(res) + " exceeds tolerance");
      return std::nullopt;
    }
    return Witness{std::move(basis), std::move(form), res};
  } catch (const Error& e) {
    diagnostics.push_back(std::string("masa construction failed: ") + e.what());
    return std::nullopt;
  }
}

}  // namespace detail

/// Decides unitary equivalence of A to a weighted permutation.
/// Pipeline: half-normality, polar decomposition, the distinct-singular-value
/// fast path, then the bounded commutant test on (P, U) followed by the
/// invariant-masa witness. A singular A never receives NotEquivalent from the
/// commutant test because its polar factor U is not unique.
inline DecisionReport decide_unitary_equiv(const Matrix& a, const ToleranceConfig& tol = {},
                                           const DecideOptions& options = {}) {
  if (!a.is_square()) throw DimensionMismatch("decide_unitary_equiv: matrix must be square");
  const std::size_t n = a.rows();
  DecisionReport r;

  r.half_normal = is_half_normal(a, tol);
  const auto polar = polar_left(a, tol);
  r.singular_values = polar.singular_values;
  r.distinct = polar.distinct;
  r.invertible = polar.rank == n;

  if (!r.half_normal.half_normal) {
    r.verdict = Verdict::NotEquivalent;
    r.refutation = Refutation{Refutation::Stage::HalfNormality, std::nullopt, r.half_normal.norm};
    r.route = "half_normality";
    return r;
  }

  try {
    r.commutant_check = bounded_commutant_check(polar.P, polar.U, tol);
  } catch (const Error& e) {
    r.diagnostics.push_back(std::string("commutant check failed: ") + e.what());
    r.route = "numerical_failure";
    return r;
  }

  if (polar.distinct) {
    r.route = "distinct_singular_values";
    try {
      auto [basis, form] = witness_from_distinct(a, polar, tol);
      const Matrix m = basis.V.adjoint() * a * basis.V;
      const double res = monomial_residual(m, form);
      r.witness = Witness{std::move(basis), std::move(form), res};
      r.verdict = Verdict::Equivalent;
    } catch (const Error& e) {
      r.diagnostics.push_back(e.what());
    }
    return r;
  }

  if (r.commutant_check->passed) {
    r.route = "invariant_masa";
    if (auto w = detail::witness_via_masa(a, polar.P, polar.U, tol, r.diagnostics)) {
      r.witness = std::move(w);
      r.verdict = Verdict::Equivalent;
    }
    return r;
  }

  if (r.invertible) {
    const auto k = *r.commutant_check->first_failing_k;
    r.verdict = Verdict::NotEquivalent;
    r.refutation = Refutation{Refutation::Stage::Commutant, k, r.commutant_check->commutator_norms[k]};
    r.route = "commutant";
    return r;
  }

  // Singular A: P U' = P U for U' = Z U whenever Z is unitary and fixes ran P.
  r.route = "kernel_retry";
  const Matrix kernel = polar.kernel_basis();
  const Matrix projector = Matrix::identity(n) - kernel * kernel.adjoint();
  Rng rng(options.seed);
  for (unsigned attempt = 0; attempt < options.kernel_retries; ++attempt) {
    r.kernel_attempts = attempt + 1;
    const Matrix y = random_unitary(kernel.cols(), rng);
    const Matrix u2 = (projector + kernel * y * kernel.adjoint()) * polar.U;
    const auto check = bounded_commutant_check(polar.P, u2, tol);
    if (!check.passed) continue;
    if (auto w = detail::witness_via_masa(a, polar.P, u2, tol, r.diagnostics)) {
      r.commutant_check = check;
      r.witness = std::move(w);
      r.verdict = Verdict::Equivalent;
      return r;
    }
  }
  r.diagnostics.push_back("singular matrix: canonical polar factor fails the commutant test and no kernel rotation passed");
  return r;
}

/// Re-verifies an Equivalent report from scratch: V unitary and
/// ||V*AV - D Perm(pi)||_F <= certificate_tol * max(1, ||A||_F).
inline bool verify_witness(const Matrix& a, const Witness& w, const ToleranceConfig& tol = {}) {
  const Matrix& v = w.basis.V;
  if (unitary_defect(v) > certificate_tol(tol)) return false;
  return monomial_residual(v.adjoint() * a * v, w.form) <= certificate_tol(tol) * rel_scale(a.frobenius_norm());
}

/// A_m = V (D_m Perm(pi)) V* where D_m adds (i + 1) * delta / (n * m) to the
/// modulus of weight i. delta is half the smallest gap between distinct moduli,
/// so moduli never collide and ||A_m - A||_F <= sqrt(n) * delta / m.
inline Matrix perturb_to_distinct(const MonomialForm& form, const MasaBasis& basis, unsigned m) {
  if (m == 0) throw PreconditionViolation("perturb_to_distinct: m must be at least 1");
  const std::size_t n = form.size();
  std::vector<double> mods;
  for (const auto& w : form.weights) mods.push_back(std::abs(w));
  double scale = 1.0;
  for (auto x : mods) scale = std::max(scale, x);
  std::vector<double> sorted = mods;
  std::sort(sorted.begin(), sorted.end());
  double min_gap = scale;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const double g = sorted[i] - sorted[i - 1];
    if (g > 1e-12 * scale) min_gap = std::min(min_gap, g);
  }
  const double delta = min_gap / 2.0;
  const double step = delta / (static_cast<double>(std::max<std::size_t>(n, 1)) * static_cast<double>(m));
  MonomialForm perturbed = form;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex w = form.weights[i];
    const Complex phase = std::abs(w) > 0.0 ? w / std::abs(w) : Complex(1.0);
    perturbed.weights[i] = phase * (mods[i] + static_cast<double>(i + 1) * step);
  }
  return basis.V * perturbed.matrix() * basis.V.adjoint();
}

/// Similarity to a weighted permutation: every nonzero eigenvalue must have
/// equal geometric and algebraic multiplicity. Eigenvalues are grouped at
/// sqrt(cluster_tol) * max(1, ||A||_F) because a defective eigenvalue of
/// multiplicity m scatters like eps^{1/m}; groups separated by less than ten
/// times that radius are refused as ill-conditioned.
inline bool similar_to_weighted_permutation(const Matrix& a, const ToleranceConfig& tol = {}) {
  if (!a.is_square()) throw DimensionMismatch("similar_to_weighted_permutation: matrix must be square");
  const std::size_t n = a.rows();
  if (n == 0) return true;
  const double scale = rel_scale(a.frobenius_norm());
  const double radius = std::sqrt(tol.cluster_tol) * scale;
  const auto ev = eigenvalues(a);

  // single-linkage clustering
  std::vector<std::size_t> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = i;
  auto find = [&](std::size_t x) {
    while (label[x] != x) x = label[x] = label[label[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(ev[i] - ev[j]) <= radius) label[find(i)] = find(j);
  std::vector<std::vector<std::size_t>> clusters;
  std::vector<std::size_t> index_of(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto root = find(i);
    if (index_of[root] == n) {
      index_of[root] = clusters.size();
      clusters.emplace_back();
    }
    clusters[index_of[root]].push_back(i);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (find(i) != find(j) && std::abs(ev[i] - ev[j]) <= 10.0 * radius)
        throw IllConditioned("eigenvalue clusters are separated by less than ten times the clustering radius");

  for (const auto& c : clusters) {
    Complex centre = 0.0;
    for (auto i : c) centre += ev[i];
    centre /= static_cast<double>(c.size());
    if (std::abs(centre) <= radius) continue;  // zero cluster: nilpotent part is unconstrained
    Matrix shifted = a;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= centre;
    const auto s = svd(shifted, tol);
    std::size_t geometric = 0;
    for (auto v : s.values)
      if (v <= radius) ++geometric;
    if (geometric != c.size()) return false;
  }
  return true;
}

}  // namespace monomeq

#endif  // MONOMEQ_MONOMIAL_HPP
