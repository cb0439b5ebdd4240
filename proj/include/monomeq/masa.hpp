#ifndef MONOMEQ_MASA_HPP
#define MONOMEQ_MASA_HPP

#include <algorithm>
#include <limits>
#include <vector>

#include "monomeq/eigen.hpp"
#include "monomeq/halfnormal.hpp"
#include "monomeq/matrix.hpp"
#include "monomeq/monomial_form.hpp"
#include "monomeq/tolerance.hpp"

namespace monomeq {

/// Minimal projections of the algebra generated by a commuting Hermitian
/// family, as orthonormal column blocks. labels[j][g] is the scalar by which
/// generator g acts on subspace j.
struct JointEigenspaces {
  std::vector<Matrix> subspaces;
  std::vector<std::vector<double>> labels;

  std::size_t size() const { return subspaces.size(); }
  Matrix projection(std::size_t j) const { return subspaces[j] * subspaces[j].adjoint(); }
};

/// V_{sigma(j)} = U* V_j. Orbits are the cycles of sigma, each listed from its
/// smallest index and following sigma.
struct ConjugationOrbits {
  std::vector<std::size_t> sigma;
  std::vector<std::vector<std::size_t>> orbits;
};

/// Orthonormal basis V in which every generator is diagonal and V*UV is a
/// weighted permutation with unit-modulus weights.
struct MasaBasis {
  Matrix V;
  std::vector<double> diag_certificates;  // ||offdiag(V*HV)||_F per generator
  MonomialForm monomial_certificate;      // form of V*UV
  double monomial_residual = 0.0;         // ||V*UV - form||_F
};

/// Threshold applied to masa and witness certificates.
inline double certificate_tol(const ToleranceConfig& tol) { return 100.0 * tol.commute_tol; }

namespace detail {

inline void validate_generators(const std::vector<Matrix>& gens, const ToleranceConfig& tol) {
  if (gens.empty()) throw DimensionMismatch("joint_eigenspaces: empty generator list");
  const std::size_t n = gens.front().rows();
  for (const auto& h : gens) {
    if (!h.is_square() || h.rows() != n) throw DimensionMismatch("generators must be square of equal dimension");
    require_hermitian(h, tol);
  }
  std::vector<double> norms;
  for (const auto& h : gens) norms.push_back(h.frobenius_norm());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const double c = commutator_norm(gens[i], gens[j]);
      if (c > tol.commute_tol * rel_scale(norms[i] * norms[j])) throw NotCommuting(i, j, c);
    }
}

}  // namespace detail

/// Iterative refinement: split every current subspace by the clustered
/// eigenvalues of each generator's compression until a full pass splits nothing.
inline JointEigenspaces joint_eigenspaces(const std::vector<Matrix>& generators, const ToleranceConfig& tol = {}) {
  detail::validate_generators(generators, tol);
  const std::size_t n = generators.front().rows();
  std::vector<Matrix> spaces{Matrix::identity(n)};

  for (std::size_t pass = 0; pass <= n; ++pass) {
    bool split = false;
    for (const auto& h : generators) {
      const double gap = tol.cluster_tol * rel_scale(h.frobenius_norm());
      std::vector<Matrix> next;
      for (const auto& b : spaces) {
        if (b.cols() == 1) {
          next.push_back(b);
          continue;
        }
        const std::size_t before = next.size();
        const Matrix c = hermitian_part(b.adjoint() * h * b);
        const auto eig = hermitian_eig(c, tol);
        std::size_t start = 0;
        for (std::size_t k = 1; k <= eig.values.size(); ++k) {
          if (k == eig.values.size() || eig.values[k - 1] - eig.values[k] > gap) {
            next.push_back(b * eig.vectors.columns(start, k - start));
            start = k;
          }
        }
        if (next.size() - before > 1) split = true;
      }
      spaces = std::move(next);
    }
    if (!split) break;
  }

  JointEigenspaces out;
  out.subspaces = std::move(spaces);
  for (const auto& b : out.subspaces) {
    std::vector<double> label;
    const double d = static_cast<double>(b.cols());
    for (const auto& h : generators) label.push_back((b.adjoint() * h * b).trace().real() / d);
    out.labels.push_back(std::move(label));
  }
  return out;
}

/// Matches U* E_j U against every projection E_k. A match needs distance
/// <= 10 * commute_tol (scaled by ||E_j||_F); a runner-up within a factor 10
/// of the best is an ambiguity.
inline ConjugationOrbits conjugation_orbits(const JointEigenspaces& spaces, const Matrix& u,
                                            const ToleranceConfig& tol = {}) {
  require_unitary(u, tol);
  const std::size_t m = spaces.size();
  std::vector<Matrix> proj;
  proj.reserve(m);
  for (std::size_t j = 0; j < m; ++j) proj.push_back(spaces.projection(j));
  const Matrix ua = u.adjoint();

  ConjugationOrbits out;
  out.sigma.assign(m, 0);
  std::vector<bool> hit(m, false);
  for (std::size_t j = 0; j < m; ++j) {
    const Matrix moved = ua * proj[j] * u;
    const double thr = 10.0 * tol.commute_tol * rel_scale(proj[j].frobenius_norm());
    double best = std::numeric_limits<double>::infinity();
    double second = best;
    std::size_t arg = m;
    for (std::size_t k = 0; k < m; ++k) {
      const double d = frobenius_distance(proj[k], moved);
      if (d < best) {
        second = best;
        best = d;
        arg = k;
      } else if (d < second) {
        second = d;
      }
    }
    if (best > thr) throw InvariantViolation(j, best);
    if (second <= std::max(10.0 * best, thr)) throw AmbiguousMatch(j, best, second);
    if (hit[arg] || spaces.subspaces[arg].cols() != spaces.subspaces[j].cols()) throw InvariantViolation(j, best);
    hit[arg] = true;
    out.sigma[j] = arg;
  }

  std::vector<bool> seen(m, false);
  for (std::size_t s = 0; s < m; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> orbit;
    for (std::size_t j = s; !seen[j]; j = out.sigma[j]) {
      seen[j] = true;
      orbit.push_back(j);
    }
    out.orbits.push_back(std::move(orbit));
  }
  return out;
}

/// Certificates of a candidate masa basis, recomputed from scratch.
inline MasaBasis certify_masa(Matrix v, const std::vector<Matrix>& generators, const Matrix& u) {
  MasaBasis out;
  const Matrix va = v.adjoint();
  for (const auto& h : generators) out.diag_certificates.push_back(offdiag_norm(va * h * v));
  const Matrix w = va * u * v;
  out.monomial_certificate = dominant_monomial(w);
  out.monomial_residual = monomial_residual(w, out.monomial_certificate);
  out.V = std::move(v);
  return out;
}

/// Orbit construction of a U-invariant masa containing the algebra generated
/// by commuting Hermitian generators. For an orbit j_0 -> ... -> j_{m-1} of
/// length m, eigenvectors f_t of (U*)^m on V_{j_0} spawn b_t^{(i)} = (U*)^i f_t,
/// on which U* acts as a cyclic shift closing with the eigenvalue of f_t.
/// An empty generator list is treated as {I}.
inline MasaBasis build_invariant_masa(const std::vector<Matrix>& generators, const Matrix& u,
                                      const ToleranceConfig& tol = {}) {
  require_unitary(u, tol);
  const std::size_t n = u.rows();
  const std::vector<Matrix> gens = generators.empty() ? std::vector<Matrix>{Matrix::identity(n)} : generators;
  for (const auto& g : gens)
    if (g.rows() != n) throw DimensionMismatch("build_invariant_masa: generator and unitary differ in dimension");

  const auto spaces = joint_eigenspaces(gens, tol);
  const auto orbits = conjugation_orbits(spaces, u, tol);
  const Matrix ua = u.adjoint();

  Matrix v(n);
  std::size_t col = 0;
  for (const auto& orbit : orbits.orbits) {
    const Matrix& b = spaces.subspaces[orbit.front()];
    const auto len = static_cast<unsigned>(orbit.size());
    // (U*)^len restricted to V_{j0}; normal, so diagonalize via its Hermitian parts
    const Matrix restricted = b.adjoint() * power(ua, len) * b;
    std::vector<Matrix> f_blocks;
    if (restricted.rows() == 1) {
      f_blocks.push_back(b);
    } else {
      const auto parts = joint_eigenspaces({hermitian_part(restricted), skew_hermitian_part(restricted)}, tol);
      for (const auto& s : parts.subspaces) f_blocks.push_back(b * s);
    }
    std::vector<std::vector<Complex>> seeds;
    for (const auto& fb : f_blocks)
      for (std::size_t t = 0; t < fb.cols(); ++t) seeds.push_back(fb.column(t));
    for (std::size_t i = 0; i < len; ++i) {
      for (auto& f : seeds) {
        v.set_column(col++, f);
        f = ua * std::span<const Complex>(f);
      }
    }
  }
  if (col != n) throw InvariantViolation(0, static_cast<double>(n - col));
  return certify_masa(std::move(v), generators, u);
}

/// Independent re-check: V unitary, every generator diagonal in V, and V*UV a
/// weighted permutation with unit-modulus weights, all within certificate_tol.
inline bool verify_masa(const MasaBasis& basis, const std::vector<Matrix>& generators, const Matrix& u,
                        const ToleranceConfig& tol = {}) {
  const double ctol = certificate_tol(tol);
  const Matrix& v = basis.V;
  if (!v.is_square() || v.rows() != u.rows()) return false;
  if (unitary_defect(v) > ctol) return false;
  const Matrix va = v.adjoint();
  for (const auto& h : generators)
    if (offdiag_norm(va * h * v) > ctol * rel_scale(h.frobenius_norm())) return false;
  const Matrix w = va * u * v;
  const auto form = dominant_monomial(w);
  if (monomial_residual(w, form) > ctol) return false;
  for (const auto& z : form.weights)
    if (std::abs(std::abs(z) - 1.0) > ctol) return false;
  return true;
}

}  // namespace monomeq

#endif  // MONOMEQ_MASA_HPP
