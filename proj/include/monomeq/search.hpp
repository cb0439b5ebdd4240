#ifndef MONOMEQ_SEARCH_HPP
#define MONOMEQ_SEARCH_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "monomeq/fixtures.hpp"
#include "monomeq/halfnormal.hpp"
#include "monomeq/monomial.hpp"
#include "monomeq/random.hpp"

namespace monomeq {

enum class Classification { ConsistentWithConjecture, CandidateCounterexample };

inline const char* to_string(Classification c) {
  return c == Classification::CandidateCounterexample ? "CandidateCounterexample" : "ConsistentWithConjecture";
}

enum class SampleKind { Control, Candidate };

inline const char* to_string(SampleKind k) { return k == SampleKind::Control ? "control" : "candidate"; }

/// One sample of the power-half-normality experiment.
struct SearchRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  SampleKind kind = SampleKind::Control;
  std::size_t dimension = 0;
  Matrix A;
  std::size_t max_power_checked = 0;
  std::vector<double> power_norms;  // index k - 1 -> ||[(A^k)*A^k, A^k(A^k)*]||_F
  bool all_powers_half_normal = false;
  bool invertible = false;
  Verdict verdict = Verdict::Inconclusive;
  Classification classification = Classification::ConsistentWithConjecture;
};

struct SearchOptions {
  std::size_t n = 4;
  std::size_t trials = 100;
  std::size_t max_power = 4;
  std::uint64_t seed = 0;
  ToleranceConfig tol{};
  unsigned kernel_retries = 32;
  bool include_candidates = true;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Pinching of p onto the commutant of h: sum over eigenprojections E of E p E.
inline Matrix pinch(const Matrix& p, const Matrix& h, const ToleranceConfig& tol) {
  const auto eig = hermitian_eig(h, tol);
  Matrix out(p.rows());
  for (std::size_t c = 0; c < eig.clusters.size(); ++c) {
    const Matrix b = eig.cluster_basis(c);
    out += b * (b.adjoint() * p * b) * b.adjoint();
  }
  return hermitian_part(out);
}

// Eigenvalues of p closer than rel * max(1, ||p||_F) are replaced by their mean.
inline Matrix snap_spectrum(const Matrix& p, double rel, const ToleranceConfig& tol) {
  ToleranceConfig coarse = tol;
  coarse.cluster_tol = rel;
  const auto eig = hermitian_eig(p, coarse);
  const auto means = eig.cluster_values();
  Matrix out(p.rows());
  for (std::size_t c = 0; c < eig.clusters.size(); ++c) {
    const Matrix b = eig.cluster_basis(c);
    out += (b * b.adjoint()) * Complex(means[c]);
  }
  return hermitian_part(out);
}

// Adjacent singular values are either equal to cluster tolerance or separated
// by at least 1e-4 of the scale.
inline bool well_separated(const std::vector<double>& values, double scale, const ToleranceConfig& tol) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double gap = std::abs(values[i - 1] - values[i]);
    if (gap > tol.cluster_tol * scale && gap < 1e-4 * scale) return false;
  }
  return true;
}

inline Matrix plane_rotation(std::size_t n, Rng& rng, double theta) {
  Matrix g = Matrix::identity(n);
  if (n < 2) return g;
  const std::size_t i = rng.index(n);
  std::size_t j = rng.index(n - 1);
  if (j >= i) ++j;
  g(i, i) = std::cos(theta);
  g(j, j) = std::cos(theta);
  g(i, j) = -std::sin(theta);
  g(j, i) = std::sin(theta);
  return g;
}

inline Matrix random_monomial_unitary(std::size_t n, Rng& rng) {
  MonomialForm mono{std::vector<Complex>(n), rng.permutation(n)};
  for (auto& z : mono.weights) z = rng.unit_phase();
  return mono.matrix();
}

// P with spectrum in {1,2,3} and U = W G M W*, P pinched onto the commutant of
// U*PU and UPU* until they commute, with near-equal eigenvalues merged.
inline Matrix pinched_candidate(std::size_t n, Rng& rng, const ToleranceConfig& tol) {
  std::vector<double> spectrum(n);
  for (auto& s : spectrum) s = static_cast<double>(1 + rng.index(3));
  const Matrix w = random_unitary(n, rng);
  Matrix p = hermitian_part(w * Matrix::diagonal(std::span<const double>(spectrum)) * w.adjoint());
  const Matrix u = w * plane_rotation(n, rng, rng.uniform(0.0, M_PI)) * random_monomial_unitary(n, rng) * w.adjoint();
  const Matrix ua = u.adjoint();
  for (int round = 0; round < 4; ++round) {
    if (round > 0) p = snap_spectrum(p, 1e-4, tol);
    for (int it = 0; it < 50; ++it) {
      const double pn = p.frobenius_norm();
      if (commutator_norm(p, ua * p * u) <= 1e-2 * tol.commute_tol * rel_scale(pn * pn)) break;
      p = pinch(p, ua * p * u, tol);
      p = pinch(p, u * p * ua, tol);
    }
  }
  return p * u;
}

// Diagonal P with spectrum in {1,2,3} and U a product of plane rotations by
// angles in {pi/6, pi/4, pi/3} with a monomial unitary, conjugated by a Haar W.
inline Matrix rotation_candidate(std::size_t n, Rng& rng) {
  static constexpr double kAngles[] = {M_PI / 6, M_PI / 4, M_PI / 3};
  std::vector<double> spectrum(n);
  for (auto& s : spectrum) s = static_cast<double>(1 + rng.index(3));
  Matrix u = random_monomial_unitary(n, rng);
  const std::size_t rotations = 1 + rng.index(2);
  for (std::size_t r = 0; r < rotations; ++r) u = plane_rotation(n, rng, kAngles[rng.index(3)]) * u;
  const Matrix w = random_unitary(n, rng);
  return w * (Matrix::diagonal(std::span<const double>(spectrum)) * u) * w.adjoint();
}

}  // namespace detail

/// Heuristic half-normal invertible candidate. Each draw uses either the
/// pinching construction or the quantized-rotation construction; a draw is
/// accepted once it is half-normal with well separated singular values. After
/// 64 rejected draws the normal matrix 2W is returned for a Haar W.
inline Matrix heuristic_half_normal_candidate(std::size_t n, std::uint64_t seed, const ToleranceConfig& tol) {
  Rng rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Matrix a = rng.coin() ? detail::pinched_candidate(n, rng, tol) : detail::rotation_candidate(n, rng);
    if (!is_half_normal(a, tol).half_normal) continue;
    const auto s = svd(a, tol);
    if (s.rank == n && detail::well_separated(s.values, rel_scale(a.frobenius_norm()), tol)) return a;
  }
  return random_unitary(n, rng) * Complex(2.0);
}

inline SearchRecord classify_sample(const Matrix& a, std::size_t max_power, const ToleranceConfig& tol,
                                    const DecideOptions& decide_options) {
  SearchRecord r;
  r.dimension = a.rows();
  r.A = a;
  r.max_power_checked = max_power;
  r.all_powers_half_normal = true;
  Matrix ak = a;
  for (std::size_t k = 1; k <= max_power; ++k) {
    const auto hn = is_half_normal(ak, tol);
    r.power_norms.push_back(hn.norm);
    r.all_powers_half_normal = r.all_powers_half_normal && hn.half_normal;
    ak = ak * a;
  }
  const auto report = decide_unitary_equiv(a, tol, decide_options);
  r.verdict = report.verdict;
  r.invertible = report.invertible;
  if (r.all_powers_half_normal && r.invertible && r.verdict == Verdict::NotEquivalent)
    r.classification = Classification::CandidateCounterexample;
  return r;
}

/// Runs the experiment, emitting records in trial order: each trial yields a
/// monomial-conjugate control and, unless disabled, a heuristic candidate.
inline void run_search(const SearchOptions& opt, const std::function<void(const SearchRecord&)>& sink) {
  if (opt.n < 2) throw PreconditionViolation("search: n must be at least 2");
  if (opt.trials < 1) throw PreconditionViolation("search: trials must be at least 1");
  if (opt.max_power < 2) throw PreconditionViolation("search: max_power must be at least 2");
  const DecideOptions decide_options{opt.kernel_retries, opt.seed};
  for (std::size_t t = 0; t < opt.trials; ++t) {
    const std::uint64_t control_seed = detail::splitmix64(opt.seed * 2654435761ULL + 2 * t);
    auto control = classify_sample(random_monomial_conjugate(opt.n, control_seed, true).A, opt.max_power, opt.tol,
                                   decide_options);
    control.trial = t;
    control.seed = control_seed;
    control.kind = SampleKind::Control;
    sink(control);
    if (!opt.include_candidates) continue;
    const std::uint64_t candidate_seed = detail::splitmix64(opt.seed * 2654435761ULL + 2 * t + 1);
    auto cand = classify_sample(heuristic_half_normal_candidate(opt.n, candidate_seed, opt.tol), opt.max_power,
                                opt.tol, decide_options);
    cand.trial = t;
    cand.seed = candidate_seed;
    cand.kind = SampleKind::Candidate;
    sink(cand);
  }
}

}  // namespace monomeq

#endif  // MONOMEQ_SEARCH_HPP
