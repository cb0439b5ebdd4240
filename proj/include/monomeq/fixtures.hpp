#ifndef MONOMEQ_FIXTURES_HPP
#define MONOMEQ_FIXTURES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monomeq/masa.hpp"
#include "monomeq/matrix.hpp"
#include "monomeq/monomial.hpp"
#include "monomeq/random.hpp"

namespace monomeq {

/// sqrt(2)/2 rounded once.
inline constexpr double kHalfSqrt2 = 0.7071067811865476;

struct FixtureExpectation {
  bool half_normal = true;
  std::vector<bool> commutes;  // index k - 1 -> [P, P_k] == 0, k = 1..n-1
  std::optional<std::size_t> first_failing_k;
  std::vector<std::pair<std::size_t, Matrix>> conjugates;  // exact P_k = (U*)^k P U^k
  std::optional<Matrix> failing_commutator;                // [P, P_k] at the failing k
  std::optional<Matrix> printed_commutator;                // (U^k P U*^k) P - P (U^k P U*^k) at the failing k
  std::optional<Verdict> verdict;
};

struct FixtureBundle {
  std::string name;
  Matrix P;
  Matrix U;
  FixtureExpectation expected;

  Matrix A() const { return P * U; }
};

/// Cycle matrix: C e_1 = e_n, C e_k = e_{k-1}.
inline Matrix cycle_matrix(std::size_t n) {
  Matrix c(n);
  c(n - 1, 0) = 1.0;
  for (std::size_t k = 1; k < n; ++k) c(k - 1, k) = 1.0;
  return c;
}

/// U = W C with W = diag(I_{n-2}, [[1,-1],[1,1]]/sqrt2) and P = E_11. The
/// family P_k = E_{k+1,k+1} commutes with P up to k = n-2 and fails at n-1.
inline FixtureBundle cycle_fixture(std::size_t n) {
  if (n < 3) throw PreconditionViolation("cycle_fixture: n must be at least 3");
  Matrix w = Matrix::identity(n);
  w(n - 2, n - 2) = kHalfSqrt2;
  w(n - 2, n - 1) = -kHalfSqrt2;
  w(n - 1, n - 2) = kHalfSqrt2;
  w(n - 1, n - 1) = kHalfSqrt2;

  FixtureBundle f{"cycle", Matrix::unit(n, 0, 0), w * cycle_matrix(n), {}};
  f.expected.half_normal = true;
  for (std::size_t k = 1; k <= n - 1; ++k) f.expected.commutes.push_back(k <= n - 2);
  f.expected.first_failing_k = n - 1;
  for (std::size_t k = 1; k <= n - 2; ++k) f.expected.conjugates.emplace_back(k, Matrix::unit(n, k, k));
  // P_{n-1} = C* diag(0, Q) C carries 1/2 at (1,1),(n,n) and -1/2 at (1,n),(n,1)
  Matrix comm(n);
  comm(0, n - 1) = -0.5;
  comm(n - 1, 0) = 0.5;
  f.expected.failing_commutator = comm;
  // A = E_11 U = E_12 is itself a weighted permutation
  f.expected.verdict = Verdict::Equivalent;
  return f;
}

/// Invertible 4x4 A = P U, half-normal, with [P, P_2] != 0.
inline FixtureBundle quad_fixture() {
  const double h = kHalfSqrt2;
  const Matrix b{{h, h}, {-h, h}};
  Matrix u1(4), u2(4);
  for (std::size_t blk = 0; blk < 2; ++blk)
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) u1(2 * blk + i, 2 * blk + j) = b(i, j);
  u2(0, 0) = 1.0;
  u2(1, 2) = 1.0;
  u2(2, 1) = 1.0;
  u2(3, 3) = 1.0;
  const std::vector<double> pd{1.0, 1.0, 2.0, 2.0};

  FixtureBundle f{"quad", Matrix::diagonal(std::span<const double>(pd)), u1 * u2, {}};
  f.expected.half_normal = true;
  f.expected.commutes = {true, false, true};
  f.expected.first_failing_k = 2;
  const Matrix half{{0, 0, 0.5, 0}, {0, 0, 0, 0.5}, {-0.5, 0, 0, 0}, {0, -0.5, 0, 0}};
  f.expected.printed_commutator = half;
  // [P, P_2] coincides with the displayed matrix
  f.expected.failing_commutator = half;
  f.expected.verdict = Verdict::NotEquivalent;
  return f;
}

struct RandomInstance {
  Matrix A;
  Matrix P;  // W |D| W*
  Matrix U;  // W (phase(D) Perm) W*
  MonomialForm form;
  MasaBasis ground_truth;  // V = W
};

/// A = W (D Perm) W* with moduli drawn from {0.5, 1, 1.5, 2} (so repeated
/// singular values are common), uniform phases, a uniform permutation and a
/// Haar W. With invertible = false roughly a third of the weights, and at
/// least one, are zero.
inline RandomInstance random_monomial_conjugate(std::size_t n, std::uint64_t seed, bool invertible = true) {
  if (n == 0) throw PreconditionViolation("random_monomial_conjugate: n must be positive");
  Rng rng(seed);
  MonomialForm form;
  form.weights.resize(n);
  std::vector<Complex> phases(n);
  std::vector<double> mods(n);
  for (std::size_t i = 0; i < n; ++i) {
    mods[i] = 0.5 * static_cast<double>(1 + rng.index(4));
    phases[i] = rng.unit_phase();
  }
  if (!invertible) {
    bool any = false;
    for (auto& m : mods)
      if (rng.coin(1.0 / 3.0)) {
        m = 0.0;
        any = true;
      }
    if (!any) mods[rng.index(n)] = 0.0;
  }
  for (std::size_t i = 0; i < n; ++i) form.weights[i] = mods[i] * phases[i];
  form.perm = rng.permutation(n);
  const Matrix w = random_unitary(n, rng);
  const Matrix wa = w.adjoint();

  RandomInstance r;
  r.form = form;
  r.A = w * form.matrix() * wa;
  r.P = hermitian_part(w * Matrix::diagonal(std::span<const double>(mods)) * wa);
  r.U = w * Matrix::diagonal(std::span<const Complex>(phases)) * form.permutation_matrix() * wa;
  r.ground_truth = certify_masa(w, {r.P}, r.U);
  return r;
}

}  // namespace monomeq

#endif  // MONOMEQ_FIXTURES_HPP
