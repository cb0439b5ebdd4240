#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "monomeq/eigen.hpp"
#include "monomeq/fixtures.hpp"
#include "monomeq/halfnormal.hpp"
#include "monomeq/random.hpp"
#include "test_util.hpp"

using namespace monomeq;
using monomeq::testing::MatrixNear;

TEST(IsHalfNormal, NormalMatricesPass) {
  Rng rng(1);
  const auto h = is_half_normal(random_hermitian(5, rng));
  EXPECT_TRUE(h.half_normal);
  EXPECT_LT(h.norm, 1e-12);
  EXPECT_TRUE(is_half_normal(random_unitary(5, rng)).half_normal);
}

TEST(IsHalfNormal, QuadFixtureIsHalfNormal) {
  const auto f = quad_fixture();
  const auto h = is_half_normal(f.A());
  EXPECT_TRUE(h.half_normal);
  EXPECT_LE(h.norm, 1e-10);
}

TEST(IsHalfNormal, JordanBlockFails) {
  // A*A = [[1,1],[1,2]], AA* = [[2,1],[1,1]]; commutator [[0,-2],[2,0]]
  const auto h = is_half_normal(Matrix{{1, 1}, {0, 1}});
  EXPECT_FALSE(h.half_normal);
  EXPECT_NEAR(h.norm, 2.0 * std::sqrt(2.0), 1e-14);
}

TEST(IsHalfNormal, WeightedPermutationsAreHalfNormal) {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng.index(8);
    MonomialForm f{std::vector<Complex>(n), rng.permutation(n)};
    for (auto& w : f.weights) w = rng.complex_gaussian() * 3.0;
    EXPECT_TRUE(is_half_normal(f.matrix()).half_normal);
    // and stay so under unitary conjugation
    const Matrix w = random_unitary(n, rng);
    EXPECT_TRUE(is_half_normal(w * f.matrix() * w.adjoint()).half_normal);
  }
}

TEST(ConjugateFamily, IdentityUnitaryKeepsP) {
  Rng rng(5);
  const Matrix p = random_hermitian(4, rng);
  const auto fam = conjugate_family(p, Matrix::identity(4), 6);
  ASSERT_EQ(fam.members.size(), 7u);
  for (const auto& m : fam.members) EXPECT_TRUE(MatrixNear(m, p, 1e-15));
}

TEST(ConjugateFamily, CycleFixtureMembersAreMatrixUnits) {
  for (std::size_t n : {3u, 5u, 8u}) {
    const auto f = cycle_fixture(n);
    const auto fam = conjugate_family(f.P, f.U, n - 1);
    for (std::size_t k = 1; k + 2 <= n; ++k) EXPECT_TRUE(MatrixNear(fam.members[k], Matrix::unit(n, k, k), 1e-12)) << k;
  }
}

TEST(ConjugateFamily, SpectrumPreserved) {
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + rng.index(6);
    const Matrix p = random_hermitian(n, rng);
    const auto fam = conjugate_family(p, random_unitary(n, rng), 2 * n);
    const auto ref = hermitian_eig(p).values;
    for (const auto& m : fam.members) {
      const auto ev = hermitian_eig(m).values;
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(ev[i], ref[i], 1e-9);
    }
  }
}

TEST(ConjugateFamily, RejectsBadInputs) {
  EXPECT_THROW(conjugate_family(Matrix::identity(2), Matrix{{1, 1}, {0, 1}}, 2), NotUnitary);
  EXPECT_THROW(conjugate_family(Matrix{{0, 1}, {0, 0}}, Matrix::identity(2), 2), NotHermitian);
}

TEST(BoundedCommutantCheck, ScalarPPasses) {
  const auto r = bounded_commutant_check(Matrix::identity(4) * Complex(3.0), random_unitary(4, 2));
  EXPECT_TRUE(r.passed);
  EXPECT_FALSE(r.first_failing_k.has_value());
  for (double c : r.commutator_norms) EXPECT_LT(c, 1e-13);
}

TEST(BoundedCommutantCheck, QuadFixtureFailsAtTwo) {
  const auto f = quad_fixture();
  const auto r = bounded_commutant_check(f.P, f.U);
  EXPECT_FALSE(r.passed);
  ASSERT_TRUE(r.first_failing_k.has_value());
  EXPECT_EQ(*r.first_failing_k, 2u);
  ASSERT_EQ(r.commutator_norms.size(), 4u);
  EXPECT_NEAR(r.commutator_norms[2], 1.0, 1e-12);  // four entries of modulus 1/2
  EXPECT_LT(r.commutator_norms[3], 1e-12);
}

TEST(BoundedCommutantCheck, CycleFixtureFailsAtNMinusOne) {
  const auto f = cycle_fixture(5);
  const auto r = bounded_commutant_check(f.P, f.U);
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.first_failing_k.value(), 4u);
}

TEST(BoundedCommutantCheck, OneByOne) {
  const auto r = bounded_commutant_check(Matrix{{2.0}}, Matrix{{Complex(0, 1)}});
  EXPECT_TRUE(r.passed);
}

TEST(ExtendedCommutantCheck, IdentityUnitaryLongRun) {
  Rng rng(11);
  const auto r = extended_commutant_check(random_hermitian(4, rng), Matrix::identity(4), 100);
  EXPECT_TRUE(r.passed);
  for (double c : r.commutator_norms) EXPECT_EQ(c, 0.0);
}

TEST(ExtendedCommutantCheck, CycleFixtureBoundIsSharp) {
  const auto f = cycle_fixture(6);
  const auto r = extended_commutant_check(f.P, f.U, 5);
  EXPECT_EQ(r.first_failing_k.value(), 5u);
  EXPECT_THROW(extended_commutant_check(f.P, f.U, 3), PreconditionViolation);
}

TEST(ExtendedCommutantCheck, PassingBoundedImpliesExtended) {
  Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng.index(7);
    const auto inst = random_monomial_conjugate(n, 1000 + t);
    ASSERT_TRUE(bounded_commutant_check(inst.P, inst.U).passed);
    const auto r = extended_commutant_check(inst.P, inst.U, 5 * n);
    EXPECT_TRUE(r.passed);
  }
}

TEST(HalfNormalFormulations, ThreeFormulationsAgreeOnMixedPairs) {
  Rng rng(17);
  int positives = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.index(6);
    Matrix p, u;
    switch (t % 3) {
      case 0: {
        const auto inst = random_monomial_conjugate(n, 5000 + t);
        p = inst.P;
        u = inst.U;
        break;
      }
      case 1: {
        const auto f = quad_fixture();
        const Matrix w = random_unitary(4, rng);
        p = w * f.P * w.adjoint() * Complex(rng.uniform(0.1, 10.0));
        p = hermitian_part(p);
        u = w * f.U * w.adjoint();
        break;
      }
      default: {
        const Matrix g = random_matrix(n, rng);
        p = hermitian_part(g * g.adjoint());
        u = random_unitary(n, rng);
      }
    }
    const auto f = half_normal_formulations(p, u);
    EXPECT_TRUE(f.agree()) << t;
    positives += f.product.half_normal ? 1 : 0;
  }
  EXPECT_GT(positives, 100);
  EXPECT_LT(positives, 200);
}
