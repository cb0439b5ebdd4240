#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "monomeq/eigen.hpp"
#include "monomeq/polar.hpp"
#include "monomeq/random.hpp"
#include "test_util.hpp"

using namespace monomeq;
using monomeq::testing::MatrixNear;

TEST(CommutatorNorm, IdentityCommutesWithEverything) {
  Rng rng(1);
  EXPECT_EQ(commutator_norm(Matrix::identity(3), random_matrix(3, rng)), 0.0);
}

TEST(CommutatorNorm, DiagonalsCommute) {
  EXPECT_EQ(commutator_norm(Matrix{{1, 0}, {0, 2}}, Matrix{{3, 0}, {0, 4}}), 0.0);
}

TEST(CommutatorNorm, TwoByTwoByHand) {
  // AB = [[3,2],[4,3]], BA = [[3,4],[2,3]]
  EXPECT_NEAR(commutator_norm(Matrix{{1, 1}, {1, 2}}, Matrix{{2, 1}, {1, 1}}), 2.0 * std::sqrt(2.0), 1e-15);
}

TEST(CommutatorNorm, DimensionMismatchThrows) {
  EXPECT_THROW(commutator_norm(Matrix::identity(2), Matrix::identity(3)), DimensionMismatch);
}

TEST(HermitianEig, AlreadyDiagonal) {
  const auto e = hermitian_eig(Matrix{{2, 0}, {0, 1}});
  EXPECT_EQ(e.values, (std::vector<double>{2.0, 1.0}));
  EXPECT_TRUE(MatrixNear(e.vectors, Matrix::identity(2), 0.0));
  ASSERT_EQ(e.clusters.size(), 2u);
}

TEST(HermitianEig, RankOneProjectorFromCycleExample) {
  const auto e = hermitian_eig(Matrix{{0.5, -0.5}, {-0.5, 0.5}});
  EXPECT_NEAR(e.values[0], 1.0, 1e-15);
  EXPECT_NEAR(e.values[1], 0.0, 1e-15);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_TRUE(MatrixNear(e.vectors, Matrix{{r, r}, {-r, r}}, 1e-15));
}

TEST(HermitianEig, RejectsNonHermitian) {
  EXPECT_THROW(hermitian_eig(Matrix{{1, 1}, {0, 1}}), NotHermitian);
}

TEST(HermitianEig, DegenerateClusterIsCanonical) {
  // two different rotations of the same degenerate spectrum give identical output
  Rng rng(5);
  const std::vector<double> d{3, 3, 3, 1, 1};
  const Matrix w = random_unitary(5, rng);
  const Matrix h = hermitian_part(w * Matrix::diagonal(std::span<const double>(d)) * w.adjoint());
  const auto e1 = hermitian_eig(h);
  ASSERT_EQ(e1.clusters.size(), 2u);
  EXPECT_EQ(e1.clusters[0].size(), 3u);
  // the scalar matrix has canonical eigenvectors I
  const auto e2 = hermitian_eig(Matrix::identity(4) * Complex(2.0));
  EXPECT_TRUE(MatrixNear(e2.vectors, Matrix::identity(4), 1e-15));
  EXPECT_EQ(e1.vectors, hermitian_eig(h).vectors);
}

TEST(HermitianEig, PhaseFixedColumns) {
  Rng rng(9);
  const auto e = hermitian_eig(random_hermitian(6, rng));
  for (std::size_t j = 0; j < 6; ++j) {
    const auto c = e.vectors.column(j);
    double best = 0.0;
    for (auto z : c) best = std::max(best, std::abs(z));
    for (auto z : c)
      if (std::abs(z) >= best * (1 - 1e-9)) {
        EXPECT_NEAR(z.imag(), 0.0, 1e-14);
        EXPECT_GT(z.real(), 0.0);
        break;
      }
  }
}

TEST(HermitianEig, RoundTripProperty) {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.index(8);
    Matrix h = random_hermitian(n, rng);
    if (trial % 3 == 0) {
      // inject degeneracy
      std::vector<double> d(n);
      for (auto& x : d) x = static_cast<double>(rng.index(3));
      const Matrix w = random_unitary(n, rng);
      h = hermitian_part(w * Matrix::diagonal(std::span<const double>(d)) * w.adjoint());
    }
    const auto e = hermitian_eig(h);
    const Matrix lam = Matrix::diagonal(std::span<const double>(e.values));
    EXPECT_LE((h * e.vectors - e.vectors * lam).frobenius_norm(), 1e-10 * rel_scale(h.frobenius_norm()));
    EXPECT_LE(unitary_defect(e.vectors), 1e-10);
    EXPECT_TRUE(std::is_sorted(e.values.rbegin(), e.values.rend()));
  }
}

TEST(HermitianEig, LargerMatrix) {
  Rng rng(77);
  const Matrix h = random_hermitian(60, rng);
  const auto e = hermitian_eig(h);
  const Matrix lam = Matrix::diagonal(std::span<const double>(e.values));
  EXPECT_LE((h * e.vectors - e.vectors * lam).frobenius_norm(), 1e-10 * h.frobenius_norm());
}

TEST(Polar, UnitaryInput) {
  const Matrix u = random_unitary(4, 3);
  const auto p = polar_left(u);
  EXPECT_TRUE(MatrixNear(p.P, Matrix::identity(4), 1e-12));
  EXPECT_TRUE(MatrixNear(p.U, u, 1e-12));
  EXPECT_FALSE(p.distinct);
}

TEST(Polar, RepeatedSingularValues) {
  const std::vector<double> d{1, 1, 2, 2};
  const Matrix u0 = random_unitary(4, 11);
  const auto p = polar_left(Matrix::diagonal(std::span<const double>(d)) * u0);
  EXPECT_TRUE(MatrixNear(p.P, Matrix::diagonal(std::span<const double>(d)), 1e-12));
  ASSERT_EQ(p.singular_values.size(), 4u);
  EXPECT_NEAR(p.singular_values[0], 2.0, 1e-12);
  EXPECT_NEAR(p.singular_values[1], 2.0, 1e-12);
  EXPECT_NEAR(p.singular_values[2], 1.0, 1e-12);
  EXPECT_NEAR(p.singular_values[3], 1.0, 1e-12);
  EXPECT_FALSE(p.distinct);
}

TEST(Polar, MatrixUnitE12) {
  const Matrix a = Matrix::unit(2, 0, 1);
  const auto p = polar_left(a);
  EXPECT_TRUE(MatrixNear(p.P, Matrix::unit(2, 0, 0), 1e-15));
  EXPECT_EQ(p.singular_values, (std::vector<double>{1.0, 0.0}));
  EXPECT_TRUE(p.distinct);
  EXPECT_EQ(p.rank, 1u);
  EXPECT_TRUE(MatrixNear(p.P * p.U, a, 1e-15));
  EXPECT_LE(unitary_defect(p.U), 1e-15);
  // U e_2 = e_1
  EXPECT_NEAR(std::abs(p.U(0, 1)), 1.0, 1e-15);
}

TEST(Polar, ZeroMatrix) {
  const auto p = polar_left(Matrix(3));
  EXPECT_EQ(p.rank, 0u);
  EXPECT_TRUE(MatrixNear(p.U, Matrix::identity(3), 0.0));
}

TEST(Polar, RoundTripProperty) {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.index(8);
    Matrix a = random_matrix(n, rng);
    if (trial % 4 == 0 && n > 1) {
      // rank deficient
      for (std::size_t i = 0; i < n; ++i) a(i, 0) = a(i, 1) * Complex(0.5, -1.0);
    }
    const auto p = polar_left(a);
    EXPECT_LE((p.P * p.U - a).frobenius_norm(), 1e-10 * rel_scale(a.frobenius_norm()));
    EXPECT_LE(hermitian_defect(p.P), 1e-12);
    EXPECT_LE(unitary_defect(p.U), 1e-10);
    const auto pe = hermitian_eig(p.P);
    EXPECT_GE(pe.values.back(), -1e-12);

    // singular values are square roots of the eigenvalues of A*A
    const auto gram = hermitian_eig(a.adjoint() * a);
    for (std::size_t i = 0; i < n; ++i)
      EXPECT_NEAR(p.singular_values[i], std::sqrt(std::max(0.0, gram.values[i])), 1e-7 * rel_scale(a.frobenius_norm()));
  }
}

TEST(Polar, SingularValuesMatchGramSpectrumTightly) {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = random_matrix(5, rng);
    const auto p = polar_left(a);
    const auto gram = hermitian_eig(a.adjoint() * a);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(p.singular_values[i] * p.singular_values[i], gram.values[i], 1e-10);
  }
}

TEST(Polar, Deterministic) {
  Rng rng(8);
  const Matrix a = random_matrix(6, rng);
  const auto p1 = polar_left(a);
  const auto p2 = polar_left(a);
  EXPECT_EQ(p1.P, p2.P);
  EXPECT_EQ(p1.U, p2.U);
}

TEST(RandomUnitary, ScalarHasUnitModulus) {
  const Matrix u = random_unitary(1, 42);
  EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-15);
}

TEST(RandomUnitary, IsUnitary) { EXPECT_LE(unitary_defect(random_unitary(4, 17)), 1e-12); }

TEST(RandomUnitary, SameSeedBitwiseIdentical) { EXPECT_EQ(random_unitary(5, 123), random_unitary(5, 123)); }

TEST(GeneralEigenvalues, TriangularMatrix) {
  const auto ev = eigenvalues(Matrix{{1, 5, 2}, {0, 2, 7}, {0, 0, 3}});
  std::vector<double> re;
  for (auto z : ev) re.push_back(z.real());
  std::sort(re.begin(), re.end());
  EXPECT_NEAR(re[0], 1.0, 1e-12);
  EXPECT_NEAR(re[1], 2.0, 1e-12);
  EXPECT_NEAR(re[2], 3.0, 1e-12);
}

TEST(GeneralEigenvalues, SimilarityInvariance) {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.index(7);
    std::vector<Complex> d(n);
    for (auto& z : d) z = rng.complex_gaussian() * 2.0;
    // A = S D S^{-1} with S unitary times an upper triangular perturbation of D
    const Matrix w = random_unitary(n, rng);
    Matrix t = Matrix::diagonal(std::span<const Complex>(d));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) t(i, j) = rng.complex_gaussian();
    const auto ev = eigenvalues(w * t * w.adjoint());
    for (const auto& z : d) {
      double best = 1e300;
      for (const auto& e : ev) best = std::min(best, std::abs(e - z));
      EXPECT_LT(best, 1e-9);
    }
  }
}

TEST(GeneralEigenvalues, CycleMatrixRootsOfUnity) {
  Matrix c(5);
  c(4, 0) = 1.0;
  for (std::size_t k = 1; k < 5; ++k) c(k - 1, k) = 1.0;
  for (const auto& z : eigenvalues(c)) EXPECT_NEAR(std::abs(std::pow(z, 5) - Complex(1.0)), 0.0, 1e-12);
}
