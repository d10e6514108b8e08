#include "oracles.hpp"

#include "uebk/error.hpp"
#include "uebk/numerics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace uebk;

namespace {

ComplexMatrix mat2(double a, double b, double c, double d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST(Svd, IdentityHasUnitSingularValues) {
  SingularTriplet t = svd(ComplexMatrix::Identity(2, 2));
  EXPECT_NEAR(t.singular_values(0), 1.0, 1e-15);
  EXPECT_NEAR(t.singular_values(1), 1.0, 1e-15);
}

TEST(Svd, TwoByTwoMemberHasTwoNonzeroValues) {
  SingularTriplet t = svd(mat2(-1, 0, 2, 2) / 3.0);
  ASSERT_EQ(t.singular_values.size(), 2);
  EXPECT_GT(t.singular_values(1), 0.1);
  auto ref = oracle::singular_values(mat2(-1, 0, 2, 2) / 3.0);
  EXPECT_NEAR(t.singular_values(0), ref(0), 1e-12);
  EXPECT_NEAR(t.singular_values(1), ref(1), 1e-12);
}

TEST(Svd, RandomReconstruction) {
  SeededRng rng(11);
  ComplexMatrix a = random_complex_gaussian(3, 4, rng);
  SingularTriplet t = svd(a);
  ComplexMatrix back = t.left_frame * t.singular_values.asDiagonal() * t.right_frame.adjoint();
  EXPECT_LE((back - a).norm(), 1e-10 * a.norm());
  for (Eigen::Index j = 0; j + 1 < t.singular_values.size(); ++j) {
    EXPECT_GE(t.singular_values(j), t.singular_values(j + 1));
  }
}

TEST(Svd, LeftVectorsHavePositiveLeadingEntry) {
  SeededRng rng(5);
  SingularTriplet t = svd(random_complex_gaussian(4, 3, rng));
  for (Eigen::Index j = 0; j < t.left_frame.cols(); ++j) {
    oracle::Vec fixed = oracle::phase_fix(t.left_frame.col(j));
    EXPECT_LE((fixed - t.left_frame.col(j)).norm(), 1e-12);
  }
}

TEST(Svd, RejectsNonFinite) {
  ComplexMatrix a = ComplexMatrix::Identity(2, 2);
  a(0, 1) = std::numeric_limits<double>::quiet_NaN();
  try {
    svd(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
  }
}

TEST(NumericalRank, Basics) {
  EXPECT_EQ(numerical_rank(ComplexMatrix::Zero(3, 3)), 0);
  EXPECT_EQ(numerical_rank(mat2(2, 0, -1, 2) / 3.0, 1e-9), 2);
  SeededRng rng(3);
  ComplexMatrix u = random_complex_gaussian(4, 1, rng);
  ComplexMatrix v = random_complex_gaussian(5, 1, rng);
  EXPECT_EQ(numerical_rank(u * v.adjoint()), 1);
}

TEST(NumericalRank, NonincreasingInTolerance) {
  SeededRng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    ComplexMatrix a = random_complex_gaussian(4, 2, rng) * random_complex_gaussian(2, 5, rng);
    a += 1e-6 * random_complex_gaussian(4, 5, rng);
    int previous = numerical_rank(a, 1e-14);
    for (double tol : {1e-12, 1e-9, 1e-7, 1e-4, 1e-1, 0.9}) {
      int r = numerical_rank(a, tol);
      EXPECT_LE(r, previous);
      previous = r;
    }
  }
}

TEST(HermitianEig, Diagonal) {
  HermitianEigen e = hermitian_eig(mat2(1, 0, 0, 3));
  EXPECT_NEAR(e.eigenvalues(0), 3.0, 1e-14);
  EXPECT_NEAR(e.eigenvalues(1), 1.0, 1e-14);
}

TEST(HermitianEig, GhzMarginal) {
  ComplexMatrix rho = mat2(0.5, 0, 0, 0.5);
  HermitianEigen e = hermitian_eig(rho);
  EXPECT_NEAR(e.eigenvalues(0), 0.5, 1e-14);
  EXPECT_NEAR(e.eigenvalues(1), 0.5, 1e-14);
}

TEST(HermitianEig, UnequalCoefficientMarginal) {
  // (1/2)|00> + (sqrt3/2)|11> traced to party 1.
  oracle::Vec psi = oracle::Vec::Zero(6);
  psi(0) = 0.5;
  psi(4) = std::sqrt(3.0) / 2.0;
  HermitianEigen e = hermitian_eig(oracle::reduced(psi, {2, 3}, 0));
  EXPECT_NEAR(e.eigenvalues(0), 0.75, 1e-14);
  EXPECT_NEAR(e.eigenvalues(1), 0.25, 1e-14);
}

TEST(HermitianEig, EigenpairsAndRejection) {
  SeededRng rng(8);
  ComplexMatrix g = random_complex_gaussian(4, 4, rng);
  ComplexMatrix h = g + g.adjoint();
  HermitianEigen e = hermitian_eig(h);
  for (int i = 0; i < 4; ++i) {
    EXPECT_LE((h * e.eigenvectors.col(i) - e.eigenvalues(i) * e.eigenvectors.col(i)).norm(), 1e-9);
  }
  try {
    hermitian_eig(g);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::InvalidInput);
  }
}

TEST(RandomUnitary, SizeOneIsUnitModulus) {
  SeededRng rng(1);
  ComplexMatrix u = random_unitary_no_zeros(1, rng);
  EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-14);
}

TEST(RandomUnitary, UnitaryWithoutZeros) {
  SeededRng rng(2024);
  ComplexMatrix u = random_unitary_no_zeros(3, rng);
  EXPECT_LE(oracle::gram_deviation(u), 1e-12);
  EXPECT_GT(u.cwiseAbs().minCoeff(), 1e-6);
}

TEST(RandomUnitary, EqualSeedsGiveIdenticalMatrices) {
  SeededRng a(77), b(77);
  ComplexMatrix ua = random_unitary_no_zeros(4, a);
  ComplexMatrix ub = random_unitary_no_zeros(4, b);
  EXPECT_TRUE((ua.array() == ub.array()).all());
}

TEST(RandomUnitary, ThousandSeedsPerSize) {
  for (int n = 2; n <= 6; ++n) {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      SeededRng rng(seed);
      ComplexMatrix u = random_unitary_no_zeros(n, rng);
      ASSERT_LE(unitarity_defect(u), 1e-12) << "n=" << n << " seed=" << seed;
      ASSERT_GT(u.cwiseAbs().minCoeff(), kZeroEntryFloor);
    }
  }
}

TEST(CanonicalUnitary, ThreeReproducesTwoQubitCoefficients) {
  ComplexMatrix u = canonical_unitary_no_zeros(3);
  const double expected[3][3] = {{-1, 2, 2}, {2, -1, 2}, {2, 2, -1}};
  for (int c = 0; c < 3; ++c) {
    for (int r = 0; r < 3; ++r) EXPECT_NEAR(u(r, c).real(), expected[c][r] / 3.0, 1e-15);
  }
}

TEST(CanonicalUnitary, SmallAndLargerSizes) {
  ComplexMatrix h = canonical_unitary_no_zeros(2);
  EXPECT_NEAR(h(1, 1).real(), -1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_LE(oracle::gram_deviation(h), 1e-15);
  EXPECT_EQ(canonical_unitary_no_zeros(1)(0, 0), Complex(1.0));
  ComplexMatrix f = canonical_unitary_no_zeros(4);
  EXPECT_NEAR(f(0, 0).real(), -0.5, 1e-15);
  EXPECT_NEAR(f(0, 1).real(), 0.5, 1e-15);
  EXPECT_LE(oracle::gram_deviation(f), 1e-14);
}

TEST(CanonicalUnitary, IsAnInvolution) {
  for (int n = 3; n <= 9; ++n) {
    ComplexMatrix u = canonical_unitary_no_zeros(n);
    EXPECT_LE((u * u - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-14) << n;
    EXPECT_GT(u.cwiseAbs().minCoeff(), 0.0);
  }
}

TEST(SeededRng, StreamsAreReproducibleAndDerivedIndependently) {
  SeededRng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
  SeededRng fresh(42);
  SeededRng d1 = fresh.derive(3);
  fresh.next_u64();
  SeededRng d2 = fresh.derive(3);
  EXPECT_EQ(d1.next_u64(), d2.next_u64());
  EXPECT_NE(SeededRng(42).derive(3).next_u64(), SeededRng(42).derive(4).next_u64());
}

TEST(SeededRng, NormalMoments) {
  SeededRng rng(9);
  double sum = 0.0, sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    double x = rng.normal();
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.05);
  EXPECT_NEAR(sq / n, 1.0, 0.05);
  for (int i = 0; i < 1000; ++i) {
    double u = rng.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}
