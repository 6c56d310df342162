#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "abscompat/error.hpp"
#include "abscompat/linalg.hpp"
#include "abscompat/sampling.hpp"
#include "oracle.hpp"
#include "test_support.hpp"

using namespace abscompat;
using test_support::diag;
using test_support::dist;

namespace {

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

}  // namespace

TEST(HermEig, DiagonalInputSortsEigenvalues) {
  const HermitianEig eig = herm_eig(diag({3.0, 1.0}));
  EXPECT_NEAR(eig.eigenvalues(0), 1.0, 1e-14);
  EXPECT_NEAR(eig.eigenvalues(1), 3.0, 1e-14);
  // Columns are a permutation of the standard basis, up to phase.
  EXPECT_NEAR(std::abs(eig.eigenvectors(1, 0)), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(eig.eigenvectors(0, 1)), 1.0, 1e-14);
}

TEST(HermEig, PauliX) {
  const HermitianEig eig = herm_eig(mat2(0, 1, 1, 0));
  EXPECT_NEAR(eig.eigenvalues(0), -1.0, 1e-14);
  EXPECT_NEAR(eig.eigenvalues(1), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(eig.eigenvectors(0, 0)), kInvSqrt2, 1e-14);
  EXPECT_NEAR(std::abs(eig.eigenvectors(1, 1)), kInvSqrt2, 1e-14);
}

TEST(HermEig, DifferenceOfReferencePair) {
  const HermitianEig eig = herm_eig(mat2(0, 2.0 / 3, 2.0 / 3, 0));
  EXPECT_NEAR(eig.eigenvalues(0), -2.0 / 3, 1e-14);
  EXPECT_NEAR(eig.eigenvalues(1), 2.0 / 3, 1e-14);
}

TEST(HermEig, RejectsNonHermitian) {
  try {
    herm_eig(mat2(0, 1, 0, 0));
    FAIL() << "expected NotHermitian";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotHermitian);
  }
}

TEST(HermEig, ReconstructsRandomHermitian) {
  sampling::Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + trial % 6;
    const ComplexMatrix a = hermitian_part(sampling::ginibre(d, rng));
    const HermitianEig eig = herm_eig(a);
    const ComplexMatrix& v = eig.eigenvectors;
    EXPECT_LT(op_norm(v * eig.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint() - a), 1e-8);
    EXPECT_LT(op_norm(v.adjoint() * v - identity(d)), 1e-8);
    for (int i = 1; i < d; ++i) EXPECT_LE(eig.eigenvalues(i - 1), eig.eigenvalues(i));
  }
}

TEST(ApplyFunction, IdentityAndSquare) {
  EXPECT_LT(dist(apply_function(diag({2.0, -1.0}), [](double t) { return t * t; }), diag({4.0, 1.0})), 1e-14);
  const ComplexMatrix half = diag({0.5, 0.5});
  const ComplexMatrix root = apply_function(half, [](double t) { return std::sqrt(std::max(0.0, t)); });
  EXPECT_LT(dist(root, diag({kInvSqrt2, kInvSqrt2})), 1e-15);
  EXPECT_NEAR((root * root)(0, 0).real(), 0.5, 1e-15);
}

TEST(ApplyFunction, IdentityFunctionReproducesInputProperty) {
  sampling::Rng rng(2);
  for (int trial = 0; trial < 500; ++trial) {
    const int d = 1 + trial % 6;
    const ComplexMatrix a = hermitian_part(sampling::ginibre(d, rng));
    const ComplexMatrix back = apply_function(a, [](double t) { return t; });
    EXPECT_LE(op_norm(back - a), 1e-9 * std::max(1.0, op_norm(a)));
    EXPECT_LE(op_norm(back - back.adjoint()), 1e-15);
  }
}

TEST(AbsValue, Examples) {
  EXPECT_LT(dist(abs_value(mat2(0, 0, 1, 0)), diag({1.0, 0.0})), 1e-15);
  const ComplexMatrix p = mat2(0.5, 0.5, 0.5, 0.5);
  EXPECT_LT(dist(abs_value(p), p), 1e-15);
  const ComplexMatrix v = mat2(0, kInvSqrt2, 0, kInvSqrt2);
  EXPECT_LT(dist(abs_value(v), diag({0.0, 1.0})), 1e-15);
}

TEST(AbsValue, MatchesClosedForm2x2) {
  sampling::Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const ComplexMatrix a = sampling::ginibre(2, rng);
    EXPECT_LT(op_norm(abs_value(a) - oracle::abs_2x2(a)), 1e-10);
  }
}

TEST(AbsValue, SquaresToGramAndIsIdempotent) {
  sampling::Rng rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 1 + trial % 6;
    const ComplexMatrix a = sampling::ginibre(d, rng);
    const ComplexMatrix m = abs_value(a);
    const double scale = std::max(1.0, op_norm(a) * op_norm(a));
    EXPECT_LT(op_norm(m * m - a.adjoint() * a), 1e-8 * scale);
    EXPECT_GE(Eigen::SelfAdjointEigenSolver<ComplexMatrix>(m).eigenvalues().minCoeff(), -1e-12 * scale);
    EXPECT_LT(op_norm(abs_value(m) - m), 1e-8 * std::max(1.0, op_norm(a)));
  }
}

TEST(Polar, Examples) {
  const ComplexMatrix p = mat2(0.5, 0.5, 0.5, 0.5);
  PolarDecomposition pd = polar(p);
  EXPECT_LT(dist(pd.partial_isometry, p), 1e-14);
  EXPECT_LT(dist(pd.absolute_value, p), 1e-14);
  EXPECT_EQ(pd.rank, 1);

  pd = polar(diag({0.9, 0.5, 0.0}));
  EXPECT_LT(dist(pd.partial_isometry, diag({1.0, 1.0, 0.0})), 1e-14);
  EXPECT_LT(dist(pd.absolute_value, diag({0.9, 0.5, 0.0})), 1e-14);
  EXPECT_EQ(pd.rank, 2);

  pd = polar(mat2(0, 0, 2, 0));
  EXPECT_LT(dist(pd.partial_isometry, mat2(0, 0, 1, 0)), 1e-14);
  EXPECT_LT(dist(pd.absolute_value, diag({2.0, 0.0})), 1e-14);
  EXPECT_EQ(pd.rank, 1);
}

TEST(Polar, ZeroMatrixHasRankZero) {
  const PolarDecomposition pd = polar(ComplexMatrix(ComplexMatrix::Zero(3, 3)));
  EXPECT_EQ(pd.rank, 0);
  EXPECT_EQ(pd.partial_isometry.norm(), 0.0);
}

TEST(Polar, RejectsNonPositiveRankTolerance) {
  EXPECT_THROW(polar(identity(2), 0.0), Error);
}

TEST(Polar, InvariantsOnRandomMatrices) {
  sampling::Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const int d = 1 + trial % 6;
    ComplexMatrix a = sampling::ginibre(d, rng);
    if (trial % 3 == 0 && d > 1) a.col(0).setZero();  // rank deficient
    const PolarDecomposition pd = polar(a);
    const ComplexMatrix& u = pd.partial_isometry;
    EXPECT_LT(op_norm(u * pd.absolute_value - a), 1e-8);
    EXPECT_LT(op_norm(u * u.adjoint() * u - u), 1e-8);
    EXPECT_LT(op_norm(u.adjoint() * u - range_projection(pd.absolute_value)), 1e-8);
    Eigen::JacobiSVD<ComplexMatrix> s(u);
    for (int i = 0; i < d; ++i) {
      const double sv = s.singularValues()(i);
      if (i < pd.rank) {
        EXPECT_NEAR(sv, 1.0, 1e-8);
      } else {
        EXPECT_NEAR(sv, 0.0, 1e-8);
      }
    }
  }
}

TEST(OpNorm, Examples) {
  EXPECT_NEAR(op_norm(identity(3)), 1.0, 1e-15);
  EXPECT_NEAR(op_norm(mat2(2.0 / 3, 1.0 / 3, 1.0 / 3, 1.0 / 3)), (1.0 + std::sqrt(5.0) / 3.0) / 2.0, 1e-14);
  EXPECT_NEAR(op_norm(mat2(2.0 / 3, 1.0 / 3, 1.0 / 3, 1.0 / 3)), 0.8726779962, 1e-10);
  EXPECT_EQ(op_norm(ComplexMatrix::Zero(2, 2)), 0.0);
}

TEST(OpNorm, AgreesWithPowerIteration) {
  sampling::Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix a = sampling::ginibre(1 + trial % 5, rng);
    EXPECT_NEAR(op_norm(a), oracle::power_norm(a), 1e-6 * oracle::power_norm(a));
  }
}

TEST(OpNorm, SubmultiplicativeAndCStarIdentity) {
  sampling::Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 1 + trial % 6;
    const ComplexMatrix a = sampling::ginibre(d, rng);
    const ComplexMatrix b = sampling::ginibre(d, rng);
    EXPECT_LE(op_norm(a * b), op_norm(a) * op_norm(b) + 1e-9);
    const double n = op_norm(a);
    EXPECT_NEAR(op_norm(a.adjoint() * a), n * n, 1e-8 * n * n);
  }
}

TEST(RangeProjection, Examples) {
  EXPECT_LT(dist(range_projection(diag({0.3, 0.0})), diag({1.0, 0.0})), 1e-15);
  EXPECT_LT(dist(range_projection(mat2(1, 2, 3, 4)), identity(2)), 1e-14);
  const ComplexMatrix v = mat2(0, kInvSqrt2, 0, kInvSqrt2);
  EXPECT_LT(dist(range_projection(v), mat2(0.5, 0.5, 0.5, 0.5)), 1e-15);
}

TEST(RangeProjection, IsSmallestLeftUnit) {
  sampling::Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 4;
    const ComplexMatrix a = sampling::random_partial_isometry(d, rng) * sampling::ginibre(d, rng);
    const ComplexMatrix r = range_projection(a);
    EXPECT_LT(op_norm(r * r - r), 1e-10);
    EXPECT_LT(op_norm(r - r.adjoint()), 1e-10);
    EXPECT_LT(op_norm(r * a - a), 1e-9 * std::max(1.0, op_norm(a)));
    EXPECT_EQ(numerical_rank(r), numerical_rank(a));
  }
}

TEST(Linalg, RejectsNonSquareAndNonFinite) {
  EXPECT_THROW(op_norm(ComplexMatrix::Zero(2, 3)), Error);
  ComplexMatrix bad = identity(2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  try {
    abs_value(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NumericalFailure);
  }
}
