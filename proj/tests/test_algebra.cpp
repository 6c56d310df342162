#include <gtest/gtest.h>

#include "abscompat/algebra.hpp"
#include "abscompat/error.hpp"
#include "abscompat/sampling.hpp"
#include "test_support.hpp"

using namespace abscompat;
using test_support::diag;
using test_support::dist;
using test_support::m2;

namespace {

const AlgebraElement kRefA = m2(2.0 / 3, 1.0 / 3, 1.0 / 3, 1.0 / 3);
const AlgebraElement kRefB = m2(2.0 / 3, -1.0 / 3, -1.0 / 3, 1.0 / 3);
const AlgebraElement kE = m2(0, 0, 1, 0);

}  // namespace

TEST(AlgebraShape, Basics) {
  const AlgebraShape s{2, 3};
  EXPECT_EQ(s.total_dim(), 5);
  EXPECT_EQ(s.algebra_dim(), 13);
  EXPECT_EQ(s.block_offset(1), 2);
  EXPECT_EQ(s.block_of(4), 1u);
  EXPECT_TRUE(s.in_block(3, 4));
  EXPECT_FALSE(s.in_block(1, 2));
  EXPECT_FALSE(s.is_commutative());
  EXPECT_TRUE((AlgebraShape{1, 1, 1}.is_commutative()));
  EXPECT_THROW(AlgebraShape(std::vector<int>{}), Error);
  EXPECT_THROW((AlgebraShape{2, 0}), Error);
}

TEST(AlgebraElement, CompressesOffBlockEntries) {
  const AlgebraShape s{1, 1};
  ComplexMatrix m(2, 2);
  m << 1, 2, 3, 4;
  const AlgebraElement x(s, m);
  EXPECT_EQ(x.matrix()(0, 1), Complex(0.0));
  EXPECT_EQ(x.matrix()(1, 0), Complex(0.0));
  EXPECT_EQ(x.block(1)(0, 0), Complex(4.0));
  EXPECT_THROW(AlgebraElement(s, ComplexMatrix::Zero(3, 3)), Error);
}

TEST(AlgebraElement, ProductsStayBlockDiagonalExactly) {
  sampling::Rng rng(1);
  const AlgebraShape s{2, 3};
  const AlgebraElement a = sampling::random_contraction(s, rng);
  const AlgebraElement b = sampling::random_contraction(s, rng);
  const ComplexMatrix p = (a * b).matrix();
  EXPECT_EQ(p.block(0, 2, 2, 3).norm(), 0.0);
  EXPECT_EQ(p.block(2, 0, 3, 2).norm(), 0.0);
}

TEST(AlgebraElement, CrossShapeOperationsThrow) {
  const AlgebraElement a = unit(AlgebraShape{2});
  const AlgebraElement b = unit(AlgebraShape{1, 1});
  try {
    (void)(a + b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ShapeMismatch);
  }
  EXPECT_THROW(jordan(a, b), Error);
  EXPECT_THROW(triple(a, a, b), Error);
}

TEST(Unit, IsIdentityOnEveryBlock) {
  EXPECT_LT(dist(unit(AlgebraShape{2}).matrix(), ComplexMatrix::Identity(2, 2)), 1e-16);
  EXPECT_LT(dist(unit(AlgebraShape{1, 1}).matrix(), diag({1.0, 1.0})), 1e-16);
  EXPECT_LT(dist(unit(AlgebraShape{2, 3}).matrix(), ComplexMatrix::Identity(5, 5)), 1e-16);
}

TEST(Adjoint, Examples) {
  EXPECT_LT(dist(adjoint(kRefA).matrix(), kRefA.matrix()), 1e-16);
  EXPECT_LT(dist(adjoint(kE).matrix(), m2(0, 1, 0, 0).matrix()), 1e-16);
  const AlgebraElement i1 = Complex(0, 1) * unit(AlgebraShape{2});
  EXPECT_LT(dist(adjoint(i1).matrix(), (Complex(0, -1) * unit(AlgebraShape{2})).matrix()), 1e-16);
}

TEST(Jordan, Examples) {
  EXPECT_LT(dist(jordan(kRefA, unit(AlgebraShape{2})).matrix(), kRefA.matrix()), 1e-16);
  // ab + ba for the 2x2 pair: ab = [[1/3, -1/9],[1/9, 0]], so 2 a∘b = diag(2/3, 0).
  EXPECT_LT(dist((2.0 * jordan(kRefA, kRefB)).matrix(), diag({2.0 / 3, 0.0})), 1e-15);
  const AlgebraElement d1 = test_support::diag_element({0.3, -2.0, 1.0});
  const AlgebraElement d2 = test_support::diag_element({4.0, 0.5, Complex(0, 1)});
  EXPECT_LT(dist(jordan(d1, d2).matrix(), (d1 * d2).matrix()), 1e-15);
}

TEST(Jordan, CommutativeAndHermitianPreserving) {
  sampling::Rng rng(2);
  const AlgebraShape s{2, 2};
  for (int trial = 0; trial < 100; ++trial) {
    const AlgebraElement a = sampling::random_contraction(s, rng);
    const AlgebraElement b = sampling::random_contraction(s, rng);
    EXPECT_EQ(jordan(a, b).matrix(), jordan(b, a).matrix());
    const AlgebraElement h = sampling::random_hermitian_contraction(s, rng);
    const AlgebraElement k = sampling::random_hermitian_contraction(s, rng);
    EXPECT_TRUE(is_hermitian(jordan(h, k)).verdict);
  }
}

TEST(Triple, Examples) {
  const AlgebraElement one = unit(AlgebraShape{2});
  EXPECT_LT(dist(triple(kRefA, one, one).matrix(), kRefA.matrix()), 1e-16);
  EXPECT_LT(dist(triple(kE, kE, kE).matrix(), kE.matrix()), 1e-16);
  const AlgebraElement b = m2(Complex(1, 2), 3, Complex(0, -1), 4);
  EXPECT_LT(dist(triple(one, b, one).matrix(), adjoint(b).matrix()), 1e-15);
}

TEST(Triple, SymmetryAndConjugateLinearity) {
  sampling::Rng rng(3);
  const AlgebraShape s{1, 3};
  const Complex i(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const AlgebraElement a = sampling::random_contraction(s, rng);
    const AlgebraElement b = sampling::random_contraction(s, rng);
    const AlgebraElement c = sampling::random_contraction(s, rng);
    EXPECT_LT(distance(triple(a, b, c), triple(c, b, a)), 1e-12);
    EXPECT_LT(distance(triple(a, i * b, c), -i * triple(a, b, c)), 1e-12);
    const AlgebraElement h = sampling::random_hermitian_contraction(s, rng);
    EXPECT_LT(distance(triple(h, h, h), h * h * h), 1e-10);
  }
}

TEST(IsPositive, Examples) {
  const RelationReport a = is_positive(kRefA);
  EXPECT_TRUE(a.verdict);
  EXPECT_EQ(a.verdict, a.defect <= a.tolerance_used);
  const RelationReport neg = is_positive(-1.0 * unit(AlgebraShape{2}));
  EXPECT_FALSE(neg.verdict);
  EXPECT_NEAR(neg.defect, 1.0, 1e-15);
  EXPECT_FALSE(is_positive(m2(0, 1, 0, 0)).verdict);
}

TEST(IsContraction, Examples) {
  sampling::Rng rng(4);
  EXPECT_TRUE(is_contraction(sampling::random_projection(AlgebraShape{3}, rng)).verdict);
  const RelationReport two = is_contraction(2.0 * unit(AlgebraShape{2}));
  EXPECT_FALSE(two.verdict);
  EXPECT_NEAR(two.defect, 1.0, 1e-15);
  const RelationReport pa = is_contraction(kRefA);
  EXPECT_TRUE(pa.verdict);
  EXPECT_NEAR(op_norm(kRefA), 0.8726779962, 1e-10);
}

TEST(Blockwise, AbsValueAndNormPerBlock) {
  const AlgebraShape s{2, 1};
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(1, 0) = 2.0;
  m(2, 2) = Complex(0, -0.5);
  const AlgebraElement x(s, m);
  EXPECT_LT(dist(abs_value(x).matrix(), diag({2.0, 0.0, 0.5})), 1e-15);
  EXPECT_NEAR(op_norm(x), 2.0, 1e-15);
  EXPECT_NEAR(min_eigenvalue(unit(s)), 1.0, 1e-15);
  EXPECT_NEAR(max_eigenvalue(-1.0 * unit(s)), -1.0, 1e-15);
}
