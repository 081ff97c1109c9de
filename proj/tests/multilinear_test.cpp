#include "sepfaces/multilinear.hpp"

#include <gtest/gtest.h>

#include "sepfaces/herm.hpp"
#include "test_util.hpp"

namespace sepfaces {
namespace {

using testing::basis;

TEST(SystemShapeTest, ParsesAndIndexes) {
  const auto s = SystemShape::parse("2x3x4");
  EXPECT_EQ(s.parties(), 3);
  EXPECT_EQ(s.total(), 24);
  EXPECT_EQ(s.to_string(), "2x3x4");
  for (int f = 0; f < s.total(); ++f) EXPECT_EQ(s.flat_index(s.multi_index(f)), f);
  // party 1 slowest
  EXPECT_EQ(s.multi_index(12), (std::vector<int>{1, 0, 0}));
  EXPECT_EQ(s.multi_index(1), (std::vector<int>{0, 0, 1}));
}

TEST(SystemShapeTest, RejectsDegenerateShapes) {
  EXPECT_THROW(SystemShape({3}), std::invalid_argument);
  EXPECT_THROW(SystemShape({2, 1}), std::invalid_argument);
  EXPECT_THROW(SystemShape::parse("2x"), std::invalid_argument);
  EXPECT_THROW(SystemShape::parse("2xa"), std::invalid_argument);
  EXPECT_NO_THROW(SystemShape::single(3));
}

TEST(ExpandTest, BasisAndSignPattern) {
  const SystemShape s({2, 2});
  const ProductVector e00(s, {basis(2, 0), basis(2, 0)});
  EXPECT_LT((expand(e00) - basis(4, 0)).norm(), 1e-15);

  CVector plus(2), minus(2);
  plus << 1.0, 1.0;
  minus << 1.0, -1.0;
  const ProductVector pm(s, {plus / std::sqrt(2.0), minus / std::sqrt(2.0)});
  CVector expected(4);
  expected << 0.5, -0.5, 0.5, -0.5;
  EXPECT_LT((expand(pm) - expected).norm(), 1e-15);
}

TEST(ExpandTest, UniformQutritPairIsAllThirds) {
  const SystemShape s({3, 3});
  const CVector u = CVector::Ones(3) / std::sqrt(3.0);
  const CVector v = expand(ProductVector(s, {u, u}));
  for (Eigen::Index i = 0; i < 9; ++i) EXPECT_NEAR(std::abs(v(i) - 1.0 / 3.0), 0.0, 1e-15);
}

TEST(ExpandTest, NormIsMultiplicative) {
  Rng rng(7);
  const SystemShape s({2, 3, 2});
  for (int t = 0; t < 200; ++t) {
    std::vector<CVector> fs;
    double prod = 1.0;
    for (int i = 0; i < s.parties(); ++i) {
      fs.push_back(complex_gaussian(s.dim(i), rng) * (0.5 + t * 0.01));
      prod *= fs.back().norm();
    }
    const ProductVector pv(s, fs);
    EXPECT_NEAR(expand(pv).norm(), prod, 1e-12 * prod);
    EXPECT_NEAR(pv.norm(), prod, 1e-12 * prod);
  }
}

TEST(ProductVectorTest, RejectsBadFactors) {
  const SystemShape s({2, 2});
  EXPECT_THROW(ProductVector(s, {basis(2, 0)}), std::invalid_argument);
  EXPECT_THROW(ProductVector(s, {basis(2, 0), CVector::Zero(2)}), std::invalid_argument);
  EXPECT_THROW(ProductVector(s, {basis(2, 0), basis(3, 0)}), std::invalid_argument);
  CVector bad = basis(2, 0);
  bad(1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(ProductVector(s, {basis(2, 0), bad}), std::invalid_argument);
}

TEST(GaugeTest, IdempotentAndPhaseInvariant) {
  Rng rng(11);
  for (int t = 0; t < 500; ++t) {
    CVector v = complex_gaussian(4, rng);
    if (t % 5 == 0) v(0) = 0.0;  // pivot moves past a zero component
    const CVector g = gauge_fix(v);
    EXPECT_NEAR(g.norm(), 1.0, 1e-14);
    EXPECT_LT((gauge_fix(g) - g).norm(), 1e-14);
    const double angle = 0.37 * t;
    EXPECT_LT((gauge_fix(std::polar(1.0, angle) * v) - g).norm(), 1e-12);
    const Eigen::Index pivot = (t % 5 == 0) ? 1 : 0;
    EXPECT_EQ(g(pivot).imag(), 0.0);
    EXPECT_GE(g(pivot).real(), 0.0);
  }
  EXPECT_THROW(gauge_fix(CVector::Zero(3)), std::invalid_argument);
}

TEST(SamplerTest, DeterministicGivenSeed) {
  const SystemShape s({2, 3});
  const auto a = sample_product_vector(s, 42);
  const auto b = sample_product_vector(s, 42);
  for (int i = 0; i < 2; ++i) EXPECT_EQ(a.factor(i), b.factor(i));
  const auto c = sample_product_vector(s, 43);
  EXPECT_GT((a.factor(0) - c.factor(0)).norm(), 1e-6);
}

TEST(SamplerTest, OutputsAreGaugeFixed) {
  Rng rng(3);
  const SystemShape s({3, 2, 2});
  for (int t = 0; t < 300; ++t) {
    const auto pv = sample_product_vector(s, rng);
    for (const auto& f : pv.factors()) {
      EXPECT_NEAR(f.norm(), 1.0, 1e-14);
      EXPECT_EQ(f(0).imag(), 0.0);
      EXPECT_GE(f(0).real(), 0.0);
    }
  }
}

TEST(SamplerTest, TenThousandTwoQubitProjectorsSpanH) {
  Rng rng(5);
  const SystemShape s({2, 2});
  std::vector<HermOp> ops;
  for (int t = 0; t < 10000; ++t) ops.push_back(HermOp::projector(sample_product_vector(s, rng)));
  EXPECT_EQ(real_span_rank(ops), 16);
}

TEST(SymmetricProjectorTest, TraceIsBinomial) {
  EXPECT_NEAR(symmetric_projector(SystemShape({2, 2})).trace().real(), 3.0, 1e-12);
  EXPECT_NEAR(symmetric_projector(SystemShape({3, 3})).trace().real(), 6.0, 1e-12);
  EXPECT_NEAR(symmetric_projector(SystemShape({2, 2, 2})).trace().real(), 4.0, 1e-12);
  EXPECT_NEAR(symmetric_projector(SystemShape({3, 3, 3})).trace().real(), static_cast<double>(binomial(5, 3)), 1e-12);
}

TEST(SymmetricProjectorTest, IdempotentHermitianAndFixesSymmetricTensors) {
  Rng rng(9);
  for (const auto& s : {SystemShape({2, 2}), SystemShape({3, 3}), SystemShape({2, 2, 2}), SystemShape({4, 4})}) {
    const CMatrix p = symmetric_projector(s);
    EXPECT_LT((p * p - p).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((p - p.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    for (int t = 0; t < 20; ++t) {
      const CVector x = complex_gaussian(s.dim(0), rng);
      const CVector v = expand(diagonal_product(s, x));
      EXPECT_LT((p * v - v).norm(), 1e-12 * v.norm());
    }
  }
  EXPECT_THROW(symmetric_projector(SystemShape({2, 3})), std::invalid_argument);
}

TEST(ComposeTest, IdentityComposesToIdentity) {
  const SystemShape a({2, 3});
  const SystemShape b({2, 2});
  const CMatrix c = compose(a, b, CMatrix::Identity(6, 6), CMatrix::Identity(4, 4));
  EXPECT_LT((c - CMatrix::Identity(24, 24)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(merge_shapes(a, b), SystemShape({4, 6}));
}

TEST(ComposeTest, ProductVectorsComposeFactorwise) {
  Rng rng(21);
  const SystemShape a({2, 3});
  const SystemShape b({3, 2});
  for (int t = 0; t < 20; ++t) {
    const auto pa = sample_product_vector(a, rng);
    const auto pb = sample_product_vector(b, rng);
    const auto pc = compose(pa, pb);
    const CMatrix lhs = compose(a, b, projector(expand(pa)), projector(expand(pb)));
    EXPECT_LT((lhs - projector(expand(pc))).cwiseAbs().maxCoeff(), 1e-14);
  }
  EXPECT_THROW(compose(SystemShape({2, 2}), SystemShape({2, 2, 2}), CMatrix::Identity(4, 4), CMatrix::Identity(8, 8)),
               std::invalid_argument);
}

TEST(ComposeTest, CommutesWithPartialTransposes) {
  Rng rng(23);
  const SystemShape a({2, 3});
  const SystemShape b({2, 2});
  const SystemShape c = merge_shapes(a, b);
  for (int t = 0; t < 25; ++t) {
    const HermOp rho(a, testing::random_hermitian(6, rng));
    const HermOp sigma(b, testing::random_hermitian(4, rng));
    const HermOp composed(c, compose(a, b, rho.matrix(), sigma.matrix()));
    for (unsigned bits = 0; bits < 4; ++bits) {
      const CMatrix lhs = partial_transpose(composed, TransposeMask(c, bits)).matrix();
      const CMatrix rhs = compose(a, b, partial_transpose(rho, TransposeMask(a, bits)).matrix(),
                                  partial_transpose(sigma, TransposeMask(b, bits)).matrix());
      EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-14);
    }
  }
}

TEST(ComposeTest, FullTimesFullIsFull) {
  Rng rng(29);
  const SystemShape a({2, 2});
  const SystemShape b({2, 3});
  const HermOp rho = testing::random_separable(a, 12, rng);
  const HermOp sigma = testing::random_separable(b, 20, rng);
  ASSERT_TRUE(is_full(rho));
  ASSERT_TRUE(is_full(sigma));
  EXPECT_TRUE(is_full(HermOp(merge_shapes(a, b), compose(a, b, rho.matrix(), sigma.matrix()))));
}

}  // namespace
}  // namespace sepfaces
