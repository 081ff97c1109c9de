#include "sepfaces/io.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace sepfaces {
namespace {

TEST(IoTest, ParseShape) {
  EXPECT_EQ(parse_shape("2x3"), SystemShape({2, 3}));
  EXPECT_EQ(parse_shape("2x2x2"), SystemShape({2, 2, 2}));
  EXPECT_EQ(parse_shape("3,3"), SystemShape({3, 3}));
  for (const char* bad : {"", "2", "2x", "x3", "2xa", "2x1", "2x3 "}) {
    EXPECT_THROW(parse_shape(bad), std::invalid_argument) << bad;
  }
}

TEST(IoTest, ExtendedReal) {
  EXPECT_TRUE(std::isinf(parse_extended_real("inf")));
  EXPECT_DOUBLE_EQ(parse_extended_real("0.5"), 0.5);
  EXPECT_THROW(parse_extended_real("0.5q"), std::invalid_argument);
  EXPECT_EQ(extended_real(std::numeric_limits<double>::infinity()), "inf");
}

TEST(IoTest, HermOpRoundTrip) {
  Rng rng(1);
  for (const auto& shape : {SystemShape({2, 2}), SystemShape({2, 3}), SystemShape({2, 2, 2})}) {
    const HermOp op(shape, testing::random_hermitian(shape.total(), rng));
    const json j = herm_json(op);
    EXPECT_EQ(j["entries"].size(), static_cast<std::size_t>(shape.total() * shape.total()));
    const HermOp back = herm_from_json(json::parse(j.dump()));
    EXPECT_EQ(back.shape(), shape);
    EXPECT_EQ(back.matrix(), op.matrix());
  }
}

TEST(IoTest, HermOpLayoutIsRowMajor) {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 1) = cplx(1.0, 2.0);
  m(1, 0) = cplx(1.0, -2.0);
  const json j = herm_json(HermOp(SystemShape({2, 2}), m));
  EXPECT_EQ(j["entries"][1], json::array({1.0, 2.0}));
  EXPECT_EQ(j["entries"][4], json::array({1.0, -2.0}));
}

TEST(IoTest, HermOpRejectsMalformed) {
  EXPECT_THROW(herm_from_json(json::parse(R"({"shape":[2,2],"entries":[[1,0]]})")), std::invalid_argument);
  EXPECT_THROW(herm_from_json(json::parse(R"({"shape":[2,2]})")), json::exception);
  json j = herm_json(HermOp::identity(SystemShape({2, 2})));
  j["entries"][1] = json::array({1.0, 0.0});
  EXPECT_THROW(herm_from_json(j), std::invalid_argument);  // not Hermitian
}

TEST(IoTest, ProductVectorAndSubspaceRoundTrip) {
  Rng rng(2);
  const auto pv = sample_product_vector(SystemShape({2, 3}), rng);
  const auto back = product_vector_from_json(json::parse(product_vector_json(pv).dump()));
  EXPECT_EQ(expand(back), expand(pv));
  const auto spec = random_subspace(SystemShape({2, 3}), 3, rng);
  const auto spec_back = subspace_from_json(json::parse(subspace_json(spec).dump()));
  EXPECT_EQ(spec_back.basis(), spec.basis());
}

TEST(IoTest, ReportsSerialize) {
  WitnessRunOptions opt;
  opt.seesaw.starts = 8;
  opt.recover_zero_set = false;
  const json w = witness_report_json(witness_report(make_wb(std::numeric_limits<double>::infinity()), opt));
  EXPECT_EQ(w["b"], "inf");
  EXPECT_TRUE(w["is_ew"].get<bool>());
  EXPECT_EQ(w["spectrum"].size(), 9U);
  Rng rng(3);
  const json e = enumeration_json(enumerate_pv(random_subspace(SystemShape({2, 2}), 2, rng)));
  EXPECT_EQ(e["count"], 2);
  EXPECT_EQ(e["vectors"].size(), 2U);
}

}  // namespace
}  // namespace sepfaces
