#include <gtest/gtest.h>

#include <random>

#include "kch/checks.hpp"
#include "kch/satmap.hpp"

using namespace kch;

namespace {

TensorPoly tensor(int k, int p, const char* left, const char* right) {
  return TensorPoly::from_left(parse_ncpoly(Algebra{k, false}, left), Algebra{p, false}) *
         TensorPoly::from_right(Algebra{k, false}, parse_ncpoly(Algebra{p, false}, right));
}

}  // namespace

TEST(SplitIndex, BlocksAndOffsets) {
  EXPECT_EQ(split_index(1, 3).block, 1);
  EXPECT_EQ(split_index(3, 3).offset, 3);
  EXPECT_EQ(split_index(4, 3).block, 2);
  EXPECT_EQ(split_index(4, 3).offset, 1);
}

TEST(Psi, FourCasesOnGenerators) {
  const Algebra a{4, false};  // k = 2, p = 2
  // same block
  EXPECT_EQ(psi(NCPoly::generator(a, 1, 2), 2, 2), tensor(2, 2, "1", "a12"));
  // same offset
  EXPECT_EQ(psi(NCPoly::generator(a, 1, 3), 2, 2), tensor(2, 2, "a12", "1"));
  // offsets ordered like blocks
  EXPECT_EQ(psi(NCPoly::generator(a, 1, 4), 2, 2), tensor(2, 2, "a12", "a12"));
  // offsets against blocks
  EXPECT_TRUE(psi(NCPoly::generator(a, 2, 3), 2, 2).is_zero());
}

TEST(Psi, IsMultiplicative) {
  const Algebra a{6, false};
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> idx(1, 6);
  for (int t = 0; t < 40; ++t) {
    int i = idx(rng), j = idx(rng), u = idx(rng), v = idx(rng);
    if (i == j || u == v) continue;
    const NCPoly x = NCPoly::generator(a, i, j), y = NCPoly::generator(a, u, v);
    EXPECT_EQ(psi(x * y, 3, 2), psi(x, 3, 2) * psi(y, 3, 2));
    EXPECT_EQ(psi(x + y, 3, 2), psi(x, 3, 2) + psi(y, 3, 2));
  }
}

TEST(Psi, CommutesWithConjugation) {
  const Algebra a{6, false};
  for (int i = 1; i <= 6; ++i)
    for (int j = 1; j <= 6; ++j)
      if (i != j) {
        const NCPoly x = NCPoly::generator(a, i, j);
        EXPECT_EQ(psi(conjugate(x), 2, 3), conjugate(psi(x, 2, 3)));
      }
}

TEST(Psi, RejectsWrongAmbient) {
  EXPECT_THROW(psi(NCPoly::generator(Algebra{5, false}, 1, 2), 2, 2), std::invalid_argument);
}

TEST(PsiStar, ModuleElementsOnly) {
  const Algebra a{4, true};
  EXPECT_NO_THROW(psi_star(parse_ncpoly(a, "a12*a2*"), 2, 2));
  EXPECT_THROW(psi_star(parse_ncpoly(a, "a12"), 2, 2), std::invalid_argument);
  EXPECT_THROW(psi_star(parse_ncpoly(a, "a*1*a12"), 2, 2), std::invalid_argument);
}

TEST(Satmap, PhiOfCableMapsToTensorWithIdentity) {
  for (int k = 1; k <= 3; ++k)
    for (int p = 1; p <= 3; ++p)
      for (const BraidWord& a : psi_corpus(k)) {
        const Report r = verify_psiofbp(a, p);
        EXPECT_TRUE(r.ok) << r.to_json().dump();
      }
}

TEST(Satmap, DiagramCommutesOnBasis) {
  for (int k = 2; k <= 3; ++k)
    for (int p = 1; p <= 3; ++p) {
      const Report r = check_commutes(k, p);
      EXPECT_TRUE(r.ok) << r.to_json().dump();
    }
}

TEST(Satmap, SimplifiedImages) {
  for (int k = 2; k <= 3; ++k)
    for (int p = 1; p <= 3; ++p)
      for (int b = 1; b < k; ++b) EXPECT_TRUE(verify_simplified_images(b, k, p).ok);
}

TEST(Satmap, BlockTransport) {
  for (int p = 1; p <= 3; ++p)
    for (const BraidWord& a : psi_corpus(3)) EXPECT_TRUE(verify_block_transport(a, p).ok);
}

TEST(Report, JsonShapeNamesFailures) {
  Report r;
  r.claim = "demo";
  r.parameters = {{"k", 2}};
  r.expect(true, 1, 2, "x", "x");
  r.expect(false, 2, 1, "a", "b", "note");
  const auto j = r.to_json();
  EXPECT_EQ(j["status"], "fail");
  EXPECT_EQ(j["checked"], 2);
  EXPECT_EQ(j["diffs"][0]["i"], 2);
  EXPECT_EQ(j["diffs"][0]["note"], "note");
  EXPECT_EQ(j["parameters"]["k"], 2);
}
