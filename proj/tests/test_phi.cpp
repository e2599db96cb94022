#include <gtest/gtest.h>

#include <random>

#include "kch/checks.hpp"
#include "kch/phi.hpp"

using namespace kch;

namespace {

NCPoly random_poly(Algebra alg, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> idx(1, alg.size()), deg(0, 3), coeff(-3, 3);
  NCPoly out(alg);
  for (int t = 0; t < 4; ++t) {
    Monomial m;
    const int d = deg(rng);
    while (int(m.size()) < d) {
      const int i = idx(rng), j = idx(rng);
      if (i != j) m.push_back(Gen{std::uint8_t(i), std::uint8_t(j)});
    }
    out += NCPoly::monomial(alg, m, coeff(rng));
  }
  return out;
}

NCPoly P(Algebra alg, const char* s) { return parse_ncpoly(alg, s); }

struct BudgetGuard {
  std::size_t saved = term_budget();
  ~BudgetGuard() { term_budget() = saved; }
};

}  // namespace

TEST(Phi, SingleLetterRules) {
  const Algebra a{3, false};
  EXPECT_EQ(phi_letter(1, P(a, "a12")), P(a, "-a21"));
  EXPECT_EQ(phi_letter(1, P(a, "a21")), P(a, "-a12"));
  EXPECT_EQ(phi_letter(1, P(a, "a13")), P(a, "a23 - a21*a13"));
  EXPECT_EQ(phi_letter(1, P(a, "a31")), P(a, "a32 - a31*a12"));
  EXPECT_EQ(phi_letter(1, P(a, "a23")), P(a, "a13"));
  EXPECT_EQ(phi_letter(1, P(a, "a32")), P(a, "a31"));
  EXPECT_EQ(phi_letter(-1, P(a, "a13")), P(a, "a23"));
  EXPECT_EQ(phi_letter(-1, P(a, "a23")), P(a, "a13 - a12*a23"));
  EXPECT_THROW(phi_letter(3, P(a, "a12")), std::out_of_range);
}

TEST(Phi, InverseLettersUndoLetters) {
  std::mt19937_64 rng(1);
  for (int n = 2; n <= 5; ++n) {
    const Algebra a{n, false};
    for (int k = 1; k < n; ++k)
      for (int t = 0; t < 10; ++t) {
        const NCPoly x = random_poly(a, rng);
        EXPECT_EQ(phi_letter(k, phi_letter(-k, x)), x);
        EXPECT_EQ(phi_letter(-k, phi_letter(k, x)), x);
      }
  }
}

TEST(Phi, BraidRelationsOnGenerators) {
  for (int n = 2; n <= 6; ++n) {
    const Algebra a{n, false};
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        if (i == j) continue;
        const NCPoly x = NCPoly::generator(a, i, j);
        for (int k = 1; k < n; ++k) {
          if (k + 1 < n)
            EXPECT_EQ(phi(BraidWord(n, {k, k + 1, k}), x), phi(BraidWord(n, {k + 1, k, k + 1}), x));
          for (int l = k + 2; l < n; ++l) EXPECT_EQ(phi(BraidWord(n, {k, l}), x), phi(BraidWord(n, {l, k}), x));
        }
      }
  }
}

TEST(Phi, IsAHomomorphismOfTheBraidGroup) {
  std::mt19937_64 rng(2);
  const Algebra a{4, false};
  for (int t = 0; t < 20; ++t) {
    const BraidWord b1 = random_braid(4, 3, rng), b2 = random_braid(4, 3, rng);
    const NCPoly x = random_poly(a, rng);
    EXPECT_EQ(phi(b1 * b2, x), phi(b1, phi(b2, x)));
    EXPECT_EQ(phi_map(b1 * b2, a).apply(x), phi(b1 * b2, x));
  }
}

TEST(Phi, ActsOnLargerAlgebrasByInclusion) {
  const Algebra a{4, true};
  EXPECT_EQ(phi(BraidWord(2, {1}), P(a, "a3*")), P(a, "a3*"));
  EXPECT_EQ(phi_star(BraidWord(4, {1}), P(a, "a1*")), P(a, "a2* - a21*a1*"));
  EXPECT_THROW(phi_star(BraidWord(3, {1}), P(a, "a1*")), std::invalid_argument);
  EXPECT_THROW(phi(BraidWord(6, {1}), P(a, "a12")), std::invalid_argument);
}

TEST(PhiMatrix, SingleLetterAndIdentity) {
  const PhiMatrix m = phi_L(BraidWord(2, {1}));
  const Algebra a{2, false};
  EXPECT_EQ(m(1, 1), P(a, "-a21"));
  EXPECT_EQ(m(1, 2), NCPoly::one(a));
  EXPECT_EQ(m(2, 1), NCPoly::one(a));
  EXPECT_TRUE(m(2, 2).is_zero());
  EXPECT_EQ(phi_L(BraidWord::identity(3)), PhiMatrix::identity(3, Side::L));
  EXPECT_EQ(phi_letter_matrix(1, 2, Side::L), m);
  EXPECT_EQ(phi_letter_matrix(-1, 2, Side::L), phi_L(BraidWord(2, {-1})));
}

TEST(PhiMatrix, Trefoil) {
  const Algebra a{2, false};
  const PhiMatrix m = phi_L(BraidWord(2, {1, 1, 1}));
  EXPECT_EQ(m(1, 1), P(a, "-2*a21 + a21*a12*a21"));
  EXPECT_EQ(m(1, 2), P(a, "1 - a21*a12"));
  EXPECT_EQ(m(2, 1), P(a, "1 - a12*a21"));
  EXPECT_EQ(m(2, 2), P(a, "a12"));
}

TEST(PhiMatrix, ChainRuleTransposeAndExtraction) {
  for (int n = 2; n <= 4; ++n) {
    EXPECT_TRUE(check_chainrule(n, 20, 4, 100 + n).ok);
    EXPECT_TRUE(check_transpose(n, 20, 5, 200 + n).ok);
  }
}

TEST(PhiMatrix, MonomialStructure) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 30; ++t) {
    const BraidWord b = random_braid(4, 6, rng);
    EXPECT_TRUE(verify_monomial_structure(b).ok) << to_string(b);
  }
}

TEST(PhiMatrix, ChainComposeValidatesShapes) {
  EXPECT_THROW(chain_compose(phi_L(BraidWord(2, {1})), phi_R(BraidWord(2, {1})), BraidWord(2, {1})),
               std::invalid_argument);
  EXPECT_THROW(chain_compose(phi_L(BraidWord(2, {1})), phi_L(BraidWord(2, {1})), BraidWord(3, {1})),
               std::invalid_argument);
}

TEST(PhiMatrix, BudgetOverflowIsReported) {
  BudgetGuard guard;
  term_budget() = 50;
  EXPECT_THROW(phi_L(cable(BraidWord(2, {1, 1, 1}), 3)), TermBudgetExceeded);
}

TEST(PhiMatrix, MixedWordTimesInverseIsIdentity) {
  const BraidWord b(4, {2, -3, -1});
  const BraidWord bb = b * b.inverse();
  for (Side s : {Side::L, Side::R}) EXPECT_EQ(phi_matrix(bb, s), PhiMatrix::identity(4, s));
  const NCPoly x = NCPoly::generator(Algebra{4, false}, 3, 1);
  EXPECT_EQ(phi(bb, x), x);
}

TEST(ClosedForms, TauAndKappa) {
  for (int n = 2; n <= 7; ++n) {
    const Report r = check_tau(n);
    EXPECT_TRUE(r.ok) << r.to_json().dump();
  }
}

TEST(ClosedForms, CabledGenerator) {
  for (int k = 2; k <= 3; ++k)
    for (int p = 1; p <= 3; ++p) {
      const Report r = check_sigma_n(k, p);
      EXPECT_TRUE(r.ok) << r.to_json().dump();
    }
}

TEST(ClosedForms, CableAgreesWithKappa) {
  for (int k = 2; k <= 3; ++k)
    for (int p = 1; p <= 3; ++p)
      for (int b = 1; b < k; ++b) {
        const int n = k * p;
        const Algebra a{n, true};
        const BraidWord c = cable(BraidWord(k, {b}), p);
        const BraidWord kw = kappa_word((b - 1) * p + 1, p, p, n);
        for (int i = 1; i <= a.size(); ++i)
          for (int j = 1; j <= a.size(); ++j)
            if (i != j) EXPECT_EQ(phi(c, NCPoly::generator(a, i, j)), phi(kw, NCPoly::generator(a, i, j)));
      }
}

TEST(ClosedForms, ArgumentChecks) {
  const Algebra a{4, false};
  EXPECT_THROW(tau_closed_form(a, 1, 2, 2, 1), std::out_of_range);
  EXPECT_THROW(tau_closed_form(a, 3, 2, 1, 2), std::out_of_range);
  EXPECT_THROW(kappa_closed_form(a, 1, 3, 2, 1, 2), std::out_of_range);
  EXPECT_THROW(sigma_cabled_closed_form(Algebra{5, false}, 1, 2, 1, 2), std::out_of_range);
  EXPECT_THROW(sum_A(a, 2, 4, 2, 2), std::out_of_range);
  EXPECT_THROW(sum_B_prime(a, 1, 4, 2, 2), std::out_of_range);
}
