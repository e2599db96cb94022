#pragma once

// Exact check suites over the symbolic layer, shared by the command line and the test suite.

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "kch/augment.hpp"
#include "kch/braid.hpp"
#include "kch/phi.hpp"
#include "kch/satmap.hpp"

namespace kch {

/// Uniform random word of the given length over the letters +-1 .. +-(n-1).
inline BraidWord random_braid(int n, int length, std::mt19937_64& rng) {
  if (n < 2) return BraidWord::identity(std::max(n, 1));
  std::uniform_int_distribution<int> gen(1, n - 1);
  std::bernoulli_distribution neg(0.5);
  std::vector<int> w;
  for (int s = 0; s < length; ++s) w.push_back(neg(rng) ? -gen(rng) : gen(rng));
  return BraidWord(n, std::move(w));
}

/// Every monomial in row i of Phi^L is a chain a_{i0 x1} a_{x1 x2} ... a_{xm j} with i0 = perm(b)(i);
/// constant terms only occur when i0 = j.
inline Report verify_monomial_structure(const BraidWord& b) {
  Report rep;
  rep.claim = "Phi^L monomials are index chains from perm(beta)(i) to j";
  rep.parameters = {{"n", b.strands()}, {"word", to_string(b)}};
  const PhiMatrix m = phi_L(b);
  const Perm pb = perm(b);
  for (int i = 1; i <= b.strands(); ++i)
    for (int j = 1; j <= b.strands(); ++j)
      for (const auto& [mono, c] : m(i, j).terms()) {
        bool ok = true;
        if (mono.empty()) {
          ok = pb(i) == j;
        } else {
          ok = mono.front().i == pb(i) && mono.back().j == j;
          for (std::size_t t = 1; t < mono.size(); ++t) ok = ok && mono[t - 1].j == mono[t].i;
        }
        rep.expect(ok, i, j, to_string(NCPoly::monomial(m.algebra(), mono, c)), "chain", "monomial");
      }
  return rep;
}

/// Phi of b1 b2 against the chain-rule composite, both sides, for random pairs.
inline Report check_chainrule(int n, int pairs, int max_len, std::uint64_t seed) {
  Report rep;
  rep.claim = "chain rule for Phi^L and Phi^R";
  rep.parameters = {{"n", n}, {"pairs", pairs}, {"max_len", max_len}, {"seed", seed}};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len(0, max_len);
  for (int t = 0; t < pairs; ++t) {
    const BraidWord b1 = random_braid(n, len(rng), rng);
    const BraidWord b2 = random_braid(n, len(rng), rng);
    for (Side s : {Side::L, Side::R}) {
      const PhiMatrix whole = phi_matrix(b1 * b2, s);
      const PhiMatrix comp = chain_compose(phi_matrix(b1, s), phi_matrix(b2, s), b1);
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          rep.expect(whole(i, j) == comp(i, j), i, j, to_string(whole(i, j)), to_string(comp(i, j)),
                     std::string(to_string(s)) + " pair " + std::to_string(t) + ": [" + to_string(b1) + "] [" +
                         to_string(b2) + "]");
    }
  }
  return rep;
}

/// Phi^R = transpose of the conjugate of Phi^L, and both agree with extraction from phi*.
inline Report check_transpose(int n, int count, int max_len, std::uint64_t seed) {
  Report rep;
  rep.claim = "Phi^R is the conjugate transpose of Phi^L";
  rep.parameters = {{"n", n}, {"count", count}, {"max_len", max_len}, {"seed", seed}};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len(0, max_len);
  for (int t = 0; t < count; ++t) {
    const BraidWord b = random_braid(n, len(rng), rng);
    const PhiMatrix l = phi_L(b), r = phi_R(b);
    const PhiMatrix tl = transpose_conjugate(l);
    const PhiMatrix dl = phi_matrix_direct(b, Side::L), dr = phi_matrix_direct(b, Side::R);
    const std::string note = "[" + to_string(b) + "]";
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        rep.expect(r(i, j) == tl(i, j), i, j, to_string(r(i, j)), to_string(tl(i, j)), "transpose " + note);
        rep.expect(l(i, j) == dl(i, j), i, j, to_string(l(i, j)), to_string(dl(i, j)), "L extraction " + note);
        rep.expect(r(i, j) == dr(i, j), i, j, to_string(r(i, j)), to_string(dr(i, j)), "R extraction " + note);
      }
  }
  return rep;
}

/// The braids iota, s1, s1^3, s1 s2, s1 s2^-1 that fit in B_k.
inline std::vector<BraidWord> psi_corpus(int k) {
  std::vector<BraidWord> out;
  for (const std::vector<int>& w : std::vector<std::vector<int>>{{}, {1}, {1, 1, 1}, {1, 2}, {1, -2}}) {
    bool fits = true;
    for (int e : w) fits = fits && std::abs(e) <= k - 1;
    if (fits) out.emplace_back(k, w);
  }
  return out;
}

inline Report check_psi(int k, int p) {
  Report rep;
  rep.claim = "psi(Phi_<alpha>_p) = Phi_alpha (x) I_p";
  rep.parameters = {{"k", k}, {"p", p}};
  for (const BraidWord& a : psi_corpus(k)) rep.merge(verify_psiofbp(a, p));
  for (const BraidWord& a : psi_corpus(k)) rep.merge(verify_block_transport(a, p));
  return rep;
}

inline Report check_commutes(int k, int p) {
  Report rep;
  rep.claim = "psi* o phi*_<s_b>_p = (phi*_{s_b} (x) id) o psi*";
  rep.parameters = {{"k", k}, {"p", p}};
  for (int b = 1; b < k; ++b) rep.merge(verify_commutes(b, k, p));
  return rep;
}

/// The cabled-generator table against phi of the cable, with the psi simplifications.
inline Report check_sigma_n(int k, int p) {
  Report rep;
  rep.claim = "closed form of phi on a cabled generator";
  rep.parameters = {{"k", k}, {"p", p}};
  for (bool star : {false, true}) {
    const Algebra alg{k * p, star};
    for (int b = 1; b < k; ++b) {
      const BraidWord cab = cable(BraidWord(k, {b}), p);
      for (int i = 1; i <= alg.size(); ++i)
        for (int j = i + 1; j <= alg.size(); ++j) {
          const NCPoly want = phi(cab, NCPoly::generator(alg, i, j));
          const NCPoly got = sigma_cabled_closed_form(alg, b, p, i, j);
          rep.expect(got == want, i, j, to_string(got), to_string(want), "b=" + std::to_string(b));
        }
    }
  }
  for (int b = 1; b < k; ++b) rep.merge(verify_simplified_images(b, k, p));
  return rep;
}

/// tau_{m,p} and kappa_{m,l} closed forms against phi for every window in A_n.
inline Report check_tau(int n) {
  Report rep;
  rep.claim = "closed forms of phi on tau and kappa";
  rep.parameters = {{"n", n}};
  const Algebra alg{n, false};
  for (int m = 1; m < n; ++m)
    for (int p = 1; m + p <= n; ++p)
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
          const NCPoly want = phi(tau_word(m, p, n), NCPoly::generator(alg, i, j));
          const NCPoly got = tau_closed_form(alg, m, p, i, j);
          rep.expect(got == want, i, j, to_string(got), to_string(want),
                     "tau m=" + std::to_string(m) + " p=" + std::to_string(p));
        }
  for (int p = 1; p < n; ++p)
    for (int l = 1; l <= p; ++l)
      for (int m = 1; m + p + l - 1 <= n; ++m)
        for (int i = 1; i <= n; ++i)
          for (int j = i + 1; j <= n; ++j) {
            const NCPoly want = phi(kappa_word(m, l, p, n), NCPoly::generator(alg, i, j));
            const NCPoly got = kappa_closed_form(alg, m, l, p, i, j);
            rep.expect(got == want, i, j, to_string(got), to_string(want),
                       "kappa m=" + std::to_string(m) + " l=" + std::to_string(l) + " p=" + std::to_string(p));
          }
  return rep;
}

inline const std::vector<std::string>& check_suite_names() {
  static const std::vector<std::string> names{"chainrule", "transpose", "psi", "commutes", "sigma_n", "tau", "blocks"};
  return names;
}

struct CheckParams {
  int n = 3;
  int k = 2;
  int p = 2;
  std::uint64_t seed = 0;
  int count = 200;
  int max_len = 5;
};

inline Report run_check_suite(const std::string& name, const CheckParams& c) {
  if (name == "chainrule") return check_chainrule(c.n, c.count, c.max_len, c.seed);
  if (name == "transpose") return check_transpose(c.n, c.count, c.max_len, c.seed);
  if (name == "psi") return check_psi(c.k, c.p);
  if (name == "commutes") return check_commutes(c.k, c.p);
  if (name == "sigma_n") return check_sigma_n(c.k, c.p);
  if (name == "tau") return check_tau(c.n);
  if (name == "blocks") return check_block_structure(c.n, c.p);
  throw std::invalid_argument("unknown check suite '" + name + "'");
}

}  // namespace kch
