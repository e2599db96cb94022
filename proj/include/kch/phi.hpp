#pragma once

// The braid action phi: B_n -> Aut(A_n), its starred extension, the matrices Phi^L / Phi^R,
// and closed forms for phi on tau_{m,p}, kappa_{m,l} and cabled generators.

#include <stdexcept>
#include <string>
#include <vector>

#include "kch/braid.hpp"
#include "kch/ncpoly.hpp"

namespace kch {

enum class Side { L, R };

inline const char* to_string(Side s) { return s == Side::L ? "L" : "R"; }

/// Endomorphism of an algebra stored as the images of its generators.
class GeneratorMap {
 public:
  explicit GeneratorMap(Algebra alg) : alg_(alg), images_(std::size_t(alg.size() * alg.size())) {
    const int s = alg.size();
    for (int i = 1; i <= s; ++i)
      for (int j = 1; j <= s; ++j)
        if (i != j) images_[slot(i, j)] = NCPoly::generator(alg, i, j);
  }

  /// phi of a single signed Artin letter. The inverse letter uses the formal inverse of the
  /// positive substitution rules.
  static GeneratorMap letter(Algebra alg, int e) {
    const int k = e < 0 ? -e : e;
    if (k < 1 || k + 1 > alg.size()) throw std::out_of_range("letter " + std::to_string(e) + " out of range");
    GeneratorMap m(alg);
    const int k1 = k + 1;
    auto a = [&](int i, int j) { return NCPoly::generator(alg, i, j); };
    m.set(k, k1, -a(k1, k));
    m.set(k1, k, -a(k, k1));
    for (int i = 1; i <= alg.size(); ++i) {
      if (i == k || i == k1) continue;
      if (e > 0) {
        m.set(k1, i, a(k, i));
        m.set(i, k1, a(i, k));
        m.set(k, i, a(k1, i) - a(k1, k) * a(k, i));
        m.set(i, k, a(i, k1) - a(i, k) * a(k, k1));
      } else {
        m.set(k, i, a(k1, i));
        m.set(i, k, a(i, k1));
        m.set(k1, i, a(k, i) - a(k, k1) * a(k1, i));
        m.set(i, k1, a(i, k) - a(i, k1) * a(k1, k));
      }
    }
    return m;
  }

  const Algebra& algebra() const { return alg_; }
  const NCPoly& operator()(Gen g) const { return images_[slot(g.i, g.j)]; }
  const NCPoly& image(int i, int j) const { return images_[slot(i, j)]; }
  void set(int i, int j, NCPoly v) { images_[slot(i, j)] = std::move(v); }

  NCPoly apply(const NCPoly& x) const {
    if (!(x.algebra() == alg_)) throw std::invalid_argument("GeneratorMap: ambient algebra mismatch");
    return substitute(x, alg_, *this);
  }

  /// Images of (this o inner): every image of `inner` pushed through this map.
  GeneratorMap after(const GeneratorMap& inner) const {
    GeneratorMap out(alg_);
    const int s = alg_.size();
    for (int i = 1; i <= s; ++i)
      for (int j = 1; j <= s; ++j)
        if (i != j) out.images_[slot(i, j)] = apply(inner.image(i, j));
    return out;
  }

 private:
  std::size_t slot(int i, int j) const { return std::size_t(i - 1) * std::size_t(alg_.size()) + std::size_t(j - 1); }

  Algebra alg_;
  std::vector<NCPoly> images_;
};

namespace detail {

inline void check_braid_fits(const BraidWord& b, Algebra alg) {
  if (b.strands() > alg.size())
    throw std::invalid_argument("braid on " + std::to_string(b.strands()) + " strands does not act on A_" +
                                std::to_string(alg.size()));
}

}  // namespace detail

inline NCPoly phi_letter(int e, const NCPoly& x) { return GeneratorMap::letter(x.algebra(), e).apply(x); }

/// phi_beta(x). Letters are applied innermost-last: phi_{g1 g2}(x) = phi_{g1}(phi_{g2}(x)).
/// A braid on fewer strands than the algebra acts through the standard inclusion.
inline NCPoly phi(const BraidWord& b, const NCPoly& x) {
  detail::check_braid_fits(b, x.algebra());
  NCPoly y = x;
  const auto& w = b.letters();
  for (auto it = w.rbegin(); it != w.rend(); ++it) y = phi_letter(*it, y);
  return y;
}

/// phi*_beta: phi of the inclusion of beta into B_{n+1}, acting on the starred algebra.
inline NCPoly phi_star(const BraidWord& b, const NCPoly& x) {
  if (!x.algebra().star || x.algebra().n != b.strands())
    throw std::invalid_argument("phi_star expects an element of A_" + std::to_string(b.strands()) + " with *");
  return phi(b, x);
}

/// Generator images of phi_beta, built by folding letters left to right.
inline GeneratorMap phi_map(const BraidWord& b, Algebra alg) {
  detail::check_braid_fits(b, alg);
  GeneratorMap t(alg);
  for (int e : b.letters()) t = t.after(GeneratorMap::letter(alg, e));
  return t;
}

class PhiMatrix {
 public:
  PhiMatrix() = default;
  PhiMatrix(int n, Side side) : n_(n), side_(side), entries_(std::size_t(n * n), NCPoly(Algebra{n, false})) {}

  static PhiMatrix identity(int n, Side side) {
    PhiMatrix m(n, side);
    for (int i = 1; i <= n; ++i) m(i, i) = NCPoly::one(Algebra{n, false});
    return m;
  }

  int n() const { return n_; }
  Side side() const { return side_; }
  Algebra algebra() const { return Algebra{n_, false}; }

  NCPoly& operator()(int i, int j) { return entries_.at(slot(i, j)); }
  const NCPoly& operator()(int i, int j) const { return entries_.at(slot(i, j)); }

  std::size_t term_count() const {
    std::size_t t = 0;
    for (const auto& e : entries_) t += e.size();
    return t;
  }

  friend bool operator==(const PhiMatrix&, const PhiMatrix&) = default;

 private:
  std::size_t slot(int i, int j) const {
    if (i < 1 || j < 1 || i > n_ || j > n_) throw std::out_of_range("PhiMatrix index");
    return std::size_t(i - 1) * std::size_t(n_) + std::size_t(j - 1);
  }

  int n_ = 0;
  Side side_ = Side::L;
  std::vector<NCPoly> entries_;
};

/// Product of matrices over A_n; the side of the result is taken from `x`.
inline PhiMatrix multiply(const PhiMatrix& x, const PhiMatrix& y) {
  if (x.n() != y.n()) throw std::invalid_argument("matrix size mismatch");
  PhiMatrix r(x.n(), x.side());
  for (int i = 1; i <= x.n(); ++i)
    for (int j = 1; j <= x.n(); ++j) {
      NCPoly acc(x.algebra());
      for (int l = 1; l <= x.n(); ++l) {
        if (x(i, l).is_zero() || y(l, j).is_zero()) continue;
        acc += x(i, l) * y(l, j);
      }
      r(i, j) = std::move(acc);
    }
  return r;
}

inline PhiMatrix apply_entrywise(const GeneratorMap& m, const PhiMatrix& x) {
  PhiMatrix r(x.n(), x.side());
  for (int i = 1; i <= x.n(); ++i)
    for (int j = 1; j <= x.n(); ++j) r(i, j) = m.apply(x(i, j));
  return r;
}

/// Transpose of the entrywise conjugate; maps Phi^L to Phi^R.
inline PhiMatrix transpose_conjugate(const PhiMatrix& x) {
  PhiMatrix r(x.n(), x.side() == Side::L ? Side::R : Side::L);
  for (int i = 1; i <= x.n(); ++i)
    for (int j = 1; j <= x.n(); ++j) r(i, j) = conjugate(x(j, i));
  return r;
}

/// Phi^L and Phi^R of a single letter.
inline PhiMatrix phi_letter_matrix(int e, int n, Side side) {
  const Algebra alg{n, false};
  const int k = e < 0 ? -e : e;
  if (k < 1 || k > n - 1) throw std::out_of_range("letter out of range");
  PhiMatrix m = PhiMatrix::identity(n, side);
  const int k1 = k + 1;
  m(k, k) = NCPoly(alg);
  m(k1, k1) = NCPoly(alg);
  // Phi^L rows for s_k: e_k -> -a_{k+1,k} e_k + e_{k+1}, e_{k+1} -> e_k.
  // For s_k^{-1}: e_k -> e_{k+1}, e_{k+1} -> e_k - a_{k,k+1} e_{k+1}.
  if (e > 0) {
    m(k, k) = NCPoly::generator(alg, k1, k, -1);
    m(k, k1) = NCPoly::one(alg);
    m(k1, k) = NCPoly::one(alg);
  } else {
    m(k, k1) = NCPoly::one(alg);
    m(k1, k) = NCPoly::one(alg);
    m(k1, k1) = NCPoly::generator(alg, k, k1, -1);
  }
  return side == Side::L ? m : transpose_conjugate(m);
}

/// Phi^L or Phi^R by letter-wise chain-rule folding from the last letter to the first:
///   Phi^L_{g beta} = phi_g(Phi^L_beta) Phi^L_g,   Phi^R_{g beta} = Phi^R_g phi_g(Phi^R_beta).
/// Each step substitutes one letter into the accumulated matrix and mixes two columns (L) or two
/// rows (R), so no generator images of longer prefixes are ever formed.
inline PhiMatrix phi_matrix(const BraidWord& b, Side side) {
  const int n = b.strands();
  const Algebra alg{n, false};
  PhiMatrix m = PhiMatrix::identity(n, side);
  const auto& w = b.letters();
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const int e = *it;
    const int k = e < 0 ? -e : e;
    const int k1 = k + 1;
    m = apply_entrywise(GeneratorMap::letter(alg, e), m);
    const NCPoly up = NCPoly::generator(alg, k, k1), down = NCPoly::generator(alg, k1, k);
    for (int c = 1; c <= n; ++c) {
      if (side == Side::L) {
        // (M Phi^L_g): columns k, k+1 of row c.
        NCPoly xk = m(c, k), xk1 = m(c, k1);
        if (e > 0) {
          m(c, k) = xk1 - xk * down;
          m(c, k1) = std::move(xk);
        } else {
          m(c, k) = xk1;
          m(c, k1) = xk - xk1 * up;
        }
      } else {
        // (Phi^R_g M): rows k, k+1 of column c.
        NCPoly xk = m(k, c), xk1 = m(k1, c);
        if (e > 0) {
          m(k, c) = xk1 - up * xk;
          m(k1, c) = std::move(xk);
        } else {
          m(k, c) = xk1;
          m(k1, c) = xk - down * xk1;
        }
      }
    }
  }
  return m;
}

inline PhiMatrix phi_L(const BraidWord& b) { return phi_matrix(b, Side::L); }
inline PhiMatrix phi_R(const BraidWord& b) { return phi_matrix(b, Side::R); }

/// Phi^L / Phi^R read off from phi*_beta(a_{i*}) (resp. phi*_beta(a_{*i})) directly.
/// Every monomial must carry exactly one *-generator, in final (L) or initial (R) position.
inline PhiMatrix phi_matrix_direct(const BraidWord& b, Side side) {
  const int n = b.strands();
  const Algebra star{n, true};
  const Algebra plain{n, false};
  const int s = star.star_index();
  PhiMatrix m(n, side);
  for (int i = 1; i <= n; ++i) {
    NCPoly img = side == Side::L ? phi_star(b, NCPoly::generator(star, i, s)) : phi_star(b, NCPoly::generator(star, s, i));
    std::vector<detail::TermAccumulator> cols{std::size_t(n)};
    for (const auto& [mono, c] : img.terms()) {
      if (mono.empty()) throw std::logic_error("phi* image has a constant term");
      const Gen edge = side == Side::L ? mono.back() : mono.front();
      const bool edge_ok = side == Side::L ? (edge.j == s && edge.i != s) : (edge.i == s && edge.j != s);
      if (!edge_ok) throw std::logic_error("phi* image monomial lacks a terminal *-generator");
      Monomial coeff = side == Side::L ? Monomial(mono.begin(), mono.end() - 1) : Monomial(mono.begin() + 1, mono.end());
      for (const Gen& g : coeff)
        if (g.i == s || g.j == s) throw std::logic_error("phi* image monomial has an interior *-generator");
      const int j = side == Side::L ? edge.i : edge.j;
      detail::accumulate(cols[std::size_t(j - 1)], std::move(coeff), c);
    }
    for (int j = 1; j <= n; ++j) {
      NCPoly entry = NCPoly::from_accumulator(plain, std::move(cols[std::size_t(j - 1)]));
      if (side == Side::L)
        m(i, j) = std::move(entry);
      else
        m(j, i) = std::move(entry);
    }
  }
  return m;
}

/// Chain rule: Phi^L_{b1 b2} = phi_{b1}(M2) M1, Phi^R_{b1 b2} = M1 phi_{b1}(M2).
inline PhiMatrix chain_compose(const PhiMatrix& m1, const PhiMatrix& m2, const BraidWord& b1) {
  if (m1.side() != m2.side() || m1.n() != m2.n() || b1.strands() != m1.n())
    throw std::invalid_argument("chain_compose: side or size mismatch");
  PhiMatrix moved(m2.n(), m2.side());
  for (int i = 1; i <= m2.n(); ++i)
    for (int j = 1; j <= m2.n(); ++j) moved(i, j) = phi(b1, m2(i, j));
  PhiMatrix r = m1.side() == Side::L ? multiply(moved, m1) : multiply(m1, moved);
  return r;
}

// ---------------------------------------------------------------------------------------------
// Closed forms. X_{m,l} = {m, ..., m+l-1}; index alg.n + 1 is * when alg.star is set.

namespace detail {

inline bool in_window(int x, int m, int l) { return x >= m && x < m + l; }

inline void check_pair(Algebra alg, int i, int j) {
  if (!(i < j) || i < 1 || j > alg.size()) throw std::out_of_range("closed form expects 1 <= i < j <= size");
}

/// Elements of the subset `mask` of X_{m,l}, ascending.
inline std::vector<int> subset(int m, int l, unsigned mask) {
  std::vector<int> y;
  for (int t = 0; t < l; ++t)
    if (mask & (1u << t)) y.push_back(m + t);
  return y;
}

inline Monomial chain(int head, const std::vector<int>& mid, int tail) {
  Monomial out;
  int prev = head;
  for (int y : mid) {
    out.push_back(Gen{std::uint8_t(prev), std::uint8_t(y)});
    prev = y;
  }
  out.push_back(Gen{std::uint8_t(prev), std::uint8_t(tail)});
  return out;
}

}  // namespace detail

/// A(i,j,X_{m,l}) = sum_Y (-1)^|Y| a_{i y1} a_{y1 y2} ... a_{yk j}, Y ascending.
inline NCPoly sum_A(Algebra alg, int i, int j, int m, int l) {
  if (detail::in_window(i, m, l) || detail::in_window(j, m, l)) throw std::out_of_range("sum_A: i or j inside X");
  NCPoly out(alg);
  for (unsigned mask = 0; mask < (1u << l); ++mask) {
    auto y = detail::subset(m, l, mask);
    out += NCPoly::monomial(alg, detail::chain(i, y, j), (y.size() % 2) ? -1 : 1);
  }
  return out;
}

/// A'(i,j,X_{m,l}): as sum_A with Y traversed in descending order.
inline NCPoly sum_A_prime(Algebra alg, int i, int j, int m, int l) {
  if (detail::in_window(i, m, l) || detail::in_window(j, m, l)) throw std::out_of_range("sum_A_prime: i or j inside X");
  NCPoly out(alg);
  for (unsigned mask = 0; mask < (1u << l); ++mask) {
    auto y = detail::subset(m, l, mask);
    std::vector<int> desc(y.rbegin(), y.rend());
    out += NCPoly::monomial(alg, detail::chain(i, desc, j), (y.size() % 2) ? -1 : 1);
  }
  return out;
}

/// B'(i,j,X_{m,l}) for j in X, i outside: descending chains over Y with min(Y) != j, weighted by
/// c_Y = (-1)^{|Y|+1} when Y has no element <= j and (-1)^{|Y|} otherwise.
inline NCPoly sum_B_prime(Algebra alg, int i, int j, int m, int l) {
  if (detail::in_window(i, m, l) || !detail::in_window(j, m, l)) throw std::out_of_range("sum_B_prime: need j in X, i outside");
  NCPoly out(alg);
  for (unsigned mask = 0; mask < (1u << l); ++mask) {
    auto y = detail::subset(m, l, mask);
    if (!y.empty() && y.front() == j) continue;
    const bool below = !y.empty() && y.front() < j;
    const int sign = ((y.size() + (below ? 0 : 1)) % 2) ? -1 : 1;
    std::vector<int> desc(y.rbegin(), y.rend());
    out += NCPoly::monomial(alg, detail::chain(i, desc, j), sign);
  }
  return out;
}

/// phi_{tau_{m,p}}(a_ij) for i < j.
inline NCPoly tau_closed_form(Algebra alg, int m, int p, int i, int j) {
  detail::check_pair(alg, i, j);
  if (m < 1 || p < 1 || m + p > alg.size()) throw std::out_of_range("tau_closed_form: window out of range");
  auto a = [&](int x, int y) { return NCPoly::generator(alg, x, y); };
  if (m <= i && j < m + p) return a(i + 1, j + 1);
  if (m <= i && i < j && j == m + p) return -a(i + 1, m);
  if (i == m + p) return a(m, j);
  if (i < m && j == m + p) return a(i, m);
  if (i < m && m <= j && j < m + p) return a(i, j + 1) - a(i, m) * a(m, j + 1);
  if (m <= i && i < m + p && j > m + p) return a(i + 1, j) - a(i + 1, m) * a(m, j);
  return a(i, j);
}

/// phi_{kappa_{m,l}}(a_ij) for i < j and l <= p.
inline NCPoly kappa_closed_form(Algebra alg, int m, int l, int p, int i, int j) {
  detail::check_pair(alg, i, j);
  if (l < 1 || l > p || m < 1 || m + p + l - 1 > alg.size()) throw std::out_of_range("kappa_closed_form: window out of range");
  using detail::in_window;
  auto a = [&](int x, int y) { return NCPoly::generator(alg, x, y); };
  if (in_window(i, m, p) && in_window(j, m, p)) return a(i + l, j + l);
  if (in_window(i, m + p, l) && in_window(j, m + p, l)) return a(i - p, j - p);
  if (in_window(i, m, p) && in_window(j, m + p, l)) return sum_B_prime(alg, i + l, j - p, m, l);
  if (j >= m + l + p && in_window(i, m + p, l)) return a(i - p, j);
  if (i < m && in_window(j, m + p, l)) return a(i, j - p);
  if (i < m && in_window(j, m, p)) return sum_A(alg, i, j + l, m, l);
  if (j >= m + p + l && in_window(i, m, p)) return sum_A_prime(alg, i + l, j, m, l);
  return a(i, j);
}

/// phi_{<s_b>_p}(a_ij) in A_{kp} (optionally starred) for i < j: the eight-case cabled table.
inline NCPoly sigma_cabled_closed_form(Algebra alg, int b, int p, int i, int j) {
  detail::check_pair(alg, i, j);
  if (p < 1 || alg.n % p != 0) throw std::out_of_range("sigma_cabled_closed_form: algebra size is not a multiple of p");
  const int k = alg.n / p;
  if (b < 1 || b > k - 1) throw std::out_of_range("sigma_cabled_closed_form: block index out of range");
  using detail::in_window;
  const int xb = (b - 1) * p + 1;  // X_b^{(p)} = X_{xb, p}
  const int xb1 = b * p + 1;       // X_{b+1}^{(p)}
  auto a = [&](int x, int y) { return NCPoly::generator(alg, x, y); };
  if (in_window(i, xb, p) && in_window(j, xb, p)) return a(i + p, j + p);
  if (in_window(i, xb1, p) && in_window(j, xb1, p)) return a(i - p, j - p);
  if (in_window(i, xb, p) && in_window(j, xb1, p)) return sum_B_prime(alg, i + p, j - p, xb, p);
  if (j > (b + 1) * p && in_window(i, xb1, p)) return a(i - p, j);
  if (i <= (b - 1) * p && in_window(j, xb1, p)) return a(i, j - p);
  if (i <= (b - 1) * p && in_window(j, xb, p)) return sum_A(alg, i, j + p, xb, p);
  if (j > (b + 1) * p && in_window(i, xb, p)) return sum_A_prime(alg, i + p, j, xb, p);
  return a(i, j);
}

}  // namespace kch
