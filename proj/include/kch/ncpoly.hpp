#pragma once

// Exact arithmetic in the free unital Z-algebra on generators a_ij (i != j).

#include <algorithm>
#include <cctype>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace kch {

using Integer = boost::multiprecision::cpp_int;

/// Raised when a symbolic result would exceed the monomial budget.
class TermBudgetExceeded : public std::runtime_error {
 public:
  explicit TermBudgetExceeded(std::size_t terms)
      : std::runtime_error("symbolic term budget exceeded (" + std::to_string(terms) +
                           " monomials); use the numeric path or raise KCH_TERM_BUDGET"),
        terms_(terms) {}
  std::size_t terms() const { return terms_; }

 private:
  std::size_t terms_;
};

/// Process-wide monomial budget for symbolic results (default 10^6).
inline std::size_t& term_budget() {
  static std::size_t budget = 1'000'000;
  return budget;
}

/// Ambient algebra A_n, optionally with the distinguished extra index n+1 (written *).
struct Algebra {
  int n = 0;
  bool star = false;

  int size() const { return n + (star ? 1 : 0); }
  int star_index() const { return n + 1; }
  bool is_star(int idx) const { return star && idx == n + 1; }
  bool contains(int idx) const { return idx >= 1 && idx <= size(); }

  friend bool operator==(const Algebra&, const Algebra&) = default;
};

/// A generator a_ij, 1-based.
struct Gen {
  std::uint8_t i = 0;
  std::uint8_t j = 0;

  friend auto operator<=>(const Gen&, const Gen&) = default;
};

using Monomial = std::vector<Gen>;

/// Degree first, then lexicographic on factor indices.
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (const Gen& g : m) {
      h ^= (std::uint64_t(g.i) << 8) | g.j;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h ^ m.size());
  }
};

class NCPoly;

namespace detail {

using TermAccumulator = std::unordered_map<Monomial, Integer, MonomialHash>;

inline void check_budget(std::size_t terms) {
  if (terms > term_budget()) throw TermBudgetExceeded(terms);
}

inline void accumulate(TermAccumulator& acc, Monomial m, const Integer& c) {
  auto [it, inserted] = acc.try_emplace(std::move(m), c);
  if (!inserted) it->second += c;
  if (inserted) check_budget(acc.size());
}

}  // namespace detail

class NCPoly {
 public:
  using Term = std::pair<Monomial, Integer>;

  NCPoly() = default;
  explicit NCPoly(Algebra alg) : alg_(alg) {}

  static NCPoly constant(Algebra alg, const Integer& c) {
    NCPoly p(alg);
    if (c != 0) p.terms_.emplace_back(Monomial{}, c);
    return p;
  }

  static NCPoly one(Algebra alg) { return constant(alg, 1); }

  static NCPoly generator(Algebra alg, int i, int j, const Integer& c = 1) {
    check_gen(alg, i, j);
    NCPoly p(alg);
    if (c != 0) p.terms_.emplace_back(Monomial{Gen{std::uint8_t(i), std::uint8_t(j)}}, c);
    return p;
  }

  static NCPoly monomial(Algebra alg, Monomial m, const Integer& c = 1) {
    for (const Gen& g : m) check_gen(alg, g.i, g.j);
    NCPoly p(alg);
    if (c != 0) p.terms_.emplace_back(std::move(m), c);
    return p;
  }

  static NCPoly from_accumulator(Algebra alg, detail::TermAccumulator&& acc) {
    NCPoly p(alg);
    p.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) p.terms_.emplace_back(m, std::move(c));
    std::sort(p.terms_.begin(), p.terms_.end(),
              [](const Term& a, const Term& b) { return MonomialLess{}(a.first, b.first); });
    return p;
  }

  const Algebra& algebra() const { return alg_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Integer coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& key) { return MonomialLess{}(t.first, key); });
    if (it != terms_.end() && it->first == m) return it->second;
    return 0;
  }

  Integer constant_term() const { return coefficient(Monomial{}); }

  std::size_t degree() const { return terms_.empty() ? 0 : terms_.back().first.size(); }

  NCPoly operator-() const {
    NCPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  friend NCPoly operator+(const NCPoly& x, const NCPoly& y) {
    check_same(x, y);
    NCPoly r(x.alg_);
    r.terms_.reserve(x.terms_.size() + y.terms_.size());
    auto a = x.terms_.begin();
    auto b = y.terms_.begin();
    MonomialLess less;
    while (a != x.terms_.end() || b != y.terms_.end()) {
      if (b == y.terms_.end() || (a != x.terms_.end() && less(a->first, b->first))) {
        r.terms_.push_back(*a++);
      } else if (a == x.terms_.end() || less(b->first, a->first)) {
        r.terms_.push_back(*b++);
      } else {
        Integer c = a->second + b->second;
        if (c != 0) r.terms_.emplace_back(a->first, std::move(c));
        ++a;
        ++b;
      }
    }
    detail::check_budget(r.terms_.size());
    return r;
  }

  friend NCPoly operator-(const NCPoly& x, const NCPoly& y) { return x + (-y); }

  friend NCPoly operator*(const NCPoly& x, const NCPoly& y) {
    check_same(x, y);
    if (x.is_zero() || y.is_zero()) return NCPoly(x.alg_);
    detail::TermAccumulator acc;
    acc.reserve(x.size() * y.size());
    for (const auto& [mx, cx] : x.terms_) {
      for (const auto& [my, cy] : y.terms_) {
        Monomial m;
        m.reserve(mx.size() + my.size());
        m.insert(m.end(), mx.begin(), mx.end());
        m.insert(m.end(), my.begin(), my.end());
        detail::accumulate(acc, std::move(m), cx * cy);
      }
    }
    return from_accumulator(x.alg_, std::move(acc));
  }

  friend NCPoly operator*(const Integer& c, const NCPoly& x) {
    if (c == 0) return NCPoly(x.alg_);
    NCPoly r = x;
    for (auto& t : r.terms_) t.second *= c;
    return r;
  }

  NCPoly& operator+=(const NCPoly& y) { return *this = *this + y; }
  NCPoly& operator-=(const NCPoly& y) { return *this = *this - y; }
  NCPoly& operator*=(const NCPoly& y) { return *this = *this * y; }

  friend bool operator==(const NCPoly& x, const NCPoly& y) { return x.alg_ == y.alg_ && x.terms_ == y.terms_; }

  /// Same polynomial viewed in a larger ambient algebra (indices are kept).
  NCPoly embed(Algebra target) const {
    NCPoly r = *this;
    r.alg_ = target;
    for (const auto& t : r.terms_)
      for (const Gen& g : t.first) check_gen(target, g.i, g.j);
    return r;
  }

  static void check_gen(Algebra alg, int i, int j) {
    if (!alg.contains(i) || !alg.contains(j) || i == j)
      throw std::invalid_argument("generator a(" + std::to_string(i) + "," + std::to_string(j) +
                                  ") is not in A_" + std::to_string(alg.n) + (alg.star ? "*" : ""));
  }

 private:
  static void check_same(const NCPoly& x, const NCPoly& y) {
    if (!(x.alg_ == y.alg_)) throw std::invalid_argument("ambient algebra mismatch");
  }

  Algebra alg_;
  std::vector<Term> terms_;
};

/// Ring homomorphism determined by generator images: each monomial is replaced by the product of
/// the images of its factors. `image` maps a Gen to the NCPoly it is sent to.
template <class ImageFn>
NCPoly substitute(const NCPoly& x, Algebra target, ImageFn&& image) {
  detail::TermAccumulator acc;
  for (const auto& [m, c] : x.terms()) {
    // Expand the product factor by factor, merging like terms after each factor.
    detail::TermAccumulator partial;
    partial.emplace(Monomial{}, c);
    for (const Gen& g : m) {
      const NCPoly& img = image(g);
      detail::TermAccumulator next;
      for (const auto& [pm, pc] : partial) {
        for (const auto& [im, ic] : img.terms()) {
          Monomial nm;
          nm.reserve(pm.size() + im.size());
          nm.insert(nm.end(), pm.begin(), pm.end());
          nm.insert(nm.end(), im.begin(), im.end());
          detail::accumulate(next, std::move(nm), pc * ic);
        }
      }
      std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
      partial = std::move(next);
      if (partial.empty()) break;
    }
    for (auto& [pm, pc] : partial) detail::accumulate(acc, Monomial(pm), pc);
  }
  return NCPoly::from_accumulator(target, std::move(acc));
}

/// a_ij -> a_ji on generators, reversing products.
inline NCPoly conjugate(const NCPoly& x) {
  detail::TermAccumulator acc;
  for (const auto& [m, c] : x.terms()) {
    Monomial r(m.rbegin(), m.rend());
    for (Gen& g : r) std::swap(g.i, g.j);
    detail::accumulate(acc, std::move(r), c);
  }
  return NCPoly::from_accumulator(x.algebra(), std::move(acc));
}

/// Complex values for every generator of A_n, together with lambda and mu.
class Assignment {
 public:
  using Complex = std::complex<double>;

  Assignment() = default;
  explicit Assignment(int n) : n_(n), values_(std::size_t(n) * std::size_t(n), Complex{}) {
    if (n < 0) throw std::invalid_argument("Assignment: negative size");
  }

  int n() const { return n_; }

  Complex get(int i, int j) const {
    check(i, j);
    return values_[index(i, j)];
  }
  void set(int i, int j, Complex v) {
    check(i, j);
    values_[index(i, j)] = v;
  }

  Complex lambda() const { return lambda_; }
  Complex mu() const { return mu_; }
  void set_lambda(Complex v) {
    if (v == Complex{}) throw std::invalid_argument("lambda must be nonzero");
    lambda_ = v;
  }
  void set_mu(Complex v) {
    if (v == Complex{}) throw std::invalid_argument("mu must be nonzero");
    mu_ = v;
  }

  /// Exchanges the values of a_ij and a_ji.
  Assignment swapped() const {
    Assignment s = *this;
    for (int i = 1; i <= n_; ++i)
      for (int j = 1; j <= n_; ++j)
        if (i != j) s.values_[index(i, j)] = values_[index(j, i)];
    return s;
  }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::size_t index(int i, int j) const { return std::size_t(i - 1) * std::size_t(n_) + std::size_t(j - 1); }
  void check(int i, int j) const {
    if (i < 1 || j < 1 || i > n_ || j > n_ || i == j)
      throw std::out_of_range("assignment has no generator a(" + std::to_string(i) + "," + std::to_string(j) + ")");
  }

  int n_ = 0;
  std::vector<Complex> values_;
  Complex lambda_{1.0, 0.0};
  Complex mu_{-1.0, 0.0};
};

inline std::complex<double> evaluate(const NCPoly& x, const Assignment& eps) {
  std::complex<double> total{};
  for (const auto& [m, c] : x.terms()) {
    std::complex<double> v(static_cast<double>(c), 0.0);
    for (const Gen& g : m) {
      if (x.algebra().is_star(g.i) || x.algebra().is_star(g.j))
        throw std::out_of_range("cannot evaluate a *-indexed generator");
      v *= eps.get(g.i, g.j);
    }
    total += v;
  }
  return total;
}

// ---------------------------------------------------------------------------------------------
// Text rendering: "-a21 + a12*a21*a12". Indices >= 10 use "a(10,11)"; the extra index renders '*'.

inline std::string index_label(Algebra alg, int idx) {
  return alg.is_star(idx) ? std::string("*") : std::to_string(idx);
}

inline std::string to_string(Algebra alg, Gen g) {
  const bool wide = alg.size() >= 10;
  if (wide) return "a(" + index_label(alg, g.i) + "," + index_label(alg, g.j) + ")";
  return "a" + index_label(alg, g.i) + index_label(alg, g.j);
}

inline std::string to_string(const NCPoly& x) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : x.terms()) {
    const bool negative = c < 0;
    Integer mag = negative ? Integer(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (m.empty()) {
      out += mag.str();
      continue;
    }
    if (mag != 1) out += mag.str() + "*";
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k) out += "*";
      out += to_string(x.algebra(), m[k]);
    }
  }
  return out;
}

namespace detail {

class PolyParser {
 public:
  PolyParser(Algebra alg, std::string_view s) : alg_(alg), s_(s) {}

  NCPoly parse() {
    detail::TermAccumulator acc;
    skip();
    if (pos_ < s_.size() && s_[pos_] == '0' && rest_is_blank(pos_ + 1)) return NCPoly(alg_);
    bool first = true;
    while (true) {
      skip();
      if (pos_ >= s_.size()) break;
      int sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [m, c] = term();
      detail::accumulate(acc, std::move(m), sign * c);
    }
    if (first) fail("empty polynomial");
    return NCPoly::from_accumulator(alg_, std::move(acc));
  }

 private:
  NCPoly::Term term() {
    Integer coeff = 1;
    Monomial m;
    bool have_factor = false;
    while (true) {
      skip();
      if (pos_ >= s_.size()) fail("unexpected end of input");
      if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        coeff *= integer();
      } else if (s_[pos_] == 'a') {
        m.push_back(generator());
      } else {
        fail("expected coefficient or generator");
      }
      have_factor = true;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    if (!have_factor) fail("empty term");
    return {std::move(m), coeff};
  }

  Integer integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  int index_token() {
    if (pos_ < s_.size() && s_[pos_] == '*') {
      ++pos_;
      if (!alg_.star) fail("'*' index outside a starred algebra");
      return alg_.star_index();
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected index");
    return std::stoi(std::string(s_.substr(start, pos_ - start)));
  }

  int short_index() {
    if (pos_ >= s_.size()) fail("expected index");
    char ch = s_[pos_++];
    if (ch == '*') {
      if (!alg_.star) fail("'*' index outside a starred algebra");
      return alg_.star_index();
    }
    if (!std::isdigit(static_cast<unsigned char>(ch))) fail("expected index digit");
    return ch - '0';
  }

  Gen generator() {
    ++pos_;  // 'a'
    int i = 0, j = 0;
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      i = index_token();
      if (pos_ >= s_.size() || s_[pos_] != ',') fail("expected ','");
      ++pos_;
      j = index_token();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
      ++pos_;
    } else {
      i = short_index();
      j = short_index();
    }
    NCPoly::check_gen(alg_, i, j);
    return Gen{std::uint8_t(i), std::uint8_t(j)};
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool rest_is_blank(std::size_t from) const {
    for (std::size_t k = from; k < s_.size(); ++k)
      if (!std::isspace(static_cast<unsigned char>(s_[k]))) return false;
    return true;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  Algebra alg_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline NCPoly parse_ncpoly(Algebra alg, std::string_view text) { return detail::PolyParser(alg, text).parse(); }

}  // namespace kch
