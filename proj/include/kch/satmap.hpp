#pragma once

// The satellite map psi: A_{kp} -> A_k (x) A_p, its module extension psi*, and exact verifiers
// for the cabling identities it intertwines.

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "kch/braid.hpp"
#include "kch/ncpoly.hpp"
#include "kch/phi.hpp"

namespace kch {

/// i = (block - 1) p + offset with 1 <= offset <= p.
struct IndexSplit {
  int block = 1;
  int offset = 1;
};

inline IndexSplit split_index(int i, int p) { return IndexSplit{(i - 1) / p + 1, (i - 1) % p + 1}; }

/// Element of A_k (x) A_p with integer coefficients. Multiplication is factorwise.
class TensorPoly {
 public:
  using Key = std::pair<Monomial, Monomial>;
  using Term = std::pair<Key, Integer>;

  struct KeyLess {
    bool operator()(const Key& a, const Key& b) const {
      MonomialLess less;
      if (less(a.first, b.first)) return true;
      if (less(b.first, a.first)) return false;
      return less(a.second, b.second);
    }
  };

  TensorPoly() = default;
  TensorPoly(Algebra left, Algebra right) : left_(left), right_(right) {}

  static TensorPoly simple(Algebra left, Algebra right, Monomial l, Monomial r, const Integer& c = 1) {
    TensorPoly t(left, right);
    if (c != 0) t.terms_.push_back({{std::move(l), std::move(r)}, c});
    return t;
  }

  static TensorPoly one(Algebra left, Algebra right) { return simple(left, right, {}, {}); }

  /// x (x) 1
  static TensorPoly from_left(const NCPoly& x, Algebra right) {
    TensorPoly t(x.algebra(), right);
    for (const auto& [m, c] : x.terms()) t.terms_.push_back({{m, Monomial{}}, c});
    return t;
  }

  /// 1 (x) y
  static TensorPoly from_right(Algebra left, const NCPoly& y) {
    TensorPoly t(left, y.algebra());
    for (const auto& [m, c] : y.terms()) t.terms_.push_back({{Monomial{}, m}, c});
    std::sort(t.terms_.begin(), t.terms_.end(), [](const Term& a, const Term& b) { return KeyLess{}(a.first, b.first); });
    return t;
  }

  const Algebra& left() const { return left_; }
  const Algebra& right() const { return right_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  friend TensorPoly operator+(const TensorPoly& x, const TensorPoly& y) {
    check_same(x, y);
    std::map<Key, Integer, KeyLess> acc;
    for (const auto& [k, c] : x.terms_) acc[k] += c;
    for (const auto& [k, c] : y.terms_) acc[k] += c;
    return from_map(x.left_, x.right_, std::move(acc));
  }

  TensorPoly operator-() const {
    TensorPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  friend TensorPoly operator-(const TensorPoly& x, const TensorPoly& y) { return x + (-y); }

  friend TensorPoly operator*(const TensorPoly& x, const TensorPoly& y) {
    check_same(x, y);
    std::map<Key, Integer, KeyLess> acc;
    for (const auto& [kx, cx] : x.terms_)
      for (const auto& [ky, cy] : y.terms_) {
        Monomial l = kx.first, r = kx.second;
        l.insert(l.end(), ky.first.begin(), ky.first.end());
        r.insert(r.end(), ky.second.begin(), ky.second.end());
        acc[{std::move(l), std::move(r)}] += cx * cy;
      }
    return from_map(x.left_, x.right_, std::move(acc));
  }

  TensorPoly& operator+=(const TensorPoly& y) { return *this = *this + y; }

  friend bool operator==(const TensorPoly&, const TensorPoly&) = default;

 private:
  static void check_same(const TensorPoly& x, const TensorPoly& y) {
    if (!(x.left_ == y.left_) || !(x.right_ == y.right_)) throw std::invalid_argument("tensor ambient mismatch");
  }

  static TensorPoly from_map(Algebra l, Algebra r, std::map<Key, Integer, KeyLess>&& acc) {
    TensorPoly t(l, r);
    for (auto& [k, c] : acc)
      if (c != 0) t.terms_.push_back({k, std::move(c)});
    detail::check_budget(t.terms_.size());
    return t;
  }

  Algebra left_;
  Algebra right_;
  std::vector<Term> terms_;
};

/// Conjugation applied to each tensor factor.
inline TensorPoly conjugate(const TensorPoly& x) {
  TensorPoly out(x.left(), x.right());
  for (const auto& [k, c] : x.terms()) {
    Monomial l(k.first.rbegin(), k.first.rend()), r(k.second.rbegin(), k.second.rend());
    for (Gen& g : l) std::swap(g.i, g.j);
    for (Gen& g : r) std::swap(g.i, g.j);
    out += TensorPoly::simple(x.left(), x.right(), std::move(l), std::move(r), c);
  }
  return out;
}

/// Applies `f` (an NCPoly -> NCPoly map on the left factor) termwise, leaving the right factor.
template <class F>
TensorPoly map_left(const TensorPoly& x, F&& f) {
  TensorPoly out(x.left(), x.right());
  for (const auto& [k, c] : x.terms()) {
    NCPoly img = f(NCPoly::monomial(x.left(), k.first, c));
    for (const auto& [m, d] : img.terms()) out += TensorPoly::simple(x.left(), x.right(), m, k.second, d);
  }
  return out;
}

inline std::string to_string(const TensorPoly& x) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : x.terms()) {
    const bool negative = c < 0;
    Integer mag = negative ? Integer(-c) : c;
    out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
    first = false;
    if (mag != 1) out += mag.str() + "*";
    out += "[" + to_string(NCPoly::monomial(x.left(), k.first)) + " (x) " +
           to_string(NCPoly::monomial(x.right(), k.second)) + "]";
  }
  return out;
}

namespace detail {

/// psi on one generator of A_{kp} (starred when alg.star); the vanishing case is the zero
/// tensor.
inline TensorPoly psi_generator(Algebra alg, Gen g, int k, int p) {
  const Algebra left{k, alg.star};
  const Algebra right{p, alg.star};
  auto gen = [](int a, int b) { return Gen{std::uint8_t(a), std::uint8_t(b)}; };
  const bool si = alg.is_star(g.i), sj = alg.is_star(g.j);
  if (si || sj) {
    // Module basis: a_{i*} -> a_{q_i *} (x) a_{r_i *}, and a_{*i} -> a_{* q_i} (x) a_{* r_i}.
    const IndexSplit s = split_index(si ? g.j : g.i, p);
    const int ls = left.star_index(), rs = right.star_index();
    return si ? TensorPoly::simple(left, right, {gen(ls, s.block)}, {gen(rs, s.offset)})
              : TensorPoly::simple(left, right, {gen(s.block, ls)}, {gen(s.offset, rs)});
  }
  const IndexSplit a = split_index(g.i, p), b = split_index(g.j, p);
  if (a.block == b.block) return TensorPoly::simple(left, right, {}, {gen(a.offset, b.offset)});
  if (a.offset == b.offset) return TensorPoly::simple(left, right, {gen(a.block, b.block)}, {});
  if ((a.block - b.block) * (a.offset - b.offset) < 0) return TensorPoly(left, right);
  return TensorPoly::simple(left, right, {gen(a.block, b.block)}, {gen(a.offset, b.offset)});
}

}  // namespace detail

/// psi extended multiplicatively and linearly. On a starred algebra, *-generators follow the
/// module-basis rule, so this also realizes psi* on module elements.
inline TensorPoly psi(const NCPoly& x, int k, int p) {
  if (k < 1 || p < 1 || x.algebra().n != k * p)
    throw std::invalid_argument("psi: ambient algebra is not A_{kp} for k=" + std::to_string(k) + ", p=" + std::to_string(p));
  const Algebra left{k, x.algebra().star};
  const Algebra right{p, x.algebra().star};
  TensorPoly out(left, right);
  for (const auto& [m, c] : x.terms()) {
    TensorPoly term = TensorPoly::simple(left, right, {}, {}, c);
    for (const Gen& g : m) {
      term = term * detail::psi_generator(x.algebra(), g, k, p);
      if (term.is_zero()) break;
    }
    out += term;
  }
  return out;
}

/// psi* on the left module with basis a_{i*}: every monomial must end in its only *-generator.
inline TensorPoly psi_star(const NCPoly& x, int k, int p) {
  if (!x.algebra().star) throw std::invalid_argument("psi_star expects a starred algebra");
  const Algebra alg = x.algebra();
  for (const auto& [m, c] : x.terms()) {
    if (m.empty() || !alg.is_star(m.back().j) || alg.is_star(m.back().i))
      throw std::invalid_argument("psi_star: monomial is not of the form M * a_{i*}");
    for (std::size_t t = 0; t + 1 < m.size(); ++t)
      if (alg.is_star(m[t].i) || alg.is_star(m[t].j)) throw std::invalid_argument("psi_star: interior *-generator");
  }
  return psi(x, k, p);
}

// ---------------------------------------------------------------------------------------------
// Reports

struct EntryDiff {
  int i = 0;
  int j = 0;
  std::string lhs;
  std::string rhs;
  std::string note;
};

/// Outcome of an exact identity check, localized to the offending entries.
struct Report {
  std::string claim;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  bool ok = true;
  std::vector<EntryDiff> diffs;
  std::size_t checked = 0;

  void expect(bool holds, int i, int j, std::string lhs, std::string rhs, std::string note = {}) {
    ++checked;
    if (holds) return;
    ok = false;
    diffs.push_back(EntryDiff{i, j, std::move(lhs), std::move(rhs), std::move(note)});
  }

  void merge(const Report& other) {
    ok = ok && other.ok;
    checked += other.checked;
    diffs.insert(diffs.end(), other.diffs.begin(), other.diffs.end());
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["claim"] = claim;
    j["parameters"] = parameters;
    j["status"] = ok ? "pass" : "fail";
    j["checked"] = checked;
    nlohmann::ordered_json d = nlohmann::ordered_json::array();
    for (const auto& e : diffs) {
      nlohmann::ordered_json row{{"i", e.i}, {"j", e.j}, {"lhs", e.lhs}, {"rhs", e.rhs}};
      if (!e.note.empty()) row["note"] = e.note;
      d.push_back(std::move(row));
    }
    j["diffs"] = std::move(d);
    return j;
  }
};

/// psi(Phi_{<alpha>_p}) == Phi_alpha (x) I_p on both sides.
inline Report verify_psiofbp(const BraidWord& alpha, int p) {
  const int k = alpha.strands();
  Report rep;
  rep.claim = "psi(Phi_<alpha>_p) = Phi_alpha (x) I_p";
  rep.parameters = {{"k", k}, {"p", p}, {"alpha", to_string(alpha)}};
  const BraidWord cab = cable(alpha, p);
  const Algebra right{p, false};
  for (Side side : {Side::L, Side::R}) {
    const PhiMatrix big = phi_matrix(cab, side);
    const PhiMatrix small = phi_matrix(alpha, side);
    for (int i = 1; i <= k * p; ++i)
      for (int j = 1; j <= k * p; ++j) {
        const IndexSplit si = split_index(i, p), sj = split_index(j, p);
        const TensorPoly lhs = psi(big(i, j), k, p);
        const TensorPoly rhs = si.offset == sj.offset ? TensorPoly::from_left(small(si.block, sj.block), right)
                                                      : TensorPoly(Algebra{k, false}, right);
        rep.expect(lhs == rhs, i, j, to_string(lhs), to_string(rhs), to_string(side));
      }
  }
  return rep;
}

/// psi* o phi*_{<s_b>_p} == (phi*_{s_b} (x) id) o psi* on every basis element a_{i*}, and the
/// corresponding identity psi o phi_{<s_b>_p} == (phi_{s_b} (x) id) o psi on every generator.
inline Report verify_commutes(int b, int k, int p) {
  Report rep;
  rep.claim = "psi* o phi*_<s_b>_p = (phi*_s_b (x) id) o psi*";
  rep.parameters = {{"b", b}, {"k", k}, {"p", p}};
  const Algebra big{k * p, true};
  const Algebra small{k, true};
  const BraidWord cab = cable(BraidWord(k, {b}), p);
  const GeneratorMap small_letter = GeneratorMap::letter(small, b);
  auto rhs_of = [&](const TensorPoly& t) { return map_left(t, [&](const NCPoly& x) { return small_letter.apply(x); }); };
  const int s = big.star_index();
  for (int i = 1; i <= k * p; ++i) {
    const NCPoly basis = NCPoly::generator(big, i, s);
    const TensorPoly lhs = psi_star(phi(cab, basis), k, p);
    const TensorPoly rhs = rhs_of(psi_star(basis, k, p));
    rep.expect(lhs == rhs, i, 0, to_string(lhs), to_string(rhs), "basis a_{i*}");
  }
  for (int i = 1; i <= k * p; ++i)
    for (int j = 1; j <= k * p; ++j) {
      if (i == j) continue;
      const NCPoly g = NCPoly::generator(big, i, j);
      const TensorPoly lhs = psi(phi(cab, g), k, p);
      const TensorPoly rhs = rhs_of(psi(g, k, p));
      rep.expect(lhs == rhs, i, j, to_string(lhs), to_string(rhs), "generator");
    }
  return rep;
}

/// The three simplifications of psi applied to the A, A', B' sums of the cabled table.
inline Report verify_simplified_images(int b, int k, int p) {
  Report rep;
  rep.claim = "psi simplifies the A, A', B' sums";
  rep.parameters = {{"b", b}, {"k", k}, {"p", p}};
  const Algebra alg{k * p, true};
  auto a = [&](int x, int y) { return NCPoly::generator(alg, x, y); };
  const int xb = (b - 1) * p + 1;
  auto in_b = [&](int x) { return x >= xb && x < xb + p; };
  auto in_b1 = [&](int x) { return x >= xb + p && x < xb + 2 * p; };
  for (int i = 1; i <= alg.size(); ++i)
    for (int j = i + 1; j <= alg.size(); ++j) {
      const int alpha_i = (b - 1) * p + split_index(i, p).offset;
      if (i <= (b - 1) * p && in_b(j)) {
        auto lhs = psi(sum_A(alg, i, j + p, xb, p), k, p);
        auto rhs = psi(a(i, j + p) - a(i, alpha_i) * a(alpha_i, j + p), k, p);
        rep.expect(lhs == rhs, i, j, to_string(lhs), to_string(rhs), "A");
      } else if (in_b(i) && j > (b + 1) * p) {
        auto lhs = psi(sum_A_prime(alg, i + p, j, xb, p), k, p);
        auto rhs = psi(a(i + p, j) - a(i + p, i) * a(i, j), k, p);
        rep.expect(lhs == rhs, i, j, to_string(lhs), to_string(rhs), "A'");
      } else if (in_b(i) && in_b1(j)) {
        const int d = i == j - p ? 0 : (i > j - p ? 1 : -1);
        auto lhs = psi(sum_B_prime(alg, i + p, j - p, xb, p), k, p);
        NCPoly rhs_poly = -a(i + p, j - p);
        if (d != 0) rhs_poly += Integer(d) * (a(i + p, i) * a(i, j - p));
        auto rhs = psi(rhs_poly, k, p);
        rep.expect(lhs == rhs, i, j, to_string(lhs), to_string(rhs), "B'");
      }
    }
  return rep;
}

/// For 1 <= i != j <= p the cable moves the first block rigidly: phi_{<alpha>_p}(a_ij) is a single
/// generator a_{i+mp, j+mp} with one shift m, and psi of it is 1 (x) a_ij.
inline Report verify_block_transport(const BraidWord& alpha, int p) {
  Report rep;
  const int k = alpha.strands();
  rep.claim = "phi_<alpha>_p moves the first block rigidly";
  rep.parameters = {{"alpha", to_string(alpha)}, {"k", k}, {"p", p}};
  const Algebra alg{k * p, false};
  const BraidWord cab = cable(alpha, p);
  const int shift = perm(alpha)(1) - 1;
  for (int i = 1; i <= p; ++i)
    for (int j = 1; j <= p; ++j) {
      if (i == j) continue;
      const NCPoly img = phi(cab, NCPoly::generator(alg, i, j));
      const NCPoly want = NCPoly::generator(alg, i + shift * p, j + shift * p);
      rep.expect(img == want, i, j, to_string(img), to_string(want), "image");
      const TensorPoly t = psi(img, k, p);
      const TensorPoly tw = TensorPoly::from_right(Algebra{k, false}, NCPoly::generator(Algebra{p, false}, i, j));
      rep.expect(t == tw, i, j, to_string(t), to_string(tw), "psi of image");
    }
  return rep;
}

}  // namespace kch
