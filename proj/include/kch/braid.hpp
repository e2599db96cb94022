#pragma once

// Braid words on n strands, their permutations, and the cabling / satellite constructors.
//
// Conventions: a word g_1 g_2 ... g_L acts as the composite of its letters with the first letter
// outermost, so perm(g_1...g_L) = s_{g_1} o ... o s_{g_L}. This is the convention under which
// phi is a homomorphism and the head index of every monomial in row i of Phi^L is perm(beta)(i).

#include <algorithm>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kch {

class BraidWord {
 public:
  BraidWord() = default;

  BraidWord(int n, std::vector<int> letters) : n_(n), letters_(std::move(letters)) {
    if (n_ < 1) throw std::invalid_argument("braid needs at least one strand");
    for (int e : letters_) {
      int g = e < 0 ? -e : e;
      if (g < 1 || g > n_ - 1)
        throw std::invalid_argument("letter " + std::to_string(e) + " out of range for B_" + std::to_string(n_));
    }
  }

  static BraidWord identity(int n) { return BraidWord(n, {}); }

  int strands() const { return n_; }
  const std::vector<int>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  friend BraidWord operator*(const BraidWord& a, const BraidWord& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("cannot multiply braids with different strand counts");
    std::vector<int> out = a.letters_;
    out.insert(out.end(), b.letters_.begin(), b.letters_.end());
    return BraidWord(a.n_, std::move(out));
  }

  BraidWord inverse() const {
    std::vector<int> out(letters_.rbegin(), letters_.rend());
    for (int& e : out) e = -e;
    return BraidWord(n_, std::move(out));
  }

  /// Literal repetition; negative exponents repeat the inverse word.
  BraidWord power(int e) const {
    const BraidWord base = e < 0 ? inverse() : *this;
    std::vector<int> out;
    for (int r = 0; r < (e < 0 ? -e : e); ++r) out.insert(out.end(), base.letters_.begin(), base.letters_.end());
    return BraidWord(n_, std::move(out));
  }

  friend bool operator==(const BraidWord&, const BraidWord&) = default;

 private:
  int n_ = 1;
  std::vector<int> letters_;
};

/// Permutation of {1..n}; images stored 1-based.
class Perm {
 public:
  Perm() = default;
  explicit Perm(int n) : images_(std::size_t(n)) { std::iota(images_.begin(), images_.end(), 1); }
  explicit Perm(std::vector<int> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size() + 1, false);
    for (int v : images_) {
      if (v < 1 || v > int(images_.size()) || seen[std::size_t(v)])
        throw std::invalid_argument("not a permutation");
      seen[std::size_t(v)] = true;
    }
  }

  int size() const { return int(images_.size()); }
  int operator()(int i) const { return images_.at(std::size_t(i - 1)); }
  const std::vector<int>& images() const { return images_; }

  /// (this o other)(i) = this(other(i)).
  Perm compose(const Perm& other) const {
    std::vector<int> out(images_.size());
    for (int i = 1; i <= size(); ++i) out[std::size_t(i - 1)] = (*this)(other(i));
    return Perm(std::move(out));
  }

  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(images_.size() + 1, false);
    for (int start = 1; start <= size(); ++start) {
      if (seen[std::size_t(start)]) continue;
      std::vector<int> cyc;
      for (int x = start; !seen[std::size_t(x)]; x = (*this)(x)) {
        seen[std::size_t(x)] = true;
        cyc.push_back(x);
      }
      out.push_back(std::move(cyc));
    }
    return out;
  }

  friend bool operator==(const Perm&, const Perm&) = default;

 private:
  std::vector<int> images_;
};

inline int writhe(const BraidWord& b) {
  int w = 0;
  for (int e : b.letters()) w += e > 0 ? 1 : -1;
  return w;
}

inline Perm perm(const BraidWord& b) {
  std::vector<int> img(std::size_t(b.strands()));
  std::iota(img.begin(), img.end(), 1);
  // P_{beta g} = P_beta o s_g
  for (int e : b.letters()) {
    int g = e < 0 ? -e : e;
    std::swap(img[std::size_t(g - 1)], img[std::size_t(g)]);
  }
  return Perm(std::move(img));
}

inline int component_count(const BraidWord& b) { return int(perm(b).cycles().size()); }

/// Positive band-crossing word for one letter of a p-cable: the p strands at block i cross the
/// p strands at block i+1, emitted anti-diagonal by anti-diagonal (p=2 gives s2 s1 s3 s2).
inline std::vector<int> cable_letter(int i, int p) {
  std::vector<int> out;
  const int m = (i - 1) * p + 1;
  for (int s = 0; s <= 2 * p - 2; ++s) {
    for (int a = std::min(s, p - 1); a >= std::max(0, s - p + 1); --a) out.push_back(m + p - 1 + s - 2 * a);
  }
  return out;
}

/// Blackboard-framed p-cable <alpha>_p in B_{kp}.
inline BraidWord cable(const BraidWord& alpha, int p) {
  if (p < 1) throw std::invalid_argument("cable needs p >= 1");
  std::vector<int> out;
  for (int e : alpha.letters()) {
    std::vector<int> block = cable_letter(e < 0 ? -e : e, p);
    if (e < 0) {
      for (auto it = block.rbegin(); it != block.rend(); ++it) out.push_back(-*it);
    } else {
      out.insert(out.end(), block.begin(), block.end());
    }
  }
  return BraidWord(alpha.strands() * p, std::move(out));
}

/// gamma in B_p regarded as a braid on the first p of n strands.
inline BraidWord include_bar(const BraidWord& gamma, int n) {
  if (n < gamma.strands())
    throw std::invalid_argument("include_bar: target index " + std::to_string(n) + " is smaller than " +
                                std::to_string(gamma.strands()));
  return BraidWord(n, gamma.letters());
}

/// The braid satellite <alpha>_p * gamma-bar in B_{kp}.
inline BraidWord satellite_braid(const BraidWord& alpha, const BraidWord& gamma) {
  const int p = gamma.strands();
  BraidWord c = cable(alpha, p);
  return c * include_bar(gamma, c.strands());
}

inline BraidWord torus_braid(int p, int q) {
  if (p < 1) throw std::invalid_argument("torus_braid needs p >= 1");
  std::vector<int> row;
  for (int g = 1; g <= p - 1; ++g) row.push_back(g);
  return BraidWord(p, row).power(q);
}

/// Iterated torus braid T(p, q). Each stage treats the braid built so far as the minimal-index
/// representative of its closure; minimality is not checked.
inline BraidWord iterated_torus_braid(std::span<const int> p, std::span<const int> q) {
  if (p.size() != q.size()) throw std::invalid_argument("iterated_torus_braid: p and q differ in length");
  if (p.empty()) return BraidWord::identity(1);
  for (int pi : p)
    if (pi < 1) throw std::invalid_argument("iterated_torus_braid: every p_i must be >= 1");
  BraidWord b = torus_braid(p[0], q[0]);
  for (std::size_t s = 1; s < p.size(); ++s) b = satellite_braid(b, torus_braid(p[s], q[s]));
  return b;
}

/// Positive full twist (s_1 ... s_{p-1})^p.
inline BraidWord full_twist(int p) { return torus_braid(p, p); }

/// Delta^{2 omega} * gamma.
inline BraidWord pattern_braid(const BraidWord& gamma, int omega) {
  return full_twist(gamma.strands()).power(omega) * gamma;
}

/// tau_{m,l} = s_m s_{m+1} ... s_{m+l-1} in B_n.
inline BraidWord tau_word(int m, int l, int n) {
  if (m < 1 || l < 0 || (l > 0 && m + l - 1 > n - 1))
    throw std::invalid_argument("tau_word: indices out of range");
  std::vector<int> out;
  for (int g = m; g < m + l; ++g) out.push_back(g);
  return BraidWord(n, std::move(out));
}

/// kappa_{m,l} = tau_{m+l-1,p} tau_{m+l-2,p} ... tau_{m,p} in B_n.
inline BraidWord kappa_word(int m, int l, int p, int n) {
  if (m < 1 || l < 1 || p < 1 || m + l + p - 2 > n - 1)
    throw std::invalid_argument("kappa_word: indices out of range");
  BraidWord out = BraidWord::identity(n);
  for (int s = m + l - 1; s >= m; --s) out = out * tau_word(s, p, n);
  return out;
}

/// "1 1 -2" style rendering; the strand count is carried separately.
inline std::string to_string(const BraidWord& b) {
  std::string out;
  for (std::size_t k = 0; k < b.letters().size(); ++k) {
    if (k) out += ' ';
    out += std::to_string(b.letters()[k]);
  }
  return out;
}

inline BraidWord parse_braid(int n, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<int> letters;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad braid letter '" + tok + "'");
    }
    if (used != tok.size() || v == 0) throw std::invalid_argument("bad braid letter '" + tok + "'");
    letters.push_back(v);
  }
  return BraidWord(n, std::move(letters));
}

}  // namespace kch
