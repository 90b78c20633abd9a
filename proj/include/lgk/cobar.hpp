#pragma once

#include "lgk/coalgebra.hpp"
#include "lgk/exactlin.hpp"
#include "lgk/polyspace.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lgk {

// A cobar word [f_1|...|f_k] of non-scalar monomials.  Short words live
// inline; longer ones spill to the heap.
class Word {
 public:
  static constexpr std::size_t kInline = 12;

  Word() = default;
  Word(std::initializer_list<Monomial> l) {
    for (const auto& m : l) push_back(m);
  }
  explicit Word(const std::vector<Monomial>& v) {
    for (const auto& m : v) push_back(m);
  }

  std::size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }
  const Monomial* data() const { return n_ <= kInline ? small_.data() : big_.data(); }
  const Monomial& operator[](std::size_t i) const { return data()[i]; }
  const Monomial* begin() const { return data(); }
  const Monomial* end() const { return data() + n_; }

  void push_back(const Monomial& m) {
    if (n_ < kInline) {
      small_[n_++] = m;
      return;
    }
    if (n_ == kInline) big_.assign(small_.begin(), small_.end());
    big_.push_back(m);
    ++n_;
  }
  void pop_back() {
    if (n_ > kInline) {
      big_.pop_back();
      if (n_ - 1 == kInline) {
        std::copy(big_.begin(), big_.end(), small_.begin());
        big_.clear();
      }
    }
    --n_;
  }
  void set(std::size_t i, const Monomial& m) {
    if (n_ <= kInline)
      small_[i] = m;
    else
      big_[i] = m;
  }

  std::vector<Monomial> letters() const { return std::vector<Monomial>(begin(), end()); }

  int weight() const {
    int w = 0;
    for (const auto& m : *this) w += m.degree();
    return w;
  }
  // Total multidegree as a monomial.
  Monomial multidegree() const {
    Monomial k;
    for (const auto& m : *this) k = k * m;
    return k;
  }
  bool all_linear() const {
    for (const auto& m : *this)
      if (m.degree() != 1) return false;
    return true;
  }

  friend Word concat(const Word& a, const Word& b) {
    Word w = a;
    for (const auto& m : b) w.push_back(m);
    return w;
  }

  friend bool operator==(const Word& a, const Word& b) {
    return a.n_ == b.n_ && std::equal(a.begin(), a.end(), b.begin());
  }
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
  }

  std::string str(const std::vector<std::string>& names) const {
    std::string s = "[";
    for (std::size_t i = 0; i < n_; ++i) {
      if (i) s += "|";
      s += (*this)[i].str(names);
    }
    return s + "]";
  }

 private:
  std::uint32_t n_ = 0;
  std::array<Monomial, kInline> small_{};
  std::vector<Monomial> big_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const {
    std::uint64_t h = 1469598103934665603ULL ^ w.size();
    for (const auto& m : w) {
      h ^= m.bits() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

using CobarVec = SparseVec<Word, Rational>;

// Parity of a word is its length: every letter sits in odd degree.
inline int parity(const Word& w) { return static_cast<int>(w.size() % 2); }

// d+[f_1|..|f_k] = sum_i (-1)^{i-1} [..|Delta-bar f_i|..]
template <class Sink>
void d_plus_word(const Word& w, const Rational& c, Sink&& sink) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto& splits = reduced_coproduct(w[i]);
    if (splits.empty()) continue;
    Rational s = (i % 2 == 0) ? c : Rational(-c);
    for (const auto& [a, b] : splits) {
      Word out;
      for (std::size_t j = 0; j < i; ++j) out.push_back(w[j]);
      out.push_back(a);
      out.push_back(b);
      for (std::size_t j = i + 1; j < w.size(); ++j) out.push_back(w[j]);
      sink(out, s);
    }
  }
}

// d-[f_1|..|f_k] = sum_i (-1)^{i-1} M(f_i) [f_1..f_{i-1} f_{i+1}..f_k]
template <class Sink>
void d_minus_word(const Word& w, const Curvature& m, const Rational& c, Sink&& sink) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    Rational mv = m(w[i]);
    if (sgn(mv) == 0) continue;
    Word out;
    for (std::size_t j = 0; j < w.size(); ++j)
      if (j != i) out.push_back(w[j]);
    Rational s = mv * c;
    if (i % 2) s = -s;
    sink(out, s);
  }
}

inline CobarVec d_plus(const CobarVec& x) {
  CobarVec out;
  for (const auto& [w, c] : x) d_plus_word(w, c, [&](const Word& o, const Rational& s) { out.add(o, s); });
  return out;
}

inline CobarVec d_minus(const CobarVec& x, const Curvature& m) {
  CobarVec out;
  for (const auto& [w, c] : x) d_minus_word(w, m, c, [&](const Word& o, const Rational& s) { out.add(o, s); });
  return out;
}

inline CobarVec d_total(const CobarVec& x, const Curvature& m) {
  CobarVec out = d_plus(x);
  out += d_minus(x, m);
  return out;
}

// Concatenation product of the tensor algebra.
inline CobarVec product(const CobarVec& a, const CobarVec& b) {
  CobarVec out;
  for (const auto& [u, c] : a)
    for (const auto& [v, e] : b) out.add(concat(u, v), Rational(c * e));
  return out;
}

// Window order: by length, then lexicographic.
struct WindowOrder {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

// All words of weight exactly N in n variables, in window order.
inline std::vector<Word> weight_basis(int n, int N) {
  std::vector<Word> out;
  if (N == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<std::vector<Monomial>> by_degree(N + 1);
  for (int k = 1; k <= N; ++k) by_degree[k] = monomials_of_degree(n, k);
  Word cur;
  std::function<void(const Word&, int)> rec = [&](const Word& w, int left) {
    if (left == 0) {
      out.push_back(w);
      return;
    }
    for (int k = 1; k <= left; ++k)
      for (const auto& m : by_degree[k]) {
        Word nw = w;
        nw.push_back(m);
        rec(nw, left - k);
      }
  };
  rec(cur, N);
  std::sort(out.begin(), out.end(), WindowOrder{});
  return out;
}

// Words of a fixed multidegree K and length k, sorted.
inline std::vector<Word> block_basis(const Monomial& K, std::size_t k) {
  std::vector<Word> out;
  if (k == 0) {
    if (K.is_one()) out.emplace_back();
    return out;
  }
  std::function<void(const Word&, const Monomial&, std::size_t)> rec = [&](const Word& w, const Monomial& left,
                                                                          std::size_t slots) {
    if (slots == 1) {
      if (left.is_one()) return;
      Word nw = w;
      nw.push_back(left);
      out.push_back(nw);
      return;
    }
    if (static_cast<std::size_t>(left.degree()) < slots) return;
    for (const auto& f : divisors(left, kMaxVars)) {
      if (f.is_one()) continue;
      Monomial rest = left / f;
      if (static_cast<std::size_t>(rest.degree()) < slots - 1) continue;
      Word nw = w;
      nw.push_back(f);
      rec(nw, rest, slots - 1);
    }
  };
  rec(Word(), K, k);
  std::sort(out.begin(), out.end());
  return out;
}

// Grading -(2/d) sum |f_i| + k for weighted-homogeneous W of degree d.
inline Rational graded_degree(const Word& w, int d, const std::vector<int>& weights) {
  int deg = 0;
  for (const auto& f : w) deg += f.wdegree(weights);
  return -frac(2L * deg, d) + Rational(static_cast<long>(w.size()));
}

struct DSquaredReport {
  bool ok = true;
  std::size_t words_checked = 0;
  std::optional<Word> witness;
  CobarVec residue;
};

// D^2 on every word of weight <= N for an arbitrary operator D on the window.
inline DSquaredReport check_square_zero(int n, int N, const std::function<CobarVec(const CobarVec&)>& d) {
  DSquaredReport rep;
  for (int wt = 0; wt <= N; ++wt) {
    for (const auto& w : weight_basis(n, wt)) {
      ++rep.words_checked;
      CobarVec dd = d(d(CobarVec(w, Rational(1))));
      if (!dd.empty()) {
        rep.ok = false;
        rep.witness = w;
        rep.residue = dd;
        return rep;
      }
    }
  }
  return rep;
}

// (d+ + d-)^2 on every word of weight <= N.
inline DSquaredReport check_d_squared(int n, const Curvature& m, int N) {
  return check_square_zero(n, N, [&](const CobarVec& x) { return d_total(x, m); });
}

}  // namespace lgk
