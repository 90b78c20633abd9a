#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lgk/coalgebra.hpp"
#include "lgk/cobar.hpp"
#include "lgk/exactlin.hpp"
#include "lgk/hodge.hpp"
#include "lgk/mfcore.hpp"
#include "lgk/polyspace.hpp"

namespace lgk {

// c (x) [f_1|..|f_k] in C (x) Omega(C).  For C # Z/r the chain is a cycle in
// the McKay quiver; `label` is the target vertex of c and fixes all others.
struct HochKey {
  int label = 0;
  Monomial c;
  Word w;
  auto operator<=>(const HochKey&) const = default;
};
using HochChain = SparseVec<HochKey, Rational>;

// Which coalgebra the chains live over: C itself (order 1) or C # Z/order in
// the rescaled idempotent basis, where Delta(e^K U_t) = sum (e^I U_{t - wdeg J}) (x) (e^J U_t).
struct HochSetting {
  int order = 1;
  std::vector<int> weights;

  int shift(const Monomial& m) const {
    if (order == 1) return 0;
    return m.wdegree(weights) % order;
  }
  int sub(int t, int s) const { return ((t - s) % order + order) % order; }
};

struct MixedGrading {
  // deg(c (x) [f_1|..|f_k]) = k.
  static int of(const HochKey& k) { return static_cast<int>(k.w.size()); }
};

inline HochChain hoch_leibniz_plus(const HochChain& x) {
  HochChain out;
  for (const auto& [key, c] : x)
    d_plus_word(key.w, c, [&](const Word& o, const Rational& s) { out.add({key.label, key.c, o}, s); });
  return out;
}

inline HochChain hoch_leibniz_minus(const HochChain& x, const Curvature& m) {
  HochChain out;
  for (const auto& [key, c] : x)
    d_minus_word(key.w, m, c, [&](const Word& o, const Rational& s) { out.add({key.label, key.c, o}, s); });
  return out;
}

// Twisting terms: c (x) w -> - c' (x) [c''|w] + (-1)^{|w|} c'' (x) [w|c'],
// the moved factor always non-scalar.
inline HochChain hoch_twist_left(const HochChain& x, const HochSetting& g = {}) {
  HochChain out;
  for (const auto& [key, c] : x)
    for (const auto& [i, j] : coproduct(key.c)) {
      if (j.is_one()) continue;
      Word w;
      w.push_back(j);
      for (const auto& f : key.w) w.push_back(f);
      out.add({g.sub(key.label, g.shift(j)), i, std::move(w)}, Rational(-c));
    }
  return out;
}

inline HochChain hoch_twist_right(const HochChain& x) {
  HochChain out;
  for (const auto& [key, c] : x) {
    Rational s = key.w.size() % 2 ? Rational(-c) : c;
    for (const auto& [i, j] : coproduct(key.c)) {
      if (i.is_one()) continue;
      Word w = key.w;
      w.push_back(i);
      out.add({key.label, j, std::move(w)}, s);
    }
  }
  return out;
}

inline HochChain hoch_twist(const HochChain& x, const HochSetting& g = {}) {
  HochChain out = hoch_twist_left(x, g);
  out += hoch_twist_right(x);
  return out;
}

inline HochChain hoch_differential(const HochChain& x, const Curvature& m, const HochSetting& g = {}) {
  HochChain out = hoch_leibniz_plus(x);
  out += hoch_leibniz_minus(x, m);
  out += hoch_twist(x, g);
  return out;
}

// Weight |c| + sum |f_j|.
inline int hoch_weight(const HochKey& k) {
  int s = k.c.degree();
  for (const auto& f : k.w) s += f.degree();
  return s;
}

// Every chain of weight <= N with at most `max_len` letters, labels 0 only
// when order > 1 (the complex is equivariant under relabelling).
inline std::vector<HochKey> hoch_window(int n, int N, int max_len, const HochSetting& g = {}) {
  std::vector<HochKey> out;
  std::vector<std::vector<Monomial>> by_deg(N + 1);
  for (int k = 0; k <= N; ++k) by_deg[k] = monomials_of_degree(n, k);
  Word cur;
  std::function<void(const Monomial&, int)> rec = [&](const Monomial& c, int left) {
    HochKey key{0, c, cur};
    int total = g.shift(c);
    for (const auto& f : cur) total += g.shift(f);
    if (g.order == 1 || total % g.order == 0) out.push_back(key);
    if (static_cast<int>(cur.size()) >= max_len) return;
    for (int k = 1; k <= left; ++k)
      for (const auto& f : by_deg[k]) {
        cur.push_back(f);
        rec(c, left - k);
        cur.pop_back();
      }
  };
  for (int k = 0; k <= N; ++k)
    for (const auto& c : by_deg[k]) rec(c, N - k);
  return out;
}

// Largest coefficient of D^2 on a window, or nullopt when D^2 vanishes there.
inline std::optional<std::string> hoch_square_witness(const Potential& w, int N, int max_len, const HochSetting& g = {}) {
  Curvature m(w.poly());
  for (const auto& key : hoch_window(w.nvars(), N, max_len, g)) {
    HochChain x(key, Rational(1));
    HochChain dd = hoch_differential(hoch_differential(x, m, g), m, g);
    if (!dd.empty()) {
      const auto& [k2, c2] = *dd.begin();
      return key.c.str(w.names()) + " (x) " + key.w.str(w.names()) + " -> " + c2.get_str();
    }
  }
  return std::nullopt;
}

// d+ and the twisting part raise the mixed degree by one, d- lowers it.
inline bool mixed_grading_audit(const HochChain& x, const Curvature& m, const HochSetting& g = {}) {
  for (const auto& [key, c] : x) {
    HochChain one(key, c);
    auto shifts = [&](const HochChain& y, int by) {
      for (const auto& kv : y)
        if (MixedGrading::of(kv.first) != MixedGrading::of(key) + by) return false;
      return true;
    };
    if (!shifts(hoch_leibniz_plus(one), 1) || !shifts(hoch_twist(one, g), 1) || !shifts(hoch_leibniz_minus(one, m), -1))
      return false;
  }
  return true;
}

// ----- the reduced complex C (x) wedge(V) -----

struct SmallKey {
  int label = 0;
  Monomial c;
  unsigned s = 0;
  auto operator<=>(const SmallKey&) const = default;
};
using SmallVec = SparseVec<SmallKey, Rational>;

// Grading data: q(x) = d k - 2 wdeg(x) in units of 1/d (so D raises q by d).
struct GradeUnit {
  std::vector<int> a;
  int d = 2;
};

inline GradeUnit grade_unit(const Potential& w) {
  if (auto qh = w.quasi_homogeneity()) return {qh->first, qh->second};
  return {std::vector<int>(w.nvars(), 1), 2};
}

inline int ext_wdegree(unsigned s, const std::vector<int>& a) {
  int t = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (s >> i & 1u) t += a[i];
  return t;
}

// HPL for C (x) Omega(C_M) against id (x) (Hodge retraction): the perturbation
// is the twisting part plus id (x) d-.  Each step either moves weight out of c
// or lowers the total weight, so the series is finite.
class HochReduction {
 public:
  HochReduction(const Potential& w, const Hodge& hodge, HochSetting g = {})
      : w_(w), hodge_(hodge), g_(std::move(g)), m_(w.poly()) {}

  HochChain include(const SmallKey& k) const {
    HochChain out;
    for (const auto& [word, c] : hodge_.include(ExtVec(k.s, Rational(1)))) out.add({k.label, k.c, word}, c);
    return out;
  }

  SmallVec project(const HochChain& x) const {
    SmallVec out;
    for (const auto& [key, grp] : split(x))
      for (const auto& [s, c] : hodge_.project(grp)) out.add({key.first, key.second, s}, c);
    return out;
  }

  HochChain homotopy(const HochChain& x) const {
    HochChain out;
    for (const auto& [key, grp] : split(x))
      for (const auto& [word, c] : hodge_.homotopy(grp)) out.add({key.first, key.second, word}, c);
    return out;
  }

  HochChain perturbation(const HochChain& x) const {
    HochChain out = hoch_twist(x, g_);
    out += hoch_leibniz_minus(x, m_);
    return out;
  }

  // b1 = p (sum_m (delta H)^m delta) i.
  SmallVec small_differential(const SmallKey& k) const {
    HochChain y = perturbation(include(k));
    HochChain acc = y;
    while (!y.empty()) {
      y = perturbation(homotopy(y));
      acc += y;
    }
    return project(acc);
  }

 private:
  static std::map<std::pair<int, Monomial>, CobarVec> split(const HochChain& x) {
    std::map<std::pair<int, Monomial>, CobarVec> out;
    for (const auto& [key, c] : x) out[{key.label, key.c}].add(key.w, c);
    return out;
  }

  Potential w_;
  const Hodge& hodge_;
  HochSetting g_;
  Curvature m_;
};

// ----- ranks -----

struct GradedRank {
  Rational grade;
  int parity = 0;
  int sector = 0;
  long rank = 0;                 // at the largest window
  std::vector<long> history;     // ranks at windows N - 2 step, N - step, N
  bool stable = false;
};

struct HHResult {
  int window = 0;
  int step = 0;
  std::vector<GradedRank> ranks;  // every (sector, grade, parity) with a nonzero rank somewhere
  long stable_total = 0;
  std::vector<long> stable_total_by_parity = {0, 0};
  bool has_unstable = false;
};


namespace detail {

struct GradedItem {
  int q = 0;
  int parity = 0;
  int weight = 0;
};

// Homology ranks per (q, parity) of a complex whose differential sends
// (q, p) to (q + dq, 1 - p), restricted to items of weight <= cap.  Column
// entries pointing at items beyond the cap are dropped, which is the quotient
// complex when the cap bounds a subcomplex from above and the subcomplex
// itself when the differential never raises weight.
template <class F>
std::map<std::pair<int, int>, long> graded_homology(const std::vector<GradedItem>& items,
                                                    const std::vector<std::map<std::size_t, F>>& cols, int dq,
                                                    int cap) {
  std::map<std::pair<int, int>, std::vector<std::size_t>> slices;
  for (std::size_t i = 0; i < items.size(); ++i)
    if (items[i].weight <= cap) slices[{items[i].q, items[i].parity}].push_back(i);
  std::map<std::pair<int, int>, long> rank_from;
  for (const auto& [key, src] : slices) {
    auto tgt = slices.find({key.first + dq, 1 - key.second});
    if (tgt == slices.end()) continue;
    std::map<std::size_t, std::size_t> row_of;
    for (std::size_t r = 0; r < tgt->second.size(); ++r) row_of[tgt->second[r]] = r;
    Echelon<F> e(tgt->second.size());
    for (std::size_t i : src) {
      std::map<std::size_t, F> v;
      for (const auto& [j, c] : cols[i])
        if (auto it = row_of.find(j); it != row_of.end()) v[it->second] = c;
      if (!v.empty()) e.insert(std::move(v));
    }
    rank_from[key] = static_cast<long>(e.rank());
  }
  std::map<std::pair<int, int>, long> out;
  for (const auto& [key, src] : slices) {
    long r = static_cast<long>(src.size());
    if (auto it = rank_from.find(key); it != rank_from.end()) r -= it->second;
    if (auto it = rank_from.find({key.first - dq, 1 - key.second}); it != rank_from.end()) r -= it->second;
    if (r != 0) out[key] = r;
  }
  return out;
}

// Collects ranks at the windows caps[0] < caps[1] < ... and flags agreement.
inline void collect(HHResult& res, int sector, int d, const std::vector<std::map<std::pair<int, int>, long>>& per_cap) {
  std::set<std::pair<int, int>> keys;
  for (const auto& m : per_cap)
    for (const auto& kv : m) keys.insert(kv.first);
  for (const auto& key : keys) {
    GradedRank g;
    g.grade = frac(key.first, d);
    g.parity = key.second;
    g.sector = sector;
    for (const auto& m : per_cap) {
      auto it = m.find(key);
      g.history.push_back(it == m.end() ? 0 : it->second);
    }
    g.rank = g.history.back();
    g.stable = std::all_of(g.history.begin(), g.history.end(), [&](long r) { return r == g.rank; });
    if (g.stable) {
      res.stable_total += g.rank;
      res.stable_total_by_parity[key.second] += g.rank;
    } else {
      res.has_unstable = true;
    }
    res.ranks.push_back(std::move(g));
  }
}

inline int window_step(const Potential& w) {
  int s = 0;
  for (const auto& kv : w.poly().terms()) s = std::max(s, kv.first.degree());
  return std::max(s, 1);
}

inline std::vector<int> window_caps(int N, int step, int count) {
  std::vector<int> caps;
  for (int i = count - 1; i >= 0; --i) caps.push_back(std::max(0, N - i * step));
  return caps;
}

struct SmallComplex {
  std::vector<SmallKey> keys;
  std::vector<GradedItem> items;
  std::vector<SmallVec> b1;  // on label-0 representatives
  std::map<std::pair<Monomial, unsigned>, std::size_t> index;
};

inline SmallComplex small_complex(const Potential& w, int N, const HochSetting& g, const GradeUnit& u) {
  int n = w.nvars();
  Hodge hodge(n);
  HochReduction red(w, hodge, g);
  SmallComplex sc;
  for (int wt = 0; wt <= N; ++wt)
    for (unsigned s = 0; s < (1u << n); ++s) {
      int k = popcount(s);
      if (k > wt) continue;
      for (const auto& K : monomials_of_degree(n, wt - k)) {
        int wd = K.wdegree(u.a) + ext_wdegree(s, u.a);
        if (g.order > 1 && wd % g.order != 0) continue;
        sc.index[{K, s}] = sc.keys.size();
        sc.keys.push_back({0, K, s});
        sc.items.push_back({u.d * k - 2 * wd, k % 2, wt});
      }
    }
  for (const auto& key : sc.keys) sc.b1.push_back(red.small_differential(key));
  return sc;
}

}  // namespace detail

// Homology of the weight <= N part of C (x) Omega(C_M), through its reduction
// to C (x) wedge(V).  Ranks are reported per (grade, parity) for the windows
// N - 2 step, N - step, N with step = deg W; only grades whose rank agreed on
// all three count towards stable_total.
inline HHResult hh_ranks(const Potential& w, int N) {
  if (N < 0) throw std::invalid_argument("window must be nonnegative");
  if (!w.kills_linear_terms()) throw std::invalid_argument("potential must have order >= 2");
  GradeUnit u = grade_unit(w);
  auto sc = detail::small_complex(w, N, HochSetting{}, u);
  std::vector<std::map<std::size_t, Rational>> cols(sc.keys.size());
  for (std::size_t i = 0; i < sc.keys.size(); ++i)
    for (const auto& [k, c] : sc.b1[i]) cols[i][sc.index.at({k.c, k.s})] += c;
  HHResult res;
  res.window = N;
  res.step = detail::window_step(w);
  std::vector<std::map<std::pair<int, int>, long>> per_cap;
  for (int cap : detail::window_caps(N, res.step, 3))
    per_cap.push_back(detail::graded_homology(sc.items, cols, u.d, cap));
  detail::collect(res, 0, u.d, per_cap);
  return res;
}

// Hochschild homology of C_M # Z/order, split into the eigenspaces of the
// quiver rotation t -> t + 1 (sector j carries the eigenvalue zeta^j); each
// sector is a complex over Q(zeta_order).
inline HHResult smash_hh_ranks(const Potential& w, int order, int N) {
  if (order < 1) throw std::invalid_argument("group order must be positive");
  if (!w.kills_linear_terms()) throw std::invalid_argument("potential must have order >= 2");
  GradeUnit u = grade_unit(w);
  auto a = action_weights(w);
  if (!invariant_under_scaling(w, order, a)) throw std::invalid_argument("potential is not invariant under the group");
  HochSetting g{order, a};
  auto sc = detail::small_complex(w, N, g, u);
  HHResult res;
  res.window = N;
  res.step = detail::window_step(w);
  auto caps = detail::window_caps(N, res.step, 3);
  for (int j = 0; j < order; ++j) {
    std::vector<std::map<std::size_t, Cyclo>> cols(sc.keys.size());
    for (std::size_t i = 0; i < sc.keys.size(); ++i)
      for (const auto& [k, c] : sc.b1[i]) {
        auto& slot = cols[i][sc.index.at({k.c, k.s})];
        slot += Cyclo(c) * Cyclo::zeta(order, static_cast<long>(j) * k.label);
      }
    for (auto& col : cols)
      for (auto it = col.begin(); it != col.end();) it = it->second.is_zero() ? col.erase(it) : std::next(it);
    std::vector<std::map<std::pair<int, int>, long>> per_cap;
    for (int cap : caps) per_cap.push_back(detail::graded_homology(sc.items, cols, u.d, cap));
    detail::collect(res, j, u.d, per_cap);
  }
  return res;
}

// ----- the Borel-Moore complex of R_W -----

// Normalized chains r_0 (x) r_1 .. r_k (letters non-scalar) of total degree
// <= N: the quotient of the direct-product complex by everything of higher
// degree, which is a subcomplex since b keeps degree and the curvature term
// raises it.
//   b     = sum_{i<k} (-1)^i (.. r_i r_{i+1} ..) + (-1)^k r_k r_0 (x) r_1 .. r_{k-1}
//   c_W   = sum_{i=0..k} (-1)^{i+1} r_0 (x) .. r_i (x) W (x) r_{i+1} ..
inline TensorVec bm_differential(const TensorKey& x, const Poly& w) {
  TensorVec out;
  const auto& [r0, word] = x;
  std::size_t k = word.size();
  if (k > 0) {
    Word rest;
    for (std::size_t j = 1; j < k; ++j) rest.push_back(word[j]);
    out.add({r0 * word[0], rest}, Rational(1));
    for (std::size_t i = 0; i + 1 < k; ++i) {
      Word v;
      for (std::size_t j = 0; j < k; ++j) {
        if (j == i + 1) continue;
        v.push_back(j == i ? word[i] * word[i + 1] : word[j]);
      }
      out.add({r0, v}, Rational(i % 2 == 0 ? -1 : 1));
    }
    Word v;
    for (std::size_t j = 0; j + 1 < k; ++j) v.push_back(word[j]);
    out.add({word[k - 1] * r0, v}, Rational(k % 2 == 0 ? 1 : -1));
  }
  for (std::size_t i = 0; i <= k; ++i)
    for (const auto& [m, c] : w.terms()) {
      Word v;
      for (std::size_t j = 0; j < i; ++j) v.push_back(word[j]);
      v.push_back(m);
      for (std::size_t j = i; j < k; ++j) v.push_back(word[j]);
      out.add({r0, v}, i % 2 == 0 ? Rational(-c) : c);
    }
  return out;
}

inline int bm_degree(const TensorKey& x) {
  int s = x.first.degree();
  for (const auto& f : x.second) s += f.degree();
  return s;
}

// BM ranks at the windows N - step and N (step = deg W), grades in the
// convention q = (2/d) wdeg - k; `grades` restricts the slices computed.
inline HHResult bm_ranks_truncated(const Potential& w, int N,
                                   std::optional<std::pair<Rational, Rational>> grades = std::nullopt) {
  if (N < 0) throw std::invalid_argument("window must be nonnegative");
  if (!w.kills_linear_terms()) throw std::invalid_argument("potential must have order >= 2");
  int n = w.nvars();
  GradeUnit u = grade_unit(w);
  auto in_range = [&](int q) {
    if (!grades) return true;
    Rational g = frac(q, u.d);
    return g >= grades->first - 1 && g <= grades->second + 1;
  };
  std::vector<std::vector<Monomial>> by_deg(N + 1);
  for (int k = 0; k <= N; ++k) by_deg[k] = monomials_of_degree(n, k);
  std::vector<TensorKey> keys;
  std::vector<detail::GradedItem> items;
  Word cur;
  std::function<void(const Monomial&, int, int)> rec = [&](const Monomial& r0, int left, int wd) {
    int k = static_cast<int>(cur.size());
    int q = 2 * wd - u.d * k;
    if (in_range(q)) {
      keys.push_back({r0, cur});
      items.push_back({q, k % 2, N - left});
    }
    for (int s = 1; s <= left; ++s)
      for (const auto& f : by_deg[s]) {
        cur.push_back(f);
        rec(r0, left - s, wd + f.wdegree(u.a));
        cur.pop_back();
      }
  };
  for (int k = 0; k <= N; ++k)
    for (const auto& r0 : by_deg[k]) rec(r0, N - k, r0.wdegree(u.a));
  std::map<TensorKey, std::size_t> index;
  for (std::size_t i = 0; i < keys.size(); ++i) index[keys[i]] = i;
  std::vector<std::map<std::size_t, Rational>> cols(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i)
    for (const auto& [k, c] : bm_differential(keys[i], w.poly()))
      if (auto it = index.find(k); it != index.end()) cols[i][it->second] += c;
  HHResult res;
  res.window = N;
  res.step = detail::window_step(w);
  std::vector<std::map<std::pair<int, int>, long>> per_cap;
  for (int cap : detail::window_caps(N, res.step, 2)) {
    auto m = detail::graded_homology(items, cols, u.d, cap);
    if (grades)
      for (auto it = m.begin(); it != m.end();) {
        Rational g = frac(it->first.first, u.d);
        it = (g < grades->first || g > grades->second) ? m.erase(it) : std::next(it);
      }
    per_cap.push_back(std::move(m));
  }
  detail::collect(res, 0, u.d, per_cap);
  return res;
}

// ----- comparisons -----

// Stable HH classes in grade g must match stable BM classes in grade -g with
// the same parity.  Returns a witness on mismatch.
// BM grades that can pair with a stable nonzero HH grade: the window handed to
// bm_ranks_truncated when the full BM range is too expensive.
inline std::optional<std::pair<Rational, Rational>> dual_grade_range(const HHResult& hh) {
  std::optional<std::pair<Rational, Rational>> r;
  for (const auto& g : hh.ranks) {
    if (!g.stable || g.rank == 0) continue;
    Rational q = -g.grade;
    if (!r) r = std::make_pair(q, q);
    r->first = std::min(r->first, q);
    r->second = std::max(r->second, q);
  }
  return r;
}

inline std::optional<std::string> duality_mismatch(const HHResult& hh, const HHResult& bm) {
  // Grades that did not settle on one side are not compared.
  std::map<std::pair<Rational, int>, long> a, b;
  std::set<std::pair<Rational, int>> open;
  for (const auto& r : hh.ranks) {
    std::pair<Rational, int> k{r.grade, r.parity};
    if (r.stable) a[k] = r.rank;
    else open.insert(k);
  }
  for (const auto& r : bm.ranks) {
    std::pair<Rational, int> k{-r.grade, r.parity};
    if (r.stable) b[k] = r.rank;
    else open.insert(k);
  }
  auto say = [](const std::pair<Rational, int>& k, long x, long y) {
    return "grade " + k.first.get_str() + " parity " + std::to_string(k.second) + ": HH " + std::to_string(x) +
           " vs BM " + std::to_string(y);
  };
  for (const auto& [k, v] : a) {
    if (open.count(k)) continue;
    auto it = b.find(k);
    long o = it == b.end() ? 0 : it->second;
    if (o != v) return say(k, v, o);
  }
  for (const auto& [k, v] : b)
    if (!a.count(k) && !open.count(k) && v != 0) return say(k, 0, v);
  return std::nullopt;
}

// Graded dimensions of Jac(f) for weighted-homogeneous isolated f.
inline std::map<int, long> jacobian_dims(const Poly& f, int n, const std::vector<int>& a, int d) {
  std::map<int, long> out;
  if (n == 0) {
    out[0] = 1;
    return out;
  }
  if (f.is_zero()) throw std::invalid_argument("restricted potential is not isolated");
  std::vector<Poly> grad;
  for (int i = 0; i < n; ++i) grad.push_back(f.partial(i));
  int socle = 0;
  for (int ai : a) socle += d - 2 * ai;
  for (int m = 0; m <= socle; ++m) {
    auto cols = monomials_of_wdegree(a, m);
    if (cols.empty()) continue;
    std::vector<std::pair<Monomial, const Poly*>> rows;
    for (int i = 0; i < n; ++i)
      if (!grad[i].is_zero())
        for (auto& mult : monomials_of_wdegree(a, m - (d - a[i]))) rows.emplace_back(mult, &grad[i]);
    long s = static_cast<long>(cols.size() - detail::span_rank(cols, rows));
    if (s) out[m] = s;
  }
  return out;
}

// The orbifold decomposition: for each h in Z/order, Jac(W|_h) dx_{Fix h}
// restricted to the fixed subspace, keeping the G-invariant part.  Keys are
// (h, HH grade in units of 1/d, parity).
inline std::map<std::tuple<int, int, int>, long> orbifold_ranks(const Potential& w, int order) {
  auto qh = w.quasi_homogeneity();
  if (!qh) throw std::invalid_argument("potential is not weighted homogeneous");
  const auto& [a, d] = *qh;
  int n = w.nvars();
  std::map<std::tuple<int, int, int>, long> out;
  for (int h = 0; h < order; ++h) {
    std::vector<int> fixed;
    for (int i = 0; i < n; ++i)
      if ((static_cast<long>(h) * a[i]) % order == 0) fixed.push_back(i);
    int nf = static_cast<int>(fixed.size());
    Poly f(nf);
    for (const auto& [m, c] : w.poly().terms()) {
      bool inside = true;
      std::vector<int> e(nf);
      for (int i = 0; i < n; ++i) {
        auto pos = std::find(fixed.begin(), fixed.end(), i);
        if (pos == fixed.end()) {
          if (m.exp(i)) inside = false;
        } else {
          e[pos - fixed.begin()] = m.exp(i);
        }
      }
      if (inside) f.add(Monomial(e), c);
    }
    std::vector<int> af;
    int top = 0;
    for (int i : fixed) {
      af.push_back(a[i]);
      top += a[i];
    }
    for (const auto& [m, dim] : jacobian_dims(f, nf, af, d)) {
      if ((m + top) % order != 0) continue;
      int q = -(2 * (m + top) - d * nf);
      out[{h, q, nf % 2}] += dim;
    }
  }
  return out;
}

// Stable smash sector j against orbifold sector h = j, grade by grade.
inline std::optional<std::string> orbifold_mismatch(const HHResult& smash, const Potential& w, int order) {
  int d = grade_unit(w).d;
  std::map<std::tuple<int, int, int>, long> got;
  for (const auto& r : smash.ranks)
    if (r.stable) got[{r.sector, static_cast<int>(Integer(r.grade * d).get_si()), r.parity}] = r.rank;
  auto want = orbifold_ranks(w, order);
  auto describe = [&](const std::tuple<int, int, int>& k, long a, long b) {
    return "sector " + std::to_string(std::get<0>(k)) + " grade " + frac(std::get<1>(k), d).get_str() + " parity " +
           std::to_string(std::get<2>(k)) + ": smash " + std::to_string(a) + " vs orbifold " + std::to_string(b);
  };
  for (const auto& [k, v] : want) {
    long g = got.count(k) ? got.at(k) : 0;
    if (g != v) return describe(k, g, v);
  }
  for (const auto& [k, v] : got)
    if (!want.count(k)) return describe(k, v, 0);
  return std::nullopt;
}

}  // namespace lgk
