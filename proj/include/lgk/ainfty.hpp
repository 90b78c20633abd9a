#pragma once

#include "lgk/cobar.hpp"
#include "lgk/exactlin.hpp"
#include "lgk/hodge.hpp"
#include "lgk/hpl.hpp"
#include "lgk/polyspace.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lgk {

// All operations use the shifted convention: b_k : (sA)^{(x)k} -> sA is odd,
// the shifted parity of a basis vector x_S is |S| + 1, and the relations are
//   sum (-1)^{|x_1|'+..+|x_r|'} b_{r+1+t}(x_1..x_r, b_s(..), ..) = 0.
// The unshifted product is m_2(a, b) = (-1)^{|a|} b_2(sa, sb).

// Structure constants of one arity, dense over the exterior basis (masks).
struct AInftyOp {
  int arity = 0;
  int n = 0;
  std::vector<Rational> c;  // c[(tuple index) * 2^n + out]

  AInftyOp() = default;
  AInftyOp(int k, int nv) : arity(k), n(nv), c(std::size_t(1) << (nv * (k + 1))) {}

  std::size_t dim() const { return std::size_t(1) << n; }
  std::size_t tuple_index(const std::vector<unsigned>& in) const {
    std::size_t t = 0;
    for (unsigned m : in) t = t * dim() + m;
    return t;
  }
  Rational& at(const std::vector<unsigned>& in, unsigned out) { return c[tuple_index(in) * dim() + out]; }
  const Rational& at(const std::vector<unsigned>& in, unsigned out) const { return c[tuple_index(in) * dim() + out]; }
  bool is_zero() const {
    for (const auto& v : c)
      if (sgn(v) != 0) return false;
    return true;
  }
};

inline int shifted_parity(unsigned mask) { return (popcount(mask) + 1) % 2; }

// The dg algebra Omega(C_M) in the shifted convention, with the Hodge
// retraction perturbed by d-.
class MinimalModel {
 public:
  MinimalModel(const Potential& w, const Hodge& h) : n_(w.nvars()), m_(w.poly()), h_(h) {
    if (!w.kills_linear_terms()) throw std::invalid_argument("potential must have order >= 2");
  }

  int nvars() const { return n_; }

  // A x = sum_m (d- H)^m d- x; terminates because d- lowers weight.
  CobarVec series(const CobarVec& x) const {
    CobarVec term = d_minus(x, m_);
    CobarVec acc = term;
    while (!term.empty()) {
      term = d_minus(h_.homotopy(term), m_);
      acc += term;
    }
    return acc;
  }

  CobarVec i1(unsigned mask) const {
    CobarVec x = h_.include(ExtVec(mask, Rational(1)));
    CobarVec out = x;
    out += h_.homotopy(series(x));
    return out;
  }
  ExtVec p1(const CobarVec& x) const {
    ExtVec out = h_.project(x);
    out += h_.project(series(h_.homotopy(x)));
    return out;
  }
  CobarVec H1(const CobarVec& x) const {
    CobarVec hx = h_.homotopy(x);
    CobarVec out = hx;
    out += h_.homotopy(series(hx));
    return out;
  }
  // small differential b1 = p A i on a basis vector
  ExtVec small_differential(unsigned mask) const {
    return h_.project(series(h_.include(ExtVec(mask, Rational(1)))));
  }

  // b_2(sX, sY) = (-1)^{|X|} s(XY), |X| the word length.
  static CobarVec b2(const CobarVec& a, const CobarVec& b) {
    CobarVec out;
    for (const auto& [u, c] : a)
      for (const auto& [v, e] : b) {
        Rational s = c * e;
        if (u.size() % 2) s = -s;
        out.add(concat(u, v), s);
      }
    return out;
  }

  // phi_1 = i1, phi_k = sum_{j} sigma H1 b2(phi_j, phi_{k-j}); the sign
  // sigma = -1 matches ip = 1 + dH + Hd (the Stasheff check arbitrates).
  const CobarVec& phi(const std::vector<unsigned>& in) const {
    auto it = phi_.find(in);
    if (it != phi_.end()) return it->second;
    CobarVec out;
    if (in.size() == 1) {
      out = i1(in[0]);
    } else {
      CobarVec sum = split_products(in);
      out = Rational(kHomotopySign) * H1(sum);
    }
    return phi_.emplace(in, std::move(out)).first->second;
  }

  ExtVec operation(const std::vector<unsigned>& in) const {
    if (in.size() == 1) return small_differential(in[0]);
    return p1(split_products(in));
  }

  static constexpr int kHomotopySign = -1;

 private:
  CobarVec split_products(const std::vector<unsigned>& in) const {
    CobarVec sum;
    for (std::size_t j = 1; j < in.size(); ++j) {
      std::vector<unsigned> l(in.begin(), in.begin() + j), r(in.begin() + j, in.end());
      // phi's are even, so no Koszul sign from the tensor product
      sum += b2(phi(l), phi(r));
    }
    return sum;
  }

  int n_;
  Curvature m_;
  const Hodge& h_;
  mutable std::map<std::vector<unsigned>, CobarVec> phi_;
};

// Every operator in the tree formula preserves multidegree except d-, which
// subtracts the exponent of a monomial of W.  An output x_S is therefore only
// possible when the input multidegree minus S is a sum of such exponents.
class MultidegreeFilter {
 public:
  explicit MultidegreeFilter(const Potential& w) : n_(w.nvars()) {
    for (const auto& kv : w.poly().terms()) {
      std::vector<int> e(n_);
      for (int i = 0; i < n_; ++i) e[i] = kv.first.exp(i);
      exps_.push_back(e);
    }
  }
  bool possible(const std::vector<unsigned>& in) {
    std::vector<int> d(n_, 0);
    for (unsigned m : in)
      for (int i = 0; i < n_; ++i) d[i] += m >> i & 1u;
    return reach(d);
  }

 private:
  bool reach(const std::vector<int>& d) {
    auto it = memo_.find(d);
    if (it != memo_.end()) return it->second;
    bool ok = true;
    for (int v : d) ok = ok && v <= 1;
    for (std::size_t j = 0; j < exps_.size() && !ok; ++j) {
      std::vector<int> r = d;
      bool fits = true;
      for (int i = 0; i < n_; ++i) fits = fits && (r[i] -= exps_[j][i]) >= 0;
      ok = fits && reach(r);
    }
    return memo_[d] = ok;
  }
  int n_;
  std::vector<std::vector<int>> exps_;
  std::map<std::vector<int>, bool> memo_;
};

// Transferred operations b_1..b_{arity_max}.
inline std::vector<AInftyOp> transfer(const Potential& w, int arity_max, const Hodge& h, bool prune = true) {
  if (arity_max < 1) throw std::invalid_argument("arity cap must be positive");
  int n = w.nvars();
  MinimalModel mm(w, h);
  MultidegreeFilter filter(w);
  std::vector<AInftyOp> ops;
  std::size_t dim = std::size_t(1) << n;
  for (int k = 1; k <= arity_max; ++k) {
    AInftyOp op(k, n);
    std::vector<unsigned> in(k, 0);
    std::size_t total = 1;
    for (int j = 0; j < k; ++j) total *= dim;
    for (std::size_t t = 0; t < total; ++t) {
      std::size_t r = t;
      for (int j = k - 1; j >= 0; --j) {
        in[j] = static_cast<unsigned>(r % dim);
        r /= dim;
      }
      if (prune && !filter.possible(in)) continue;
      for (const auto& [mask, v] : mm.operation(in)) op.at(in, mask) = v;
    }
    ops.push_back(std::move(op));
  }
  return ops;
}

struct StasheffReport {
  bool ok = true;
  int arity_checked = 0;
  int failed_arity = 0;
  std::vector<unsigned> witness;  // basis tuple
  std::string convention = "shifted: all b_k odd, sign (-1)^{sum of shifted parities before the inner operation}";
};

inline std::string tuple_str(const std::vector<unsigned>& t, int n) {
  auto names = default_var_names(n);
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? ", " : "") + ext_str(t[i], names);
  return s + ")";
}

// Evaluates b_k on a vector of dense inputs by multilinearity.
inline std::vector<Rational> evaluate(const AInftyOp& op, const std::vector<std::vector<Rational>>& in) {
  std::size_t dim = op.dim();
  std::vector<Rational> out(dim);
  std::vector<unsigned> idx(op.arity, 0);
  std::function<void(std::size_t, Rational, std::vector<unsigned>&)> rec = [&](std::size_t j, Rational c,
                                                                                  std::vector<unsigned>& cur) {
    if (j == in.size()) {
      std::size_t base = op.tuple_index(cur) * dim;
      for (std::size_t o = 0; o < dim; ++o)
        if (sgn(op.c[base + o]) != 0) out[o] += c * op.c[base + o];
      return;
    }
    for (std::size_t m = 0; m < dim; ++m)
      if (sgn(in[j][m]) != 0) {
        cur[j] = static_cast<unsigned>(m);
        rec(j + 1, c * in[j][m], cur);
      }
  };
  rec(0, Rational(1), idx);
  return out;
}

inline StasheffReport check_stasheff(const std::vector<AInftyOp>& ops, int arity_cap) {
  StasheffReport rep;
  if (ops.empty()) return rep;
  int n = ops[0].n;
  std::size_t dim = std::size_t(1) << n;
  int cap = std::min<int>(arity_cap, static_cast<int>(ops.size()));
  auto unit = [&](unsigned m) {
    std::vector<Rational> v(dim);
    v[m] = 1;
    return v;
  };
  for (int N = 1; N <= cap; ++N) {
    std::vector<unsigned> t(N, 0);
    std::size_t total = 1;
    for (int j = 0; j < N; ++j) total *= dim;
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t r = code;
      for (int j = N - 1; j >= 0; --j) {
        t[j] = static_cast<unsigned>(r % dim);
        r /= dim;
      }
      std::vector<Rational> acc(dim);
      for (int rr = 0; rr < N; ++rr)
        for (int s = 1; rr + s <= N; ++s) {
          int outer = N - s + 1;
          int sign = 0;
          for (int j = 0; j < rr; ++j) sign += shifted_parity(t[j]);
          std::vector<std::vector<Rational>> inner_in;
          for (int j = rr; j < rr + s; ++j) inner_in.push_back(unit(t[j]));
          auto inner = evaluate(ops[s - 1], inner_in);
          bool nz = false;
          for (const auto& v : inner) nz = nz || sgn(v) != 0;
          if (!nz) continue;
          std::vector<std::vector<Rational>> outer_in;
          for (int j = 0; j < rr; ++j) outer_in.push_back(unit(t[j]));
          outer_in.push_back(inner);
          for (int j = rr + s; j < N; ++j) outer_in.push_back(unit(t[j]));
          auto v = evaluate(ops[outer - 1], outer_in);
          for (std::size_t o = 0; o < dim; ++o) acc[o] += sign % 2 ? Rational(-v[o]) : v[o];
        }
      for (const auto& v : acc)
        if (sgn(v) != 0) {
          rep.ok = false;
          rep.failed_arity = N;
          rep.witness = t;
          return rep;
        }
    }
    rep.arity_checked = N;
  }
  return rep;
}

// Unshifted product m_2(a, b) = (-1)^{|a|} b_2(sa, sb) on basis vectors.
inline std::vector<Rational> unshifted_m2(const AInftyOp& b2, unsigned a, unsigned b) {
  std::vector<Rational> out(b2.dim());
  for (std::size_t o = 0; o < out.size(); ++o) {
    out[o] = b2.at({a, b}, static_cast<unsigned>(o));
    if (popcount(a) % 2) out[o] = -out[o];
  }
  return out;
}

// Exterior product on masks: sign of merging S then T into sorted order.
inline std::optional<std::pair<unsigned, int>> wedge_masks(unsigned s, unsigned t) {
  if (s & t) return std::nullopt;
  int inv = 0;
  for (int i = 0; i < 32; ++i)
    if (t >> i & 1u) inv += popcount(s >> (i + 1));
  return std::make_pair(s | t, inv % 2 ? -1 : 1);
}

// Is the unshifted m_2 exactly the exterior product?
inline bool is_wedge_product(const AInftyOp& b2) {
  unsigned dim = static_cast<unsigned>(b2.dim());
  for (unsigned a = 0; a < dim; ++a)
    for (unsigned b = 0; b < dim; ++b) {
      std::vector<Rational> want(dim);
      if (auto w = wedge_masks(a, b)) want[w->first] = w->second;
      if (unshifted_m2(b2, a, b) != want) return false;
    }
  return true;
}

// ----- Clifford comparison -----

// Clifford algebra with e_i e_j + e_j e_i = 2 g_ij on the ordered basis e_S.
class Clifford {
 public:
  explicit Clifford(std::vector<std::vector<Rational>> g) : g_(std::move(g)), n_(static_cast<int>(g_.size())) {}

  // e_S e_j on the ordered basis.  With k = max S:
  //   k < j: append;  k = j: e_j e_j = g_jj;
  //   k > j: e_S' e_k e_j = 2 g_kj e_S' - (e_S' e_j) e_k.
  std::vector<Rational> times_generator(unsigned s, int j) const {
    std::vector<Rational> out(std::size_t(1) << n_);
    if (s == 0 || 31 - __builtin_clz(s) < j) {
      out[s | (1u << j)] = 1;
      return out;
    }
    int k = 31 - __builtin_clz(s);
    unsigned rest = s & ~(1u << k);
    if (k == j) {
      out[rest] = g_[j][j];
      return out;
    }
    out[rest] += 2 * g_[k][j];
    auto inner = times_generator(rest, j);
    for (std::size_t m = 0; m < inner.size(); ++m)
      if (sgn(inner[m]) != 0) out[m | (1u << k)] -= inner[m];
    return out;
  }

  std::vector<Rational> product(unsigned a, unsigned b) const {
    std::size_t dim = std::size_t(1) << n_;
    std::vector<Rational> cur(dim);
    cur[a] = 1;
    for (int j = 0; j < n_; ++j) {
      if (!(b >> j & 1u)) continue;
      std::vector<Rational> next(dim);
      for (std::size_t m = 0; m < dim; ++m)
        if (sgn(cur[m]) != 0) {
          auto v = times_generator(static_cast<unsigned>(m), j);
          for (std::size_t o = 0; o < dim; ++o)
            if (sgn(v[o]) != 0) next[o] += cur[m] * v[o];
        }
      cur = std::move(next);
    }
    return cur;
  }

 private:
  std::vector<std::vector<Rational>> g_;
  int n_;
};

struct CliffordReport {
  std::string verdict;  // "equal", "equal up to global scalar", "unequal"
  std::optional<Rational> scalar;  // c with m2(e_i,e_j) + m2(e_j,e_i) = c B(e_i, e_j)
  std::string witness;
};

// B(e_i, e_j) = M(e_i e_j) with the shuffle product of the cofree coalgebra,
// where e_i e_i = 2 x_i^2: the Hessian of W.
inline Rational clifford_form(const Potential& w, int i, int j) {
  Rational c = w.poly().coeff(Monomial::var(i) * Monomial::var(j));
  return i == j ? Rational(2 * c) : c;
}

// Transferred m2 against the Clifford product of g = (c/2) B, read on the
// exterior basis through the antisymmetrization q(x_S) = (1/k!) sum sgn e_sigma,
// with c fixed by the anticommutators of generators.
inline CliffordReport clifford_oracle(const Potential& w, const AInftyOp& b2) {
  int n = w.nvars();
  if (w.poly().is_zero()) throw std::invalid_argument("potential is not quadratic");
  for (const auto& kv : w.poly().terms())
    if (kv.first.degree() != 2) throw std::invalid_argument("potential is not quadratic");
  CliffordReport rep;
  std::optional<Rational> c;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rational anti = unshifted_m2(b2, 1u << i, 1u << j)[0] + unshifted_m2(b2, 1u << j, 1u << i)[0];
      Rational bij = clifford_form(w, i, j);
      std::string at = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
      if (sgn(bij) == 0) {
        if (sgn(anti) != 0) return {"unequal", std::nullopt, "anticommutator at " + at};
        continue;
      }
      Rational ratio = anti / bij;
      if (c && *c != ratio) return {"unequal", std::nullopt, "inconsistent scalar at " + at};
      c = ratio;
    }
  rep.scalar = c;
  Rational cc = c ? *c : Rational(0);
  std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[i][j] = cc * clifford_form(w, i, j) / 2;
  Clifford cl(g);
  std::size_t dim = std::size_t(1) << n;
  // q as a matrix on the ordered basis, column per exterior basis vector
  SparseMatrix<Rational> q(dim, dim);
  for (unsigned s = 0; s < dim; ++s) {
    std::vector<int> vars;
    for (int i = 0; i < n; ++i)
      if (s >> i & 1u) vars.push_back(i);
    Rational scale = frac(1, 1) / Rational(factorial(vars.size()));
    do {
      std::vector<Rational> cur(dim);
      cur[0] = 1;
      for (int v : vars) {
        std::vector<Rational> next(dim);
        for (unsigned m = 0; m < dim; ++m)
          if (sgn(cur[m]) != 0) {
            auto t = cl.times_generator(m, v);
            for (unsigned o = 0; o < dim; ++o) next[o] += cur[m] * t[o];
          }
        cur = std::move(next);
      }
      // sign of the permutation relative to sorted order
      int inv = 0;
      for (std::size_t x = 0; x < vars.size(); ++x)
        for (std::size_t y = x + 1; y < vars.size(); ++y) inv += vars[x] > vars[y];
      for (unsigned o = 0; o < dim; ++o)
        if (sgn(cur[o]) != 0) q.add(o, s, inv % 2 ? Rational(-scale * cur[o]) : Rational(scale * cur[o]));
    } while (std::next_permutation(vars.begin(), vars.end()));
  }
  auto qcol = [&](unsigned s) {
    std::vector<Rational> v(dim);
    for (unsigned o = 0; o < dim; ++o) v[o] = q.get(o, s);
    return v;
  };
  for (unsigned a = 0; a < dim; ++a)
    for (unsigned b = 0; b < dim; ++b) {
      // q(a) q(b) in the ordered basis
      std::vector<Rational> prod(dim);
      auto qa = qcol(a), qb = qcol(b);
      for (unsigned x = 0; x < dim; ++x)
        for (unsigned y = 0; y < dim; ++y)
          if (sgn(qa[x]) != 0 && sgn(qb[y]) != 0) {
            auto t = cl.product(x, y);
            for (unsigned o = 0; o < dim; ++o) prod[o] += qa[x] * qb[y] * t[o];
          }
      auto m2 = unshifted_m2(b2, a, b);
      // compare q(m2(a, b)) with q(a) q(b)
      std::vector<Rational> qm(dim);
      for (unsigned s2 = 0; s2 < dim; ++s2)
        if (sgn(m2[s2]) != 0) {
          auto col = qcol(s2);
          for (unsigned o = 0; o < dim; ++o) qm[o] += m2[s2] * col[o];
        }
      if (qm != prod) return {"unequal", c, "m2" + tuple_str({a, b}, n)};
    }
  rep.verdict = cc == 1 ? "equal" : "equal up to global scalar";
  return rep;
}

// ----- cobar homology by direct rank computation -----

struct GradeRank {
  Rational grade;
  std::size_t rank = 0;
};

struct CobarHomology {
  std::vector<GradeRank> ranks;  // nonzero only, sorted by grade
  std::size_t total = 0;
  std::vector<Rational> expected_grades;  // of wedge(V), with multiplicity
  bool matches_expected = false;
};

// Homology of the weight <= N subcomplex of Omega(C_M) (d- lowers weight),
// split by the grading -(2/d) sum wdeg + length, which d raises by 1.
inline CobarHomology cobar_homology(const Potential& w, int N) {
  auto qh = w.quasi_homogeneity();
  int n = w.nvars();
  std::vector<int> a = qh ? qh->first : std::vector<int>(n, 1);
  int d = qh ? qh->second : 2;
  Curvature m(w.poly());
  std::map<Rational, std::vector<Word>> by_grade;
  for (int wt = 0; wt <= N; ++wt)
    for (const auto& word : weight_basis(n, wt)) by_grade[graded_degree(word, d, a)].push_back(word);
  auto rank_from = [&](const Rational& g) -> std::size_t {
    auto src = by_grade.find(g);
    auto dst = by_grade.find(g + 1);
    if (src == by_grade.end() || dst == by_grade.end()) return 0;
    std::map<Word, std::size_t> idx;
    for (std::size_t i = 0; i < dst->second.size(); ++i) idx[dst->second[i]] = i;
    SparseMatrix<Rational> mat(dst->second.size(), src->second.size());
    for (std::size_t j = 0; j < src->second.size(); ++j)
      for (const auto& [word, c] : d_total(CobarVec(src->second[j], Rational(1)), m)) {
        auto it = idx.find(word);
        if (it == idx.end()) throw std::logic_error("differential left the weight window");
        mat.add(it->second, j, c);
      }
    return rank(mat);
  };
  CobarHomology out;
  for (const auto& [g, words] : by_grade) {
    std::size_t h = words.size() - rank_from(g) - rank_from(g - 1);
    if (h) {
      out.ranks.push_back({g, h});
      out.total += h;
    }
  }
  for (unsigned s = 0; s < (1u << n); ++s) {
    long wd = 0;
    for (int i = 0; i < n; ++i)
      if (s >> i & 1u) wd += a[i];
    out.expected_grades.push_back(-frac(2 * wd, d) + Rational(popcount(s)));
  }
  std::sort(out.expected_grades.begin(), out.expected_grades.end());
  std::vector<Rational> got;
  for (const auto& r : out.ranks)
    for (std::size_t k = 0; k < r.rank; ++k) got.push_back(r.grade);
  out.matches_expected = got == out.expected_grades;
  return out;
}

}  // namespace lgk
