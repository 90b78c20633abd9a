#pragma once

#include "lgk/cobar.hpp"
#include "lgk/exactlin.hpp"

#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

namespace lgk {

// ----- exterior algebra on V, basis e_S for S a bitmask -----

using ExtVec = SparseVec<unsigned, Rational>;

inline int popcount(unsigned s) { return __builtin_popcount(s); }

inline std::string ext_str(unsigned s, const std::vector<std::string>& names) {
  if (s == 0) return "1";
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (s >> i & 1u) out += (out.empty() ? "" : "^") + names[i];
  return out;
}

// ----- d* and word blocks -----

// d*[g_1|..|g_k] = sum_i (-1)^{i-1} [..|g_i g_{i+1}|..], adjoint of d+.
template <class Sink>
void d_star_word(const Word& w, const Rational& c, Sink&& sink) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    Word out;
    for (std::size_t j = 0; j < i; ++j) out.push_back(w[j]);
    out.push_back(w[i] * w[i + 1]);
    for (std::size_t j = i + 2; j < w.size(); ++j) out.push_back(w[j]);
    sink(out, (i % 2 == 0) ? c : Rational(-c));
  }
}

inline CobarVec d_star(const CobarVec& x) {
  CobarVec out;
  for (const auto& [w, c] : x) d_star_word(w, c, [&](const Word& o, const Rational& s) { out.add(o, s); });
  return out;
}

// All words of multidegree K and length k with an index.
struct WordBlock {
  Monomial K;
  std::size_t k = 0;
  std::vector<Word> words;
  std::unordered_map<Word, std::size_t, WordHash> index;

  std::size_t size() const { return words.size(); }
  std::size_t at(const Word& w) const { return index.at(w); }
};

inline bool is_squarefree(const Monomial& K) {
  for (int i = 0; i < kMaxVars; ++i)
    if (K.exp(i) > 1) return false;
  return true;
}

// Harmonic words exist only in the blocks hit by antisymmetrization.
inline bool is_harmonic_block(const Monomial& K, std::size_t k) {
  return is_squarefree(K) && static_cast<std::size_t>(K.degree()) == k;
}

inline Integer factorial(std::size_t k) {
  Integer f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

// Sign of the permutation sorting the letters of an all-linear word with
// distinct variables; 0 if the word is not of that shape.
inline int linear_word_sign(const Word& w) {
  std::vector<int> v;
  for (const auto& f : w) {
    int i = f.linear_var();
    if (i < 0) return 0;
    v.push_back(i);
  }
  int s = 1;
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = a + 1; b < v.size(); ++b) {
      if (v[a] == v[b]) return 0;
      if (v[a] > v[b]) s = -s;
    }
  return s;
}

// ----- dense integer matrix with a common denominator -----

struct ScaledMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Integer> a;  // row-major numerators
  Integer den = 1;

  ScaledMatrix() = default;
  ScaledMatrix(std::size_t r, std::size_t c, Integer d = 1) : rows(r), cols(c), a(r * c, 0), den(std::move(d)) {}

  Integer& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Integer& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  Rational value(std::size_t i, std::size_t j) const { return frac(at(i, j), den); }

  static ScaledMatrix identity(std::size_t n) {
    ScaledMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  static ScaledMatrix from_sparse(const SparseMatrix<Integer>& s) {
    ScaledMatrix m(s.rows(), s.cols());
    for (std::size_t i = 0; i < s.rows(); ++i)
      for (const auto& [j, v] : s.row(i)) m.at(i, j) = v;
    return m;
  }

  bool is_zero() const {
    for (const auto& v : a)
      if (sgn(v) != 0) return false;
    return true;
  }

  // Brings numerators over a common denominator with o.
  void rescale_to(const Integer& d) {
    Integer f = d / den;
    if (f != 1)
      for (auto& v : a) v *= f;
    den = d;
  }

  friend ScaledMatrix operator+(ScaledMatrix x, ScaledMatrix y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("shape mismatch");
    Integer l;
    mpz_lcm(l.get_mpz_t(), x.den.get_mpz_t(), y.den.get_mpz_t());
    x.rescale_to(l);
    y.rescale_to(l);
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] += y.a[i];
    return x;
  }
  ScaledMatrix operator-() const {
    ScaledMatrix m = *this;
    for (auto& v : m.a) v = -v;
    return m;
  }
  friend ScaledMatrix operator-(const ScaledMatrix& x, const ScaledMatrix& y) { return x + (-y); }

  friend bool operator==(const ScaledMatrix& x, const ScaledMatrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) return false;
    for (std::size_t i = 0; i < x.a.size(); ++i)
      if (x.a[i] * y.den != y.a[i] * x.den) return false;
    return true;
  }

  SparseMatrix<Rational> to_sparse() const {
    SparseMatrix<Rational> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (sgn(at(i, j)) != 0) m.set(i, j, value(i, j));
    return m;
  }
};

// sparse * dense
inline ScaledMatrix operator*(const SparseMatrix<Integer>& s, const ScaledMatrix& m) {
  if (s.cols() != m.rows) throw std::invalid_argument("shape mismatch");
  ScaledMatrix out(s.rows(), m.cols, m.den);
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (const auto& [k, v] : s.row(i))
      for (std::size_t j = 0; j < m.cols; ++j)
        if (sgn(m.at(k, j)) != 0) out.at(i, j) += v * m.at(k, j);
  return out;
}

// dense * sparse
inline ScaledMatrix operator*(const ScaledMatrix& m, const SparseMatrix<Integer>& s) {
  if (m.cols != s.rows()) throw std::invalid_argument("shape mismatch");
  ScaledMatrix out(m.rows, s.cols(), m.den);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t k = 0; k < m.cols; ++k) {
      const Integer& x = m.at(i, k);
      if (sgn(x) == 0) continue;
      for (const auto& [j, v] : s.row(k)) out.at(i, j) += x * v;
    }
  return out;
}

// dense * dense
inline ScaledMatrix operator*(const ScaledMatrix& x, const ScaledMatrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("shape mismatch");
  ScaledMatrix out(x.rows, y.cols, x.den * y.den);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const Integer& u = x.at(i, k);
      if (sgn(u) == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j)
        if (sgn(y.at(k, j)) != 0) out.at(i, j) += u * y.at(k, j);
    }
  return out;
}

// y = M x for a rational vector x, via one integer matvec.
inline std::vector<Rational> matvec(const ScaledMatrix& m, const std::vector<Rational>& x) {
  Integer D = 1;
  for (const auto& q : x)
    if (sgn(q) != 0) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Integer> u(x.size());
  for (std::size_t j = 0; j < x.size(); ++j)
    if (sgn(x[j]) != 0) u[j] = x[j].get_num() * (D / x[j].get_den());
  std::vector<Rational> y(m.rows);
  Integer den = m.den * D;
  for (std::size_t i = 0; i < m.rows; ++i) {
    Integer s = 0;
    for (std::size_t j = 0; j < m.cols; ++j)
      if (sgn(u[j]) != 0 && sgn(m.at(i, j)) != 0) s += m.at(i, j) * u[j];
    if (sgn(s) != 0) y[i] = frac(s, den);
  }
  return y;
}

// ----- the Hodge data on Omega(sym V) -----

// Blocks, Laplacian, Green's operator and the special retraction
// (i, p, H) of Omega(C) onto the exterior algebra, all blockwise in
// (multidegree, length).  Everything preserves multidegree.
class Hodge {
 public:
  explicit Hodge(int n) : n_(n) {
    if (n < 0 || n > kMaxVars) throw std::invalid_argument("number of variables must be in 0..8");
  }
  int nvars() const { return n_; }

  const WordBlock& block(const Monomial& K, std::size_t k) const {
    auto key = std::make_pair(K.bits(), k);
    auto it = blocks_.find(key);
    if (it != blocks_.end()) return *it->second;
    auto b = std::make_unique<WordBlock>();
    b->K = K;
    b->k = k;
    b->words = block_basis(K, k);
    for (std::size_t i = 0; i < b->words.size(); ++i) b->index.emplace(b->words[i], i);
    return *blocks_.emplace(key, std::move(b)).first->second;
  }

  // d+ : (K, k) -> (K, k+1)
  SparseMatrix<Integer> d_plus_block(const Monomial& K, std::size_t k) const {
    const auto& src = block(K, k);
    const auto& dst = block(K, k + 1);
    SparseMatrix<Integer> m(dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j)
      d_plus_word(src.words[j], Rational(1),
                  [&](const Word& o, const Rational& s) { m.add(dst.at(o), j, s.get_num()); });
    return m;
  }

  // d* : (K, k) -> (K, k-1)
  SparseMatrix<Integer> d_star_block(const Monomial& K, std::size_t k) const {
    const auto& src = block(K, k);
    SparseMatrix<Integer> m(k == 0 ? 0 : block(K, k - 1).size(), src.size());
    if (k == 0) return m;
    const auto& dst = block(K, k - 1);
    for (std::size_t j = 0; j < src.size(); ++j)
      d_star_word(src.words[j], Rational(1),
                  [&](const Word& o, const Rational& s) { m.add(dst.at(o), j, s.get_num()); });
    return m;
  }

  SparseMatrix<Integer> laplacian_block(const Monomial& K, std::size_t k) const {
    std::size_t sz = block(K, k).size();
    SparseMatrix<Integer> lap(sz, sz);
    if (k > 0) lap += d_plus_block(K, k - 1) * d_star_block(K, k);
    lap += d_star_block(K, k + 1) * d_plus_block(K, k);
    return lap;
  }

  // Orthogonal projector onto the harmonic words of the block, i o p.
  ScaledMatrix harmonic_projector(const Monomial& K, std::size_t k) const {
    const auto& b = block(K, k);
    if (!is_harmonic_block(K, k)) return ScaledMatrix(b.size(), b.size());
    ScaledMatrix p(b.size(), b.size(), factorial(k));
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) p.at(i, j) = linear_word_sign(b.words[i]) * linear_word_sign(b.words[j]);
    return p;
  }

  // Green's operator on the block: inverse of the Laplacian off the
  // harmonic words, zero on them.
  const ScaledMatrix& green_block(const Monomial& K, std::size_t k) const {
    auto key = std::make_pair(K.bits(), k);
    auto it = green_.find(key);
    if (it != green_.end()) return it->second;
    // compute on the representative with exponents sorted descending, then relabel
    std::vector<int> order(n_);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return K.exp(a) > K.exp(b); });
    std::vector<int> to_canon(n_);
    for (int c = 0; c < n_; ++c) to_canon[order[c]] = c;
    Monomial C = relabel(K, to_canon);
    ScaledMatrix g;
    if (C == K) {
      g = compute_green(K, k);
    } else {
      const ScaledMatrix& gc = green_block(C, k);
      const auto& bk = block(K, k);
      const auto& bc = block(C, k);
      std::vector<std::size_t> pos(bk.size());
      for (std::size_t i = 0; i < bk.size(); ++i) {
        Word w;
        for (const auto& f : bk.words[i]) w.push_back(relabel(f, to_canon));
        pos[i] = bc.at(w);
      }
      g = ScaledMatrix(bk.size(), bk.size(), gc.den);
      for (std::size_t i = 0; i < bk.size(); ++i)
        for (std::size_t j = 0; j < bk.size(); ++j) g.at(i, j) = gc.at(pos[i], pos[j]);
    }
    return green_.emplace(key, std::move(g)).first->second;
  }

  // H : (K, k) -> (K, k-1), H = -d* G, evaluated through whichever of the
  // equal forms -d* G_k and -G_{k-1} d* touches the smaller block.
  ScaledMatrix homotopy_block(const Monomial& K, std::size_t k) const {
    if (k == 0) return ScaledMatrix(0, block(K, 0).size());
    if (block(K, k - 1).size() < block(K, k).size()) return -(green_block(K, k - 1) * d_star_block(K, k));
    return -(d_star_block(K, k) * green_block(K, k));
  }

  // ----- vector level -----

  // Blocks above this size are never inverted; G v is found by p-adic
  // solving against the Laplacian, which is invertible off the harmonic blocks.
  static constexpr std::size_t kDenseLimit = 160;

  std::vector<Rational> green_apply(const Monomial& K, std::size_t k, const std::vector<Rational>& v) const {
    auto key = std::make_pair(K.bits(), k);
    if (block(K, k).size() <= kDenseLimit || is_harmonic_block(K, k) || green_.count(key))
      return matvec(green_block(K, k), v);
    auto it = solvers_.find(key);
    if (it == solvers_.end()) {
      SparseMatrix<Integer> lap = laplacian_block(K, k);
      DixonSolver::Rows rows(lap.rows());
      for (std::size_t i = 0; i < lap.rows(); ++i)
        for (const auto& [j, c] : lap.row(i)) rows[i].emplace_back(j, c);
      it = solvers_.emplace(key, std::make_unique<DixonSolver>(std::move(rows))).first;
    }
    Integer l = 1;
    for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Integer> b(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) b[i] = v[i].get_num() * (l / v[i].get_den());
    auto [num, den] = it->second->solve(b);
    std::vector<Rational> out(v.size());
    Integer scale = den * l;
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = frac(num[i], scale);
    return out;
  }

  CobarVec green(const CobarVec& x) const {
    return blockwise(x, [&](const Monomial& K, std::size_t k, const std::vector<Rational>& v, CobarVec& out) {
      auto y = green_apply(K, k, v);
      const auto& b = block(K, k);
      for (std::size_t i = 0; i < y.size(); ++i) out.add(b.words[i], y[i]);
    });
  }

  CobarVec homotopy(const CobarVec& x) const {
    return blockwise(x, [&](const Monomial& K, std::size_t k, const std::vector<Rational>& v, CobarVec& out) {
      if (k == 0) return;
      const auto& b = block(K, k);
      if (block(K, k - 1).size() < b.size()) {
        CobarVec part;
        for (std::size_t i = 0; i < v.size(); ++i) part.add(b.words[i], v[i]);
        CobarVec ds = d_star(part);
        const auto& lo = block(K, k - 1);
        std::vector<Rational> u(lo.size());
        for (const auto& [w, c] : ds) u[lo.at(w)] = c;
        auto y = green_apply(K, k - 1, u);
        for (std::size_t i = 0; i < y.size(); ++i) out.add(lo.words[i], -y[i]);
      } else {
        auto y = green_apply(K, k, v);
        CobarVec gx;
        for (std::size_t i = 0; i < y.size(); ++i) gx.add(b.words[i], y[i]);
        out -= d_star(gx);
      }
    });
  }

  // p: canonical quotient onto the exterior algebra.
  ExtVec project(const CobarVec& x) const {
    ExtVec out;
    for (const auto& [w, c] : x) {
      if (w.empty()) {
        out.add(0u, c);
        continue;
      }
      int s = linear_word_sign(w);
      if (s == 0) continue;
      unsigned mask = 0;
      for (const auto& f : w) mask |= 1u << f.linear_var();
      out.add(mask, s > 0 ? c : Rational(-c));
    }
    return out;
  }

  // i: antisymmetrization with the 1/k! normalization.
  CobarVec include(const ExtVec& e) const {
    CobarVec out;
    for (const auto& [mask, c] : e) {
      std::vector<int> vars;
      for (int i = 0; i < n_; ++i)
        if (mask >> i & 1u) vars.push_back(i);
      Rational scale = c / Rational(factorial(vars.size()));
      do {
        Word w;
        for (int v : vars) w.push_back(Monomial::var(v));
        int s = linear_word_sign(w);
        out.add(w, s > 0 ? scale : Rational(-scale));
      } while (std::next_permutation(vars.begin(), vars.end()));
    }
    return out;
  }

 private:
  static Monomial relabel(const Monomial& m, const std::vector<int>& to) {
    std::vector<int> e(kMaxVars, 0);
    for (std::size_t i = 0; i < to.size(); ++i) e[to[i]] = m.exp(static_cast<int>(i));
    return Monomial(e);
  }

  ScaledMatrix compute_green(const Monomial& K, std::size_t k) const {
    const auto& b = block(K, k);
    std::size_t sz = b.size();
    if (sz == 0) return ScaledMatrix(0, 0);
    SparseMatrix<Integer> lap = laplacian_block(K, k);
    bool harm = is_harmonic_block(K, k);
    // k!(L + P) is an integer matrix and invertible
    Integer kf = harm ? factorial(k) : Integer(1);
    ScaledMatrix proj = harmonic_projector(K, k);
    std::vector<std::vector<Integer>> a(sz, std::vector<Integer>(sz, 0));
    for (std::size_t i = 0; i < sz; ++i) {
      for (const auto& [j, v] : lap.row(i)) a[i][j] = kf * v;
      if (harm)
        for (std::size_t j = 0; j < sz; ++j) a[i][j] += proj.at(i, j);
    }
    auto inv = integer_inverse(a);
    // (L+P)^{-1} = kf adj / det ; G = (L+P)^{-1} - P
    ScaledMatrix g(sz, sz, inv.det);
    for (std::size_t i = 0; i < sz; ++i)
      for (std::size_t j = 0; j < sz; ++j) g.at(i, j) = kf * inv.adj[i][j];
    if (harm) g = g - proj;
    if (sgn(g.den) < 0) {
      g.den = -g.den;
      for (auto& v : g.a) v = -v;
    }
    // reduce the common denominator
    Integer gcd = g.den;
    for (const auto& v : g.a) {
      if (gcd == 1) break;
      if (sgn(v) != 0) mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), v.get_mpz_t());
    }
    if (gcd != 1) {
      for (auto& v : g.a) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), gcd.get_mpz_t());
      mpz_divexact(g.den.get_mpz_t(), g.den.get_mpz_t(), gcd.get_mpz_t());
    }
    return g;
  }

  template <class Fn>
  CobarVec blockwise(const CobarVec& x, Fn&& fn) const {
    std::map<std::pair<std::uint64_t, std::size_t>, std::vector<std::pair<Word, Rational>>> groups;
    for (const auto& [w, c] : x) groups[{w.multidegree().bits(), w.size()}].emplace_back(w, c);
    CobarVec out;
    for (const auto& [key, terms] : groups) {
      Monomial K = Monomial::from_bits(key.first);
      const auto& b = block(K, key.second);
      std::vector<Rational> v(b.size());
      for (const auto& [w, c] : terms) v[b.at(w)] = c;
      fn(K, key.second, v, out);
    }
    return out;
  }

  int n_;
  mutable std::map<std::pair<std::uint64_t, std::size_t>, std::unique_ptr<WordBlock>> blocks_;
  mutable std::map<std::pair<std::uint64_t, std::size_t>, ScaledMatrix> green_;
  mutable std::map<std::pair<std::uint64_t, std::size_t>, std::unique_ptr<DixonSolver>> solvers_;
};

// ----- verification suite -----

inline SparseMatrix<Rational> to_rational(const SparseMatrix<Integer>& m) {
  SparseMatrix<Rational> r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& [j, v] : m.row(i)) r.set(i, j, Rational(v));
  return r;
}


struct HodgeReport {
  bool ok = true;
  std::vector<std::string> failures;  // first few witnesses
  std::size_t blocks = 0;
  void fail(const std::string& what) {
    ok = false;
    if (failures.size() < 8) failures.push_back(what);
  }
};

// Checks, on every block of weight <= N:
//   adjointness of d+ and d*, the Hodge dimension identity and orthogonality,
//   L G = G L = 1 - P, d* G = G d*, d G = G d,
//   the retraction identities p i = 1, i p = 1 + dH + Hd, Hi = 0, pH = 0, H^2 = 0,
//   and that i p is an orthogonal projection.
inline HodgeReport verify_hodge(const Hodge& h, int N) {
  HodgeReport rep;
  int n = h.nvars();
  auto names = default_var_names(n);
  for (int wt = 0; wt <= N; ++wt)
    for (const auto& K : monomials_of_degree(n, wt)) {
      std::string tag = "K=" + K.str(names);
      std::size_t top = static_cast<std::size_t>(wt);
      for (std::size_t k = (wt == 0 ? 0 : 1); k <= top; ++k) {
        ++rep.blocks;
        std::string bt = tag + " k=" + std::to_string(k);
        const auto& b = h.block(K, k);
        std::size_t sz = b.size();
        auto dp = h.d_plus_block(K, k);
        auto ds_up = h.d_star_block(K, k + 1);
        if (ds_up != dp.transpose()) rep.fail("adjointness " + bt);
        // dimension identity
        std::size_t r_in = k > 0 ? rank(to_rational(h.d_plus_block(K, k - 1))) : 0;
        std::size_t r_star = rank(to_rational(ds_up));
        // one harmonic class per squarefree K in length |K|; the unit at weight 0
        std::size_t hdim = (wt == 0 || is_harmonic_block(K, k)) ? 1 : 0;
        if (sz != hdim + r_in + r_star) rep.fail("hodge dimension " + bt);
        auto dstar = h.d_star_block(K, k);
        if (k > 0 && !(dstar * ds_up).is_zero_matrix()) rep.fail("orthogonality d/d* " + bt);
        ScaledMatrix P = h.harmonic_projector(K, k);
        if (wt == 0) P = ScaledMatrix::identity(1);
        if (k > 0 && !(P * h.d_plus_block(K, k - 1)).is_zero()) rep.fail("orthogonality harmonic/d " + bt);
        if (!(P * ds_up).is_zero()) rep.fail("orthogonality harmonic/d* " + bt);
        // Green
        if (wt > 0) {
          const auto& G = h.green_block(K, k);
          auto L = h.laplacian_block(K, k);
          ScaledMatrix off = ScaledMatrix::identity(sz) - P;
          if (!(L * G == off) || !(G * L == off)) rep.fail("green inverse " + bt);
          if (k > 1 && !(dstar * G == h.green_block(K, k - 1) * dstar)) rep.fail("green commutes with d* " + bt);
          if (k < top && !(dp * G == h.green_block(K, k + 1) * dp)) rep.fail("green commutes with d " + bt);
        }
        // retraction: i p = 1 + dH + Hd on the block
        ScaledMatrix homot(sz, sz);
        if (wt > 0) {
          if (k > 1) homot = homot + h.d_plus_block(K, k - 1) * h.homotopy_block(K, k);
          if (k < top) homot = homot + h.homotopy_block(K, k + 1) * dp;
        }
        if (!(P == ScaledMatrix::identity(sz) + homot)) rep.fail("ip = 1 + dH + Hd " + bt);
        if (!(P * P == P)) rep.fail("ip idempotent " + bt);
        for (std::size_t i = 0; i < sz; ++i)
          for (std::size_t j = 0; j < i; ++j)
            if (P.at(i, j) != P.at(j, i)) rep.fail("ip self-adjoint " + bt);
        if (wt > 0 && k >= 1) {
          ScaledMatrix H = h.homotopy_block(K, k);
          if (!(H * P).is_zero()) rep.fail("Hi = 0 " + bt);
          if (k >= 2) {
            // H_{k-1} H_k with H_{k-1} = -G d* and H_k = -d* G
            ScaledMatrix inner = h.d_star_block(K, k - 1) * (h.d_star_block(K, k) * h.green_block(K, k));
            if (!(h.green_block(K, k - 2) * inner).is_zero()) rep.fail("H^2 = 0 " + bt);
            // the two forms of H agree
            ScaledMatrix h_alt = -(h.green_block(K, k - 1) * h.d_star_block(K, k));
            ScaledMatrix h_std = -(h.d_star_block(K, k) * h.green_block(K, k));
            if (!(h_alt == h_std)) rep.fail("H forms agree " + bt);
          }
        }
      }
    }
  // p i = id and pH = 0 at the vector level on every exterior basis element
  for (unsigned s = 0; s < (1u << n); ++s) {
    if (popcount(s) > N) continue;
    ExtVec e(s, Rational(1));
    if (!(h.project(h.include(e)) == e)) rep.fail("pi = 1 at " + ext_str(s, names));
    if (!h.homotopy(h.include(e)).empty()) rep.fail("Hi = 0 at " + ext_str(s, names));
  }
  for (int wt = 1; wt <= N; ++wt)
    for (const auto& w : weight_basis(n, wt))
      if (!h.project(h.homotopy(CobarVec(w, Rational(1)))).empty()) rep.fail("pH = 0 at " + w.str(names));
  return rep;
}

}  // namespace lgk
