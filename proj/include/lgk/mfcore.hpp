#pragma once

#include "lgk/coalgebra.hpp"
#include "lgk/cobar.hpp"
#include "lgk/exactlin.hpp"
#include "lgk/hodge.hpp"
#include "lgk/hpl.hpp"
#include "lgk/polyspace.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lgk {

// ----- polynomial matrices -----

struct PolyMatrix {
  std::size_t rows = 0, cols = 0;
  int nvars = 0;
  std::vector<Poly> e;

  PolyMatrix() = default;
  PolyMatrix(std::size_t r, std::size_t c, int n) : rows(r), cols(c), nvars(n), e(r * c, Poly(n)) {}

  Poly& at(std::size_t i, std::size_t j) { return e[i * cols + j]; }
  const Poly& at(std::size_t i, std::size_t j) const { return e[i * cols + j]; }

  static PolyMatrix scalar(std::size_t r, int n, const Poly& p) {
    PolyMatrix m(r, r, n);
    for (std::size_t i = 0; i < r; ++i) m.at(i, i) = p;
    return m;
  }
  static PolyMatrix identity(std::size_t r, int n) { return scalar(r, n, Poly(n, Monomial(), Rational(1))); }

  PolyMatrix transpose() const {
    PolyMatrix t(cols, rows, nvars);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }
  bool is_zero() const {
    for (const auto& p : e)
      if (!p.is_zero()) return false;
    return true;
  }
  int max_degree() const {
    int d = -1;
    for (const auto& p : e) d = std::max(d, p.degree());
    return d;
  }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("polynomial matrix shape mismatch");
    PolyMatrix out(a.rows, b.cols, std::max(a.nvars, b.nvars));
    for (std::size_t i = 0; i < a.rows; ++i)
      for (std::size_t k = 0; k < a.cols; ++k) {
        if (a.at(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < b.cols; ++j)
          if (!b.at(k, j).is_zero()) out.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    return out;
  }
  friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("polynomial matrix shape mismatch");
    for (std::size_t i = 0; i < a.e.size(); ++i) a.e[i] += b.e[i];
    return a;
  }
  friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("polynomial matrix shape mismatch");
    for (std::size_t i = 0; i < a.e.size(); ++i) a.e[i] -= b.e[i];
    return a;
  }
  friend PolyMatrix operator*(const Rational& c, PolyMatrix a) {
    for (auto& p : a.e) p *= c;
    return a;
  }
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.e == b.e;
  }
};

// Left multiplication by diag(s) and right multiplication by diag(s).
inline PolyMatrix scale_rows(PolyMatrix m, const std::vector<int>& s) {
  for (std::size_t i = 0; i < m.rows; ++i)
    if (s[i] < 0)
      for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = -m.at(i, j);
  return m;
}
inline PolyMatrix scale_cols(PolyMatrix m, const std::vector<int>& s) {
  for (std::size_t j = 0; j < m.cols; ++j)
    if (s[j] < 0)
      for (std::size_t i = 0; i < m.rows; ++i) m.at(i, j) = -m.at(i, j);
  return m;
}

// ----- exterior basis used by k^stab and the reduced cobar model -----

// Masks ordered by size, then value: {1, x, y, x^y, ...}.
inline std::vector<unsigned> exterior_basis(int n) {
  std::vector<unsigned> b(1u << n);
  std::iota(b.begin(), b.end(), 0u);
  std::stable_sort(b.begin(), b.end(), [](unsigned a, unsigned c) {
    return popcount(a) != popcount(c) ? popcount(a) < popcount(c) : a < c;
  });
  return b;
}

// ----- matrix factorizations -----

struct MatrixFactorization {
  int n = 0;
  Poly w;
  std::vector<int> parity;  // 0 even, 1 odd
  PolyMatrix Q;
  std::vector<std::string> labels;
  // graded data: internal degree of each basis vector in units of 1/d
  std::optional<std::vector<Integer>> scaled_degree;
  int degree_unit = 1;  // d
  int twist = 0;        // character index or grading shift
  std::vector<int> weights;

  std::size_t rank() const { return parity.size(); }
};

struct MatrixCofactorization {
  int n = 0;
  Poly w;  // the potential whose dual curvature M acts
  std::vector<int> parity;
  PolyMatrix P;  // P[beta][alpha] = sum_K <e^0 (x) beta, P(e^K (x) alpha)> x^K
  std::vector<std::string> labels;

  std::size_t corank() const { return parity.size(); }
};

struct MfReport {
  bool ok = true;
  std::string witness;  // "(r,c): entry of Q^2 - W Id"
};

inline MfReport verify_mf(const MatrixFactorization& m) {
  MfReport rep;
  std::size_t r = m.rank();
  if (m.Q.rows != r || m.Q.cols != r) return {false, "shape mismatch"};
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (m.parity[i] == m.parity[j] && !m.Q.at(i, j).is_zero())
        return {false, "(" + std::to_string(i) + "," + std::to_string(j) + "): Q is not odd"};
  PolyMatrix diff = m.Q * m.Q - PolyMatrix::scalar(r, m.n, m.w);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (!diff.at(i, j).is_zero()) {
        rep.ok = false;
        rep.witness = "(" + std::to_string(i) + "," + std::to_string(j) + "): " +
                      diff.at(i, j).str(default_var_names(m.n));
        return rep;
      }
  return rep;
}

inline std::string ext_label(unsigned s, int n) { return ext_str(s, default_var_names(n)); }

// Contraction by y_i: sum over the position m of i in S of (-1)^{m-1}.
inline std::optional<std::pair<unsigned, int>> contract(int i, unsigned s) {
  if (!(s >> i & 1u)) return std::nullopt;
  int before = popcount(s & ((1u << i) - 1u));
  return std::make_pair(s & ~(1u << i), before % 2 ? -1 : 1);
}

// Wedge x_i ^ (.), moving x_i to its sorted position.
inline std::optional<std::pair<unsigned, int>> wedge(int i, unsigned s) {
  if (s >> i & 1u) return std::nullopt;
  int before = popcount(s & ((1u << i) - 1u));
  return std::make_pair(s | (1u << i), before % 2 ? -1 : 1);
}

// Internal degree times d of the exterior word x_S: sum 2 a_i - |S| d.
inline Integer exterior_scaled_degree(unsigned s, const std::vector<int>& a, int d) {
  long v = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (s >> i & 1u) v += 2L * a[i] - d;
  return Integer(v);
}

inline void attach_grading(MatrixFactorization& m, const Potential& w, const std::vector<unsigned>& basis) {
  auto qh = w.quasi_homogeneity();
  if (!qh) return;
  const auto& [a, d] = *qh;
  std::vector<Integer> deg;
  for (unsigned s : basis) deg.push_back(exterior_scaled_degree(s, a, d));
  m.scaled_degree = deg;
  m.degree_unit = d;
  m.weights = a;
}

// Q(f (x) alpha) = sum_i x_i f (x) contraction_i alpha + W_i f (x) x_i ^ alpha.
inline MatrixFactorization kstab_from_parts(const Potential& w, const std::vector<Poly>& parts) {
  int n = w.nvars();
  Poly sum(n);
  for (int i = 0; i < n; ++i) sum += Monomial::var(i) * parts[i];
  if (sum != w.poly()) throw std::invalid_argument("invalid splitting: sum x_i W_i != W");
  auto basis = exterior_basis(n);
  std::map<unsigned, std::size_t> pos;
  for (std::size_t j = 0; j < basis.size(); ++j) pos[basis[j]] = j;
  MatrixFactorization m;
  m.n = n;
  m.w = w.poly();
  m.Q = PolyMatrix(basis.size(), basis.size(), n);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    unsigned s = basis[j];
    m.parity.push_back(popcount(s) % 2);
    m.labels.push_back(ext_label(s, n));
    for (int i = 0; i < n; ++i) {
      if (auto c = contract(i, s)) m.Q.at(pos[c->first], j) += Rational(c->second) * Poly(n, Monomial::var(i), 1);
      if (auto e = wedge(i, s)) m.Q.at(pos[e->first], j) += Rational(e->second) * parts[i];
    }
  }
  attach_grading(m, w, basis);
  return m;
}

// The splitting W = sum x_i W_i carried by a Koszul-shaped factorization:
// W_i is the coefficient of x_i in Q(1).
inline std::vector<Poly> read_split(const MatrixFactorization& m) {
  auto basis = exterior_basis(m.n);
  std::vector<Poly> parts;
  for (int i = 0; i < m.n; ++i) {
    auto it = std::find(basis.begin(), basis.end(), 1u << i);
    parts.push_back(m.Q.at(static_cast<std::size_t>(it - basis.begin()), 0));
  }
  return parts;
}

inline MatrixFactorization kstab(const Potential& w, SplitMode mode = SplitMode::Euler) {
  if (!w.kills_linear_terms()) throw std::invalid_argument("potential must have order >= 2");
  return kstab_from_parts(w, w.split(mode));
}

// ----- dualization under the monomial pairing -----

inline std::vector<int> parity_signs(const std::vector<int>& parity) {
  std::vector<int> s;
  for (int p : parity) s.push_back(p ? -1 : 1);
  return s;
}

// Q[alpha][beta] = (-1)^{|beta|} P[beta][alpha]: the Koszul sign of
// precomposing a functional of parity |beta| with the odd map P.
inline MatrixFactorization dualize(const MatrixCofactorization& c) {
  MatrixFactorization m;
  m.n = c.n;
  m.w = c.w;
  m.parity = c.parity;
  m.labels = c.labels;
  m.Q = scale_cols(c.P.transpose(), parity_signs(c.parity));
  return m;
}

inline MatrixCofactorization dualize_inverse(const MatrixFactorization& m) {
  MatrixCofactorization c;
  c.n = m.n;
  c.w = m.w;
  c.parity = m.parity;
  c.labels = m.labels;
  c.P = scale_rows(m.Q.transpose(), parity_signs(m.parity));
  return c;
}

// D(g)(phi) = (-1)^{|g||phi|} phi o g for g : A -> B, so D(g) = g^T S_B^{|g|}
// and D(f g) = (-1)^{|f||g|} D(g) D(f).
inline PolyMatrix dualize_morphism(const PolyMatrix& g, int g_parity, const std::vector<int>& target_parity) {
  PolyMatrix t = g.transpose();
  return g_parity ? scale_cols(t, parity_signs(target_parity)) : t;
}

// The pairing of wedge^k with its dual reverses the order of letters:
// (-1)^{k(k-1)/2} on the exterior basis.
inline std::vector<int> reversal_signs(int n) {
  std::vector<int> s;
  for (unsigned m : exterior_basis(n)) {
    int k = popcount(m);
    s.push_back((k * (k - 1) / 2) % 2 ? -1 : 1);
  }
  return s;
}

inline MatrixFactorization conjugate_by_signs(MatrixFactorization m, const std::vector<int>& s) {
  m.Q = scale_rows(scale_cols(m.Q, s), s);
  return m;
}

// ----- Hom complexes -----

// D(phi) = P phi - (-1)^{|phi|} phi Q for phi : E -> F of pure parity.
inline PolyMatrix hom_differential(const MatrixFactorization& e, const MatrixFactorization& f, const PolyMatrix& phi,
                                   int phi_parity) {
  PolyMatrix a = f.Q * phi;
  PolyMatrix b = phi * e.Q;
  return phi_parity ? a + b : a - b;
}

struct ConeObject {
  MatrixFactorization cone;
  PolyMatrix f;
  int f_parity = 0;
};

// T = [[Q', 0], [f, P]] on E' + F, where E' = E[1] (Q' = -Q, parities
// flipped) for even f and E' = E for odd f.
inline ConeObject cone(const MatrixFactorization& e, const MatrixFactorization& f, const PolyMatrix& phi,
                       int phi_parity) {
  if (!hom_differential(e, f, phi, phi_parity).is_zero()) throw std::invalid_argument("morphism is not closed");
  std::size_t re = e.rank(), rf = f.rank();
  ConeObject out;
  out.f = phi;
  out.f_parity = phi_parity;
  auto& c = out.cone;
  c.n = e.n;
  c.w = e.w;
  c.Q = PolyMatrix(re + rf, re + rf, e.n);
  for (std::size_t j = 0; j < re; ++j) {
    c.parity.push_back(phi_parity ? e.parity[j] : 1 - e.parity[j]);
    c.labels.push_back("E:" + (j < e.labels.size() ? e.labels[j] : std::to_string(j)));
  }
  for (std::size_t j = 0; j < rf; ++j) {
    c.parity.push_back(f.parity[j]);
    c.labels.push_back("F:" + (j < f.labels.size() ? f.labels[j] : std::to_string(j)));
  }
  for (std::size_t i = 0; i < re; ++i)
    for (std::size_t j = 0; j < re; ++j) c.Q.at(i, j) = phi_parity ? e.Q.at(i, j) : -e.Q.at(i, j);
  for (std::size_t i = 0; i < rf; ++i)
    for (std::size_t j = 0; j < re; ++j) c.Q.at(re + i, j) = phi.at(i, j);
  for (std::size_t i = 0; i < rf; ++i)
    for (std::size_t j = 0; j < rf; ++j) c.Q.at(re + i, re + j) = f.Q.at(i, j);
  return out;
}

// An odd H with TH + HT = Id, entries of degree <= cap, by exact linear solve.
inline std::optional<PolyMatrix> contracting_homotopy(const MatrixFactorization& m, int cap) {
  std::size_t r = m.rank();
  int n = m.n;
  std::vector<Monomial> mons;
  for (int k = 0; k <= cap; ++k)
    for (const auto& x : monomials_of_degree(n, k)) mons.push_back(x);
  struct Unknown {
    std::size_t i, j;
    Monomial x;
  };
  std::vector<Unknown> unk;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (m.parity[i] != m.parity[j])
        for (const auto& x : mons) unk.push_back({i, j, x});
  // equation rows indexed by (i, j, monomial)
  std::map<std::tuple<std::size_t, std::size_t, Monomial>, std::size_t> eq;
  auto eq_index = [&](std::size_t i, std::size_t j, const Monomial& x) {
    return eq.try_emplace({i, j, x}, eq.size()).first->second;
  };
  std::vector<std::map<std::size_t, Rational>> cols(unk.size());
  for (std::size_t u = 0; u < unk.size(); ++u) {
    const auto& [i, j, x] = unk[u];
    // T H: (T)_{a i} x  at (a, j);  H T: x (T)_{j b} at (i, b)
    for (std::size_t a = 0; a < r; ++a)
      for (const auto& [t, c] : m.Q.at(a, i).terms()) cols[u][eq_index(a, j, t * x)] += c;
    for (std::size_t b = 0; b < r; ++b)
      for (const auto& [t, c] : m.Q.at(j, b).terms()) cols[u][eq_index(i, b, t * x)] += c;
  }
  for (std::size_t i = 0; i < r; ++i) eq_index(i, i, Monomial());
  SparseMatrix<Rational> a(eq.size(), unk.size());
  for (std::size_t u = 0; u < unk.size(); ++u)
    for (const auto& [row, c] : cols[u])
      if (sgn(c) != 0) a.set(row, u, c);
  std::vector<Rational> rhs(eq.size());
  for (std::size_t i = 0; i < r; ++i) rhs[eq_index(i, i, Monomial())] = 1;
  auto sol = solve(a, rhs);
  if (!sol) return std::nullopt;
  PolyMatrix h(r, r, n);
  for (std::size_t u = 0; u < unk.size(); ++u)
    if (sgn((*sol)[u]) != 0) h.at(unk[u].i, unk[u].j).add(unk[u].x, (*sol)[u]);
  return h;
}

struct HomSlice {
  Rational degree;  // internal degree
  std::size_t dim = 0;
  std::size_t rank = 0;  // homology rank
};

struct HomHomology {
  std::vector<HomSlice> slices;  // only the nonzero homology slices
  std::size_t total = 0;
  bool stabilized = false;
  Rational top_degree;  // last degree examined
};

// Homology of Hom(E, F) sliced by internal degree; both objects must carry
// the same degree unit.  Stops after two consecutive unit intervals of
// internal degree with no homology, or at the cap (in degree units).
inline HomHomology hom_homology(const MatrixFactorization& e, const MatrixFactorization& f, int cap_units = 40) {
  if (!e.scaled_degree || !f.scaled_degree || e.degree_unit != f.degree_unit || e.weights != f.weights)
    throw std::invalid_argument("hom_homology needs graded factorizations of a weighted-homogeneous potential");
  int d = e.degree_unit;
  int n = e.n;
  const auto& a = e.weights;
  const auto& de = *e.scaled_degree;
  const auto& df = *f.scaled_degree;
  HomHomology out;
  if (e.rank() == 0 || f.rank() == 0) {
    out.stabilized = true;
    return out;
  }
  Integer qmin = df[0] - de[0];
  for (const auto& x : df)
    for (const auto& y : de) qmin = std::min(qmin, Integer(x - y));
  long q0 = qmin.get_si();
  // basis of the slice at scaled degree q: (row, col, monomial) with
  // 2 wdeg(x) + df[row] - de[col] = q
  auto slice = [&](long q) {
    std::vector<std::tuple<std::size_t, std::size_t, Monomial>> b;
    for (std::size_t i = 0; i < f.rank(); ++i)
      for (std::size_t j = 0; j < e.rank(); ++j) {
        long rem = q - Integer(df[i] - de[j]).get_si();
        if (rem < 0 || rem % 2) continue;
        for (const auto& x : monomials_of_wdegree(a, static_cast<int>(rem / 2))) b.emplace_back(i, j, x);
      }
    return b;
  };
  auto diff_rank = [&](const std::vector<std::tuple<std::size_t, std::size_t, Monomial>>& src,
                       const std::vector<std::tuple<std::size_t, std::size_t, Monomial>>& dst) -> std::size_t {
    if (src.empty() || dst.empty()) return 0;
    std::map<std::tuple<std::size_t, std::size_t, Monomial>, std::size_t> idx;
    for (std::size_t k = 0; k < dst.size(); ++k) idx[dst[k]] = k;
    SparseMatrix<Rational> m(dst.size(), src.size());
    for (std::size_t k = 0; k < src.size(); ++k) {
      const auto& [i, j, x] = src[k];
      int par = (f.parity[i] + e.parity[j]) % 2;
      PolyMatrix phi(f.rank(), e.rank(), n);
      phi.at(i, j) = Poly(n, x, 1);
      PolyMatrix dphi = hom_differential(e, f, phi, par);
      for (std::size_t r = 0; r < dphi.rows; ++r)
        for (std::size_t c = 0; c < dphi.cols; ++c)
          for (const auto& [t, v] : dphi.at(r, c).terms()) {
            auto it = idx.find({r, c, t});
            if (it == idx.end()) throw std::logic_error("Hom differential left its degree slice");
            m.add(it->second, k, v);
          }
    }
    return rank(m);
  };
  auto prev = slice(q0 - d);
  auto cur = slice(q0);
  std::size_t rank_in = diff_rank(prev, cur);
  long zero_run = 0;
  for (long q = q0;; ++q) {
    auto next = slice(q + d);
    std::size_t rank_out = diff_rank(cur, next);
    std::size_t h = cur.size() - rank_out - rank_in;
    if (h > 0) {
      out.slices.push_back({frac(q, d), cur.size(), h});
      out.total += h;
      zero_run = 0;
    } else {
      ++zero_run;
    }
    out.top_degree = frac(q, d);
    if (zero_run >= 2L * d && q >= q0 + 2L * d) {
      out.stabilized = true;
      break;
    }
    if (q - q0 > static_cast<long>(cap_units) * d) break;
    // slide the window: the rank into q+1 is the rank out of q+1-d
    prev = slice(q + 1 - d);
    cur = slice(q + 1);
    rank_in = diff_rank(prev, cur);
  }
  return out;
}

// ----- signed permutation matching -----

// Is there a parity-preserving signed permutation g with g Q1 g^{-1} = Q2?
inline bool equal_up_to_signed_permutation(const MatrixFactorization& m1, const MatrixFactorization& m2) {
  std::size_t r = m1.rank();
  if (r != m2.rank() || r > 6) return false;
  std::vector<std::size_t> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool par_ok = true;
    for (std::size_t i = 0; i < r; ++i) par_ok = par_ok && m1.parity[i] == m2.parity[perm[i]];
    if (!par_ok) continue;
    for (unsigned signs = 0; signs < (1u << r); ++signs) {
      bool ok = true;
      for (std::size_t i = 0; i < r && ok; ++i)
        for (std::size_t j = 0; j < r && ok; ++j) {
          int s = ((signs >> i & 1u) ^ (signs >> j & 1u)) ? -1 : 1;
          ok = m2.Q.at(perm[i], perm[j]) == Rational(s) * m1.Q.at(i, j);
        }
      if (ok) return true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// ----- the reduced model of Psi(Omega(C_M)) -----

// Elements of C (x) Omega(C): e^K (x) [f_1|..|f_k].
using TensorKey = std::pair<Monomial, Word>;
using TensorVec = SparseVec<TensorKey, Rational>;

namespace detail {

inline std::map<Monomial, CobarVec> split_by_coalgebra(const TensorVec& x) {
  std::map<Monomial, CobarVec> out;
  for (const auto& [key, c] : x) out[key.first].add(key.second, c);
  return out;
}

inline void add_tensor(TensorVec& out, const Monomial& k, const CobarVec& v) {
  for (const auto& [w, c] : v) out.add({k, w}, c);
}

}  // namespace detail

// The twisted differential pieces on C (x) Omega(C_M):
//   d0 = id (x) d+,   delta = id (x) d- + d_tau,
//   d_tau(e^K (x) w) = - sum_{I+J=K, J != 0} e^I (x) [e^J | w].
inline TensorVec tensor_d0(const TensorVec& x) {
  TensorVec out;
  for (const auto& [k, v] : detail::split_by_coalgebra(x)) detail::add_tensor(out, k, d_plus(v));
  return out;
}

inline TensorVec tensor_twist(const TensorVec& x) {
  TensorVec out;
  for (const auto& [key, c] : x)
    for (const auto& [i, j] : coproduct(key.first)) {
      if (j.is_one()) continue;
      Word w;
      w.push_back(j);
      for (const auto& f : key.second) w.push_back(f);
      out.add({i, w}, Rational(-c));
    }
  return out;
}

inline TensorVec tensor_delta(const TensorVec& x, const Curvature& m) {
  TensorVec out = tensor_twist(x);
  for (const auto& [k, v] : detail::split_by_coalgebra(x)) detail::add_tensor(out, k, d_minus(v, m));
  return out;
}

// The central element of the comodule category: -(M-coaction) on the C factor.
inline TensorVec tensor_curvature(const TensorVec& x, const Curvature& m) {
  TensorVec out;
  for (const auto& [key, c] : x)
    for (const auto& [i, j] : coproduct(key.first)) {
      Rational v = m(i);
      if (sgn(v) != 0) out.add({j, key.second}, Rational(-v * c));
    }
  return out;
}

struct PsiReduced {
  MatrixCofactorization cof;
  std::size_t max_series_length = 0;
  bool window_closed = true;  // no entry reached the window cap
};

// Reduces C (x) Omega(C_M) to C (x) wedge(V) with the Hodge retraction
// extended by the identity on C and reads off the comodule map
//   P[beta][alpha] = sum_K <e^0 (x) beta, b1(e^K (x) alpha)> x^K
// for |K| <= N.  b1 is C-colinear, so these coefficients determine it.
inline PsiReduced psi_omega_reduced(const Potential& w, int N, const Hodge& hodge) {
  int n = w.nvars();
  if (!w.kills_linear_terms()) throw std::invalid_argument("potential must have order >= 2");
  Curvature m(w.poly());
  auto basis = exterior_basis(n);
  std::map<unsigned, std::size_t> pos;
  for (std::size_t j = 0; j < basis.size(); ++j) pos[basis[j]] = j;
  PsiReduced out;
  auto& c = out.cof;
  c.n = n;
  c.w = w.poly();
  c.P = PolyMatrix(basis.size(), basis.size(), n);
  for (unsigned s : basis) {
    c.parity.push_back(popcount(s) % 2);
    c.labels.push_back(ext_label(s, n));
  }
  auto H = [&](const TensorVec& x) {
    TensorVec r;
    for (const auto& [k, v] : detail::split_by_coalgebra(x)) detail::add_tensor(r, k, hodge.homotopy(v));
    return r;
  };
  std::size_t cap = 64;
  for (int deg = 0; deg <= N; ++deg)
    for (const auto& K : monomials_of_degree(n, deg))
      for (std::size_t ai = 0; ai < basis.size(); ++ai) {
        TensorVec x;
        detail::add_tensor(x, K, hodge.include(ExtVec(basis[ai], Rational(1))));
        // A x = sum (delta H)^m delta x
        TensorVec term = tensor_delta(x, m);
        TensorVec acc = term;
        std::size_t len = 1;
        while (!term.empty()) {
          if (len > cap) throw NotSmall();
          term = tensor_delta(H(term), m);
          acc += term;
          ++len;
        }
        out.max_series_length = std::max(out.max_series_length, len);
        // p on the e^0 component
        CobarVec at_unit;
        for (const auto& [key, v] : acc)
          if (key.first.is_one()) at_unit.add(key.second, v);
        for (const auto& [s, v] : hodge.project(at_unit)) {
          c.P.at(pos.at(s), ai).add(K, v);
          if (deg == N && N > 0) out.window_closed = false;
        }
      }
  return out;
}

// ----- equivariant and graded generators -----

inline bool invariant_under_scaling(const Potential& w, int d, const std::vector<int>& a) {
  for (const auto& kv : w.poly().terms())
    if (kv.first.wdegree(a) % d != 0) return false;
  return true;
}

inline std::vector<int> action_weights(const Potential& w) {
  if (auto qh = w.quasi_homogeneity()) return qh->first;
  return std::vector<int>(w.nvars(), 1);
}

// k^stab (x) C_chi_j for j = 0..d-1.
inline std::vector<MatrixFactorization> equivariant_generators(const Potential& w, int d,
                                                               SplitMode mode = SplitMode::Euler) {
  if (d < 1) throw std::invalid_argument("group order must be positive");
  auto a = action_weights(w);
  if (!invariant_under_scaling(w, d, a)) throw std::invalid_argument("potential is not invariant under the group");
  std::vector<MatrixFactorization> out;
  MatrixFactorization base = kstab(w, mode);
  for (int j = 0; j < d; ++j) {
    MatrixFactorization m = base;
    m.twist = j;
    out.push_back(std::move(m));
  }
  return out;
}

// Does Q raise the internal degree by exactly 1 (d in scaled units)?
// Entry x at (i, j) sends e_j to x e_i, so deg_i + 2 wdeg(x) = deg_j + d.
inline bool has_degree_one(const MatrixFactorization& m) {
  if (!m.scaled_degree) return false;
  const auto& deg = *m.scaled_degree;
  for (std::size_t i = 0; i < m.rank(); ++i)
    for (std::size_t j = 0; j < m.rank(); ++j)
      for (const auto& kv : m.Q.at(i, j).terms())
        if (deg[i] + 2 * kv.first.wdegree(m.weights) != deg[j] + m.degree_unit) return false;
  return true;
}

// k^stab(d-1), ..., k^stab(0); the twist (j) lowers every internal degree
// by 2j/d.
inline std::vector<MatrixFactorization> graded_generators(const Potential& w, int d,
                                                          SplitMode mode = SplitMode::Euler) {
  auto qh = w.quasi_homogeneity();
  if (!qh || qh->second != d || d < 2) throw std::invalid_argument("potential is not homogeneous of degree " + std::to_string(d));
  MatrixFactorization base = kstab(w, mode);
  std::vector<MatrixFactorization> out;
  for (int j = d - 1; j >= 0; --j) {
    MatrixFactorization m = base;
    m.twist = j;
    for (auto& x : *m.scaled_degree) x -= 2 * j;
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace lgk
