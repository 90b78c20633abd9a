#pragma once

#include "lgk/exactlin.hpp"
#include "lgk/hodge.hpp"
#include "lgk/report.hpp"

#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace lgk {

using Mat = SparseMatrix<Rational>;

// Retraction data between (L, b) and (M, d):
//   i : L -> M, p : M -> L, H : M -> M.
// f_big, when present, is the central element d^2 of a precomplex; the small
// side then carries b^2 = p f_big i.
struct Retraction {
  Mat d, b, i, p, H;
  std::optional<Mat> f_big;

  std::size_t big() const { return d.rows(); }
  std::size_t small() const { return b.rows(); }
};

class NotSmall : public std::runtime_error {
 public:
  NotSmall() : std::runtime_error("perturbation not small") {}
};

class NotCurved : public std::runtime_error {
 public:
  NotCurved() : std::runtime_error("not a curved perturbation") {}
};

namespace detail {

inline std::string matrix_witness(const Mat& diff) {
  auto nz = diff.first_nonzero();
  if (!nz) return {};
  return "basis vector " + std::to_string(nz->second) + ", component " + std::to_string(nz->first) + ": " +
         diff.get(nz->first, nz->second).get_str();
}

inline void expect_equal(CheckList& out, const std::string& name, const Mat& lhs, const Mat& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
    out.add(name, false, "shape mismatch");
    return;
  }
  Mat diff = lhs - rhs;
  out.add(name, diff.is_zero_matrix(), matrix_witness(diff));
}

inline Mat zero(std::size_t r, std::size_t c) { return Mat(r, c); }

}  // namespace detail

// Smallest m with (delta H)^m = 0; the window dimension + 1 bounds the search.
inline std::size_t nilpotence_index(const Mat& delta, const Mat& H) {
  Mat dh = delta * H;
  Mat pw = Mat::identity(dh.rows());
  std::size_t limit = dh.rows() + 1;
  for (std::size_t m = 0; m <= limit; ++m) {
    if (pw.is_zero_matrix()) return m;
    pw = dh * pw;
  }
  throw NotSmall();
}

// A = sum_m (delta H)^m delta, as a terminating series.
inline Mat perturbation_series(const Mat& delta, const Mat& H) {
  Mat dh = delta * H;
  Mat term = delta;
  Mat acc(delta.rows(), delta.cols());
  std::size_t limit = delta.rows() + 1;
  for (std::size_t m = 0; !term.is_zero_matrix(); ++m) {
    if (m > limit) throw NotSmall();
    acc += term;
    term = dh * term;
  }
  return acc;
}

// True when f is a scalar multiple of the identity on each block of the
// partition (block[i] names the block of basis vector i).
inline bool is_blockwise_scalar(const Mat& f, const std::vector<int>& block) {
  std::map<int, std::optional<Rational>> scal;
  for (std::size_t r = 0; r < f.rows(); ++r) {
    for (const auto& [c, v] : f.row(r))
      if (c != r) return false;
    Rational v = f.get(r, r);
    auto& s = scal[block.empty() ? 0 : block[r]];
    if (!s) s = v;
    if (*s != v) return false;
  }
  return true;
}

struct Perturbed {
  Retraction r;      // (i1, p1, H1) between (L, b1) and (M, d + delta)
  Mat A;
  Mat F;             // (d + delta)^2
  std::size_t nilpotence = 0;
};

// Curved perturbation lemma.  When `prescribed` is given, (d + delta)^2 must
// equal it and commute with the data; otherwise it must be blockwise scalar.
inline Perturbed perturb(const Retraction& r, const Mat& delta, const std::optional<Mat>& prescribed = std::nullopt,
                         const std::vector<int>& blocks = {}) {
  Mat d1 = r.d + delta;
  Mat F = d1 * d1;
  if (prescribed) {
    if (F != *prescribed) throw NotCurved();
    if (F * d1 != d1 * F || F * r.H != r.H * F) throw NotCurved();
  } else if (!is_blockwise_scalar(F, blocks)) {
    throw NotCurved();
  }
  Perturbed out;
  out.nilpotence = nilpotence_index(delta, r.H);
  out.A = perturbation_series(delta, r.H);
  const Mat& A = out.A;
  Mat Ai = A * r.i;
  Mat AH = A * r.H;
  out.r.d = d1;
  out.r.b = r.b + r.p * Ai;
  out.r.i = r.i + r.H * Ai;
  out.r.p = r.p + r.p * AH;
  out.r.H = r.H + r.H * AH;
  out.F = F;
  if (!F.is_zero_matrix()) out.r.f_big = F;
  return out;
}

// The five conclusions for a (possibly curved) special retraction.
inline CheckList verify_retraction(const Retraction& r) {
  using detail::expect_equal;
  CheckList out;
  std::size_t nb = r.big(), ns = r.small();
  Mat F = r.f_big ? *r.f_big : Mat(nb, nb);
  Mat b2 = r.b * r.b;
  expect_equal(out, "d^2 = F", r.d * r.d, F);
  expect_equal(out, "b^2 = pFi", b2, r.p * F * r.i);
  expect_equal(out, "b^2 central", b2 * r.b, r.b * b2);
  expect_equal(out, "d i = i b", r.d * r.i, r.i * r.b);
  expect_equal(out, "b p = p d", r.b * r.p, r.p * r.d);
  expect_equal(out, "p i = id", r.p * r.i, Mat::identity(ns));
  expect_equal(out, "i p = id + dH + Hd", r.i * r.p, Mat::identity(nb) + r.d * r.H + r.H * r.d);
  expect_equal(out, "H i = 0", r.H * r.i, detail::zero(nb, ns));
  expect_equal(out, "p H = 0", r.p * r.H, detail::zero(ns, nb));
  expect_equal(out, "H^2 = 0", r.H * r.H, detail::zero(nb, nb));
  return out;
}

// The auxiliary identities behind the lemma.
inline CheckList verify_series_identities(const Retraction& r, const Mat& delta, const Mat& A, const Mat& F) {
  using detail::expect_equal;
  CheckList out;
  std::size_t nb = r.big();
  Mat I = Mat::identity(nb);
  expect_equal(out, "delta H A = A - delta", delta * r.H * A, A - delta);
  expect_equal(out, "A H delta = A - delta", A * r.H * delta, A - delta);
  Mat inv1 = I + A * r.H;
  Mat inv2 = I + r.H * A;
  expect_equal(out, "(1 - delta H)(1 + AH) = 1", (I - delta * r.H) * inv1, I);
  expect_equal(out, "(1 + AH)(1 - delta H) = 1", inv1 * (I - delta * r.H), I);
  expect_equal(out, "(1 - H delta)(1 + HA) = 1", (I - r.H * delta) * inv2, I);
  expect_equal(out, "(1 + HA)(1 - H delta) = 1", inv2 * (I - r.H * delta), I);
  expect_equal(out, "AipA + Ad + dA = F + FAH + FHA", A * r.i * r.p * A + A * r.d + r.d * A,
               F + F * A * r.H + F * r.H * A);
  return out;
}

// ----- instances -----

// Hodge retraction of the weight <= N window of Omega(sym V) onto the
// exterior algebra, with delta = d- for the given curvature.
struct CobarInstance {
  Retraction r;
  Mat delta;
  std::vector<Word> words;
  std::vector<unsigned> ext;
};

inline CobarInstance cobar_hodge_instance(int n, const Curvature& m, int N, const Hodge& hodge) {
  CobarInstance inst;
  for (int wt = 0; wt <= N; ++wt)
    for (const auto& w : weight_basis(n, wt)) inst.words.push_back(w);
  std::unordered_map<Word, std::size_t, WordHash> idx;
  for (std::size_t j = 0; j < inst.words.size(); ++j) idx.emplace(inst.words[j], j);
  for (unsigned s = 0; s < (1u << n); ++s)
    if (popcount(s) <= N) inst.ext.push_back(s);
  std::map<unsigned, std::size_t> eidx;
  for (std::size_t j = 0; j < inst.ext.size(); ++j) eidx[inst.ext[j]] = j;
  std::size_t nb = inst.words.size(), ns = inst.ext.size();
  inst.r.d = Mat(nb, nb);
  inst.r.H = Mat(nb, nb);
  inst.r.p = Mat(ns, nb);
  inst.r.i = Mat(nb, ns);
  inst.r.b = Mat(ns, ns);
  inst.delta = Mat(nb, nb);
  for (std::size_t j = 0; j < nb; ++j) {
    CobarVec x(inst.words[j], Rational(1));
    for (const auto& [w, c] : d_plus(x)) inst.r.d.set(idx.at(w), j, c);
    for (const auto& [w, c] : d_minus(x, m)) inst.delta.set(idx.at(w), j, c);
    for (const auto& [w, c] : hodge.homotopy(x)) inst.r.H.set(idx.at(w), j, c);
    for (const auto& [s, c] : hodge.project(x)) inst.r.p.set(eidx.at(s), j, c);
  }
  for (std::size_t j = 0; j < ns; ++j)
    for (const auto& [w, c] : hodge.include(ExtVec(inst.ext[j], Rational(1)))) inst.r.i.set(idx.at(w), j, c);
  return inst;
}

// A random special retraction carrying a curved perturbation that strictly
// raises a nilpotent filtration degree:
//   N = L + acyclic pairs, conjugated by a random even automorphism;
//   M = N (x) k^{1|1} (x) k[t]/t^m, delta = eps (x) [[0,a],[c,0]] (x) t,
// so (d + delta)^2 = ac t^2, central for t-linear maps; then everything is
// conjugated by 1 + tR.  With a c = 0 the perturbation is flat.
struct CurvedInstance {
  Retraction r;
  Mat delta;
  Mat F;
  std::vector<int> parity;
  Rational curvature_scalar;
};

namespace detail {

inline Mat random_unipotent(std::mt19937_64& rng, const std::vector<int>& parity) {
  std::size_t n = parity.size();
  std::uniform_int_distribution<int> v(-2, 2);
  Mat lower = Mat::identity(n), upper = Mat::identity(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (parity[a] == parity[b]) {
        lower.set(a, b, v(rng));
        upper.set(b, a, v(rng));
      }
  return lower * upper;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (const auto& [c, v] : a.row(r))
      for (std::size_t r2 = 0; r2 < b.rows(); ++r2)
        for (const auto& [c2, w] : b.row(r2)) out.set(r * b.rows() + r2, c * b.cols() + c2, v * w);
  return out;
}

}  // namespace detail

inline CurvedInstance random_curved_instance(std::mt19937_64& rng, bool flat = false) {
  using detail::kron;
  std::uniform_int_distribution<int> coin(0, 1), small(-3, 3);
  // ---- N with its special retraction onto L ----
  std::vector<int> par_l, par_n;
  int l_free = 1 + static_cast<int>(rng() % 3);
  for (int j = 0; j < l_free; ++j) par_l.push_back(coin(rng));
  bool l_pair = coin(rng);
  if (l_pair) {
    int q = coin(rng);
    par_l.push_back(q);
    par_l.push_back(1 - q);
  }
  std::size_t nl = par_l.size();
  par_n = par_l;
  int pairs = 1 + static_cast<int>(rng() % 3);
  for (int j = 0; j < pairs; ++j) {
    int q = coin(rng);
    par_n.push_back(q);
    par_n.push_back(1 - q);
  }
  std::size_t nn = par_n.size();
  Mat dN(nn, nn), hN(nn, nn), iN(nn, nl), pN(nl, nn), bL(nl, nl);
  for (std::size_t j = 0; j < nl; ++j) {
    iN.set(j, j, 1);
    pN.set(j, j, 1);
  }
  if (l_pair) {
    bL.set(nl - 1, nl - 2, 1);
    dN.set(nl - 1, nl - 2, 1);
  }
  for (std::size_t u = nl; u < nn; u += 2) {
    dN.set(u + 1, u, 1);
    hN.set(u, u + 1, -1);
  }
  Mat g = detail::random_unipotent(rng, par_n);
  Mat gi = *inverse(g);
  dN = g * dN * gi;
  hN = g * hN * gi;
  iN = g * iN;
  pN = pN * gi;
  Mat eps(nn, nn);
  for (std::size_t j = 0; j < nn; ++j) eps.set(j, j, par_n[j] ? -1 : 1);

  // ---- tensor with k^{1|1} and k[t]/t^m ----
  std::size_t m = 3 + rng() % 2;
  Mat t(m, m);
  for (std::size_t j = 0; j + 1 < m; ++j) t.set(j + 1, j, 1);
  Mat one_t = Mat::identity(m), one_s = Mat::identity(2);
  Rational a = small(rng), c = small(rng);
  if (a == 0) a = 1;
  if (c == 0) c = -1;
  if (flat) c = 0;
  Mat X(2, 2);
  X.set(0, 1, a);
  X.set(1, 0, c);
  auto lift = [&](const Mat& x) { return kron(kron(x, one_s), one_t); };

  CurvedInstance inst;
  inst.r.d = lift(dN);
  inst.r.H = lift(hN);
  inst.r.i = lift(iN);
  inst.r.p = lift(pN);
  inst.r.b = lift(bL);
  inst.delta = kron(kron(eps, X), t);
  inst.curvature_scalar = a * c;
  inst.F = (a * c) * kron(kron(Mat::identity(nn), one_s), t * t);
  for (std::size_t j = 0; j < nn; ++j)
    for (int s = 0; s < 2; ++s)
      for (std::size_t q = 0; q < m; ++q) inst.parity.push_back(par_n[j] ^ s);

  // ---- conjugate by 1 + tR with R even ----
  std::size_t big = inst.r.d.rows();
  std::vector<int> par_ns;
  for (std::size_t j = 0; j < nn; ++j)
    for (int s = 0; s < 2; ++s) par_ns.push_back(par_n[j] ^ s);
  Mat R(2 * nn, 2 * nn);
  for (std::size_t x = 0; x < 2 * nn; ++x)
    for (std::size_t y = 0; y < 2 * nn; ++y)
      if (par_ns[x] == par_ns[y] && coin(rng)) R.set(x, y, small(rng));
  Mat tR = kron(R, t);
  Mat G = Mat::identity(big) + tR;
  Mat Gi = Mat::identity(big), pw = Mat::identity(big);
  for (std::size_t j = 1; j < m; ++j) {
    pw = (Rational(-1) * tR) * pw;
    Gi += pw;
  }
  inst.r.d = G * inst.r.d * Gi;
  inst.r.H = G * inst.r.H * Gi;
  inst.r.i = G * inst.r.i;
  inst.r.p = inst.r.p * Gi;
  inst.delta = G * inst.delta * Gi;
  inst.F = G * inst.F * Gi;
  return inst;
}

// ----- suites -----

struct HplSuiteReport {
  bool ok = true;
  std::size_t instances = 0;
  std::size_t curved = 0;
  std::string witness;
};

namespace detail {

inline bool record(HplSuiteReport& rep, const std::string& where, const CheckList& c) {
  if (c.ok()) return true;
  rep.ok = false;
  auto f = c.first_failure();
  rep.witness = where + ": " + f->name + " (" + f->witness + ")";
  return false;
}

}  // namespace detail

// The five conclusions and the series identities on `count` seeded random
// special retractions (every fifth perturbation flat).
inline HplSuiteReport hpl_random_suite(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  HplSuiteReport rep;
  for (int t = 0; t < count; ++t) {
    auto inst = random_curved_instance(rng, t % 5 == 0);
    std::string where = "instance " + std::to_string(t);
    if (!detail::record(rep, where + " input", verify_retraction(inst.r))) return rep;
    auto out = perturb(inst.r, inst.delta, inst.F);
    ++rep.instances;
    if (!inst.F.is_zero_matrix()) ++rep.curved;
    if (!detail::record(rep, where, verify_retraction(out.r))) return rep;
    if (!detail::record(rep, where, verify_series_identities(inst.r, inst.delta, out.A, out.F))) return rep;
  }
  return rep;
}

// The same checks on the Hodge retraction of the weight <= N cobar window
// perturbed by d- of the given curvature.
inline HplSuiteReport hpl_cobar_suite(int n, const Curvature& m, int N) {
  Hodge h(n);
  auto inst = cobar_hodge_instance(n, m, N, h);
  HplSuiteReport rep;
  if (!detail::record(rep, "input", verify_retraction(inst.r))) return rep;
  auto out = perturb(inst.r, inst.delta);
  rep.instances = 1;
  if (!out.F.is_zero_matrix()) rep.curved = 1;
  if (!detail::record(rep, "perturbed", verify_retraction(out.r))) return rep;
  detail::record(rep, "series", verify_series_identities(inst.r, inst.delta, out.A, out.F));
  return rep;
}

}  // namespace lgk
