// Acceptance run: one PASS/FAIL line per criterion, exact arithmetic
// throughout, wall-clock limits enforced as part of each verdict.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lgk/ainfty.hpp"
#include "lgk/cobar.hpp"
#include "lgk/corpus.hpp"
#include "lgk/hochschild.hpp"
#include "lgk/hodge.hpp"
#include "lgk/hpl.hpp"
#include "lgk/mfcore.hpp"

using namespace lgk;

namespace {

Potential x_pow(int k) { return make_potential(1, {{{k}, 1}}); }

// Records the first failing item; the verdict is "all items held".
struct Verdict {
  bool ok = true;
  std::string why;
  std::size_t items = 0;

  void expect(bool cond, const std::string& what) {
    ++items;
    if (!cond && ok) {
      ok = false;
      why = what;
    }
  }
};

struct Criterion {
  int id;
  std::string title;
  double limit_s;  // 0: no limit
  std::function<void(Verdict&)> body;
};

// ---------------------------------------------------------------- 1

void ac1(Verdict& v) {
  for (const auto& e : ade_corpus()) {
    auto m = kstab(e.w);
    auto r = verify_mf(m);
    v.expect(r.ok, e.name + ": " + r.witness);
  }
}

// ---------------------------------------------------------------- 2

void ac2(Verdict& v) {
  for (int n = 1; n <= 3; ++n) {
    std::vector<std::pair<std::string, Poly>> ws;
    ws.emplace_back("0", Poly(n));
    Poly x2(n), x3(n), f3(n);
    x2.add(Monomial::var(0, 2), Rational(1));
    x3.add(Monomial::var(0, 3), Rational(1));
    ws.emplace_back("x^2", x2);
    ws.emplace_back("x^3", x3);
    if (n >= 2) {
      f3 = x3;
      f3.add(Monomial::var(1, 3), Rational(1));
      ws.emplace_back("x^3+y^3", f3);
    }
    for (const auto& [name, p] : ws) {
      auto r = check_d_squared(n, Curvature(p), 8);
      v.expect(r.ok && r.words_checked > 0, "dim " + std::to_string(n) + ", W = " + name + ": D^2 != 0 on " +
                                                (r.witness ? r.witness->str(default_var_names(n)) : "?"));
    }
  }
}

// ---------------------------------------------------------------- 3

void ac3(Verdict& v) {
  for (int n = 1; n <= 3; ++n) {
    auto r = verify_hodge(Hodge(n), 6);
    v.expect(r.ok && r.blocks > 0, "dim " + std::to_string(n) + ": " + (r.failures.empty() ? "" : r.failures[0]));
  }
  Hodge h(1);
  for (int N = 2; N <= 6; ++N)
    for (const auto& w : weight_basis(1, N)) {
      CobarVec x(w, Rational(1));
      v.expect(h.green(x) == CobarVec(w, frac(1, N - 1)), "Green eigenvalue at weight " + std::to_string(N));
      CobarVec want;
      for (std::size_t j = 0; j + 1 < w.size(); ++j) {
        Word m;
        for (std::size_t t = 0; t < j; ++t) m.push_back(w[t]);
        m.push_back(w[j] * w[j + 1]);
        for (std::size_t t = j + 2; t < w.size(); ++t) m.push_back(w[t]);
        want.add(m, frac((j + 1) % 2 ? -1 : 1, N - 1));
      }
      v.expect(h.homotopy(x) == want, "homotopy formula on " + w.str({"x"}));
    }
}

// ---------------------------------------------------------------- 4

void ac4(Verdict& v) {
  const std::uint64_t seed = 20240601;
  std::cout << "    random suite seed " << seed << ", 100 instances\n";
  auto r = hpl_random_suite(seed, 100);
  v.expect(r.ok && r.instances == 100 && r.curved > 0, "random: " + r.witness);
  for (const auto& e : ade_corpus()) {
    auto c = hpl_cobar_suite(e.w.nvars(), Curvature(e.w.poly()), 4);
    v.expect(c.ok && c.instances == 1, e.name + ": " + c.witness);
  }
}

// ---------------------------------------------------------------- 5

void ac5(Verdict& v) {
  for (const auto& e : ade_corpus()) {
    int n = e.w.nvars();
    Hodge h(n);
    auto ops = transfer(e.w, n == 1 ? 4 : 3, h);
    v.expect(ops[0].is_zero(), e.name + ": transferred m1 != 0");
    auto ch = cobar_homology(e.w, n == 1 ? 6 : 4);
    v.expect(ch.total == (std::size_t(1) << n) && ch.matches_expected,
             e.name + ": cobar homology total " + std::to_string(ch.total));
  }
  for (const auto& w : {x_pow(3), x_pow(4), make_potential(2, {{{3, 0}, 1}, {{0, 3}, 1}}),
                        make_potential(2, {{{1, 1}, 1}}), make_potential(2, {{{2, 1}, 1}, {{0, 3}, 1}})}) {
    Hodge h(w.nvars());
    auto ops = transfer(w, 4, h);
    auto st = check_stasheff(ops, 4);
    v.expect(st.ok && st.arity_checked == 4,
             w.str() + ": Stasheff fails in arity " + std::to_string(st.failed_arity) + " at " +
                 tuple_str(st.witness, w.nvars()));
  }
  for (int n = 1; n <= 3; ++n) {
    Hodge h(n);
    auto ops = transfer(Potential(n, Poly(n)), 4, h);
    bool formal = is_wedge_product(ops[1]) && ops[0].is_zero();
    for (std::size_t k = 2; k < ops.size(); ++k) formal = formal && ops[k].is_zero();
    v.expect(formal, "W = 0 in dim " + std::to_string(n) + " is not the exterior algebra");
  }
  std::optional<Rational> scalar;
  for (const auto& w : {x_pow(2), make_potential(2, {{{1, 1}, 1}}), make_potential(2, {{{2, 0}, 1}, {{0, 2}, 1}}),
                        make_potential(2, {{{2, 0}, 3}, {{1, 1}, 1}, {{0, 2}, -2}}),
                        make_potential(3, {{{2, 0, 0}, 1}, {{0, 1, 1}, 1}})}) {
    Hodge h(w.nvars());
    auto ops = transfer(w, 2, h);
    auto c = clifford_oracle(w, ops[1]);
    v.expect(c.verdict != "unequal" && c.scalar, w.str() + ": " + c.verdict + " " + c.witness);
    if (!c.scalar) continue;
    if (!scalar) scalar = *c.scalar;
    v.expect(*scalar == *c.scalar, w.str() + ": scalar " + c.scalar->get_str() + " vs " + scalar->get_str());
  }
  if (scalar) std::cout << "    Clifford scalar " << scalar->get_str() << "\n";
}

// ---------------------------------------------------------------- 6

void ac6(Verdict& v) {
  for (const auto& e : ade_corpus()) {
    Hodge h(e.w.nvars());
    auto q = dualize(psi_omega_reduced(e.w, e.w.poly().degree(), h).cof);
    auto r = verify_mf(q);
    v.expect(r.ok, e.name + ": " + r.witness);
  }
  Hodge h1(1);
  auto w = x_pow(2);
  v.expect(equal_up_to_signed_permutation(dualize(psi_omega_reduced(w, 2, h1).cof), kstab(w)),
           "x^2: reduced factorization differs from kstab");
  for (int n = 1; n <= 3; ++n) {
    Hodge h(n);
    Potential zero(n, Poly(n));
    auto q = dualize(psi_omega_reduced(zero, 2, h).cof);
    auto koszul = kstab_from_parts(zero, std::vector<Poly>(n, Poly(n)));
    v.expect(q.Q == conjugate_by_signs(koszul, reversal_signs(n)).Q,
             "W = 0, dim " + std::to_string(n) + ": not the Koszul differential");
  }
}

// ---------------------------------------------------------------- 7

void ac7(Verdict& v) {
  const int N = 12;
  for (const auto& w : {x_pow(2), x_pow(3), x_pow(4), make_potential(2, {{{2, 0}, 1}, {{0, 2}, 1}}),
                        make_potential(2, {{{3, 0}, 1}, {{0, 3}, 1}})}) {
    int n = w.nvars();
    long mu = w.milnor_number().mu;
    auto hh = hh_ranks(w, N);
    v.expect(hh.stable_total == mu && hh.stable_total_by_parity[n % 2] == mu,
             w.str() + ": stable HH " + std::to_string(hh.stable_total) + " in parity " + std::to_string(n % 2) +
                 " vs Milnor " + std::to_string(mu));
    auto bm = n == 1 ? bm_ranks_truncated(w, N) : bm_ranks_truncated(w, 8, dual_grade_range(hh));
    auto mis = duality_mismatch(hh, bm);
    v.expect(!mis && bm.stable_total == mu, w.str() + ": " + mis.value_or("BM total differs"));
    std::cout << "    " << w.str() << ": HH " << hh.stable_total << ", BM " << bm.stable_total << ", mu " << mu << "\n";
  }
}

// ---------------------------------------------------------------- 8

void ac8(Verdict& v) {
  struct Case {
    Potential w;
    int d;
    int window;
  };
  std::vector<Case> cases = {{x_pow(2), 2, 8},
                             {x_pow(3), 3, 9},
                             {make_potential(2, {{{2, 0}, 1}, {{0, 2}, 1}}), 2, 8},
                             {make_potential(2, {{{3, 0}, 1}, {{0, 3}, 1}}), 3, 9}};
  for (const auto& [w, d, N] : cases) {
    auto eq = equivariant_generators(w, d);
    v.expect(static_cast<int>(eq.size()) == d, w.str() + ": " + std::to_string(eq.size()) + " equivariant generators");
    for (const auto& g : eq) v.expect(verify_mf(g).ok, w.str() + ": equivariant generator fails Q^2 = W");
    auto gr = graded_generators(w, d);
    v.expect(static_cast<int>(gr.size()) == d, w.str() + ": graded generator count");
    for (std::size_t i = 0; i < gr.size(); ++i) {
      v.expect(gr[i].twist == d - 1 - static_cast<int>(i), w.str() + ": shift order");
      v.expect(has_degree_one(gr[i]), w.str() + ": Q not of degree one");
    }
    for (const auto& [j, degs] : smash_curvature_degrees(Curvature(w.poly()), d, action_weights(w)))
      for (const auto& q : degs) v.expect(q == 2, w.str() + ": sector " + std::to_string(j) + " curvature degree " + q.get_str());
    auto hh = smash_hh_ranks(w, d, N);
    auto mis = orbifold_mismatch(hh, w, d);
    v.expect(!mis, w.str() + " / Z" + std::to_string(d) + ": " + mis.value_or(""));
    std::cout << "    " << w.str() << " / Z" << d << ": smash HH " << hh.stable_total << "\n";
  }
}

// ---------------------------------------------------------------- 9

void ac9(Verdict& v) {
  // wrong W
  auto m = kstab(x_pow(3));
  m.w = x_pow(2).poly();
  auto r = verify_mf(m);
  v.expect(!r.ok && !r.witness.empty(), "wrong W not detected");
  std::cout << "    wrong W: " << r.witness << "\n";

  // sign-flipped m2 on e_x (x) 1; flipping e_x (x) e_y alone stays associative
  Hodge h(2);
  auto ops = transfer(Potential(2, Poly(2)), 3, h);
  ops[1].at({1, 0}, 1) = -ops[1].at({1, 0}, 1);
  auto st = check_stasheff(ops, 3);
  v.expect(!st.ok && !st.witness.empty(), "flipped m2 not detected");
  std::cout << "    flipped m2: arity " << st.failed_arity << " at " << tuple_str(st.witness, 2) << "\n";

  // broken specialness: H + ip keeps i p = 1 + dH + Hd but H i != 0
  auto inst = cobar_hodge_instance(2, Curvature(Poly(2)), 3, h);
  Retraction bad = inst.r;
  bad.H = bad.H + bad.i * bad.p;
  auto c = verify_retraction(bad);
  auto f = c.first_failure();
  v.expect(f && (f->name == "H i = 0" || f->name == "p H = 0" || f->name == "H^2 = 0") && !f->witness.empty(),
           "broken side condition not detected");
  if (f) std::cout << "    broken specialness: " << f->name << " [" << f->witness << "]\n";
}

}  // namespace

int main() {
  std::vector<Criterion> all = {
      {1, "k^stab squares to W on the corpus", 10, ac1},
      {2, "cobar D^2 = 0 up to weight 8, dim <= 3", 30, ac2},
      {3, "Hodge identities up to weight 6 and the one-variable closed forms", 60, ac3},
      {4, "curved perturbation lemma on random and cobar instances", 120, ac4},
      {5, "minimal model: m1, cobar homology, Stasheff, formality, Clifford", 0, ac5},
      {6, "reduced Psi factorizations", 0, ac6},
      {7, "Hochschild vs Milnor and Borel-Moore duality at window 12", 300, ac7},
      {8, "equivariant and graded generators, smash sectors vs fixed points", 0, ac8},
      {9, "negative controls carry witnesses", 0, ac9},
  };
  int failed = 0;
  for (const auto& c : all) {
    Verdict v;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(v);
    } catch (const std::exception& e) {
      v.expect(false, std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && s >= c.limit_s) v.expect(false, "over the time limit");
    std::ostringstream t;
    t << std::fixed << std::setprecision(2) << s << " s";
    if (c.limit_s > 0) t << " / " << c.limit_s << " s";
    std::cout << "AC" << c.id << " " << (v.ok ? "PASS" : "FAIL") << "  " << c.title << "  (" << v.items
              << " checks, " << t.str() << ")";
    if (!v.ok) std::cout << "  witness: " << v.why;
    std::cout << std::endl;
    failed += !v.ok;
  }
  return failed ? 1 : 0;
}
