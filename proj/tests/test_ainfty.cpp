#include <gtest/gtest.h>

#include "lgk/ainfty.hpp"
#include "lgk/corpus.hpp"

#include <chrono>

using namespace lgk;

namespace {

// Unshifted internal degree times d of x_S: sum 2 a_i - |S| d, negated
// to match the cobar grading |S| - (2/d) sum a_i.
Rational ext_degree(unsigned s, const std::vector<int>& a, int d) {
  long wd = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (s >> i & 1u) wd += a[i];
  return Rational(popcount(s)) - frac(2 * wd, d);
}

}  // namespace

TEST(Wedge, MaskProductSigns) {
  EXPECT_EQ(wedge_masks(0b01, 0b10)->second, 1);
  EXPECT_EQ(wedge_masks(0b10, 0b01)->second, -1);
  EXPECT_FALSE(wedge_masks(0b11, 0b01).has_value());
  EXPECT_EQ(wedge_masks(0b101, 0b010)->second, -1);
}

TEST(Transfer, ZeroPotentialIsExteriorAlgebra) {
  for (int n = 1; n <= 3; ++n) {
    Hodge h(n);
    auto ops = transfer(Potential(n, Poly(n)), n == 3 ? 3 : 4, h);
    EXPECT_TRUE(ops[0].is_zero());
    EXPECT_TRUE(is_wedge_product(ops[1])) << n;
    for (std::size_t k = 2; k < ops.size(); ++k) EXPECT_TRUE(ops[k].is_zero()) << n << " arity " << k + 1;
  }
}

TEST(Transfer, PruningOnlySkipsZeros) {
  for (const auto& w : {make_potential(1, {{{3}, 1}}), make_potential(2, {{{2, 1}, 1}, {{0, 3}, 1}}),
                        make_potential(2, {{{1, 1}, 1}})}) {
    Hodge h(w.nvars());
    int cap = w.nvars() == 1 ? 4 : 3;
    auto pruned = transfer(w, cap, h);
    auto full = transfer(w, cap, h, false);
    for (int k = 0; k < cap; ++k) EXPECT_EQ(pruned[k].c, full[k].c) << w.str() << " arity " << k + 1;
  }
}

TEST(Transfer, DifferentialVanishes) {
  for (const auto& e : ade_corpus()) {
    Hodge h(e.w.nvars());
    EXPECT_TRUE(transfer(e.w, 1, h)[0].is_zero()) << e.name;
  }
}

TEST(Transfer, QuadraticLine) {
  Hodge h(1);
  auto ops = transfer(make_potential(1, {{{2}, 1}}), 4, h);
  auto m = unshifted_m2(ops[1], 1, 1);
  EXPECT_EQ(m[0], Rational(-1));
  EXPECT_EQ(m[1], Rational(0));
  EXPECT_TRUE(ops[2].is_zero());
  EXPECT_TRUE(ops[3].is_zero());
  EXPECT_TRUE(check_stasheff(ops, 4).ok);
}

TEST(Transfer, CubicLineHasTernaryProduct) {
  Hodge h(1);
  auto ops = transfer(make_potential(1, {{{3}, 1}}), 4, h);
  EXPECT_TRUE(is_wedge_product(ops[1]));
  EXPECT_NE(ops[2].at({1, 1, 1}, 0), Rational(0));
  EXPECT_EQ(ops[2].at({1, 1, 1}, 1), Rational(0));
  EXPECT_TRUE(check_stasheff(ops, 4).ok);
}

// The first correction to the exterior algebra appears in arity r = order(W).
TEST(Transfer, FirstCorrectionAtOrder) {
  Hodge h(1);
  for (int r = 2; r <= 4; ++r) {
    auto ops = transfer(make_potential(1, {{{r}, 1}}), 4, h);
    if (r > 2) { EXPECT_TRUE(is_wedge_product(ops[1])) << r; }
    for (int k = 3; k < r; ++k) EXPECT_TRUE(ops[k - 1].is_zero()) << r << " arity " << k;
    if (r == 2)
      EXPECT_FALSE(is_wedge_product(ops[1]));
    else
      EXPECT_FALSE(ops[r - 1].is_zero()) << r;
  }
}

TEST(Transfer, OperationsAreHomogeneous) {
  for (const auto& e : ade_corpus()) {
    int n = e.w.nvars();
    auto qh = e.w.quasi_homogeneity();
    ASSERT_TRUE(qh.has_value());
    const auto& [a, d] = *qh;
    Hodge h(n);
    int cap = n == 1 ? 4 : 3;
    auto ops = transfer(e.w, cap, h);
    for (const auto& op : ops) {
      std::size_t dim = op.dim();
      for (std::size_t t = 0; t < op.c.size() / dim; ++t) {
        std::vector<unsigned> in(op.arity);
        std::size_t r = t;
        for (int j = op.arity - 1; j >= 0; --j) {
          in[j] = static_cast<unsigned>(r % dim);
          r /= dim;
        }
        Rational want(2 - op.arity);
        for (unsigned m : in) want += ext_degree(m, a, d);
        for (unsigned o = 0; o < dim; ++o)
          if (sgn(op.at(in, o)) != 0) { EXPECT_EQ(ext_degree(o, a, d), want) << e.name; }
      }
    }
  }
}

TEST(Stasheff, SmallCorpusUpToArityFour) {
  auto start = std::chrono::steady_clock::now();
  Hodge h2(2);
  for (const auto& w : {make_potential(2, {{{3, 0}, 1}, {{0, 3}, 1}}), make_potential(2, {{{1, 1}, 1}})}) {
    auto ops = transfer(w, 4, h2);
    auto rep = check_stasheff(ops, 4);
    EXPECT_TRUE(rep.ok) << w.str() << " arity " << rep.failed_arity << " " << tuple_str(rep.witness, 2);
    EXPECT_EQ(rep.arity_checked, 4);
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(s, 30.0);
}

TEST(Stasheff, FlippedSignFailsAtThree) {
  Hodge h(1);
  auto ops = transfer(Potential(1, Poly(1)), 3, h);
  ops[1].at({1, 0}, 1) = -ops[1].at({1, 0}, 1);
  auto rep = check_stasheff(ops, 3);
  EXPECT_FALSE(rep.ok);
  EXPECT_EQ(rep.failed_arity, 3);
  EXPECT_FALSE(rep.witness.empty());
}

TEST(Clifford, ConsistentScalarAcrossQuadratics) {
  std::vector<Potential> fixtures = {make_potential(1, {{{2}, 1}}), make_potential(2, {{{1, 1}, 1}}),
                                     make_potential(2, {{{2, 0}, 1}, {{0, 2}, 1}}),
                                     make_potential(2, {{{2, 0}, 3}, {{1, 1}, 1}, {{0, 2}, -2}})};
  for (const auto& w : fixtures) {
    Hodge h(w.nvars());
    auto ops = transfer(w, 2, h);
    auto rep = clifford_oracle(w, ops[1]);
    EXPECT_EQ(rep.verdict, "equal up to global scalar") << w.str() << " " << rep.witness;
    ASSERT_TRUE(rep.scalar.has_value());
    EXPECT_EQ(*rep.scalar, Rational(-1)) << w.str();
  }
}

TEST(Clifford, OrthogonalGeneratorsAnticommute) {
  auto w = make_potential(2, {{{2, 0}, 1}, {{0, 2}, 1}});
  Hodge h(2);
  auto ops = transfer(w, 2, h);
  EXPECT_EQ(unshifted_m2(ops[1], 1, 2)[0] + unshifted_m2(ops[1], 2, 1)[0], Rational(0));
}

TEST(Clifford, RejectsNonQuadratic) {
  auto w = make_potential(1, {{{3}, 1}});
  Hodge h(1);
  auto ops = transfer(w, 2, h);
  EXPECT_THROW(clifford_oracle(w, ops[1]), std::invalid_argument);
}

TEST(Clifford, OrderedProducts) {
  // g = 1: e e = 1, and e_x e_y + e_y e_x = 2 g_xy
  Clifford one({{Rational(1)}});
  EXPECT_EQ(one.product(1, 1), (std::vector<Rational>{Rational(1), Rational(0)}));
  Clifford hyp({{Rational(0), Rational(1)}, {Rational(1), Rational(0)}});
  auto xy = hyp.product(1, 2), yx = hyp.product(2, 1);
  EXPECT_EQ(xy[3], Rational(1));
  EXPECT_EQ(yx[3], Rational(-1));
  EXPECT_EQ(xy[0] + yx[0], Rational(2));
}

TEST(CobarHomology, ExteriorAlgebraInExpectedGrades) {
  for (const auto& e : ade_corpus()) {
    auto rep = cobar_homology(e.w, e.w.nvars() == 1 ? 6 : 4);
    EXPECT_EQ(rep.total, 1u << e.w.nvars()) << e.name;
    EXPECT_TRUE(rep.matches_expected) << e.name;
  }
  auto zero = cobar_homology(Potential(2, Poly(2)), 4);
  EXPECT_EQ(zero.total, 4u);
}
