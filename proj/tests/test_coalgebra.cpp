#include <gtest/gtest.h>

#include "lgk/coalgebra.hpp"

#include <random>

using namespace lgk;

namespace {

Monomial M(std::vector<int> e) { return Monomial(e); }

using Triple = SparseVec<std::tuple<Monomial, Monomial, Monomial>, Rational>;

// Multiply two group-algebra elements of Z/d given as coefficient vectors.
std::vector<Cyclo> convolve(const std::vector<Cyclo>& a, const std::vector<Cyclo>& b) {
  int d = static_cast<int>(a.size());
  std::vector<Cyclo> c(d, Cyclo(0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) c[(i + j) % d] += a[i] * b[j];
  return c;
}

}  // namespace

TEST(Coalgebra, CoproductOfSmallMonomials) {
  auto one = coproduct(Monomial());
  ASSERT_EQ(one.size(), 1u);
  EXPECT_TRUE(one[0].first.is_one() && one[0].second.is_one());
  auto x = coproduct(M({1}));
  EXPECT_EQ(x.size(), 2u);
  auto x2 = coproduct(M({2}));
  std::vector<Split> want = {{M({0}), M({2})}, {M({1}), M({1})}, {M({2}), M({0})}};
  EXPECT_EQ(x2, want);
}

TEST(Coalgebra, ReducedCoproduct) {
  EXPECT_TRUE(reduced_coproduct(M({1, 0})).empty());
  auto x2 = reduced_coproduct(M({2}));
  ASSERT_EQ(x2.size(), 1u);
  EXPECT_EQ(x2[0], Split(M({1}), M({1})));
  auto xy = reduced_coproduct(M({1, 1}));
  EXPECT_EQ(xy.size(), 2u);
  EXPECT_THROW(reduced_coproduct(Monomial()), std::invalid_argument);
}

TEST(Coalgebra, CurvatureReadsCoefficients) {
  Poly w(2);
  w.add(M({3, 0}), 1);
  w.add(M({1, 2}), 2);
  Curvature m(w);
  EXPECT_EQ(m(M({3, 0})), 1);
  EXPECT_EQ(m(M({1, 2})), 2);
  EXPECT_EQ(m(M({2, 1})), 0);
  EXPECT_TRUE(m.kills_scalars_and_linear());
  EXPECT_TRUE(Curvature(Poly(2)).is_zero());
}

TEST(Coalgebra, CoassociativeAndCounital) {
  for (int n = 1; n <= 3; ++n)
    for (int deg = 0; deg <= 6; ++deg)
      for (const auto& k : monomials_of_degree(n, deg)) {
        Triple left, right;
        for (const auto& [a, b] : coproduct(k)) {
          for (const auto& [a1, a2] : coproduct(a)) left.add({a1, a2, b}, 1);
          for (const auto& [b1, b2] : coproduct(b)) right.add({a, b1, b2}, 1);
        }
        EXPECT_EQ(left, right);
        // (eps (x) id) Delta = id
        CoalgVec<Rational> back;
        for (const auto& [a, b] : coproduct(k)) back.add(b, counit(a));
        EXPECT_EQ(back, CoalgVec<Rational>(k, 1));
        // cocommutative
        SparseVec<Split> f, s;
        for (const auto& [a, b] : coproduct(k)) {
          f.add({a, b}, 1);
          s.add({b, a}, 1);
        }
        EXPECT_EQ(f, s);
      }
}

TEST(Coalgebra, IdempotentsAreOrthogonal) {
  for (int d = 1; d <= 5; ++d)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        std::vector<Cyclo> uj(d, Cyclo(0)), uk(d, Cyclo(0));
        for (const auto& [key, c] : idempotent(Monomial(), j, d)) uj[key.g] = c;
        for (const auto& [key, c] : idempotent(Monomial(), k, d)) uk[key.g] = c;
        auto p = convolve(uj, uk);
        for (int g = 0; g < d; ++g) EXPECT_EQ(p[g], j == k ? uj[g] : Cyclo(0));
      }
}

TEST(Coalgebra, SmashTrivialGroupIsPlainCoproduct) {
  std::vector<int> w = {1, 1};
  auto t = smash_coproduct_group(M({2, 1}), 0, 1, w);
  EXPECT_EQ(t.size(), coproduct(M({2, 1})).size());
  for (const auto& [kk, c] : t) EXPECT_EQ(c, Cyclo(1));
}

TEST(Coalgebra, SmashUnitIsGrouplike) {
  auto t = smash_coproduct_group(Monomial(), 0, 2, {1});
  SmashTensor want;
  want.add({SmashKey{Monomial(), 0}, SmashKey{Monomial(), 0}}, Cyclo(1));
  want.add({SmashKey{Monomial(), 1}, SmashKey{Monomial(), 1}}, Cyclo(1));
  EXPECT_EQ(t, want);
}

// Brute-force expansion through the group basis against the closed form.
TEST(Coalgebra, SmashIdempotentClosedForm) {
  std::vector<std::pair<std::vector<int>, int>> setups = {{{1}, 2}, {{1}, 3}, {{1, 1}, 3}, {{3, 2}, 4}, {{1, 2}, 4}};
  for (const auto& [w, d] : setups) {
    int n = static_cast<int>(w.size());
    for (int deg = 0; deg <= 3; ++deg)
      for (const auto& k : monomials_of_degree(n, deg))
        for (int j = 0; j < d; ++j) {
          auto brute = to_idempotent_basis(smash_coproduct_group(idempotent(k, j, d), d, w), d);
          EXPECT_EQ(brute, smash_coproduct_idempotent(k, j, d, w)) << k.str(default_var_names(n)) << " j=" << j;
        }
  }
}

TEST(Coalgebra, SmashCoassociative) {
  std::mt19937_64 rng(23);
  for (int d = 1; d <= 4; ++d) {
    std::vector<int> w = {1, 2};
    for (int t = 0; t < 6; ++t) {
      Monomial k = M({static_cast<int>(rng() % 3), static_cast<int>(rng() % 2)});
      int g = static_cast<int>(rng() % d);
      using Key3 = std::tuple<SmashKey, SmashKey, SmashKey>;
      SparseVec<Key3, Cyclo> left, right;
      for (const auto& [ab, c] : smash_coproduct_group(k, g, d, w)) {
        for (const auto& [a12, c2] : smash_coproduct_group(ab.first.k, ab.first.g, d, w))
          left.add({a12.first, a12.second, ab.second}, c * c2);
        for (const auto& [b12, c2] : smash_coproduct_group(ab.second.k, ab.second.g, d, w))
          right.add({ab.first, b12.first, b12.second}, c * c2);
      }
      EXPECT_EQ(left, right) << "d=" << d;
    }
  }
}

TEST(Coalgebra, SmashGrading) {
  std::vector<int> w = {1};
  EXPECT_EQ(smash_grading(M({3}), 0, 3, w), 2);
  EXPECT_EQ(smash_grading(Monomial(), 0, 3, w), 0);
  EXPECT_EQ(smash_grading(M({1}), 0, 3, w), 2);
  EXPECT_EQ(smash_cobar_grading({}, 0, 3, w), 0);
  EXPECT_EQ(smash_cobar_grading({M({3})}, 0, 3, w), -1);
}

TEST(Coalgebra, SmashCurvatureHasDegreeTwo) {
  Poly e6(2);
  e6.add(M({3, 0}), 1);
  e6.add(M({0, 4}), 1);
  for (const auto& [j, degs] : smash_curvature_degrees(Curvature(e6), 12, {4, 3}))
    for (const auto& g : degs) EXPECT_EQ(g, 2) << "sector " << j;
}
