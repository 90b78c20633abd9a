#include <gtest/gtest.h>

#include "lgk/exactlin.hpp"

#include <random>

using namespace lgk;

namespace {

SparseMatrix<Rational> random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int density_pct = 40) {
  SparseMatrix<Rational> m(r, c);
  std::uniform_int_distribution<int> val(-4, 4), pct(0, 99);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (pct(rng) < density_pct) m.set(i, j, frac(val(rng), 1 + (val(rng) + 4) % 3));
  return m;
}

}  // namespace

TEST(Exactlin, RankOfDependentRows) {
  SparseMatrix<Rational> a(2, 2);
  a.set(0, 0, 1);
  a.set(0, 1, 2);
  a.set(1, 0, 2);
  a.set(1, 1, 4);
  EXPECT_EQ(rank(a), 1u);
  auto k = kernel(a);
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0][0], Rational(-2));
  EXPECT_EQ(k[0][1], Rational(1));
}

TEST(Exactlin, RationalLiteralParsing) {
  EXPECT_EQ(parse_rational("-3/6"), frac(-1, 2));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1.5"), std::invalid_argument);
  EXPECT_THROW(parse_rational("/3"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
}

TEST(Exactlin, CyclotomicIdentities) {
  Cyclo z4 = Cyclo::zeta(4);
  EXPECT_EQ(z4 * z4, Cyclo(-1));
  Cyclo z3 = Cyclo::zeta(3);
  EXPECT_EQ((Cyclo(1) + z3) * (Cyclo(1) + z3 * z3), Cyclo(1));
  // 1 + z + z^2 = 0 in Q(zeta_3)
  EXPECT_TRUE((Cyclo(1) + z3 + z3 * z3).is_zero());
  Cyclo z5 = Cyclo::zeta(5);
  Cyclo p = Cyclo(1);
  for (int i = 0; i < 5; ++i) p *= z5;
  EXPECT_EQ(p, Cyclo(1));
  EXPECT_EQ(Cyclo::zeta(6, 3), Cyclo(-1));
}

TEST(Exactlin, CyclotomicPolynomials) {
  EXPECT_EQ(detail::cyclotomic_poly(1), (std::vector<long>{-1, 1}));
  EXPECT_EQ(detail::cyclotomic_poly(4), (std::vector<long>{1, 0, 1}));
  EXPECT_EQ(detail::cyclotomic_poly(6), (std::vector<long>{1, -1, 1}));
  EXPECT_EQ(detail::euler_phi(12), 4);
}

TEST(Exactlin, ConductorMismatchIsRejected) {
  EXPECT_THROW(Cyclo::zeta(3) + Cyclo::zeta(4), std::invalid_argument);
  try {
    (void)(Cyclo::zeta(3) * Cyclo::zeta(5));
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("incompatible scalar fields"), std::string::npos);
  }
  // rationals mix with anything
  EXPECT_NO_THROW(Cyclo(frac(1, 2)) * Cyclo::zeta(7));
}

TEST(Exactlin, CyclotomicFieldAxiomsOnRandomElements) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> v(-5, 5);
  for (int d : {3, 4, 5, 6, 8, 12}) {
    int phi = detail::euler_phi(d);
    auto rnd = [&] {
      std::vector<Rational> c(phi);
      for (auto& q : c) q = frac(v(rng), 1 + std::abs(v(rng)));
      return Cyclo::from_coeffs(d, c);
    };
    for (int t = 0; t < 20; ++t) {
      Cyclo a = rnd(), b = rnd(), c = rnd();
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * b, b * a);
      if (!a.is_zero()) {
        EXPECT_EQ(a * a.inverse(), Cyclo(1));
      }
    }
  }
}

TEST(Exactlin, SparseMatrixOverCyclotomics) {
  SparseMatrix<Cyclo> m(2, 2);
  Cyclo z = Cyclo::zeta(3);
  m.set(0, 0, 1);
  m.set(0, 1, z);
  m.set(1, 0, z * z);
  m.set(1, 1, 1);  // det = 1 - z^3 = 0
  EXPECT_EQ(rank(m), 1u);
  SparseMatrix<Cyclo> bad(1, 2);
  bad.set(0, 0, Cyclo::zeta(3));
  bad.set(0, 1, Cyclo::zeta(4));
  SparseMatrix<Cyclo> two(2, 2);
  two.set(0, 0, Cyclo::zeta(3));
  two.set(1, 0, Cyclo::zeta(4));
  EXPECT_THROW(rank(two), std::invalid_argument);
}

TEST(Exactlin, RankNullityOnRandomMatrices) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
    auto a = random_matrix(rng, r, c);
    auto k = kernel(a);
    EXPECT_EQ(rank(a) + k.size(), c);
    for (const auto& v : k) {
      auto y = a.apply(v);
      for (const auto& e : y) EXPECT_EQ(e, 0);
    }
    EXPECT_EQ(rank(a), rank(a.transpose()));
  }
}

TEST(Exactlin, SolveAndInverse) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 40; ++t) {
    std::size_t n = 1 + rng() % 6;
    auto a = random_matrix(rng, n, n, 70);
    std::vector<Rational> x(n);
    for (auto& q : x) q = Rational(static_cast<long>(rng() % 9) - 4);
    auto b = a.apply(x);
    auto s = solve(a, b);
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(a.apply(*s), b);
    auto inv = inverse(a);
    if (rank(a) == n) {
      ASSERT_TRUE(inv.has_value());
      EXPECT_EQ(a * *inv, SparseMatrix<Rational>::identity(n));
    } else {
      EXPECT_FALSE(inv.has_value());
    }
  }
  // inconsistent system
  SparseMatrix<Rational> z(2, 1);
  z.set(0, 0, 1);
  z.set(1, 0, 1);
  EXPECT_FALSE(solve(z, {Rational(1), Rational(2)}).has_value());
}

TEST(Exactlin, ModularInverseMatchesFieldInverse) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 25; ++t) {
    std::size_t n = 1 + rng() % 9;
    std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
    SparseMatrix<Rational> q(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        long v = static_cast<long>(rng() % 21) - 10;
        a[i][j] = v;
        q.set(i, j, Rational(v));
      }
    auto inv = inverse(q);
    if (!inv) {
      EXPECT_THROW(integer_inverse(a), std::domain_error);
      continue;
    }
    auto r = integer_inverse(a);
    EXPECT_EQ(r.det, bareiss_det(a));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(frac(r.adj[i][j], r.det), inv->get(i, j));
  }
}

TEST(Exactlin, ModularInverseLargeEntries) {
  // entries far above a single prime
  std::vector<std::vector<Integer>> a = {{Integer("123456789012345678901234567890"), 1}, {3, Integer("-98765432109876543210")}};
  auto r = integer_inverse(a);
  EXPECT_EQ(r.det, a[0][0] * a[1][1] - a[0][1] * a[1][0]);
  EXPECT_EQ(r.adj[0][0], a[1][1]);
  EXPECT_EQ(r.adj[0][1], -a[0][1]);
}

TEST(Exactlin, SparseVecCancellation) {
  SparseVec<int> v;
  v.add(1, frac(1, 2));
  v.add(1, frac(-1, 2));
  EXPECT_TRUE(v.empty());
  v.add(3, 2);
  SparseVec<int> w(3, 2);
  EXPECT_EQ(v, w);
  EXPECT_TRUE((v - w).empty());
}

TEST(Dixon, MatchesRationalSolve) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    std::size_t n = 5 + trial * 3;
    DixonSolver::Rows rows(n);
    SparseMatrix<Rational> a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        if (i == j || rng() % 3 == 0) {
          long v = static_cast<long>(rng() % 19) - 9;
          if (i == j) v = v == 0 ? 7 : v;
          rows[i].emplace_back(j, Integer(v));
          a.set(i, j, Rational(v));
        }
    }
    if (rank(a) < n) continue;
    std::vector<Integer> b(n);
    std::vector<Rational> br(n);
    for (std::size_t i = 0; i < n; ++i) {
      b[i] = static_cast<long>(rng() % 11) - 5;
      br[i] = Rational(b[i]);
    }
    auto want = solve(a, br);
    ASSERT_TRUE(want.has_value());
    auto [num, den] = DixonSolver(rows).solve(b);
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(frac(num[i], den), (*want)[i]) << trial;
  }
}

TEST(Dixon, SingularMatrixIsRejected) {
  DixonSolver::Rows rows(2);
  rows[0] = {{0, Integer(1)}, {1, Integer(2)}};
  rows[1] = {{0, Integer(2)}, {1, Integer(4)}};
  EXPECT_THROW(DixonSolver{rows}, std::domain_error);
}

TEST(RationalReconstruct, RecoversSmallFractions) {
  Integer m = Integer(1000003) * Integer(999983);
  // 3/7 mod m
  Integer inv7;
  Integer seven = 7;
  mpz_invert(inv7.get_mpz_t(), seven.get_mpz_t(), m.get_mpz_t());
  Integer r, s;
  ASSERT_TRUE(rational_reconstruct((3 * inv7) % m, m, r, s));
  EXPECT_EQ(r, 3);
  EXPECT_EQ(s, 7);
}
