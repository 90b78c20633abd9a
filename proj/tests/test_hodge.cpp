#include <gtest/gtest.h>

#include "lgk/hodge.hpp"

#include <chrono>

using namespace lgk;

namespace {

Monomial M(std::vector<int> e) { return Monomial(e); }
Monomial X(int e) { return M({e}); }
CobarVec V(Word w, Rational c = 1) { return CobarVec(w, c); }

}  // namespace

TEST(Hodge, DStarExamples) {
  EXPECT_EQ(d_star(V(Word{X(1), X(1)})), V(Word{X(2)}));
  EXPECT_TRUE(d_star(V(Word{M({2, 1})})).empty());
  // <d+[x^2], [x|x]> = <[x^2], d*[x|x]> = 1
  EXPECT_EQ(d_plus(V(Word{X(2)})).get(Word{X(1), X(1)}), 1);
  EXPECT_EQ(d_star(V(Word{X(1), X(1)})).get(Word{X(2)}), 1);
}

TEST(Hodge, SmallLaplacians) {
  Hodge h(1);
  auto l1 = h.laplacian_block(X(1), 1);
  EXPECT_TRUE(l1.is_zero_matrix());
  EXPECT_EQ(l1.rows(), 1u);
  // weight 2: identity on both blocks
  EXPECT_EQ(h.laplacian_block(X(2), 1), SparseMatrix<Integer>::identity(1));
  EXPECT_EQ(h.laplacian_block(X(2), 2), SparseMatrix<Integer>::identity(1));
}

TEST(Hodge, DimensionOneClosedForms) {
  Hodge h(1);
  for (int N = 2; N <= 9; ++N)
    for (const auto& w : weight_basis(1, N)) {
      // G = 1/(N-1) on every non-harmonic word
      EXPECT_EQ(h.green(V(w)), V(w, frac(1, N - 1))) << N;
      // H(x^{i_1}|..|x^{i_k}) = sum_j (-1)^j / (N-1) merge_j
      CobarVec want;
      for (std::size_t j = 0; j + 1 < w.size(); ++j) {
        Word m;
        for (std::size_t t = 0; t < j; ++t) m.push_back(w[t]);
        m.push_back(w[j] * w[j + 1]);
        for (std::size_t t = j + 2; t < w.size(); ++t) m.push_back(w[t]);
        want.add(m, frac((j + 1) % 2 ? -1 : 1, N - 1));
      }
      EXPECT_EQ(h.homotopy(V(w)), want);
    }
  EXPECT_TRUE(h.green(V(Word{X(1)})).empty());
  EXPECT_TRUE(h.homotopy(V(Word{X(2)})).empty());
  EXPECT_EQ(h.homotopy(V(Word{X(1), X(1)})), V(Word{X(2)}, -1));
}

TEST(Hodge, HarmonicSpaceIsAntisymmetrization) {
  Hodge h(3);
  for (int N = 1; N <= 4; ++N)
    for (const auto& K : monomials_of_degree(3, N))
      for (std::size_t k = 1; k <= static_cast<std::size_t>(N); ++k) {
        auto ker = kernel(to_rational(h.laplacian_block(K, k)));
        std::size_t want = is_harmonic_block(K, k) ? 1 : 0;
        EXPECT_EQ(ker.size(), want) << K.str({"x", "y", "z"}) << " k=" << k;
      }
  ExtVec e(0b011u, Rational(1));
  CobarVec ie = h.include(e);
  CobarVec want = V(Word{M({1, 0}), M({0, 1})}, frac(1, 2));
  want.add(Word{M({0, 1}), M({1, 0})}, frac(-1, 2));
  EXPECT_EQ(ie, want);
  EXPECT_EQ(h.project(ie), e);
}

TEST(Hodge, FullSuiteUpToWeightSix) {
  auto start = std::chrono::steady_clock::now();
  for (int n = 1; n <= 3; ++n) {
    Hodge h(n);
    auto rep = verify_hodge(h, 6);
    EXPECT_TRUE(rep.ok) << "n=" << n << " " << (rep.failures.empty() ? "" : rep.failures[0]);
    EXPECT_GT(rep.blocks, 0u);
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(secs, 60.0);
}

TEST(Hodge, HomotopyLowersLengthAndKeepsWeight) {
  Hodge h(2);
  for (int N = 1; N <= 5; ++N)
    for (const auto& w : weight_basis(2, N))
      for (const auto& [o, c] : h.homotopy(V(w))) {
        EXPECT_EQ(o.size() + 1, w.size());
        EXPECT_EQ(o.weight(), N);
      }
}

// Above the dense limit the Green operator is applied by p-adic solving;
// it must agree with the dense inverse on the same block.
TEST(Hodge, SolverPathMatchesDenseGreen) {
  Hodge dense(2), solved(2);
  Monomial K = M({4, 3});
  std::size_t k = 4;
  ASSERT_GT(dense.block(K, k).size(), Hodge::kDenseLimit);
  const auto& G = dense.green_block(K, k);
  std::vector<Rational> v(dense.block(K, k).size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = frac(static_cast<long>(i % 7) - 3, 1 + static_cast<long>(i % 4));
  EXPECT_EQ(solved.green_apply(K, k, v), matvec(G, v));
}
