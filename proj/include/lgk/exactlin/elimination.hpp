#pragma once

#include "lgk/exactlin/sparse_matrix.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace lgk {

// Row echelon form built by inserting rows in order: each row is reduced
// against the pivots found so far (lowest leading column first) and, if
// anything survives, becomes the pivot for its leading column.  The pivot
// choice depends only on row order, so results are reproducible.
template <class F>
class Echelon {
 public:
  using Row = std::map<std::size_t, F>;

  explicit Echelon(std::size_t ncols) : ncols_(ncols) {}

  // Returns true if the row was independent of the previous ones.
  bool insert(Row row) {
    reduce(row);
    if (row.empty()) return false;
    std::size_t lead = row.begin()->first;
    F inv = F(1) / row.begin()->second;
    for (auto& kv : row) kv.second *= inv;
    pivots_.emplace(lead, std::move(row));
    return true;
  }

  std::size_t rank() const { return pivots_.size(); }
  const std::map<std::size_t, Row>& pivots() const { return pivots_; }

  void reduce(Row& row) const {
    auto it = row.begin();
    while (it != row.end()) {
      auto pv = pivots_.find(it->first);
      if (pv == pivots_.end()) {
        ++it;
        continue;
      }
      F f = it->second;
      std::size_t col = it->first;
      for (const auto& [c, v] : pv->second) {
        auto [jt, ins] = row.try_emplace(c, F(-(f * v)));
        if (!ins) {
          jt->second -= f * v;
          if (is_zero(jt->second)) row.erase(jt);
        }
      }
      it = row.upper_bound(col);
    }
  }

  // Back substitution to reduced row echelon form.
  void make_reduced() {
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      Row& row = it->second;
      std::size_t lead = it->first;
      auto jt = row.upper_bound(lead);
      while (jt != row.end()) {
        auto pv = pivots_.find(jt->first);
        if (pv == pivots_.end()) {
          ++jt;
          continue;
        }
        F f = jt->second;
        std::size_t col = jt->first;
        for (const auto& [c, v] : pv->second) {
          auto [kt, ins] = row.try_emplace(c, F(-(f * v)));
          if (!ins) {
            kt->second -= f * v;
            if (is_zero(kt->second)) row.erase(kt);
          }
        }
        jt = row.upper_bound(col);
      }
    }
  }

  std::size_t ncols() const { return ncols_; }

 private:
  std::size_t ncols_;
  std::map<std::size_t, Row> pivots_;
};

template <class F>
std::size_t rank(const SparseMatrix<F>& a) {
  Echelon<F> e(a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) e.insert(a.row(r));
  return e.rank();
}

// Basis of {x : a x = 0}, one vector per free column in increasing order.
template <class F>
std::vector<std::vector<F>> kernel(const SparseMatrix<F>& a) {
  Echelon<F> e(a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) e.insert(a.row(r));
  e.make_reduced();
  const auto& piv = e.pivots();
  std::vector<std::vector<F>> basis;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (piv.count(j)) continue;
    std::vector<F> v(a.cols(), F(0));
    v[j] = F(1);
    for (const auto& [lead, row] : piv) {
      auto it = row.find(j);
      if (it != row.end()) v[lead] = -it->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// Some solution of a x = b, or nullopt when inconsistent.
template <class F>
std::optional<std::vector<F>> solve(const SparseMatrix<F>& a, const std::vector<F>& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("right-hand side length mismatch");
  std::size_t n = a.cols();
  Echelon<F> e(n + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto row = a.row(r);
    if (!is_zero(b[r])) row[n] = b[r];
    e.insert(std::move(row));
  }
  if (e.pivots().count(n)) return std::nullopt;
  e.make_reduced();
  std::vector<F> x(n, F(0));
  for (const auto& [lead, row] : e.pivots()) {
    auto it = row.find(n);
    if (it != row.end()) x[lead] = it->second;
  }
  return x;
}

template <class F>
std::optional<SparseMatrix<F>> inverse(const SparseMatrix<F>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
  std::size_t n = a.rows();
  Echelon<F> e(2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    auto row = a.row(r);
    row[n + r] = F(1);
    e.insert(std::move(row));
  }
  e.make_reduced();
  SparseMatrix<F> inv(n, n);
  std::size_t count = 0;
  for (const auto& [lead, row] : e.pivots()) {
    if (lead >= n) return std::nullopt;
    ++count;
    for (auto it = row.lower_bound(n); it != row.end(); ++it) inv.set(lead, it->first - n, it->second);
  }
  if (count != n) return std::nullopt;
  return inv;
}

// Fraction-free Bareiss determinant of a dense integer matrix.
inline Integer bareiss_det(std::vector<std::vector<Integer>> m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && sgn(m[p][k]) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = t;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace lgk
