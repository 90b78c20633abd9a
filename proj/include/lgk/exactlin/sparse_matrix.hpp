#pragma once

#include "lgk/exactlin/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lgk {

// Row-major sparse matrix over a field F; rows are ordered maps col -> value.
template <class F = Rational>
class SparseMatrix {
 public:
  using Row = std::map<std::size_t, F>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t r, std::size_t c) : rows_(r), ncols_(c) {}

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, F(1));
    return m;
  }
  static SparseMatrix scalar(std::size_t n, const F& c) {
    SparseMatrix m(n, n);
    if (!is_zero(c))
      for (std::size_t i = 0; i < n; ++i) m.set(i, i, c);
    return m;
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return ncols_; }

  F get(std::size_t r, std::size_t c) const {
    auto it = rows_.at(r).find(c);
    return it == rows_[r].end() ? F(0) : it->second;
  }
  void set(std::size_t r, std::size_t c, const F& v) {
    check(r, c);
    if (is_zero(v))
      rows_[r].erase(c);
    else
      rows_[r][c] = v;
  }
  void add(std::size_t r, std::size_t c, const F& v) {
    check(r, c);
    if (is_zero(v)) return;
    auto [it, ins] = rows_[r].try_emplace(c, v);
    if (!ins) {
      it->second += v;
      if (is_zero(it->second)) rows_[r].erase(it);
    }
  }
  const Row& row(std::size_t r) const { return rows_.at(r); }
  Row& row_mut(std::size_t r) { return rows_.at(r); }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }
  bool is_zero_matrix() const {
    for (const auto& r : rows_)
      if (!r.empty()) return false;
    return true;
  }

  SparseMatrix transpose() const {
    SparseMatrix t(ncols_, rows());
    for (std::size_t r = 0; r < rows(); ++r)
      for (const auto& [c, v] : rows_[r]) t.rows_[c][r] = v;
    return t;
  }

  SparseMatrix& operator+=(const SparseMatrix& o) {
    same_shape(o);
    for (std::size_t r = 0; r < rows(); ++r)
      for (const auto& [c, v] : o.rows_[r]) add(r, c, v);
    return *this;
  }
  SparseMatrix& operator-=(const SparseMatrix& o) {
    same_shape(o);
    for (std::size_t r = 0; r < rows(); ++r)
      for (const auto& [c, v] : o.rows_[r]) add(r, c, F(-v));
    return *this;
  }
  SparseMatrix& operator*=(const F& a) {
    if (is_zero(a)) {
      for (auto& r : rows_) r.clear();
      return *this;
    }
    for (auto& r : rows_)
      for (auto& kv : r) kv.second *= a;
    return *this;
  }
  friend SparseMatrix operator+(SparseMatrix a, const SparseMatrix& b) { return a += b; }
  friend SparseMatrix operator-(SparseMatrix a, const SparseMatrix& b) { return a -= b; }
  friend SparseMatrix operator*(const F& a, SparseMatrix m) { return m *= a; }
  SparseMatrix operator-() const { return F(-1) * (*this); }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch in product");
    SparseMatrix p(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
      auto& out = p.rows_[r];
      for (const auto& [k, v] : a.rows_[r]) {
        for (const auto& [c, w] : b.rows_[k]) {
          auto [it, ins] = out.try_emplace(c, v * w);
          if (!ins) it->second += v * w;
        }
      }
      for (auto it = out.begin(); it != out.end();) it = is_zero(it->second) ? out.erase(it) : std::next(it);
    }
    return p;
  }

  std::vector<F> apply(const std::vector<F>& x) const {
    if (x.size() != cols()) throw std::invalid_argument("vector length mismatch");
    std::vector<F> y(rows(), F(0));
    for (std::size_t r = 0; r < rows(); ++r)
      for (const auto& [c, v] : rows_[r]) y[r] += v * x[c];
    return y;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.ncols_ == b.ncols_ && a.rows_ == b.rows_;
  }
  friend bool operator!=(const SparseMatrix& a, const SparseMatrix& b) { return !(a == b); }

  // First nonzero entry in row-major order, for witnesses.
  std::optional<std::pair<std::size_t, std::size_t>> first_nonzero() const {
    for (std::size_t r = 0; r < rows(); ++r)
      if (!rows_[r].empty()) return std::make_pair(r, rows_[r].begin()->first);
    return std::nullopt;
  }

  SparseMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    SparseMatrix b(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (auto it = rows_[r0 + r].lower_bound(c0); it != rows_[r0 + r].end() && it->first < c0 + nc; ++it)
        b.rows_[r][it->first - c0] = it->second;
    return b;
  }

 private:
  void check(std::size_t r, std::size_t c) const {
    if (r >= rows() || c >= ncols_) throw std::out_of_range("matrix index out of range");
  }
  void same_shape(const SparseMatrix& o) const {
    if (rows() != o.rows() || cols() != o.cols()) throw std::invalid_argument("matrix shape mismatch");
  }

  std::vector<Row> rows_;
  std::size_t ncols_ = 0;
};

}  // namespace lgk
