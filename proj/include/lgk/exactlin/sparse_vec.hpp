#pragma once

#include "lgk/exactlin/rational.hpp"

#include <map>
#include <utility>

namespace lgk {

// Sparse vector over a field F with ordered keys; zero entries are never stored.
template <class K, class F = Rational>
class SparseVec {
 public:
  using map_type = std::map<K, F>;
  using const_iterator = typename map_type::const_iterator;

  SparseVec() = default;
  SparseVec(const K& k, const F& v) { add(k, v); }

  void add(const K& k, const F& v) {
    if (is_zero(v)) return;
    auto [it, inserted] = m_.try_emplace(k, v);
    if (!inserted) {
      it->second += v;
      if (is_zero(it->second)) m_.erase(it);
    }
  }

  void axpy(const F& a, const SparseVec& x) {
    if (is_zero(a)) return;
    for (const auto& [k, v] : x.m_) add(k, F(a * v));
  }

  SparseVec& operator+=(const SparseVec& o) {
    for (const auto& [k, v] : o.m_) add(k, v);
    return *this;
  }
  SparseVec& operator-=(const SparseVec& o) {
    for (const auto& [k, v] : o.m_) add(k, F(-v));
    return *this;
  }
  SparseVec& operator*=(const F& a) {
    if (is_zero(a)) {
      m_.clear();
      return *this;
    }
    for (auto& kv : m_) kv.second *= a;
    return *this;
  }
  friend SparseVec operator+(SparseVec a, const SparseVec& b) { return a += b; }
  friend SparseVec operator-(SparseVec a, const SparseVec& b) { return a -= b; }
  friend SparseVec operator*(const F& a, SparseVec x) { return x *= a; }
  SparseVec operator-() const {
    SparseVec r = *this;
    for (auto& kv : r.m_) kv.second = -kv.second;
    return r;
  }
  friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.m_ == b.m_; }

  F get(const K& k) const {
    auto it = m_.find(k);
    return it == m_.end() ? F(0) : it->second;
  }
  bool empty() const { return m_.empty(); }
  std::size_t size() const { return m_.size(); }
  const_iterator begin() const { return m_.begin(); }
  const_iterator end() const { return m_.end(); }
  const map_type& terms() const { return m_; }
  void clear() { m_.clear(); }

 private:
  map_type m_;
};

}  // namespace lgk
