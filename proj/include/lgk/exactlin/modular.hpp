#pragma once

#include "lgk/exactlin/rational.hpp"

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lgk {

namespace detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

inline u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

inline const std::vector<u64>& prime_list(std::size_t count) {
  static std::vector<u64> primes;
  u64 c = primes.empty() ? (1ULL << 62) - 1 : primes.back() - 2;
  while (primes.size() < count) {
    while (!is_prime_u64(c)) c -= 2;
    primes.push_back(c);
    c -= 2;
  }
  return primes;
}

static_assert(sizeof(unsigned long) == 8, "64-bit unsigned long expected");

inline u64 mod_of(const Integer& z, u64 p) { return mpz_fdiv_ui(z.get_mpz_t(), p); }

inline Integer integer_of(u64 v) {
  Integer z;
  mpz_set_ui(z.get_mpz_t(), v);
  return z;
}

// Shoup multiplication by a fixed factor f modulo p < 2^63.
struct ShoupFactor {
  u64 f, fp, p;
  ShoupFactor(u64 f_, u64 p_) : f(f_), fp(static_cast<u64>((static_cast<u128>(f_) << 64) / p_)), p(p_) {}
  u64 mul(u64 x) const {
    u64 q = static_cast<u64>((static_cast<u128>(fp) * x) >> 64);
    u64 r = f * x - q * p;
    return r >= p ? r - p : r;
  }
};

// Inverse and determinant of a modulo p by Gauss-Jordan; false if singular mod p.
inline bool inverse_mod(const std::vector<std::vector<u64>>& a, u64 p, std::vector<std::vector<u64>>& inv,
                        u64& det) {
  std::size_t n = a.size();
  std::vector<std::vector<u64>> m(n, std::vector<u64>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
    m[i][n + i] = 1;
  }
  det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return false;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = det ? p - det : 0;
    }
    det = mulmod(det, m[c][c], p);
    ShoupFactor iv(powmod(m[c][c], p - 2, p), p);
    for (std::size_t k = c; k < 2 * n; ++k) m[c][k] = iv.mul(m[c][k]);
    std::vector<std::size_t> nz;
    for (std::size_t k = c; k < 2 * n; ++k)
      if (m[c][k]) nz.push_back(k);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      ShoupFactor f(m[r][c], p);
      const auto& src = m[c];
      auto& dst = m[r];
      for (std::size_t k : nz) {
        u64 t = f.mul(src[k]);
        dst[k] = dst[k] >= t ? dst[k] - t : dst[k] + p - t;
      }
    }
  }
  inv.assign(n, std::vector<u64>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
  return true;
}

}  // namespace detail

// Exact inverse of a nonsingular integer matrix as adj / det, computed by
// multimodular Gauss-Jordan with CRT up to the Hadamard bound.  The result
// is certified by checking a * adj == det * I in exact arithmetic before it
// is returned.
struct IntegerInverse {
  std::vector<std::vector<Integer>> adj;
  Integer det;
};

inline IntegerInverse integer_inverse(const std::vector<std::vector<Integer>>& a) {
  using namespace detail;
  std::size_t n = a.size();
  if (n == 0) return {{}, Integer(1)};
  // log2 of the Hadamard bound, plus sign and slack bits
  double bits = 2;
  for (const auto& row : a) {
    Integer s = 0;
    for (const auto& v : row) s += v * v;
    if (sgn(s) > 0) bits += 0.5 * static_cast<double>(mpz_sizeinbase(s.get_mpz_t(), 2));
  }
  std::size_t need = static_cast<std::size_t>(bits / 61.0) + 2;
  std::vector<std::vector<Integer>> acc_adj(n, std::vector<Integer>(n, 0));
  Integer acc_det = 0;
  Integer modulus = 1;
  std::size_t used = 0;
  std::size_t idx = 0;
  auto certify = [&](const std::vector<std::vector<Integer>>& adj, const Integer& det) {
    if (sgn(det) == 0) return false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Integer s = 0;
        for (std::size_t k = 0; k < n; ++k)
          if (sgn(a[i][k]) != 0) s += a[i][k] * adj[k][j];
        if (s != (i == j ? det : Integer(0))) return false;
      }
    }
    return true;
  };
  int stable = 0;
  while (used < need) {
    if (idx > need + 64) throw std::domain_error("matrix is singular");
    u64 p = prime_list(idx + 1)[idx];
    ++idx;
    std::vector<std::vector<u64>> am(n, std::vector<u64>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) am[i][j] = mod_of(a[i][j], p);
    std::vector<std::vector<u64>> inv;
    u64 det = 0;
    if (!inverse_mod(am, p, inv, det)) continue;
    // combine x = acc + modulus * t with t = (r - acc) * modulus^{-1} mod p
    u64 mod_p = mod_of(modulus, p);
    u64 minv = powmod(mod_p, p - 2, p);
    Integer pz = integer_of(p);
    // accumulators stay in the symmetric range (-modulus/2, modulus/2]
    bool changed = false;
    auto lift = [&](Integer& acc, u64 r) {
      u64 a0 = mod_of(acc, p);
      if (a0 == r) return;
      changed = true;
      u64 diff = r >= a0 ? r - a0 : r + p - a0;
      u64 t = mulmod(diff, minv, p);
      if (t > p / 2)
        acc -= modulus * integer_of(p - t);
      else
        acc += modulus * integer_of(t);
    };
    lift(acc_det, det);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) lift(acc_adj[i][j], mulmod(inv[i][j], det, p));
    modulus *= pz;
    ++used;
    stable = changed ? 0 : stable + 1;
    if (stable >= 1 && used < need && certify(acc_adj, acc_det)) return {std::move(acc_adj), std::move(acc_det)};
  }
  if (sgn(acc_det) == 0) throw std::domain_error("matrix is singular");
  if (!certify(acc_adj, acc_det)) throw std::logic_error("modular inverse failed certification");
  return {std::move(acc_adj), std::move(acc_det)};
}

// x = r / s with |r|, s <= sqrt(m / 2) and r = s v mod m, if one exists.
inline bool rational_reconstruct(const Integer& v, const Integer& m, Integer& num, Integer& den) {
  Integer bound;
  Integer half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  Integer r0 = m, r1 = v % m;
  if (sgn(r1) < 0) r1 += m;
  Integer t0 = 0, t1 = 1;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    Integer t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (sgn(t1) == 0 || abs(t1) > bound) return false;
  if (sgn(t1) < 0) {
    t1 = -t1;
    r1 = -r1;
  }
  num = r1;
  den = t1;
  return true;
}

// Solves a x = b exactly for a nonsingular sparse integer matrix by p-adic
// lifting: one inverse modulo p, then one cheap step per p-adic digit until
// the digits reconstruct to a rational vector that satisfies the system.
class DixonSolver {
 public:
  using Rows = std::vector<std::vector<std::pair<std::size_t, Integer>>>;

  explicit DixonSolver(Rows rows) : rows_(std::move(rows)), n_(rows_.size()) {
    using namespace detail;
    std::vector<std::vector<u64>> am(n_, std::vector<u64>(n_, 0));
    for (std::size_t idx = 0;; ++idx) {
      if (idx > 64) throw std::domain_error("matrix is singular");
      p_ = prime_list(idx + 1)[idx];
      for (auto& row : am) std::fill(row.begin(), row.end(), 0);
      for (std::size_t i = 0; i < n_; ++i)
        for (const auto& [j, v] : rows_[i]) am[i][j] = mod_of(v, p_);
      u64 det = 0;
      if (inverse_mod(am, p_, inv_, det)) break;
    }
  }

  std::size_t size() const { return n_; }

  // x = num / den with den > 0.
  std::pair<std::vector<Integer>, Integer> solve(const std::vector<Integer>& b) const {
    using namespace detail;
    std::vector<Integer> r = b, acc(n_, 0);
    std::vector<u64> rp(n_), y(n_);
    Integer pk = 1, pz = integer_of(p_);
    for (std::size_t step = 1;; ++step) {
      if (step > 100000) throw std::logic_error("p-adic lifting did not converge");
      for (std::size_t i = 0; i < n_; ++i) rp[i] = mod_of(r[i], p_);
      for (std::size_t i = 0; i < n_; ++i) {
        u128 s = 0;
        const auto& row = inv_[i];
        for (std::size_t j = 0; j < n_; ++j) {
          if (!rp[j]) continue;
          s += static_cast<u128>(row[j]) * rp[j];
          if (s >> 125) s %= p_;
        }
        y[i] = static_cast<u64>(s % p_);
      }
      for (std::size_t i = 0; i < n_; ++i)
        if (y[i]) acc[i] += pk * integer_of(y[i]);
      for (std::size_t i = 0; i < n_; ++i) {
        for (const auto& [j, v] : rows_[i])
          if (y[j]) r[i] -= v * integer_of(y[j]);
        mpz_divexact(r[i].get_mpz_t(), r[i].get_mpz_t(), pz.get_mpz_t());
      }
      pk *= pz;
      bool zero = true;
      for (const auto& v : r) zero = zero && sgn(v) == 0;
      if (zero) return {acc, Integer(1)};  // integral solution found exactly
      if (step % 4 == 0) {
        std::vector<Integer> num;
        Integer den;
        if (reconstruct(acc, pk, num, den) && satisfies(num, den, b)) return {num, den};
      }
    }
  }

 private:
  static bool reconstruct(const std::vector<Integer>& acc, const Integer& m, std::vector<Integer>& num, Integer& den) {
    Integer half = m / 2, bound;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    den = 1;
    num.assign(acc.size(), 0);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      Integer x = (den * acc[i]) % m;
      if (x > half) x -= m;
      if (abs(x) <= bound) {
        num[i] = x;
        continue;
      }
      Integer r, q;
      if (!rational_reconstruct(x, m, r, q)) return false;
      den *= q;
      if (den > bound) return false;
      for (std::size_t k = 0; k < i; ++k) num[k] *= q;
      num[i] = r;
    }
    return true;
  }
  bool satisfies(const std::vector<Integer>& num, const Integer& den, const std::vector<Integer>& b) const {
    for (std::size_t i = 0; i < n_; ++i) {
      Integer s = 0;
      for (const auto& [j, v] : rows_[i])
        if (sgn(num[j]) != 0) s += v * num[j];
      if (s != den * b[i]) return false;
    }
    return true;
  }

  Rows rows_;
  std::size_t n_;
  detail::u64 p_ = 0;
  std::vector<std::vector<detail::u64>> inv_;
};

}  // namespace lgk
