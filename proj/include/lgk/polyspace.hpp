#pragma once

#include "lgk/exactlin.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lgk {

inline constexpr int kMaxVars = 8;
inline constexpr int kMaxExponent = 255;

// Exponent vector packed one byte per variable, variable 0 in the top byte,
// so the integer order is the lexicographic order on exponents.
class Monomial {
 public:
  constexpr Monomial() = default;
  explicit Monomial(const std::vector<int>& e) {
    if (e.size() > static_cast<std::size_t>(kMaxVars)) throw std::invalid_argument("at most 8 variables supported");
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 0 || e[i] > kMaxExponent) throw std::invalid_argument("exponent out of range 0..255");
      bits_ |= static_cast<std::uint64_t>(e[i]) << shift(static_cast<int>(i));
    }
  }
  static Monomial var(int i, int power = 1) {
    Monomial m;
    m.bits_ = static_cast<std::uint64_t>(power) << shift(i);
    return m;
  }
  static Monomial from_bits(std::uint64_t b) {
    Monomial m;
    m.bits_ = b;
    return m;
  }

  int exp(int i) const { return static_cast<int>((bits_ >> shift(i)) & 0xFF); }
  std::uint64_t bits() const { return bits_; }
  bool is_one() const { return bits_ == 0; }

  int degree() const {
    int d = 0;
    for (int i = 0; i < kMaxVars; ++i) d += exp(i);
    return d;
  }
  // Number of variables with a nonzero exponent.
  int support_size() const {
    int s = 0;
    for (int i = 0; i < kMaxVars; ++i) s += exp(i) > 0;
    return s;
  }
  int wdegree(const std::vector<int>& w) const {
    int d = 0;
    for (std::size_t i = 0; i < w.size(); ++i) d += w[i] * exp(static_cast<int>(i));
    return d;
  }
  // Index of the variable when the monomial is linear, else -1.
  int linear_var() const {
    int found = -1;
    for (int i = 0; i < kMaxVars; ++i) {
      int e = exp(i);
      if (e == 0) continue;
      if (e > 1 || found >= 0) return -1;
      found = i;
    }
    return found;
  }
  bool divides(const Monomial& o) const {
    for (int i = 0; i < kMaxVars; ++i)
      if (exp(i) > o.exp(i)) return false;
    return true;
  }
  std::vector<int> exponents(int n) const {
    std::vector<int> e(n);
    for (int i = 0; i < n; ++i) e[i] = exp(i);
    return e;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    for (int i = 0; i < kMaxVars; ++i)
      if (a.exp(i) + b.exp(i) > kMaxExponent) throw std::overflow_error("exponent overflow");
    return from_bits(a.bits_ + b.bits_);
  }
  // Requires a | b.
  friend Monomial operator/(const Monomial& b, const Monomial& a) { return from_bits(b.bits_ - a.bits_); }

  auto operator<=>(const Monomial&) const = default;

  std::string str(const std::vector<std::string>& names) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < names.size(); ++i) {
      int e = exp(static_cast<int>(i));
      if (e == 0) continue;
      if (!first) os << "*";
      first = false;
      os << names[i];
      if (e > 1) os << "^" << e;
    }
    if (first) os << "1";
    return os.str();
  }

 private:
  static constexpr int shift(int i) { return 8 * (kMaxVars - 1 - i); }
  std::uint64_t bits_ = 0;
};

// All monomials in n variables of total degree exactly k, in increasing order.
inline std::vector<Monomial> monomials_of_degree(int n, int k) {
  std::vector<Monomial> out;
  std::vector<int> e(n, 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n - 1) {
      e[i] = left;
      out.emplace_back(e);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      e[i] = a;
      self(self, i + 1, left - a);
    }
  };
  if (n == 0) {
    if (k == 0) out.emplace_back();
    return out;
  }
  rec(rec, 0, k);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Monomial> monomials_of_wdegree(const std::vector<int>& w, int m) {
  int n = static_cast<int>(w.size());
  std::vector<Monomial> out;
  std::vector<int> e(n, 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n) {
      if (left == 0) out.emplace_back(e);
      return;
    }
    for (int a = 0; a * w[i] <= left; ++a) {
      e[i] = a;
      self(self, i + 1, left - a * w[i]);
    }
    e[i] = 0;
  };
  if (m >= 0) rec(rec, 0, m);
  std::sort(out.begin(), out.end());
  return out;
}

// All monomials dividing k (including 1 and k), increasing.
inline std::vector<Monomial> divisors(const Monomial& k, int n) {
  std::vector<Monomial> out;
  std::vector<int> e(n, 0);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      out.emplace_back(e);
      return;
    }
    for (int a = 0; a <= k.exp(i); ++a) {
      e[i] = a;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

class Poly {
 public:
  using Terms = std::map<Monomial, Rational>;

  Poly() = default;
  explicit Poly(int nvars) : n_(nvars) {}
  Poly(int nvars, const Monomial& m, const Rational& c) : n_(nvars) { add(m, c); }

  int nvars() const { return n_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add(const Monomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, ins] = t_.try_emplace(m, c);
    if (!ins) {
      it->second += c;
      if (sgn(it->second) == 0) t_.erase(it);
    }
  }
  Rational coeff(const Monomial& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Rational(0) : it->second;
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [m, c] : o.t_) add(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [m, c] : o.t_) add(m, Rational(-c));
    return *this;
  }
  Poly& operator*=(const Rational& a) {
    if (sgn(a) == 0) {
      t_.clear();
      return *this;
    }
    for (auto& kv : t_) kv.second *= a;
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Rational& a, Poly p) { return p *= a; }
  Poly operator-() const { return Rational(-1) * (*this); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly p(std::max(a.n_, b.n_));
    for (const auto& [m1, c1] : a.t_)
      for (const auto& [m2, c2] : b.t_) p.add(m1 * m2, c1 * c2);
    return p;
  }
  friend Poly operator*(const Monomial& m, const Poly& b) {
    Poly p(b.n_);
    for (const auto& [m2, c2] : b.t_) p.t_.emplace(m * m2, c2);
    return p;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly partial(int i) const {
    Poly p(n_);
    for (const auto& [m, c] : t_) {
      int e = m.exp(i);
      if (e == 0) continue;
      p.add(m / Monomial::var(i), c * e);
    }
    return p;
  }

  int degree() const {
    int d = -1;
    for (const auto& kv : t_) d = std::max(d, kv.first.degree());
    return d;
  }
  int min_degree() const {
    int d = -1;
    for (const auto& kv : t_) d = d < 0 ? kv.first.degree() : std::min(d, kv.first.degree());
    return d;
  }

  // Truncation to terms of degree <= k.
  Poly truncated(int k) const {
    Poly p(n_);
    for (const auto& [m, c] : t_)
      if (m.degree() <= k) p.t_.emplace(m, c);
    return p;
  }

  std::string str(const std::vector<std::string>& names) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // highest monomials first reads more naturally
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
      const auto& [m, c] = *it;
      Rational a = c;
      if (!first) os << (sgn(a) < 0 ? " - " : " + ");
      else if (sgn(a) < 0) os << "-";
      if (!first || sgn(a) < 0) a = abs(a);
      first = false;
      if (m.is_one())
        os << a.get_str();
      else if (a == 1)
        os << m.str(names);
      else
        os << a.get_str() << "*" << m.str(names);
    }
    return os.str();
  }

 private:
  int n_ = 0;
  Terms t_;
};

enum class SplitMode { Euler, Greedy };

struct MilnorResult {
  bool isolated = true;
  long mu = 0;
};

class Inconclusive : public std::runtime_error {
 public:
  explicit Inconclusive(int cap) : std::runtime_error("inconclusive at cap " + std::to_string(cap)), cap_(cap) {}
  int cap() const { return cap_; }

 private:
  int cap_;
};

inline std::vector<std::string> default_var_names(int n) {
  static const char* base[] = {"x", "y", "z", "w"};
  std::vector<std::string> v;
  for (int i = 0; i < n; ++i) v.push_back(n <= 4 ? base[i] : "x" + std::to_string(i + 1));
  return v;
}

// A potential W in R = k[x_1..x_n], with optional weights and group order.
class Potential {
 public:
  Potential() = default;
  Potential(int n, Poly w, std::vector<std::string> names = {}) : n_(n), w_(std::move(w)), names_(std::move(names)) {
    if (n_ < 0 || n_ > kMaxVars) throw std::invalid_argument("number of variables must be in 0..8");
    if (names_.empty()) names_ = default_var_names(n_);
    if (static_cast<int>(names_.size()) != n_) throw std::invalid_argument("variable names do not match dimension");
  }

  int nvars() const { return n_; }
  const Poly& poly() const { return w_; }
  const std::vector<std::string>& names() const { return names_; }
  std::string str() const { return w_.str(names_); }

  void set_weights(std::vector<int> w) {
    if (static_cast<int>(w.size()) != n_) throw std::invalid_argument("weights length does not match dimension");
    for (int a : w)
      if (a <= 0) throw std::invalid_argument("weights must be positive");
    weights_ = std::move(w);
  }
  const std::optional<std::vector<int>>& explicit_weights() const { return weights_; }
  void set_group_order(int d) {
    if (d <= 0) throw std::invalid_argument("group order must be positive");
    group_order_ = d;
  }
  std::optional<int> group_order() const { return group_order_; }

  bool vanishes_at_origin() const { return sgn(w_.coeff(Monomial())) == 0; }
  bool kills_linear_terms() const {
    for (const auto& kv : w_.terms())
      if (kv.first.degree() < 2) return false;
    return true;
  }

  // Weights (a_i) and degree d with every monomial of weighted degree d.
  // Uses the explicit weights when given, otherwise solves for the unique
  // positive rational weights and clears denominators.
  std::optional<std::pair<std::vector<int>, int>> quasi_homogeneity() const {
    if (w_.is_zero()) return std::nullopt;
    if (weights_) {
      int d = -1;
      for (const auto& kv : w_.terms()) {
        int e = kv.first.wdegree(*weights_);
        if (d < 0) d = e;
        if (e != d) return std::nullopt;
      }
      return std::make_pair(*weights_, d);
    }
    {
      int d = -1;
      bool homog = true;
      for (const auto& kv : w_.terms()) {
        int e = kv.first.degree();
        if (d < 0) d = e;
        homog = homog && e == d;
      }
      if (homog && d > 0) return std::make_pair(std::vector<int>(n_, 1), d);
    }
    SparseMatrix<Rational> a(w_.terms().size(), n_);
    std::vector<Rational> rhs(w_.terms().size(), Rational(1));
    std::size_t r = 0;
    for (const auto& kv : w_.terms()) {
      for (int i = 0; i < n_; ++i) a.set(r, i, Rational(kv.first.exp(i)));
      ++r;
    }
    if (lgk::rank(a) != static_cast<std::size_t>(n_)) return std::nullopt;
    auto q = lgk::solve(a, rhs);
    if (!q) return std::nullopt;
    Integer l = 1;
    for (const auto& x : *q) {
      if (sgn(x) <= 0) return std::nullopt;
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
    }
    std::vector<Integer> num;
    Integer g = 0;
    for (const auto& x : *q) {
      Integer v = x.get_num() * (l / x.get_den());
      num.push_back(v);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    Integer d = l / g;
    std::vector<int> w;
    for (auto& v : num) w.push_back(static_cast<int>(Integer(v / g).get_si()));
    return std::make_pair(w, static_cast<int>(d.get_si()));
  }

  // W_i with W = sum x_i W_i.
  std::vector<Poly> split(SplitMode mode) const {
    if (!vanishes_at_origin()) throw std::invalid_argument("potential has a constant term; cannot split");
    std::vector<Poly> parts(n_, Poly(n_));
    if (mode == SplitMode::Euler) {
      auto qh = quasi_homogeneity();
      if (!qh) throw std::invalid_argument("Euler split needs a weighted-homogeneous potential; use greedy");
      const auto& [a, d] = *qh;
      for (int i = 0; i < n_; ++i) parts[i] = frac(a[i], d) * w_.partial(i);
    } else {
      for (const auto& [m, c] : w_.terms()) {
        for (int i = 0; i < n_; ++i) {
          if (m.exp(i) == 0) continue;
          parts[i].add(m / Monomial::var(i), c);
          break;
        }
      }
    }
    return parts;
  }

  std::vector<Poly> gradient() const {
    std::vector<Poly> g;
    for (int i = 0; i < n_; ++i) g.push_back(w_.partial(i));
    return g;
  }

  MilnorResult milnor_number(int cap = 40) const;

 private:
  int n_ = 0;
  Poly w_;
  std::vector<std::string> names_;
  std::optional<std::vector<int>> weights_;
  std::optional<int> group_order_;
};

namespace detail {

// Rank of {trunc(m * g) : m in multipliers, g in gens} on the given columns.
inline std::size_t span_rank(const std::vector<Monomial>& cols, const std::vector<std::pair<Monomial, const Poly*>>& rows) {
  std::map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < cols.size(); ++i) index[cols[i]] = i;
  Echelon<Rational> e(cols.size());
  for (const auto& [m, g] : rows) {
    std::map<std::size_t, Rational> row;
    for (const auto& [t, c] : g->terms()) {
      auto it = index.find(m * t);
      if (it != index.end()) row[it->second] += c;
    }
    for (auto it = row.begin(); it != row.end();) it = sgn(it->second) == 0 ? row.erase(it) : std::next(it);
    e.insert(std::move(row));
    if (e.rank() == cols.size()) break;
  }
  return e.rank();
}

}  // namespace detail

// dim R/(J + m^{N+1}) by truncated linear algebra; the local Milnor number is
// read off once the degree-N slice of the quotient vanishes.
inline MilnorResult milnor_truncated(const Potential& w, int cap) {
  int n = w.nvars();
  auto grad = w.gradient();
  long prev = -1;
  for (int N = 0; N <= cap; ++N) {
    std::vector<Monomial> cols;
    for (int k = 0; k <= N; ++k)
      for (auto& m : monomials_of_degree(n, k)) cols.push_back(m);
    std::vector<Poly> trunc;
    for (auto& g : grad) trunc.push_back(g.truncated(N));
    std::vector<std::pair<Monomial, const Poly*>> rows;
    for (int k = 0; k <= N; ++k)
      for (auto& m : monomials_of_degree(n, k))
        for (auto& g : trunc)
          if (!g.is_zero()) rows.emplace_back(m, &g);
    long q = static_cast<long>(cols.size() - detail::span_rank(cols, rows));
    if (q == prev) return {true, prev};
    prev = q;
  }
  throw Inconclusive(cap);
}

inline MilnorResult Potential::milnor_number(int cap) const {
  if (n_ == 0) return {true, 1};
  if (w_.is_zero()) return {false, 0};
  if (!vanishes_at_origin()) throw std::invalid_argument("potential has a constant term");
  auto qh = quasi_homogeneity();
  if (!qh) return milnor_truncated(*this, cap);
  const auto& [a, d] = *qh;
  // For an isolated weighted-homogeneous singularity the Jacobian ring has
  // socle in weighted degree sum(d - 2 a_i); any surviving slice above it
  // certifies a non-isolated singularity.
  int socle = 0;
  int amax = 0;
  for (int ai : a) {
    socle += d - 2 * ai;
    amax = std::max(amax, ai);
  }
  if (socle < 0) socle = -1;
  int top = socle + amax;
  if (top > cap) throw Inconclusive(cap);
  auto grad = gradient();
  long mu = 0;
  for (int m = 0; m <= top; ++m) {
    auto cols = monomials_of_wdegree(a, m);
    if (cols.empty()) continue;
    std::vector<std::pair<Monomial, const Poly*>> rows;
    for (int i = 0; i < n_; ++i) {
      if (grad[i].is_zero()) continue;
      for (auto& mult : monomials_of_wdegree(a, m - (d - a[i]))) rows.emplace_back(mult, &grad[i]);
    }
    long s = static_cast<long>(cols.size() - detail::span_rank(cols, rows));
    if (m > socle && s > 0) return {false, 0};
    mu += s;
  }
  return {true, mu};
}

}  // namespace lgk
