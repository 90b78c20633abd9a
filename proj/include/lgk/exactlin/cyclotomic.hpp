#pragma once

#include "lgk/exactlin/rational.hpp"

#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lgk {

namespace detail {

// Integer coefficients of the d-th cyclotomic polynomial, constant term first.
inline const std::vector<long>& cyclotomic_poly(int d) {
  static std::map<int, std::vector<long>> cache;
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  if (d < 1) throw std::invalid_argument("cyclotomic conductor must be positive");
  // x^d - 1 divided by every Phi_e with e | d, e < d
  std::vector<long> num(d + 1, 0);
  num[0] = -1;
  num[d] = 1;
  for (int e = 1; e < d; ++e) {
    if (d % e) continue;
    const auto& den = cyclotomic_poly(e);
    int dn = static_cast<int>(num.size()) - 1;
    int dd = static_cast<int>(den.size()) - 1;
    std::vector<long> q(dn - dd + 1, 0);
    for (int k = dn - dd; k >= 0; --k) {
      long c = num[k + dd];  // den is monic
      q[k] = c;
      for (int j = 0; j <= dd; ++j) num[k + j] -= c * den[j];
    }
    num = q;
  }
  return cache.emplace(d, num).first->second;
}

inline int euler_phi(int d) { return static_cast<int>(cyclotomic_poly(d).size()) - 1; }

}  // namespace detail

// Element of Q(zeta_d), stored as coefficients of 1, z, ..., z^{phi(d)-1}
// reduced modulo Phi_d.  Conductor 1 means a plain rational and mixes with
// any conductor; two different conductors above 1 do not mix.
class Cyclo {
 public:
  Cyclo() : d_(1), c_(1) {}
  Cyclo(long v) : d_(1), c_(1, Rational(v)) {}  // NOLINT
  Cyclo(const Rational& q) : d_(1), c_(1, q) {}  // NOLINT

  static Cyclo zeta(int d, long k = 1) {
    Cyclo z;
    z.d_ = d;
    int phi = detail::euler_phi(d);
    z.c_.assign(phi, Rational(0));
    long e = ((k % d) + d) % d;
    std::vector<Rational> full(e + 1, Rational(0));
    full[e] = 1;
    z.c_ = reduce(full, d);
    return z;
  }

  static Cyclo from_coeffs(int d, std::vector<Rational> c) {
    Cyclo z;
    z.d_ = d;
    z.c_ = reduce(std::move(c), d);
    return z;
  }

  int conductor() const { return d_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& q : c_)
      if (sgn(q) != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (sgn(c_[i]) != 0) return false;
    return true;
  }

  Rational rational_part() const { return c_[0]; }

  Cyclo promoted(int d) const {
    if (d == d_) return *this;
    if (d_ != 1) throw std::invalid_argument("incompatible scalar fields");
    Cyclo z;
    z.d_ = d;
    z.c_.assign(detail::euler_phi(d), Rational(0));
    z.c_[0] = c_[0];
    return z;
  }

  Cyclo& operator+=(const Cyclo& o) {
    int d = common(o);
    *this = promoted(d);
    Cyclo b = o.promoted(d);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
    return *this;
  }
  Cyclo& operator-=(const Cyclo& o) {
    int d = common(o);
    *this = promoted(d);
    Cyclo b = o.promoted(d);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= b.c_[i];
    return *this;
  }
  Cyclo& operator*=(const Cyclo& o) {
    int d = common(o);
    Cyclo a = promoted(d);
    Cyclo b = o.promoted(d);
    std::vector<Rational> full(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) full[i + j] += a.c_[i] * b.c_[j];
    }
    d_ = d;
    c_ = reduce(std::move(full), d);
    return *this;
  }
  Cyclo& operator/=(const Cyclo& o) { return *this *= o.inverse(); }

  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
  friend Cyclo operator*(Cyclo a, const Cyclo& b) { return a *= b; }
  friend Cyclo operator/(Cyclo a, const Cyclo& b) { return a /= b; }
  Cyclo operator-() const {
    Cyclo z = *this;
    for (auto& q : z.c_) q = -q;
    return z;
  }

  friend bool operator==(const Cyclo& a, const Cyclo& b) {
    if (a.d_ != b.d_ && a.d_ != 1 && b.d_ != 1) throw std::invalid_argument("incompatible scalar fields");
    int d = a.d_ == 1 ? b.d_ : a.d_;
    Cyclo x = a.promoted(d), y = b.promoted(d);
    return x.c_ == y.c_;
  }
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  // Inverse by solving (multiplication by a) y = 1 over Q.
  Cyclo inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in cyclotomic field");
    int phi = static_cast<int>(c_.size());
    std::vector<std::vector<Rational>> m(phi, std::vector<Rational>(phi + 1, Rational(0)));
    for (int j = 0; j < phi; ++j) {
      std::vector<Rational> basis(j + 1, Rational(0));
      basis[j] = 1;
      Cyclo col = from_coeffs(d_, basis) * (*this);
      for (int i = 0; i < phi; ++i) m[i][j] = col.c_[i];
    }
    m[0][phi] = 1;
    for (int col = 0, row = 0; col < phi; ++col, ++row) {
      int piv = row;
      while (piv < phi && sgn(m[piv][col]) == 0) ++piv;
      if (piv == phi) throw std::domain_error("singular multiplication matrix");
      std::swap(m[piv], m[row]);
      Rational inv = 1 / m[row][col];
      for (int k = col; k <= phi; ++k) m[row][k] *= inv;
      for (int r = 0; r < phi; ++r) {
        if (r == row || sgn(m[r][col]) == 0) continue;
        Rational f = m[r][col];
        for (int k = col; k <= phi; ++k) m[r][k] -= f * m[row][k];
      }
    }
    std::vector<Rational> y(phi);
    for (int i = 0; i < phi; ++i) y[i] = m[i][phi];
    return from_coeffs(d_, y);
  }

  std::string str() const {
    if (d_ == 1) return c_[0].get_str();
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (sgn(c_[i]) == 0) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << c_[i].get_str() << ")";
      if (i > 0) os << "*z" << d_ << "^" << i;
    }
    if (first) os << "0";
    return os.str();
  }

 private:
  int common(const Cyclo& o) const {
    if (d_ == o.d_) return d_;
    if (d_ == 1) return o.d_;
    if (o.d_ == 1) return d_;
    throw std::invalid_argument("incompatible scalar fields");
  }

  static std::vector<Rational> reduce(std::vector<Rational> full, int d) {
    const auto& phi_poly = detail::cyclotomic_poly(d);
    int phi = static_cast<int>(phi_poly.size()) - 1;
    for (int k = static_cast<int>(full.size()) - 1; k >= phi; --k) {
      if (sgn(full[k]) == 0) continue;
      Rational c = full[k];
      for (int j = 0; j <= phi; ++j) full[k - phi + j] -= c * phi_poly[j];
    }
    full.resize(phi, Rational(0));
    return full;
  }

  int d_;
  std::vector<Rational> c_;
};

inline bool is_zero(const Cyclo& z) { return z.is_zero(); }
inline std::string to_string(const Cyclo& z) { return z.str(); }

}  // namespace lgk
