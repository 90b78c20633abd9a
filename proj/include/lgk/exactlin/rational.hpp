#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace lgk {

using Rational = mpq_class;
using Integer = mpz_class;

// mpq_class(a, b) does not canonicalize; always build fractions through here.
inline Rational frac(long a, long b) {
  if (b == 0) throw std::domain_error("zero denominator");
  Rational q(a, b);
  q.canonicalize();
  return q;
}

inline Rational frac(const Integer& a, const Integer& b) {
  if (sgn(b) == 0) throw std::domain_error("zero denominator");
  Rational q(a, b);
  q.canonicalize();
  return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const Integer& z) { return sgn(z) == 0; }

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Accepts "p", "p/q", "-p/q"; anything else is a parse error.
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool slash = false;
  bool digit_seen = false;
  for (std::size_t i = start; i < s.size(); ++i) {
    char c = s[i];
    if (c == '/') {
      if (slash || !digit_seen) throw std::invalid_argument("bad rational literal: " + s);
      slash = true;
      digit_seen = false;
    } else if (c < '0' || c > '9') {
      throw std::invalid_argument("bad rational literal: " + s);
    } else {
      digit_seen = true;
    }
  }
  if (!digit_seen) throw std::invalid_argument("bad rational literal: " + s);
  std::string body = s[0] == '+' ? s.substr(1) : s;
  Rational q;
  if (q.set_str(body, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  if (slash && sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

}  // namespace lgk
