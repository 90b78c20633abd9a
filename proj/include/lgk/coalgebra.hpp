#pragma once

#include "lgk/exactlin.hpp"
#include "lgk/polyspace.hpp"

#include <map>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lgk {

// The symmetric coalgebra C on V with basis e^K dual to x^K:
//   Delta(e^K) = sum_{I+J=K} e^I (x) e^J
// with no factorials, cocommutative and coassociative; counit picks e^0.

using Split = std::pair<Monomial, Monomial>;

// All (I, J) with I + J = K, ordered by increasing I.
inline std::vector<Split> coproduct(const Monomial& k) {
  std::vector<Split> out;
  for (const auto& i : divisors(k, kMaxVars)) out.emplace_back(i, k / i);
  return out;
}

// Splits with both factors non-scalar; cached since the cobar differential
// asks for the same letters over and over.
inline const std::vector<Split>& reduced_coproduct(const Monomial& k) {
  static std::unordered_map<std::uint64_t, std::vector<Split>> cache;
  if (k.is_one()) throw std::invalid_argument("reduced coproduct of a scalar");
  auto it = cache.find(k.bits());
  if (it != cache.end()) return it->second;
  std::vector<Split> out;
  for (const auto& i : divisors(k, kMaxVars))
    if (!i.is_one() && i != k) out.emplace_back(i, k / i);
  return cache.emplace(k.bits(), std::move(out)).first->second;
}

inline Rational counit(const Monomial& k) { return k.is_one() ? Rational(1) : Rational(0); }

inline Rational pairing(const Monomial& coalgebra_basis, const Monomial& monomial) {
  return coalgebra_basis == monomial ? Rational(1) : Rational(0);
}

// Curvature functional M(e^K) = coefficient of x^K in W.
class Curvature {
 public:
  Curvature() = default;
  explicit Curvature(Poly w) : w_(std::move(w)) {}
  Rational operator()(const Monomial& k) const { return w_.coeff(k); }
  const Poly& potential() const { return w_; }
  bool is_zero() const { return w_.is_zero(); }
  bool kills_scalars_and_linear() const {
    for (const auto& kv : w_.terms())
      if (kv.first.degree() < 2) return false;
    return true;
  }

 private:
  Poly w_;
};

// Equality of two coalgebra elements as maps Monomial -> F.
template <class F>
using CoalgVec = SparseVec<Monomial, F>;
template <class F>
using CoalgTensor = SparseVec<std::pair<Monomial, Monomial>, F>;

template <class F>
CoalgTensor<F> coproduct(const CoalgVec<F>& x) {
  CoalgTensor<F> out;
  for (const auto& [k, c] : x)
    for (const auto& s : coproduct(k)) out.add(s, c);
  return out;
}

// ----- smash coalgebra C # G, G = Z/d acting by zeta^{g wdeg} -----

// Group action on the coalgebra: g . e^K = zeta_d^{g * wdeg(K)} e^K.
inline Cyclo group_action_scalar(const Monomial& k, int g, int d, const std::vector<int>& weights) {
  long e = static_cast<long>(g) * k.wdegree(weights);
  return Cyclo::zeta(d, e);
}

// Basis element e^K (x) h, h in Z/d (group-element basis).
struct SmashKey {
  Monomial k;
  int g = 0;
  auto operator<=>(const SmashKey&) const = default;
};
using SmashVec = SparseVec<SmashKey, Cyclo>;
using SmashTensor = SparseVec<std::pair<SmashKey, SmashKey>, Cyclo>;

// Delta(x (x) g) = sum_{g1 g2 = g} (x' (x) g1) (x) (g1^{-1} x'' (x) g2).
inline SmashTensor smash_coproduct_group(const Monomial& k, int g, int d, const std::vector<int>& weights) {
  SmashTensor out;
  for (int g1 = 0; g1 < d; ++g1) {
    int g2 = ((g - g1) % d + d) % d;
    for (const auto& [i, j] : coproduct(k)) {
      Cyclo c = group_action_scalar(j, (d - g1) % d, d, weights);
      out.add({SmashKey{i, g1}, SmashKey{j, g2}}, c);
    }
  }
  return out;
}

inline SmashTensor smash_coproduct_group(const SmashVec& x, int d, const std::vector<int>& weights) {
  SmashTensor out;
  for (const auto& [key, c] : x) {
    SmashTensor t = smash_coproduct_group(key.k, key.g, d, weights);
    out.axpy(c, t);
  }
  return out;
}

// Idempotent U_j = (1/d) sum_g zeta^{j g} g, written in the group basis.
inline SmashVec idempotent(const Monomial& k, int j, int d) {
  SmashVec v;
  for (int g = 0; g < d; ++g) v.add(SmashKey{k, g}, Cyclo::zeta(d, static_cast<long>(j) * g) * Cyclo(frac(1, d)));
  return v;
}

// Coordinates of a group-basis vector in the idempotent basis: g = sum_j zeta^{-jg} U_j.
inline SmashVec to_idempotent_basis(const SmashVec& x, int d) {
  SmashVec out;  // keys reuse SmashKey with g read as the character index j
  for (const auto& [key, c] : x)
    for (int j = 0; j < d; ++j) out.add(SmashKey{key.k, j}, c * Cyclo::zeta(d, -static_cast<long>(j) * key.g));
  return out;
}

inline SmashTensor to_idempotent_basis(const SmashTensor& x, int d) {
  SmashTensor out;
  for (const auto& [kk, c] : x)
    for (int j1 = 0; j1 < d; ++j1)
      for (int j2 = 0; j2 < d; ++j2) {
        Cyclo f = c * Cyclo::zeta(d, -static_cast<long>(j1) * kk.first.g - static_cast<long>(j2) * kk.second.g);
        out.add({SmashKey{kk.first.k, j1}, SmashKey{kk.second.k, j2}}, f);
      }
  return out;
}

// Closed form in the idempotent basis:
//   Delta(e^K U_j) = d * sum_{I+J=K} (e^I U_{j - wdeg J}) (x) (e^J U_j).
inline SmashTensor smash_coproduct_idempotent(const Monomial& k, int j, int d, const std::vector<int>& weights) {
  SmashTensor out;
  for (const auto& [i, jj] : coproduct(k)) {
    int left = ((j - jj.wdegree(weights)) % d + d) % d;
    out.add({SmashKey{i, left}, SmashKey{jj, j}}, Cyclo(d));
  }
  return out;
}

// Integer-valued grading of e^K U_j: (2/d)(|K| - j + i), i = j - |K| mod d.
inline Rational smash_grading(const Monomial& k, int j, int d, const std::vector<int>& weights) {
  int deg = k.wdegree(weights);
  int i = ((j - deg) % d + d) % d;
  return frac(2L * (deg - j + i), d);
}

// Cobar-side grading of a word f_1..f_k tensored with U_j.
inline Rational smash_cobar_grading(const std::vector<Monomial>& word, int j, int d, const std::vector<int>& weights) {
  int deg = 0;
  for (const auto& f : word) deg += f.wdegree(weights);
  int i = ((j - deg) % d + d) % d;
  return -frac(2L * (deg - j + i), d) + Rational(static_cast<long>(word.size()));
}

// Grading of the smash curvature on each sector j: every monomial of W sits in
// degree 2 exactly when W is weighted homogeneous of degree d.
inline std::vector<std::pair<int, std::vector<Rational>>> smash_curvature_degrees(const Curvature& m, int d,
                                                                                  const std::vector<int>& weights) {
  std::vector<std::pair<int, std::vector<Rational>>> out;
  for (int j = 0; j < d; ++j) {
    std::vector<Rational> degs;
    for (const auto& kv : m.potential().terms()) degs.push_back(smash_grading(kv.first, j, d, weights));
    out.emplace_back(j, std::move(degs));
  }
  return out;
}

}  // namespace lgk
