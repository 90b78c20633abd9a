#pragma once

#include "lgk/polyspace.hpp"

#include <string>
#include <vector>

namespace lgk {

struct CorpusEntry {
  std::string name;
  Potential w;
};

inline Potential make_potential(int n, std::initializer_list<std::pair<std::vector<int>, long>> terms) {
  Poly p(n);
  for (const auto& [e, c] : terms) p.add(Monomial(e), Rational(c));
  return Potential(n, p);
}

// ADE-style fixtures plus three extra binary forms.
inline std::vector<CorpusEntry> ade_corpus() {
  return {
      {"A3: x^4", make_potential(1, {{{4}, 1}})},
      {"D4: x^2y + y^3", make_potential(2, {{{2, 1}, 1}, {{0, 3}, 1}})},
      {"E6: x^3 + y^4", make_potential(2, {{{3, 0}, 1}, {{0, 4}, 1}})},
      {"E7: x^3 + xy^3", make_potential(2, {{{3, 0}, 1}, {{1, 3}, 1}})},
      {"E8: x^3 + y^5", make_potential(2, {{{3, 0}, 1}, {{0, 5}, 1}})},
      {"x^3 + y^3", make_potential(2, {{{3, 0}, 1}, {{0, 3}, 1}})},
      {"xy", make_potential(2, {{{1, 1}, 1}})},
      {"x^2 + y^2", make_potential(2, {{{2, 0}, 1}, {{0, 2}, 1}})},
  };
}

}  // namespace lgk
