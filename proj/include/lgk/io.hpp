#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lgk/hochschild.hpp"
#include "lgk/mfcore.hpp"
#include "lgk/polyspace.hpp"

namespace lgk {

inline constexpr const char* kVersion = "0.1.0";

using Json = nlohmann::json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Rational parse_coefficient(const std::string& s) {
  try {
    return parse_rational(s);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

inline std::string rational_str(const Rational& q) { return q.get_str(); }

namespace detail {


inline const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw ParseError(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

inline std::vector<int> int_list(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be a list");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ParseError(std::string(what) + " must hold integers");
    out.push_back(v.get<int>());
  }
  return out;
}

}  // namespace detail

inline Poly parse_terms(const Json& terms, int n) {
  if (!terms.is_array()) throw ParseError("\"terms\" must be a list");
  Poly p(n);
  for (const auto& t : terms) {
    auto e = detail::int_list(detail::field(t, "exponents"), "exponents");
    if (static_cast<int>(e.size()) != n) throw ParseError("exponent vector length does not match the variables");
    for (int v : e)
      if (v < 0 || v > kMaxExponent) throw ParseError("exponent out of range 0..255");
    const auto& c = detail::field(t, "coefficient");
    if (!c.is_string()) throw ParseError("coefficient must be a rational string");
    p.add(Monomial(e), parse_coefficient(c.get<std::string>()));
  }
  return p;
}

inline Json terms_json(const Poly& p, int n) {
  Json out = Json::array();
  for (const auto& [m, c] : p.terms()) out.push_back({{"exponents", m.exponents(n)}, {"coefficient", rational_str(c)}});
  return out;
}

inline Potential parse_potential(const Json& j) {
  if (!j.is_object()) throw ParseError("potential must be a JSON object");
  const auto& vars = detail::field(j, "vars");
  if (!vars.is_array()) throw ParseError("\"vars\" must be a list of names");
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (!v.is_string() || v.get<std::string>().empty()) throw ParseError("variable names must be nonempty strings");
    if (!seen.insert(v.get<std::string>()).second) throw ParseError("duplicate variable name " + v.get<std::string>());
    names.push_back(v.get<std::string>());
  }
  int n = static_cast<int>(names.size());
  if (n > kMaxVars) throw ParseError("at most 8 variables supported");
  Poly p = parse_terms(detail::field(j, "terms"), n);
  Potential w(n, p, names);
  if (j.contains("weights") && !j.at("weights").is_null()) {
    auto a = detail::int_list(j.at("weights"), "weights");
    if (static_cast<int>(a.size()) != n) throw ParseError("weights length does not match the variables");
    for (int v : a)
      if (v <= 0) throw ParseError("weights must be positive");
    w.set_weights(a);
  }
  if (j.contains("group_order") && !j.at("group_order").is_null()) {
    if (!j.at("group_order").is_number_integer() || j.at("group_order").get<int>() <= 0)
      throw ParseError("group_order must be a positive integer");
    w.set_group_order(j.at("group_order").get<int>());
  }
  if (!w.vanishes_at_origin()) throw ParseError("potential has a constant term");
  return w;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline Json potential_json(const Potential& w) {
  Json j;
  j["vars"] = w.names();
  j["terms"] = terms_json(w.poly(), w.nvars());
  j["text"] = w.str();
  if (w.explicit_weights()) j["weights"] = *w.explicit_weights();
  if (w.group_order()) j["group_order"] = *w.group_order();
  return j;
}

// Factorization export: rank, parity vector, nonzero entries row-major.
inline Json mf_json(const MatrixFactorization& m, const std::vector<std::string>& names) {
  Json j;
  j["rank"] = m.rank();
  j["parity"] = m.parity;
  j["labels"] = m.labels;
  Json entries = Json::array();
  Json matrix = Json::array();
  for (std::size_t r = 0; r < m.rank(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.rank(); ++c) {
      const Poly& p = m.Q.at(r, c);
      row.push_back(p.str(names));
      if (!p.is_zero()) entries.push_back({{"row", r}, {"col", c}, {"poly", terms_json(p, m.n)}});
    }
    matrix.push_back(row);
  }
  j["entries"] = entries;
  j["matrix"] = matrix;
  if (m.scaled_degree) {
    Json deg = Json::array();
    for (const auto& x : *m.scaled_degree) deg.push_back(rational_str(frac(x.get_si(), m.degree_unit)));
    j["internal_degrees"] = deg;
  }
  j["twist"] = m.twist;
  return j;
}

// Reads a factorization export against the given potential.
inline MatrixFactorization parse_mf(const Json& j, const Potential& w) {
  MatrixFactorization m;
  m.n = w.nvars();
  m.w = w.poly();
  const auto& rank = detail::field(j, "rank");
  if (!rank.is_number_integer() || rank.get<long>() < 0) throw ParseError("rank must be a nonnegative integer");
  std::size_t r = rank.get<std::size_t>();
  m.parity = detail::int_list(detail::field(j, "parity"), "parity");
  if (m.parity.size() != r) throw ParseError("parity vector length does not match the rank");
  for (int p : m.parity)
    if (p != 0 && p != 1) throw ParseError("parities must be 0 or 1");
  m.Q = PolyMatrix(r, r, m.n);
  const auto& entries = detail::field(j, "entries");
  if (!entries.is_array()) throw ParseError("\"entries\" must be a list");
  for (const auto& e : entries) {
    const auto& row = detail::field(e, "row");
    const auto& col = detail::field(e, "col");
    if (!row.is_number_integer() || !col.is_number_integer()) throw ParseError("row and col must be integers");
    long a = row.get<long>(), b = col.get<long>();
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= r || static_cast<std::size_t>(b) >= r)
      throw ParseError("entry index out of range");
    m.Q.at(a, b) += parse_terms(detail::field(e, "poly"), m.n);
  }
  for (std::size_t i = 0; i < r; ++i) m.labels.push_back("e" + std::to_string(i));
  return m;
}

inline Json ranks_json(const HHResult& r) {
  Json rows = Json::array();
  for (const auto& g : r.ranks) {
    Json row;
    row["sector"] = g.sector;
    row["grade"] = rational_str(g.grade);
    row["parity"] = g.parity;
    row["rank"] = g.rank;
    row["history"] = g.history;
    row["stable"] = g.stable;
    rows.push_back(row);
  }
  Json j;
  j["window"] = r.window;
  j["step"] = r.step;
  j["ranks"] = rows;
  j["stable_total"] = r.stable_total;
  j["stable_total_by_parity"] = r.stable_total_by_parity;
  j["has_unstable"] = r.has_unstable;
  return j;
}

}  // namespace lgk
