// lgk: command-line front end for the curved Koszul duality toolkit.
// Machine-readable report on stdout (or --output), human summary on stderr.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lgk/ainfty.hpp"
#include "lgk/cobar.hpp"
#include "lgk/corpus.hpp"
#include "lgk/hochschild.hpp"
#include "lgk/hodge.hpp"
#include "lgk/hpl.hpp"
#include "lgk/io.hpp"
#include "lgk/mfcore.hpp"

using namespace lgk;

namespace {

enum Exit { kOk = 0, kFail = 1, kInput = 2, kInconclusive = 3 };

struct Options {
  std::string input;
  std::string mf_file;
  std::string output;
  std::string weights;
  std::optional<int> group_order;
  std::optional<int> window;
  int arity_cap = 4;
  std::string split = "euler";
  std::uint64_t seed = 20240601;
  int count = 100;
  bool strict = false;
};

struct Report {
  std::string command;
  Json potential = nullptr;
  Json caps = Json::object();
  Json checks = Json::array();
  bool failed = false;
  bool inconclusive = false;

  void add(const std::string& check, const std::string& status, Json values = Json::object(),
           const std::string& witness = {}) {
    Json c;
    c["check"] = check;
    c["status"] = status;
    if (!witness.empty()) c["witness"] = witness;
    c["values"] = std::move(values);
    checks.push_back(std::move(c));
    if (status == "fail") failed = true;
    if (status == "inconclusive") inconclusive = true;
    std::cerr << "  " << status << "  " << check;
    if (!witness.empty()) std::cerr << "  [" << witness << "]";
    std::cerr << "\n";
  }
  void pass_or_fail(const std::string& check, bool ok, Json values = Json::object(), const std::string& witness = {}) {
    add(check, ok ? "pass" : "fail", std::move(values), ok ? std::string() : witness);
  }

  std::string status() const { return failed ? "fail" : inconclusive ? "inconclusive" : "pass"; }

  Json json() const {
    Json j;
    j["version"] = kVersion;
    j["command"] = command;
    j["potential"] = potential;
    j["caps"] = caps;
    j["checks"] = checks;
    j["status"] = status();
    return j;
  }
};

std::vector<int> parse_int_list(const std::string& s, const char* what) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      int v = std::stoi(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ParseError(std::string("bad ") + what + " list: " + s);
    }
  }
  return out;
}

Potential load(const Options& o) {
  Potential w = parse_potential(read_json_file(o.input));
  if (!o.weights.empty()) {
    auto a = parse_int_list(o.weights, "weights");
    if (static_cast<int>(a.size()) != w.nvars()) throw ParseError("--weights length does not match the variables");
    for (int v : a)
      if (v <= 0) throw ParseError("--weights must be positive");
    w.set_weights(a);
  }
  if (o.group_order) {
    if (*o.group_order <= 0) throw ParseError("--group-order must be positive");
    w.set_group_order(*o.group_order);
  }
  return w;
}

SplitMode split_mode(const Options& o) { return o.split == "greedy" ? SplitMode::Greedy : SplitMode::Euler; }

int window_or(const Options& o, int fallback) { return o.window ? *o.window : fallback; }

bool is_quadratic(const Potential& w) {
  if (w.poly().is_zero()) return false;
  for (const auto& kv : w.poly().terms())
    if (kv.first.degree() != 2) return false;
  return true;
}

Json grade_ranks_json(const std::vector<GradeRank>& r) {
  Json out = Json::array();
  for (const auto& g : r) out.push_back({{"grade", rational_str(g.grade)}, {"rank", g.rank}});
  return out;
}

// ---------------------------------------------------------------- checks

void run_kstab(const Potential& w, const Options& o, Report& rep) {
  auto m = kstab(w, split_mode(o));
  auto v = verify_mf(m);
  rep.pass_or_fail("q-squared-equals-w", v.ok, {{"factorization", mf_json(m, w.names())}}, v.witness);
}

const Json& locate_mf(const Json& j) {
  if (j.is_object() && j.contains("rank")) return j;
  if (j.is_object() && j.contains("checks"))
    for (const auto& c : j.at("checks"))
      if (c.contains("values") && c.at("values").contains("factorization")) return c.at("values").at("factorization");
  throw ParseError("no factorization record in the file");
}

void run_verify_mf(const Potential& w, const Options& o, Report& rep) {
  if (o.mf_file.empty()) throw ParseError("verify-mf needs a factorization file");
  auto m = parse_mf(locate_mf(read_json_file(o.mf_file)), w);
  auto v = verify_mf(m);
  rep.pass_or_fail("q-squared-equals-w", v.ok, {{"rank", m.rank()}}, v.witness);
}

void run_cobar_check(const Potential& w, const Options& o, Report& rep) {
  int N = window_or(o, 8);
  rep.caps["window"] = N;
  auto r = check_d_squared(w.nvars(), Curvature(w.poly()), N);
  rep.pass_or_fail("cobar-d-squared", r.ok, {{"words_checked", r.words_checked}},
                   r.witness ? "D^2 nonzero on " + r.witness->str(w.names()) : std::string());
}

void run_hodge_check(const Potential& w, const Options& o, Report& rep) {
  int N = window_or(o, 6);
  rep.caps["window"] = N;
  auto r = verify_hodge(Hodge(w.nvars()), N);
  std::string wit;
  for (const auto& f : r.failures) wit += (wit.empty() ? "" : "; ") + f;
  rep.pass_or_fail("hodge-identities", r.ok, {{"blocks", r.blocks}}, wit);
}

void hpl_record(Report& rep, const std::string& name, const HplSuiteReport& r, Json values) {
  values["instances"] = r.instances;
  values["curved"] = r.curved;
  rep.pass_or_fail(name, r.ok, std::move(values), r.witness);
}

void run_hpl_random(const Options& o, Report& rep) {
  rep.caps["seed"] = o.seed;
  rep.caps["count"] = o.count;
  std::cerr << "  seed " << o.seed << ", " << o.count << " instances\n";
  hpl_record(rep, "hpl-random", hpl_random_suite(o.seed, o.count), {{"seed", o.seed}});
}

void run_hpl_cobar(const Potential& w, int N, Report& rep, const std::string& name = "hpl-cobar") {
  try {
    hpl_record(rep, name, hpl_cobar_suite(w.nvars(), Curvature(w.poly()), N), {{"window", N}});
  } catch (const NotSmall& e) {
    rep.add(name, "inconclusive", {{"window", N}}, e.what());
  }
}

void run_cobar_homology(const Potential& w, const Options& o, Report& rep) {
  int N = window_or(o, w.nvars() <= 1 ? 6 : 4);
  rep.caps["window"] = N;
  auto r = cobar_homology(w, N);
  std::size_t want = std::size_t(1) << w.nvars();
  Json values{{"ranks", grade_ranks_json(r.ranks)}, {"total", r.total}};
  Json expected = Json::array();
  for (const auto& g : r.expected_grades) expected.push_back(rational_str(g));
  values["expected_grades"] = expected;
  bool ok = r.total == want && r.matches_expected;
  rep.pass_or_fail("cobar-homology-is-exterior", ok, values,
                   "total " + std::to_string(r.total) + ", expected " + std::to_string(want) +
                       (r.matches_expected ? "" : ", grades differ"));
}

void run_ainfty(const Potential& w, const Options& o, Report& rep) {
  int cap = o.arity_cap;
  if (cap < 2) throw ParseError("--arity-cap must be at least 2");
  rep.caps["arity_cap"] = cap;
  int n = w.nvars();
  Hodge h(n);
  auto ops = transfer(w, cap, h);
  Json nonzero = Json::array();
  for (const auto& op : ops) {
    std::size_t c = 0;
    for (const auto& x : op.c) c += sgn(x) != 0;
    nonzero.push_back({{"arity", op.arity}, {"nonzero_coefficients", c}});
  }
  rep.pass_or_fail("m1-vanishes", ops[0].is_zero(), {{"operations", nonzero}}, "transferred m1 has nonzero entries");
  auto st = check_stasheff(ops, cap);
  rep.pass_or_fail("stasheff", st.ok, {{"arity_checked", st.arity_checked}, {"convention", st.convention}},
                   "arity " + std::to_string(st.failed_arity) + " at " + tuple_str(st.witness, n));
  if (w.poly().is_zero()) {
    bool formal = is_wedge_product(ops[1]);
    for (std::size_t k = 2; k < ops.size(); ++k) formal = formal && ops[k].is_zero();
    rep.pass_or_fail("formal-exterior", formal, Json::object(), "W = 0 but the transferred structure is not exterior");
  }
  if (is_quadratic(w)) {
    auto c = clifford_oracle(w, ops[1]);
    Json values{{"verdict", c.verdict}};
    if (c.scalar) values["scalar"] = rational_str(*c.scalar);
    rep.pass_or_fail("clifford", c.verdict != "unequal", values, c.witness);
  }
}

void run_milnor(const Potential& w, Report& rep) {
  try {
    auto r = w.milnor_number();
    Json values{{"isolated", r.isolated}};
    values["mu"] = r.isolated ? Json(r.mu) : Json(nullptr);
    rep.add("milnor", "pass", values);
  } catch (const Inconclusive& e) {
    rep.add("milnor", "inconclusive", {{"cap", e.cap()}}, e.what());
  }
}

void run_hochschild(const Potential& w, const Options& o, Report& rep) {
  int n = w.nvars();
  int N = window_or(o, 12);
  int bm_window = n <= 1 ? N : std::min(N, 8);
  rep.caps["window"] = N;
  rep.caps["bm_window"] = bm_window;
  auto hh = hh_ranks(w, N);
  std::optional<MilnorResult> mu;
  try {
    mu = w.milnor_number();
  } catch (const Inconclusive&) {
  }
  Json values{{"hh", ranks_json(hh)}};
  if (!mu || !mu->isolated) {
    rep.add("hh-milnor", "inconclusive", values, mu ? "singularity is not isolated" : "Milnor number inconclusive");
  } else {
    values["milnor"] = mu->mu;
    values["expected_parity"] = n % 2;
    bool ok = hh.stable_total == mu->mu && hh.stable_total_by_parity[n % 2] == mu->mu;
    std::string wit = "stable total " + std::to_string(hh.stable_total) + " (parity " + std::to_string(n % 2) + ": " +
                      std::to_string(hh.stable_total_by_parity[n % 2]) + "), Milnor number " + std::to_string(mu->mu);
    if (!ok && hh.has_unstable)
      rep.add("hh-milnor", "inconclusive", values, wit + "; unstable grades remain, enlarge --window");
    else
      rep.pass_or_fail("hh-milnor", ok, values, wit);
  }
  auto range = n <= 1 ? std::nullopt : dual_grade_range(hh);
  auto bm = bm_ranks_truncated(w, bm_window, range);
  auto wit = duality_mismatch(hh, bm);
  rep.pass_or_fail("hh-bm-duality", !wit, {{"bm", ranks_json(bm)}}, wit.value_or(""));
}

int group_order_for(const Potential& w) {
  if (w.group_order()) return *w.group_order();
  if (auto qh = w.quasi_homogeneity()) return qh->second;
  throw ParseError("no group order: pass --group-order or make the potential weighted homogeneous");
}

void curvature_degree_check(const Potential& w, int d, Report& rep) {
  auto a = action_weights(w);
  auto degs = smash_curvature_degrees(Curvature(w.poly()), d, a);
  bool ok = true;
  std::string wit;
  Json values = Json::array();
  for (const auto& [j, v] : degs) {
    Json row = Json::array();
    for (const auto& q : v) {
      row.push_back(rational_str(q));
      if (q != 2 && ok) {
        ok = false;
        wit = "sector " + std::to_string(j) + " has curvature degree " + rational_str(q);
      }
    }
    values.push_back({{"sector", j}, {"degrees", row}});
  }
  rep.pass_or_fail("smash-curvature-degree-two", ok, {{"sectors", values}}, wit);
}

void run_equivariant(const Potential& w, const Options& o, Report& rep) {
  int d = group_order_for(w);
  int N = window_or(o, 9);
  rep.caps["group_order"] = d;
  rep.caps["window"] = N;
  auto gens = equivariant_generators(w, d, split_mode(o));
  Json list = Json::array();
  bool ok = static_cast<int>(gens.size()) == d;
  std::string wit = ok ? "" : "expected " + std::to_string(d) + " generators";
  for (const auto& g : gens) {
    auto v = verify_mf(g);
    if (!v.ok && ok) {
      ok = false;
      wit = "character " + std::to_string(g.twist) + ": " + v.witness;
    }
    list.push_back({{"character", g.twist}, {"rank", g.rank()}});
  }
  rep.pass_or_fail("equivariant-generators", ok, {{"count", gens.size()}, {"generators", list}}, wit);
  auto qh = w.quasi_homogeneity();
  if (qh && qh->second == d) curvature_degree_check(w, d, rep);
  auto hh = smash_hh_ranks(w, d, N);
  auto mis = orbifold_mismatch(hh, w, d);
  Json values{{"smash_hh", ranks_json(hh)}};
  Json oracle = Json::array();
  for (const auto& [k, v] : orbifold_ranks(w, d))
    oracle.push_back({{"sector", std::get<0>(k)}, {"scaled_grade", std::get<1>(k)}, {"parity", std::get<2>(k)}, {"rank", v}});
  values["fixed_point_oracle"] = oracle;
  if (mis && hh.has_unstable)
    rep.add("smash-hh-vs-fixed-points", "inconclusive", values, *mis + "; unstable grades remain, enlarge --window");
  else
    rep.pass_or_fail("smash-hh-vs-fixed-points", !mis, values, mis.value_or(""));
}

void run_graded(const Potential& w, const Options& o, Report& rep) {
  auto qh = w.quasi_homogeneity();
  if (!qh) throw ParseError("graded needs a weighted-homogeneous potential");
  int d = qh->second;
  rep.caps["degree"] = d;
  auto gens = graded_generators(w, d, split_mode(o));
  Json list = Json::array();
  bool shifts = static_cast<int>(gens.size()) == d;
  bool degree_one = true, valid = true;
  std::string wit_shift, wit_deg, wit_mf;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& g = gens[i];
    if (g.twist != d - 1 - static_cast<int>(i) && shifts) {
      shifts = false;
      wit_shift = "position " + std::to_string(i) + " carries shift " + std::to_string(g.twist);
    }
    if (!has_degree_one(g) && degree_one) {
      degree_one = false;
      wit_deg = "shift " + std::to_string(g.twist) + ": Q is not of degree one";
    }
    auto v = verify_mf(g);
    if (!v.ok && valid) {
      valid = false;
      wit_mf = "shift " + std::to_string(g.twist) + ": " + v.witness;
    }
    list.push_back(mf_json(g, w.names()));
  }
  rep.pass_or_fail("graded-shifts", shifts, {{"generators", list}}, wit_shift);
  rep.pass_or_fail("q-degree-one", degree_one, Json::object(), wit_deg);
  rep.pass_or_fail("q-squared-equals-w", valid, Json::object(), wit_mf);
  curvature_degree_check(w, d, rep);
}

void run_corpus(const Options& o, Report& rep) {
  for (const auto& e : ade_corpus()) {
    std::cerr << e.name << "\n";
    const Potential& w = e.w;
    int n = w.nvars();
    auto prefixed = [&](const std::string& s) { return e.name + " / " + s; };
    Report sub;
    sub.command = rep.command;
    auto m = kstab(w);
    auto v = verify_mf(m);
    sub.pass_or_fail("kstab", v.ok, {{"rank", m.rank()}}, v.witness);
    Hodge h(n);
    auto q = dualize(psi_omega_reduced(w, w.poly().degree(), h).cof);
    auto vq = verify_mf(q);
    sub.pass_or_fail("psi-dual", vq.ok, {{"rank", q.rank()}}, vq.witness);
    auto d2 = check_d_squared(n, Curvature(w.poly()), window_or(o, n == 1 ? 8 : 6));
    sub.pass_or_fail("cobar-d-squared", d2.ok, {{"words_checked", d2.words_checked}},
                     d2.witness ? d2.witness->str(w.names()) : std::string());
    int cap = n == 1 ? 4 : 3;
    auto ops = transfer(w, cap, h);
    auto st = check_stasheff(ops, cap);
    sub.pass_or_fail("stasheff", ops[0].is_zero() && st.ok, {{"arity_checked", st.arity_checked}},
                     tuple_str(st.witness, n));
    run_milnor(w, sub);
    run_hpl_cobar(w, 4, sub);
    for (auto c : sub.checks) {
      c["check"] = prefixed(c["check"].get<std::string>());
      c["values"]["potential"] = potential_json(w);
      rep.checks.push_back(c);
    }
    rep.failed = rep.failed || sub.failed;
    rep.inconclusive = rep.inconclusive || sub.inconclusive;
  }
}

// ---------------------------------------------------------------- driver

int emit(const Report& rep, const Options& o) {
  std::string text = rep.json().dump(2) + "\n";
  if (o.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(o.output);
    if (!out) {
      std::cerr << "cannot write " << o.output << "\n";
      return kInput;
    }
    out << text;
  }
  std::cerr << rep.command << ": " << rep.status() << "\n";
  if (rep.failed) return kFail;
  if (rep.inconclusive && o.strict) return kInconclusive;
  return kOk;
}

int run(const std::string& command, Options& o, bool needs_potential) {
  Report rep;
  rep.command = command;
  rep.caps["split"] = o.split;
  if (o.window) rep.caps["window"] = *o.window;
  try {
    std::optional<Potential> w;
    if (!o.input.empty()) {
      w = load(o);
      rep.potential = potential_json(*w);
    } else if (needs_potential) {
      throw ParseError(command + " needs a potential file");
    }
    if (o.window && *o.window < 0) throw ParseError("--window must be nonnegative");
    if (o.count <= 0) throw ParseError("--count must be positive");
    std::cerr << command << (w ? " on " + w->str() : std::string()) << "\n";
    auto t0 = std::chrono::steady_clock::now();
    if (command == "kstab") run_kstab(*w, o, rep);
    else if (command == "verify-mf") run_verify_mf(*w, o, rep);
    else if (command == "cobar-check") run_cobar_check(*w, o, rep);
    else if (command == "hodge-check") run_hodge_check(*w, o, rep);
    else if (command == "hpl-check") {
      run_hpl_random(o, rep);
      if (w) {
        int N = window_or(o, 4);
        rep.caps["window"] = N;
        run_hpl_cobar(*w, N, rep);
      }
    } else if (command == "cobar-homology") run_cobar_homology(*w, o, rep);
    else if (command == "ainfty") run_ainfty(*w, o, rep);
    else if (command == "milnor") run_milnor(*w, rep);
    else if (command == "hochschild") run_hochschild(*w, o, rep);
    else if (command == "equivariant") run_equivariant(*w, o, rep);
    else if (command == "graded") run_graded(*w, o, rep);
    else if (command == "corpus") run_corpus(o, rep);
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "  " << s << " s\n";
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  }
  return emit(rep, o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curved Koszul duality toolkit for Landau-Ginzburg potentials"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Options o;
  struct Sub {
    const char* name;
    const char* help;
    bool needs_potential;
  };
  const std::vector<Sub> subs{
      {"kstab", "emit the stabilized Koszul factorization and verify it", true},
      {"verify-mf", "check an imported factorization against a potential", true},
      {"cobar-check", "D^2 = 0 on every cobar word up to the window", true},
      {"hodge-check", "Hodge retraction identities up to the window", true},
      {"hpl-check", "randomized curved perturbation suite (plus the cobar instance of a potential)", false},
      {"cobar-homology", "homology ranks of the cobar construction", true},
      {"ainfty", "transferred A-infinity structure, Stasheff and Clifford reports", true},
      {"milnor", "Milnor number", true},
      {"hochschild", "Hochschild ranks, Milnor comparison and Borel-Moore duality", true},
      {"equivariant", "equivariant generators and smash-product Hochschild sectors", true},
      {"graded", "graded generators and degree audits", true},
      {"corpus", "all checks over the built-in ADE fixtures", false},
  };
  std::string chosen;
  bool needs = true;
  for (const auto& s : subs) {
    auto* c = app.add_subcommand(s.name, s.help);
    if (std::string(s.name) != "corpus") {
      auto* in = c->add_option("potential", o.input, "potential JSON file");
      if (s.needs_potential) in->required();
    }
    if (std::string(s.name) == "verify-mf") c->add_option("factorization", o.mf_file, "factorization JSON file")->required();
    c->add_option("--weights", o.weights, "comma-separated positive weights");
    c->add_option("--group-order", o.group_order, "order of the cyclic group");
    c->add_option("--window", o.window, "weight window");
    c->add_option("--arity-cap", o.arity_cap, "largest arity to transfer and check")->capture_default_str();
    c->add_option("--split", o.split, "splitting of W into x_i-parts")
        ->check(CLI::IsMember({"euler", "greedy"}))
        ->capture_default_str();
    c->add_option("--seed", o.seed, "seed for randomized suites")->capture_default_str();
    c->add_option("--count", o.count, "instances in randomized suites")->capture_default_str();
    c->add_flag("--strict", o.strict, "exit 3 when a check is inconclusive");
    c->add_option("-o,--output", o.output, "write the JSON report here instead of stdout");
    c->callback([&chosen, &needs, s] {
      chosen = s.name;
      needs = s.needs_potential;
    });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }
  return run(chosen, o, needs);
}
