#include "toric/suites.hpp"

#include <algorithm>
#include <stdexcept>

#include "toric/modp.hpp"
#include "toric/ps_model.hpp"
#include "toric/shintani.hpp"
#include "toric/sympow.hpp"

namespace toric {

void SuiteResult::add(std::string name, bool ok, std::string witness) {
  checks.push_back({std::move(name), ok, std::move(witness)});
}

bool SuiteResult::ok() const { return failures() == 0; }

std::size_t SuiteResult::failures() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += !c.ok;
  return n;
}

nlohmann::json SuiteResult::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["ok"] = ok();
  j["checks"] = checks.size();
  nlohmann::json fails = nlohmann::json::array();
  for (const auto& c : checks)
    if (!c.ok) fails.push_back({{"check", c.name}, {"witness", c.witness}});
  j["failures"] = fails;
  j["detail"] = detail;
  return j;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"regular", "epsilon", "chartable", "ps-model", "modp",
                                              "sympow",  "diamond", "shintani",  "corollary-scan", "all"};
  return names;
}

SuiteResult suite_regular(const PGL2& G, const PairCounts& counts) {
  SuiteResult s{"regular"};
  CycNum total = regular_identity(G, counts);
  s.add("sum dim * constant = q", total == CycNum::rational(G.q()), total.to_string());
  auto u = unipotent_report(G, counts);
  s.add("unipotent pair count", u.ok(), u.to_json().dump());
  s.detail["sum"] = total.to_json();
  s.detail["unipotent"] = u.to_json();
  return s;
}

SuiteResult suite_epsilon(const PGL2& G, const PairCounts& counts) {
  SuiteResult s{"epsilon"};
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : G.reps()) {
    if (!epsilon_eligible(r)) continue;
    auto e = epsilon_all(G, r);
    s.add("three epsilons agree for " + r.to_string(), e.agree(),
          std::to_string(e.closed) + "," + std::to_string(e.h_sum) + "," + std::to_string(e.k_sum));
    rows.push_back({{"rep", r.to_string()}, {"closed", e.closed}, {"h_sum", e.h_sum}, {"k_sum", e.k_sum}});
  }
  auto v = theorem1_vanishing(G, counts);
  std::string w;
  for (const auto& f : v.failures) w += (w.empty() ? "" : " ") + f;
  s.add("eps = -1 forces constant 0", v.ok(), w);
  s.detail["epsilons"] = rows;
  s.detail["negative"] = v.negative;
  return s;
}

SuiteResult suite_chartable(const PGL2& G) {
  SuiteResult s{"chartable"};
  auto o = G.orthogonality_check();
  s.add("orthogonality", o.ok, o.witness);
  for (const auto& r : G.reps()) {
    auto d = G.invariant_dims(r);
    std::pair<std::int64_t, std::int64_t> want{1, 1};
    if (r.kind == RepKind::Eta) want = {0, 0};
    if (r.kind == RepKind::Steinberg) want = {2, 0};
    s.add("invariant dims of " + r.to_string(), d == want, std::to_string(d.first) + "," + std::to_string(d.second));
  }
  bool round_trip = true;
  std::string where;
  for (std::size_t a = 0; a < G.reps().size() && round_trip; ++a)
    for (std::size_t c = 0; c < G.classes().size(); ++c) {
      CycNum v = G.entry(a, c).value();
      if (CycNum::from_json(nlohmann::json::parse(v.to_json().dump())) != v) {
        round_trip = false;
        where = G.reps()[a].to_string() + " at " + G.classes()[c].label.to_string();
        break;
      }
    }
  s.add("entries round-trip through JSON", round_trip, where);
  s.detail["row_pairs"] = o.row_pairs;
  s.detail["column_pairs"] = o.column_pairs;
  return s;
}

SuiteResult suite_ps_model(std::shared_ptr<const PGL2> G, const PairCounts& counts) {
  SuiteResult s{"ps-model"};
  const std::int64_t p = G->p();
  for (std::int64_t r = 1; r <= (G->q() - 3) / 2; ++r) {
    InducedModel M(G, r);
    const std::string tag = RepLabel::ps(r).to_string();
    CycNum c = raw_correlation(*G, counts, RepLabel::ps(r));
    s.add("model constant = character constant for " + tag, M.c_model() == c, M.c_model().to_string());
    s.add("normalized ratio for " + tag, M.normalized_ratio() == c);
    s.add("v_H fixed by H for " + tag, M.fixed_by(G->H(), M.vH()));
    s.add("v_K fixed by K for " + tag, M.fixed_by(G->K(), M.vK()));
    for (int d = 1; d <= G->f(); ++d) {
      if (G->f() % d) continue;
      auto sc = scaling_and_sigma_checks(M, fp::ipow(p, d));
      s.add("scaling and sigma (x^" + std::to_string(fp::ipow(p, d)) + ") for " + tag, sc.scaling_ok && sc.sigma_ok,
            sc.witness);
    }
  }
  return s;
}

SuiteResult suite_modp(const PGL2& G, const PairCounts& counts, std::uint64_t seed) {
  SuiteResult s{"modp"};
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : G.reps()) {
    if (!modp_eligible(r) || !multiplicity_one(G, r)) continue;
    auto rep = theorem1_check(G, counts, r, seed);
    bool in_fp = true;
    for (const auto& row : rep.rows) in_fp = in_fp && row.in_prime_field;
    std::string w;
    for (const auto& row : rep.rows)
      if (!row.match && w.empty())
        w = "prime " + std::to_string(row.prime.index) + " predicted " + std::to_string(row.predicted);
    s.add("reduction in F_p for " + r.to_string(), in_fp);
    s.add("reduction = prediction for " + r.to_string(), rep.all_match, w);
    s.add("parity of d matches epsilon for " + r.to_string(), rep.parity_consistent);
    rows.push_back({{"rep", r.to_string()}, {"primes", rep.rows.size()}, {"ok", rep.ok()}});
  }
  s.detail["reps"] = rows;
  return s;
}

SuiteResult suite_sympow(std::shared_ptr<const PGL2> G) {
  SuiteResult s{"sympow"};
  const std::int64_t p = G->p();
  const int f = G->f();
  std::vector<std::int64_t> digits(f, 0);
  // Ranks of the averaging idempotents are computed where dim rho stays small.
  const bool ranks = G->q() <= 25;
  std::size_t even = 0, odd = 0;
  while (true) {
    bool all_even = true;
    for (auto d : digits) all_even = all_even && d % 2 == 0;
    auto c = st_closed_check(G, digits, ranks);
    std::string tag;
    for (auto d : digits) tag += (tag.empty() ? "" : ",") + std::to_string(d);
    s.add("closed forms for digits (" + tag + ")", c.ok(), c.to_json().dump());
    if (c.ranks_computed && !all_even) s.add("X Y = 0 for odd digits (" + tag + ")", c.rank_XY == 0);
    if (c.ranks_computed && all_even)
      s.add("idempotent ranks = Brauer dims for (" + tag + ")",
            static_cast<std::int64_t>(c.rank_X) == c.brauer_dim_H && static_cast<std::int64_t>(c.rank_Y) == c.brauer_dim_K);
    (all_even ? even : odd)++;
    int i = 0;
    while (i < f && ++digits[i] == p) digits[i++] = 0;
    if (i == f) break;
  }
  s.detail["even"] = even;
  s.detail["odd"] = odd;
  return s;
}

SuiteResult suite_diamond(std::shared_ptr<const PGL2> G, const PairCounts& counts) {
  SuiteResult s{"diamond"};
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : G->reps()) {
    if (!diamond_eligible(r)) continue;
    auto d = diamond_check(G, counts, r);
    const std::string tag = r.to_string();
    s.add("Brauer sum = character for " + tag, d.brauer_ok, d.witness);
    s.add("Brauer dims = idempotent ranks for " + tag, d.dims_agree);
    s.add("unique flagged fixed-vector constituent for " + tag, d.unique_bearing && d.shape_ok);
    s.add("congruence reproduces the constant for " + tag, d.congruence_ok,
          std::to_string(d.st_value) + " vs " + std::to_string(d.reduced));
    rows.push_back(d.to_json());
  }
  s.detail["reps"] = rows;
  return s;
}

SuiteResult suite_shintani(std::int64_t p, int f_base, int ext, std::int64_t table_cap) {
  SuiteResult s{"shintani"};
  auto rep = shintani_suite(p, f_base, ext, table_cap);
  for (const auto& r : rep.reps) {
    const std::string tag = r.rep.to_string() + " (" + to_string(r.bc.kind) + ")";
    s.add("intertwining for " + tag, r.intertwining && r.intertwining->ok, r.intertwining ? r.intertwining->witness : "");
    s.add("form preservation for " + tag, r.unitarity && r.unitarity->form_preserving,
          r.unitarity ? r.unitarity->witness : "");
    s.add("T v_H = v_H and T v_K = lambda v_{K^sigma} for " + tag,
          r.invariants && r.invariants->vectors_match_model && r.invariants->tvh && r.invariants->tvk);
    s.add("epsilon and vanishing identities for " + tag, r.sign && r.sign->ok(),
          r.sign ? r.sign->constant.to_string() : "");
    s.add("T unique up to scalar for " + tag, r.uniqueness && r.uniqueness->ok());
  }
  s.add("norm map lands in F", rep.norm.ok, rep.norm.witness);
  if (rep.lemmas)
    for (const auto& row : rep.lemmas->rows)
      s.add("character sums and Gauss bridge for j = " + std::to_string(row.j) + " (" + row.kind + ")", row.ok,
            row.recip.to_string() + ", " + row.odd_pow.to_string() + ", " + row.bridge.to_string());
  s.detail = rep.to_json();
  return s;
}

SuiteResult suite_corollary_scan(const PGL2& G, const PairCounts& counts) {
  SuiteResult s{"corollary-scan"};
  auto rows = corollary_scan(G, counts);
  nlohmann::json list = nlohmann::json::array();
  std::string w;
  for (const auto& r : rows) {
    list.push_back(r.rep.to_string());
    w += (w.empty() ? "" : " ") + r.rep.to_string();
  }
  s.detail["candidates"] = list;
  s.detail["asserted"] = G.f() == 1;
  if (G.f() == 1) s.add("q = p: no zero constant with eps = +1", rows.empty(), w);
  return s;
}

namespace {

template <class F>
SuiteResult guarded(const char* name, F&& run) {
  try {
    return run();
  } catch (const std::exception& e) {
    SuiteResult s{name};
    s.add("suite completed", false, e.what());
    return s;
  }
}

}  // namespace

std::vector<SuiteResult> run_suites(const std::string& name, const SuiteContext& ctx) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw std::invalid_argument("unknown suite: " + name);
  const int f_base = ctx.f_base.value_or(ctx.f);
  std::vector<SuiteResult> out;
  auto shintani = [&] { return suite_shintani(ctx.p, f_base, ctx.ext, ctx.table_cap); };
  if (name == "shintani") {
    if (fp::ipow(ctx.p, 2 * f_base * ctx.ext) > ctx.table_cap) throw std::invalid_argument("field size exceeds table cap");
    out.push_back(guarded("shintani", shintani));
    return out;
  }
  auto G = PGL2::build(ctx.p, ctx.f, ctx.modulus, ctx.table_cap);
  PairCounts counts = pair_class_counts(*G);
  if (ctx.inject_fault) counts.counts.at(0) += 1;
  auto want = [&](const char* s) { return name == "all" || name == s; };
  if (want("regular")) out.push_back(guarded("regular", [&] { return suite_regular(*G, counts); }));
  if (want("epsilon")) out.push_back(guarded("epsilon", [&] { return suite_epsilon(*G, counts); }));
  if (want("chartable")) out.push_back(guarded("chartable", [&] { return suite_chartable(*G); }));
  if (want("ps-model")) out.push_back(guarded("ps-model", [&] { return suite_ps_model(G, counts); }));
  if (want("modp")) out.push_back(guarded("modp", [&] { return suite_modp(*G, counts, ctx.seed); }));
  if (want("sympow")) out.push_back(guarded("sympow", [&] { return suite_sympow(G); }));
  if (want("diamond")) out.push_back(guarded("diamond", [&] { return suite_diamond(G, counts); }));
  if (want("corollary-scan"))
    out.push_back(guarded("corollary-scan", [&] { return suite_corollary_scan(*G, counts); }));
  if (name == "all") {
    const int m = 2 * f_base * ctx.ext;
    if (fp::ipow(ctx.p, m) <= ctx.table_cap) {
      out.push_back(guarded("shintani", shintani));
    } else {
      SuiteResult s{"shintani"};
      s.detail["skipped"] = "F_" + std::to_string(ctx.p) + "^" + std::to_string(m) + " exceeds the table cap";
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace toric
