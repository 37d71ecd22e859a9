#include "toric/cli.hpp"

#include <gmp.h>

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "toric/correlation.hpp"
#include "toric/modp.hpp"
#include "toric/pgl2.hpp"
#include "toric/poly_fp.hpp"
#include "toric/shintani.hpp"
#include "toric/suites.hpp"

namespace toric::cli {

namespace {

using nlohmann::json;

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;
  std::int64_t p = 0;
  int f = 1;
  int ext = 2;
  std::optional<int> f_base;
  std::string modulus;
  std::optional<int> prime;
  std::string prime_factor;
  std::string rep;
  bool all_primes = false;
  bool json_flag = false;
  std::string format = "json";
  std::uint64_t seed = 0x5eedULL;
  std::int64_t table_cap = kDefaultTableCap;
  std::string suite = "all";
  bool inject_fault = false;

  std::optional<fp::Poly> modulus_poly() const {
    if (modulus.empty()) return std::nullopt;
    return fp::parse(modulus, p);
  }
  int base_degree() const { return f_base.value_or(f); }
};

json config_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["p"] = c.p;
  j["f"] = c.f;
  j["ext"] = c.ext;
  j["f_base"] = c.f_base ? json(*c.f_base) : json(nullptr);
  j["modulus"] = c.modulus.empty() ? json(nullptr) : json(c.modulus);
  j["prime"] = c.prime ? json(*c.prime) : json(nullptr);
  j["prime_factor"] = c.prime_factor.empty() ? json(nullptr) : json(c.prime_factor);
  j["rep"] = c.rep.empty() ? json(nullptr) : json(c.rep);
  j["all_primes"] = c.all_primes;
  j["format"] = c.format;
  j["seed"] = c.seed;
  j["table_cap"] = c.table_cap;
  if (c.command == "verify") {
    j["suite"] = c.suite;
    j["inject_fault"] = c.inject_fault;
  }
  return j;
}

json manifest(const RunConfig& c, const json& tower) {
  std::ostringstream nj;
  nj << NLOHMANN_JSON_VERSION_MAJOR << '.' << NLOHMANN_JSON_VERSION_MINOR << '.' << NLOHMANN_JSON_VERSION_PATCH;
  return {{"tool", {{"name", kToolName}, {"version", kToolVersion}}},
          {"config", config_json(c)},
          {"tower", tower},
          {"versions", {{"gmp", gmp_version}, {"nlohmann_json", nj.str()}, {"cli11", CLI11_VERSION}}}};
}

void validate(const RunConfig& c) {
  if (c.p < 3 || !fp::is_prime(c.p)) throw ConfigError("--p must be an odd prime");
  if (c.f < 1) throw ConfigError("--f must be positive");
  if (c.ext < 1) throw ConfigError("--ext must be positive");
  if (c.f_base && *c.f_base < 1) throw ConfigError("--f-base must be positive");
  if (c.format != "json" && c.format != "csv") throw ConfigError("--format must be json or csv");
  if (c.json_flag && c.format == "csv") throw ConfigError("--json conflicts with --format csv");
  if (c.table_cap < 1) throw ConfigError("--table-cap must be positive");
  if (c.prime && *c.prime < 0) throw ConfigError("--prime must be a nonnegative index");
  const bool selects_prime = c.prime || !c.prime_factor.empty();
  if (c.all_primes && selects_prime) throw ConfigError("--all-primes conflicts with --prime and --prime-factor");
  if (c.prime && !c.prime_factor.empty()) throw ConfigError("--prime conflicts with --prime-factor");
  if (c.command == "shintani" && !c.modulus.empty()) throw ConfigError("--modulus is not supported by shintani");
  if (c.format == "csv" && c.command != "chartable" && c.command != "correlate")
    throw ConfigError("--format csv is supported by chartable and correlate only");
  if (c.command == "modp" && c.rep.empty()) throw ConfigError("modp needs --rep");
  if (c.command == "verify") {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), c.suite) == names.end())
      throw ConfigError("unknown suite: " + c.suite);
  }
  if (!c.modulus.empty()) (void)c.modulus_poly();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

std::vector<RepLabel> selected_reps(const PGL2& G, const std::string& rep) {
  if (rep.empty() || rep == "all") return G.reps();
  RepLabel r = RepLabel::parse(rep);
  (void)G.rep_index(r);
  return {r};
}

int cmd_correlate(const RunConfig& c, std::ostream& out) {
  auto G = PGL2::build(c.p, c.f, c.modulus_poly(), c.table_cap);
  const auto reps = selected_reps(*G, c.rep);
  const PairCounts counts = pair_class_counts(*G);
  json rows = json::array();
  for (const auto& r : reps) rows.push_back(correlate(*G, counts, r).to_json());
  if (c.format == "csv") {
    out << "# manifest " << manifest(c, G->tower().to_json()).dump() << '\n';
    out << "rep,dimension,value,numeric,epsilon,zero\n";
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const json& row = rows[i];
      out << reps[i].to_string() << ',' << reps[i].dimension(G->q()) << ','
          << csv_field(CycNum::from_json(row["value"]).to_string()) << ',' << row["numeric"].dump() << ','
          << (row["epsilon"].is_null() ? "" : row["epsilon"].dump()) << ',' << row["zero"].dump() << '\n';
    }
    return kOk;
  }
  emit(out, {{"manifest", manifest(c, G->tower().to_json())}, {"reports", rows}});
  return kOk;
}

int cmd_modp(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto G = PGL2::build(c.p, c.f, c.modulus_poly(), c.table_cap);
  const RepLabel r = RepLabel::parse(c.rep);
  (void)G->rep_index(r);
  if (!modp_eligible(r)) throw ConfigError("no mod-p prediction for " + r.to_string());
  const PairCounts counts = pair_class_counts(*G);
  ModpReport rep = theorem1_check(*G, counts, r, c.seed);
  if (!c.all_primes) {
    std::vector<ModpRow> keep;
    if (!c.prime_factor.empty()) {
      const fp::Poly want = fp::parse(c.prime_factor, c.p);
      for (const auto& row : rep.rows)
        if (row.prime.factor == want) keep.push_back(row);
      if (keep.empty()) throw ConfigError("no prime with factor " + c.prime_factor);
    } else {
      const auto idx = static_cast<std::size_t>(c.prime.value_or(0));
      if (idx >= rep.rows.size()) throw ConfigError("--prime out of range, " + std::to_string(rep.rows.size()) + " primes");
      keep.push_back(rep.rows[idx]);
    }
    rep.rows = std::move(keep);
    rep.all_match = std::all_of(rep.rows.begin(), rep.rows.end(), [](const ModpRow& row) { return row.match; });
  }
  json j = rep.to_json();
  j["ok"] = rep.ok();
  emit(out, {{"manifest", manifest(c, G->tower().to_json())}, {"report", j}});
  if (rep.ok()) return kOk;
  for (const auto& row : rep.rows)
    if (!row.match)
      err << "modp " << r.to_string() << ": prime " << row.prime.index << " (" << fp::to_string(row.prime.factor)
          << ") predicted " << row.predicted << '\n';
  if (!rep.parity_consistent) err << "modp " << r.to_string() << ": parity of d disagrees with epsilon\n";
  return kIdentityFailure;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  SuiteContext ctx;
  ctx.p = c.p;
  ctx.f = c.f;
  ctx.ext = c.ext;
  ctx.f_base = c.f_base;
  ctx.modulus = c.modulus_poly();
  ctx.table_cap = c.table_cap;
  ctx.seed = c.seed;
  ctx.inject_fault = c.inject_fault;
  const auto results = run_suites(c.suite, ctx);
  // Towers are deterministic, so rebuilding them here reproduces the moduli the suites used.
  json tower;
  if (c.suite != "shintani") tower = FieldTower::build(c.p, 2 * c.f, ctx.modulus, c.table_cap)->to_json();
  for (const auto& s : results)
    if (s.suite == "shintani" && !s.detail.contains("skipped")) {
      json t = FieldTower::build(c.p, 2 * c.base_degree() * c.ext, std::nullopt, c.table_cap)->to_json();
      if (c.suite == "shintani")
        tower = t;
      else
        tower = {{"main", tower}, {"shintani", t}};
    }
  json suites = json::array();
  bool ok = true;
  for (const auto& s : results) {
    suites.push_back(s.to_json());
    ok = ok && s.ok();
    for (const auto& ch : s.checks)
      if (!ch.ok) err << s.suite << ": " << ch.name << (ch.witness.empty() ? "" : ": " + ch.witness) << '\n';
  }
  emit(out, {{"manifest", manifest(c, tower)}, {"ok", ok}, {"suites", suites}});
  return ok ? kOk : kIdentityFailure;
}

int cmd_chartable(const RunConfig& c, std::ostream& out) {
  auto G = PGL2::build(c.p, c.f, c.modulus_poly(), c.table_cap);
  json table = G->table_json();
  if (c.format == "json") {
    emit(out, {{"manifest", manifest(c, G->tower().to_json())}, {"table", table}});
    return kOk;
  }
  out << "# manifest " << manifest(c, G->tower().to_json()).dump() << '\n';
  out << "rep,dimension";
  for (const auto& cl : table["classes"]) out << ',' << csv_field(cl["label"].get<std::string>());
  out << "\nclass_size,";
  for (const auto& cl : table["classes"]) out << ',' << cl["size"].get<std::int64_t>();
  out << '\n';
  for (const auto& row : table["characters"]) {
    out << row["rep"].get<std::string>() << ',' << row["dimension"].get<std::int64_t>();
    for (const auto& v : row["values"]) out << ',' << csv_field(CycNum::from_json(v).to_string());
    out << '\n';
  }
  return kOk;
}

int cmd_shintani(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const int fb = c.base_degree();
  const ShintaniPair pair = ShintaniPair::build(c.p, fb, c.ext, c.table_cap);
  const json tower = pair.GE->tower().to_json();
  if (c.rep.empty() || c.rep == "all") {
    auto suite = shintani_suite(c.p, fb, c.ext, c.table_cap);
    json j = suite.to_json();
    emit(out, {{"manifest", manifest(c, tower)}, {"suite", j}});
    if (suite.ok()) return kOk;
    for (const auto& r : suite.reps)
      if (!r.ok()) err << "shintani: " << r.rep.to_string() << " failed\n";
    if (!suite.norm.ok) err << "shintani: norm map " << suite.norm.witness << '\n';
    if (suite.lemmas && !suite.lemmas->ok()) err << "shintani: character-sum lemmas failed\n";
    return kIdentityFailure;
  }
  const RepLabel r = RepLabel::parse(c.rep);
  if (r.kind != RepKind::PrincipalSeries) throw ConfigError("shintani takes --rep ps:R");
  (void)pair.GE->rep_index(r);
  const PairCounts counts = pair_class_counts(*pair.GE);
  const ShintaniReport rep = shintani_report(pair, counts, r.r);
  emit(out, {{"manifest", manifest(c, tower)}, {"report", rep.to_json()}});
  if (rep.ok()) return kOk;
  err << "shintani: " << r.to_string() << " failed, see report\n";
  return kIdentityFailure;
}

void add_options(CLI::App& app, RunConfig& c) {
  app.add_option("--p", c.p, "odd prime p");
  app.add_option("--f", c.f, "q = p^f");
  app.add_option("--ext", c.ext, "degree of E over F_q for shintani");
  app.add_option("--f-base", c.f_base, "degree of F_q over F_p for shintani (default --f)");
  app.add_option("--modulus", c.modulus, "modulus override, e.g. X^2+6X+3 or [3,6,1]");
  app.add_option("--prime", c.prime, "index of the prime ideal above p");
  app.add_option("--prime-factor", c.prime_factor, "factor polynomial of the prime ideal above p");
  app.add_option("--rep", c.rep, "trivial, eta, st, st-eta, ps:R, cusp:R or all");
  app.add_flag("--all-primes", c.all_primes, "every prime ideal above p");
  app.add_flag("--json", c.json_flag, "JSON output (the default)");
  app.add_option("--format", c.format, "json or csv");
  app.add_option("--seed", c.seed, "seed for prime-ideal enumeration");
  app.add_option("--table-cap", c.table_cap, "largest field size with log tables")->envname("TORIC_TABLE_CAP");
  app.add_option("--suite", c.suite, "suite for verify");
  app.add_flag("--inject-fault", c.inject_fault, "perturb one pair count so verify must fail");
  app.set_config("--config", "", "config file, key = flag name; flags take precedence");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact correlation constants of tori in PGL2(F_q)", kToolName};
  RunConfig c;
  add_options(app, c);
  app.require_subcommand(1, 1);
  const std::vector<std::pair<std::string, std::string>> commands{
      {"correlate", "correlation constant per representation"},
      {"modp", "reduction of the constant at primes above p"},
      {"verify", "run identity suites"},
      {"chartable", "exact character table"},
      {"shintani", "base-change operator checks"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }
  c.command = app.get_subcommands().front()->get_name();

  try {
    validate(c);
    if (c.command == "correlate") return cmd_correlate(c, out);
    if (c.command == "modp") return cmd_modp(c, out, err);
    if (c.command == "verify") return cmd_verify(c, out, err);
    if (c.command == "chartable") return cmd_chartable(c, out);
    return cmd_shintani(c, out, err);
  } catch (const std::invalid_argument& e) {
    err << kToolName << ": " << e.what() << '\n';
    return kConfigError;
  } catch (const std::out_of_range& e) {
    err << kToolName << ": " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    // An internal consistency check threw; report it like an identity failure.
    err << kToolName << ": " << e.what() << '\n';
    return kIdentityFailure;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace toric::cli
