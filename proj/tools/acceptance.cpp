// One line per acceptance criterion. Exit status is nonzero if any line fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "toric/cli.hpp"
#include "toric/correlation.hpp"
#include "toric/modp.hpp"
#include "toric/pgl2.hpp"
#include "toric/poly_fp.hpp"
#include "toric/shintani.hpp"
#include "toric/sympow.hpp"

using namespace toric;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

struct QSpec {
  std::int64_t p;
  int f;
};

std::vector<QSpec> odd_prime_powers_upto(std::int64_t bound) {
  std::vector<QSpec> out;
  for (std::int64_t p = 3; p <= bound; p += 2) {
    if (!fp::is_prime(p)) continue;
    std::int64_t q = p;
    for (int f = 1; q <= bound; ++f, q *= p) out.push_back({p, f});
  }
  std::sort(out.begin(), out.end(), [](QSpec a, QSpec b) { return fp::ipow(a.p, a.f) < fp::ipow(b.p, b.f); });
  return out;
}

std::string qname(std::int64_t p, int f) { return "q=" + std::to_string(fp::ipow(p, f)); }

CycNum sqrt2_48() { return CycNum::root(48, 6) + CycNum::root(48, 42); }

Outcome c1() {
  Outcome o;
  auto G = PGL2::build(7, 1);
  const PairCounts counts = pair_class_counts(*G);
  const CycNum s2 = sqrt2_48();
  std::vector<CycNum> want{CycNum::zero(48), (CycNum::rational(2, 48) - s2) / 6, (CycNum::rational(2, 48) + s2) / 6};
  std::vector<bool> used(3, false);
  int zeros_at_minus = 0, zeros = 0;
  for (std::int64_t r = 1; r <= 3; ++r) {
    const RepLabel rep = RepLabel::cusp(r);
    const CycNum v = raw_correlation(*G, counts, rep);
    bool hit = false;
    for (int i = 0; i < 3 && !hit; ++i)
      if (!used[i] && v == want[i]) used[i] = hit = true;
    o.require(hit, rep.to_string() + " = " + v.to_string() + " is not in the expected set");
    const int e = epsilon(*G, rep, EpsMethod::Closed);
    if (v.is_zero()) {
      ++zeros;
      zeros_at_minus += e == -1;
    }
    o.require(v.is_zero() == (e == -1), rep.to_string() + " zero/epsilon mismatch");
  }
  o.require(zeros == 1 && zeros_at_minus == 1, "expected exactly one zero, at epsilon = -1");
  if (o.ok) o.detail = "{0, (2-sqrt2)/6, (2+sqrt2)/6} with sqrt2 = z48^6 + z48^42";
  return o;
}

Outcome c2() {
  Outcome o;
  const std::int64_t p = 7;
  auto G = PGL2::build(p, 2, fp::parse("X^2+6X+3", p));
  const PairCounts counts = pair_class_counts(*G);
  const RepLabel rep = RepLabel::ps(10);
  const CycNum v = raw_correlation(*G, counts, rep);
  o.require(v == (CycNum::rational(10, 48) - sqrt2_48()) / 150, "constant " + v.to_string());
  const ModpReport m = theorem1_check(*G, counts, rep);
  const fp::Poly f1 = fp::parse("X^2+6X+3", p), f2 = fp::parse("X^2+4X+5", p);
  int seen = 0;
  for (const auto& row : m.rows) {
    if (row.prime.factor == f1) {
      ++seen;
      o.require(row.in_prime_field && row.reduced.constant() == 0, "residue at X^2+6X+3 is not 0");
    }
    if (row.prime.factor == f2) {
      ++seen;
      o.require(row.in_prime_field && row.reduced.constant() == 2, "residue at X^2+4X+5 is not 2");
    }
  }
  o.require(seen == 2, "both primes must appear");
  // X^10 - X^6 - X^2 + 10 reduced directly in F_7[X]
  const fp::Poly g = fp::normalized({10, 0, -1, 0, 0, 0, -1, 0, 0, 0, 1}, p);
  o.require(fp::rem(g, f1, p) == fp::normalized({0}, p), "X^10-X^6-X^2+10 mod X^2+6X+3 is not 0");
  o.require(fp::rem(g, f2, p) == fp::normalized({6}, p), "X^10-X^6-X^2+10 mod X^2+4X+5 is not 6");
  if (o.ok) o.detail = "(10-sqrt2)/150; residues 0 and 2; polynomial gives 0 and 6";
  return o;
}

Outcome c3() {
  Outcome o;
  auto G = PGL2::build(17, 2);
  const PairCounts counts = pair_class_counts(*G);
  const RepLabel rep = RepLabel::ps(24);
  o.require(raw_correlation(*G, counts, rep).is_zero(), "constant is nonzero");
  const auto e = epsilon_all(*G, rep);
  o.require(e.agree() && e.closed == 1, "epsilon is not +1");
  const BaseChange bc = base_change_class(MulChar::make(G->tower(), 2, 24), 17);
  o.require(bc.kind == BCCase::NotBC, "base change class " + to_string(bc.kind));
  if (o.ok) o.detail = "constant 0, eps +1, NotBC";
  return o;
}

Outcome c4() {
  Outcome o;
  auto G = PGL2::build(7, 3);
  const PairCounts counts = pair_class_counts(*G);
  const RepLabel rep = RepLabel::ps(38);
  const ModpReport m = theorem1_check(*G, counts, rep);
  o.require(m.value == CycNum::rational(mpq_class(588, 342 * 344)), "constant " + m.value.to_string());
  o.require(!m.value.is_zero(), "constant is zero");
  for (const auto& row : m.rows)
    o.require(row.in_prime_field && row.reduced.constant() == 0,
              "nonzero residue at " + fp::to_string(row.prime.factor));
  if (o.ok) o.detail = "588/(342*344); residue 0 at all " + std::to_string(m.rows.size()) + " primes";
  return o;
}

Outcome c5() {
  Outcome o;
  for (auto [p, f] : std::vector<QSpec>{{3, 1}, {5, 1}, {7, 1}, {3, 2}, {11, 1}, {13, 1}, {5, 2}, {3, 3}, {7, 2}}) {
    auto G = PGL2::build(p, f);
    const CycNum s = regular_identity(*G, pair_class_counts(*G));
    o.require(s == CycNum::rational(G->q()), qname(p, f) + ": sum = " + s.to_string());
  }
  if (o.ok) o.detail = "q in {3,5,7,9,11,13,25,27,49}";
  return o;
}

Outcome c6() {
  Outcome o;
  std::size_t rows = 0;
  for (auto [p, f] : std::vector<QSpec>{{5, 1}, {7, 1}, {3, 2}, {11, 1}, {13, 1}, {5, 2}, {3, 3}}) {
    auto G = PGL2::build(p, f);
    const PairCounts counts = pair_class_counts(*G);
    for (const auto& r : G->reps()) {
      if (!modp_eligible(r) || !multiplicity_one(*G, r)) continue;
      const ModpReport m = theorem1_check(*G, counts, r);
      for (const auto& row : m.rows) {
        ++rows;
        o.require(row.in_prime_field, qname(p, f) + " " + r.to_string() + ": residue outside F_p");
        o.require(row.match, qname(p, f) + " " + r.to_string() + ": residue differs from prediction at " +
                                 fp::to_string(row.prime.factor));
      }
    }
  }
  int negatives = 0;
  for (auto [p, f] : odd_prime_powers_upto(49)) {
    auto G = PGL2::build(p, f);
    const VanishingReport v = theorem1_vanishing(*G, pair_class_counts(*G));
    negatives += v.negative;
    o.require(v.ok(), qname(p, f) + ": " + (v.failures.empty() ? "" : v.failures.front()));
  }
  if (o.ok) o.detail = std::to_string(rows) + " (rep, prime) rows; " + std::to_string(negatives) + " eps = -1 zeros, q <= 49";
  return o;
}

Outcome c7() {
  Outcome o;
  std::size_t closed = 0, odd = 0, odd_nonzero_rank = 0, xy_nonzero = 0;
  std::string first_odd;
  auto run = [&](std::shared_ptr<const PGL2> G, const std::vector<std::int64_t>& d, bool closed_forms) {
    bool all_even = true;
    for (auto x : d) all_even = all_even && x % 2 == 0;
    const STCheck c = st_closed_check(G, d, true);
    std::string tag = qname(G->p(), G->f()) + " digits (";
    for (std::size_t i = 0; i < d.size(); ++i) tag += (i ? "," : "") + std::to_string(d[i]);
    tag += ")";
    if (closed_forms) {
      ++closed;
      o.require(c.ok(), tag + ": s, t or st differ from the closed forms");
    }
    if (!all_even) {
      ++odd;
      if (c.rank_XY != 0) ++xy_nonzero;
      if (c.rank_X != 0 || c.rank_Y != 0) {
        if (!odd_nonzero_rank)
          first_odd = tag + ": rank X = " + std::to_string(c.rank_X) + ", rank Y = " + std::to_string(c.rank_Y);
        ++odd_nonzero_rank;
      }
    }
  };
  for (std::int64_t p : {3, 5, 7, 11, 13}) {
    auto G = PGL2::build(p, 1);
    for (std::int64_t r = 0; r < p; ++r) run(G, {r}, true);
  }
  for (std::int64_t p : {3, 5, 7}) {
    auto G = PGL2::build(p, 2);
    for (std::int64_t a = 0; a < p; ++a)
      for (std::int64_t b = 0; b < p; ++b) run(G, {a, b}, a % 2 == 0 && b % 2 == 0);
  }
  o.require(xy_nonzero == 0, std::to_string(xy_nonzero) + " odd-digit cases with XY != 0");
  std::ostringstream tail;
  tail << "; odd-digit cases: " << odd << ", XY = 0 in " << odd - xy_nonzero << ", X = Y = 0 in "
       << odd - odd_nonzero_rank;
  if (o.ok && odd_nonzero_rank) {
    o.ok = false;
    o.detail = "closed forms hold in all " + std::to_string(closed) + " cases, but odd-digit idempotent rank is not 0: " +
               first_odd + tail.str();
  } else {
    o.detail += tail.str();
    if (o.ok) o.detail = std::to_string(closed) + " closed-form cases" + tail.str();
  }
  return o;
}

Outcome c8() {
  Outcome o;
  std::size_t n = 0;
  for (auto [p, f] : std::vector<QSpec>{{3, 2}, {5, 2}, {7, 2}}) {
    auto G = PGL2::build(p, f);
    const PairCounts counts = pair_class_counts(*G);
    for (const auto& r : G->reps()) {
      if (!diamond_eligible(r)) continue;
      ++n;
      const DiamondReport d = diamond_check(G, counts, r);
      const std::string tag = qname(p, f) + " " + r.to_string();
      o.require(d.brauer_ok, tag + ": Brauer sum differs (" + d.witness + ")");
      o.require(d.dims_agree && d.unique_bearing && d.shape_ok, tag + ": fixed vectors not on the flagged constituent");
      o.require(d.congruence_ok, tag + ": congruence gives " + std::to_string(d.st_value) + ", constant reduces to " +
                                     std::to_string(d.reduced));
    }
  }
  if (o.ok) o.detail = std::to_string(n) + " eligible reps at q in {9,25,49}";
  return o;
}

Outcome c9() {
  Outcome o;
  std::size_t reps = 0;
  for (auto [p, fb, ext] : std::vector<std::tuple<int, int, int>>{{3, 1, 2}, {3, 1, 3}, {3, 1, 4}, {5, 1, 2}, {7, 1, 2}}) {
    const ShintaniSuiteReport s = shintani_suite(p, fb, ext);
    reps += s.reps.size();
    const std::string tag = "(" + std::to_string(fp::ipow(p, fb)) + "," + std::to_string(ext) + ")";
    for (const auto& r : s.reps) o.require(r.ok(), tag + " " + r.rep.to_string() + " failed");
    o.require(s.norm.ok, tag + " norm map: " + s.norm.witness);
    if (s.lemmas) o.require(s.lemmas->ok(), tag + " lemmas failed");
  }
  std::size_t chars = 0;
  for (auto [p, fb, n] : std::vector<std::tuple<int, int, int>>{{3, 1, 1}, {5, 1, 1}, {7, 1, 1}, {3, 1, 2}, {3, 2, 1}}) {
    const LemmaReport L = lemma_check(p, fb, n);
    const std::int64_t q = fp::ipow(p, fb);
    const mpq_class g = mpq_class(n % 2 ? 1 : -1) * mpq_class(fp::ipow(q, n));
    const std::string tag = "q=" + std::to_string(q) + " n=" + std::to_string(n);
    o.require(L.ok(), tag + ": lemma values differ");
    for (const auto& row : L.rows) {
      ++chars;
      if (row.kind == "generic")
        o.require(row.gauss == CycNum::rational(g), tag + " j=" + std::to_string(row.j) + ": G(chi^2, psi) = " +
                                                        row.gauss.to_string());
    }
  }
  if (o.ok)
    o.detail = std::to_string(reps) + " base-change reps over 5 pairs; " + std::to_string(chars) +
               " characters at q^2n in {9,25,49,81}";
  return o;
}

Outcome c10() {
  Outcome o;
  std::size_t groups = 0;
  for (auto [p, f] : odd_prime_powers_upto(49)) {
    auto G = PGL2::build(p, f);
    ++groups;
    const auto orth = G->orthogonality_check();
    o.require(orth.ok, qname(p, f) + ": orthogonality " + orth.witness);
    for (const auto& r : G->reps()) {
      if (epsilon_eligible(r)) {
        const auto e = epsilon_all(*G, r);
        o.require(e.agree(), qname(p, f) + " " + r.to_string() + ": epsilon methods disagree");
      }
      std::pair<std::int64_t, std::int64_t> want{1, 1};
      if (r.kind == RepKind::Eta) want = {0, 0};
      if (r.kind == RepKind::Steinberg) want = {2, 0};
      const auto d = G->invariant_dims(r);
      o.require(d == want, qname(p, f) + " " + r.to_string() + ": fixed dims (" + std::to_string(d.first) + "," +
                               std::to_string(d.second) + ")");
    }
  }
  if (o.ok) o.detail = std::to_string(groups) + " groups, q <= 49";
  return o;
}

Outcome c11() {
  Outcome o;
  for (const std::string p : {"3", "5"}) {
    const std::vector<std::string> base{"verify", "--suite", "all", "--p", p, "--f", "1"};
    std::ostringstream out, err;
    const int clean = cli::run(base, out, err);
    o.require(clean == cli::kOk, "p=" + p + ": clean run exited " + std::to_string(clean) + " " + err.str());
    auto faulty = base;
    faulty.push_back("--inject-fault");
    std::ostringstream out2, err2;
    const int code = cli::run(faulty, out2, err2);
    o.require(code == cli::kIdentityFailure, "p=" + p + ": injected fault exited " + std::to_string(code));
    o.require(!err2.str().empty(), "p=" + p + ": no witness on stderr");
    const auto j = nlohmann::json::parse(out2.str());
    bool witnessed = false;
    for (const auto& s : j["suites"])
      for (const auto& fl : s["failures"]) witnessed = witnessed || !fl["witness"].get<std::string>().empty();
    o.require(!j["ok"].get<bool>() && witnessed, "p=" + p + ": JSON report lacks a failure witness");
  }
  if (o.ok) o.detail = "clean runs exit 0; injected pair-count fault exits 1 with witnesses";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double budget;  // seconds, 0 for none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "cuspidal constants of PGL2(F_7)", 5, c1},
      {2, "Ps(chi^10) over F_49 and its residues", 30, c2},
      {3, "Ps(chi^24) over F_289", 120, c3},
      {4, "Ps(chi^38) over F_343", 300, c4},
      {5, "regular identity", 0, c5},
      {6, "mod-p sweep and vanishing", 0, c6},
      {7, "symmetric-power suite", 0, c7},
      {8, "diamond suite", 0, c8},
      {9, "Shintani suite and character sums", 0, c9},
      {10, "character-table self-validation", 0, c10},
      {11, "headless verify exit codes", 0, c11},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget > 0 && secs >= c.budget) {
      o.ok = false;
      o.detail += " (over the " + std::to_string(static_cast<int>(c.budget)) + " s budget)";
    }
    failed += !o.ok;
    std::printf("criterion %2d %s  %-40s %8.2fs  %s\n", c.id, o.ok ? "PASS" : "FAIL", c.title, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
