#include "doctest.h"

#include <random>

#include "toric/modp.hpp"
#include "toric/sympow.hpp"

using namespace toric;

namespace {

PGL2Elem random_elem(const PGL2& G, std::mt19937_64& rng) {
  auto F = G.field_elements();
  while (true) {
    Fq a = F[rng() % F.size()], b = F[rng() % F.size()], c = F[rng() % F.size()], d = F[rng() % F.size()];
    if (!(a * d - b * c).is_zero()) return G.make(a, b, c, d);
  }
}

Fq trace(const FqMat& m) {
  Fq t = m[0][0] - m[0][0];
  for (std::size_t i = 0; i < m.size(); ++i) t = t + m[i][i];
  return t;
}

bool is_pregular(const PGL2& G, const PGL2Elem& g) { return G.class_index_of(g) != G.unipotent_class(); }

}  // namespace

TEST_CASE("dimensions and the trivial case") {
  auto G = PGL2::build(7, 1);
  CHECK(SymRep::from_digits(G, {0}).dim() == 1);
  CHECK(SymRep::from_digits(G, {2}).dim() == 5);
  auto G9 = PGL2::build(3, 2);
  CHECK(SymRep::from_digits(G9, {2, 1}).dim() == 15);
  CHECK_THROWS(SymRep::from_digits(G, {7}));
  CHECK_THROWS(SymRep(G, {SymFactor{1, 0}}, 0));  // Sym^1 has nontrivial central character
}

TEST_CASE("group law and trivial centre") {
  std::mt19937_64 rng(7);
  for (auto [p, f, digits] : std::vector<std::tuple<std::int64_t, int, std::vector<std::int64_t>>>{
           {7, 1, {2}}, {5, 1, {3}}, {3, 2, {2, 1}}, {5, 2, {1, 4}}}) {
    auto G = PGL2::build(p, f);
    SymRep rho = SymRep::from_digits(G, digits);
    FqVec v = rho.zero();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = G->from_int(static_cast<std::int64_t>(i * 3 + 1));
    for (int trial = 0; trial < 15; ++trial) {
      PGL2Elem g = random_elem(*G, rng), h = random_elem(*G, rng);
      CHECK(rho.act(G->mul(g, h), v) == rho.act(g, rho.act(h, v)));
      // The same element given by a scalar multiple of its matrix.
      Fq c = G->gen_q().pow(trial + 1);
      PGL2Elem scaled{g.a * c, g.b * c, g.c * c, g.d * c};
      CHECK(rho.act(scaled, v) == rho.act(g, v));
    }
  }
}

TEST_CASE("displayed invariant vectors are fixed") {
  for (auto [p, f, digits] : std::vector<std::tuple<std::int64_t, int, std::vector<std::int64_t>>>{
           {7, 1, {2}}, {7, 1, {3}}, {3, 2, {2, 2}}, {5, 2, {4, 1}}}) {
    auto G = PGL2::build(p, f);
    SymRep rho = SymRep::from_digits(G, digits);
    auto [vH, vK] = invariant_vectors(rho, digits);
    for (const auto& h : G->H()) CHECK(rho.act(h, vH) == vH);
    for (const auto& k : G->K()) CHECK(rho.act(k, vK) == vK);
  }
}

TEST_CASE("s and t for p = 7, r = 2") {
  auto G = PGL2::build(7, 1);
  auto c = st_closed_check(G, {2});
  Fq a = G->alpha();
  CHECK(c.extracted.s == -(G->from_int(2) * a));
  CHECK(c.extracted.t == -(G->from_int(6) * a * a));
  CHECK(c.closed.st == 2);
  CHECK(G->tower().to_int(c.extracted.st) == 2);
  auto triv = st_closed_check(G, {0});
  CHECK(triv.extracted.s == G->tower().one());
  CHECK(triv.extracted.t == G->tower().one());
}

TEST_CASE("prime-field sweep of s, t and st") {
  for (std::int64_t p : {3, 5, 7, 11, 13}) {
    auto G = PGL2::build(p, 1);
    for (std::int64_t r = 0; r < p; ++r) {
      auto c = st_closed_check(G, {r}, true);
      INFO("p=" << p << " r=" << r);
      CHECK(c.ok());
      CHECK(static_cast<std::int64_t>(c.rank_X) == c.brauer_dim_H);
      CHECK(static_cast<std::int64_t>(c.rank_Y) == c.brauer_dim_K);
      if (r % 2) CHECK(c.rank_XY == 0);
      CHECK(c.closed.st == closed_s_t(*G, {p - 1 - r}).st);
    }
  }
}

TEST_CASE("even-digit tensor cases at q = 9, 25, 49") {
  for (std::int64_t p : {3, 5, 7}) {
    auto G = PGL2::build(p, 2);
    for (std::int64_t a = 0; a < p; a += 2)
      for (std::int64_t b = 0; b < p; b += 2) {
        auto c = st_closed_check(G, {a, b}, p < 7);
        INFO("p=" << p << " digits " << a << "," << b);
        CHECK(c.ok());
        CHECK(c.closed.st == theorem1_prediction(G->q(), p, {a, b}));
        if (c.ranks_computed) CHECK(static_cast<std::int64_t>(c.rank_X) == c.brauer_dim_H);
      }
  }
}

TEST_CASE("odd digits: fixed lines exist but X Y vanishes") {
  auto G = PGL2::build(3, 2);
  for (auto digits : std::vector<std::vector<std::int64_t>>{{1, 0}, {0, 1}, {1, 2}, {2, 1}, {1, 1}}) {
    auto c = st_closed_check(G, digits, true);
    CHECK(c.ok());
    CHECK(c.rank_XY == 0);
    CHECK(c.rank_X >= 1);
    CHECK(c.closed.st == 0);
  }
}

TEST_CASE("Brauer character reduces to the matrix trace") {
  std::mt19937_64 rng(11);
  for (auto [p, f] : std::vector<std::pair<std::int64_t, int>>{{7, 1}, {3, 2}, {5, 2}}) {
    auto G = PGL2::build(p, f);
    auto prime = canonical_prime(*G, G->table_modulus());
    for (auto digits : std::vector<std::vector<std::int64_t>>{base_p_digits(1, p, f), base_p_digits(G->q() - 2, p, f)}) {
      SymRep rho = SymRep::from_digits(G, digits);
      for (int trial = 0; trial < 20; ++trial) {
        PGL2Elem g = random_elem(*G, rng);
        if (!is_pregular(*G, g)) continue;
        Fq tr = trace(rho.matrix(g));
        ResidueElem red = reduce_at_prime(rho.brauer(g).value(), prime);
        // Both sides live in F_q; compare through the reduction of zeta = g_{q^2}.
        Fq lifted = G->tower().zero();
        Fq x = G->gen_q2();
        for (std::size_t i = red.value.size(); i-- > 0;) lifted = lifted * x + G->from_int(red.value[i]);
        CHECK(lifted == tr);
      }
      CHECK(rho.brauer(G->identity()).value() == CycNum::rational(static_cast<long>(rho.dim())));
    }
  }
}

TEST_CASE("q = p principal series: two constituents of the expected shape") {
  for (std::int64_t p : {5, 7, 11}) {
    auto G = PGL2::build(p, 1);
    for (std::int64_t r = 1; r <= (p - 3) / 2; ++r) {
      auto cs = jh_constituents(*G, RepLabel::ps(r));
      REQUIRE(cs.size() == 2);
      SymRep a(G, {SymFactor{static_cast<int>(2 * r), -r}}, 0);
      SymRep b(G, {SymFactor{static_cast<int>(p - 1 - 2 * r), r}}, 0);
      CHECK(a.dim() + b.dim() == static_cast<std::size_t>(p + 1));
      // Pairing with Sym^(2p-2-2r) instead would have dimension 2p.
      CHECK((2 * r + 1) + (2 * p - 1 - 2 * r) != p + 1);
      for (const auto& cls : G->classes()) {
        if (cls.label.kind == ClassKind::Unipotent) continue;
        CycNum one = brauer_char(*G, cs[0], cls.label) + brauer_char(*G, cs[1], cls.label);
        CycNum two = a.brauer(cls.rep).value_in(G->table_modulus()) + b.brauer(cls.rep).value_in(G->table_modulus());
        CHECK(one == two);
      }
      int flagged = 0;
      for (const auto& c : cs) flagged += c.flagged;
      CHECK(flagged == 1);
    }
  }
}

TEST_CASE("Diamond check over all eligible reps") {
  for (auto [p, f] : std::vector<std::pair<std::int64_t, int>>{{5, 1}, {7, 1}, {3, 2}, {5, 2}, {3, 3}}) {
    auto G = PGL2::build(p, f);
    auto counts = pair_class_counts(*G);
    for (const auto& r : G->reps()) {
      if (!diamond_eligible(r)) continue;
      auto rep = diamond_check(G, counts, r);
      INFO("q=" << G->q() << " " << r.to_string() << " " << rep.witness);
      CHECK(rep.ok());
      auto label = r_label_at_prime(*G, r, canonical_prime(*G, conductor_for(*G, r)));
      CHECK(label.a == 1);
      CHECK(rep.st_value == theorem1_prediction(G->q(), p, label.digits));
    }
  }
  auto G7 = PGL2::build(7, 1);
  auto rep = diamond_check(G7, pair_class_counts(*G7), RepLabel::cusp(3));
  CHECK(rep.ok());
  CHECK(rep.st_value == 2);
  CHECK(rep.reduced == 2);
}

TEST_CASE("St-eta at q = 25 has digits (2, 2) and a nonzero residue") {
  auto G = PGL2::build(5, 2);
  auto rep = diamond_check(G, pair_class_counts(*G), RepLabel::st_eta());
  CHECK(rep.ok());
  CHECK(flagged_J(*G, RepLabel::st_eta()) == std::vector<bool>{true, true});
  CHECK(rep.st_value == theorem1_prediction(25, 5, {2, 2}));
  CHECK(rep.st_value != 0);
}
