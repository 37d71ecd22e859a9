#include "doctest.h"

#include <cmath>
#include <complex>

#include "toric/shintani.hpp"

using namespace toric;

namespace {

std::complex<double> zeta(std::int64_t k, std::int64_t e) {
  const double a = 2 * M_PI * static_cast<double>(e % k) / static_cast<double>(k);
  return {std::cos(a), std::sin(a)};
}

bool near(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) < 1e-7; }

}  // namespace

TEST_CASE("base change classes by congruence") {
  auto t = FieldTower::build(5, 4);
  // q = 5, E = F_25: j*5 = j (SplitBC) exactly for 6 | j, j*5 = -j for 4 | j.
  for (std::int64_t j = 1; j < 24; ++j) {
    if (j == 12) continue;
    BaseChange bc = base_change_class(MulChar::make(*t, 2, j), 5);
    if (j % 6 == 0) {
      CHECK(bc.kind == BCCase::SplitBC);
      CHECK(bc.chi0->exponent == j / 6);
    } else if (j % 4 == 0) {
      CHECK(bc.kind == BCCase::CuspBC);
      CHECK(bc.chi1->exponent == (j / 4) * 4);
    } else {
      CHECK(bc.kind == BCCase::NotBC);
    }
  }
  CHECK(base_change_class(MulChar::make(*t, 2, 4), 5).tau == RepLabel::cusp(1));
  CHECK(base_change_class(MulChar::make(*t, 2, 8), 5).tau == RepLabel::cusp(2));
  CHECK(base_change_class(MulChar::make(*t, 2, 6), 5).tau == RepLabel::ps(1));
  CHECK_THROWS_AS(base_change_class(MulChar::make(*t, 2, 12), 5), std::invalid_argument);

  auto u = FieldTower::build(17, 2);
  CHECK(base_change_class(MulChar::make(*u, 2, 24), 17).kind == BCCase::NotBC);
  // chi0 o Nm is always SplitBC
  for (std::int64_t j0 = 1; j0 < 8; ++j0)
    CHECK(base_change_class(MulChar::make(*u, 2, j0 * 18), 17).kind == BCCase::SplitBC);
}

TEST_CASE("case 1 operator is the Frobenius permutation and squares to 1 for ext 2") {
  auto P = ShintaniPair::build(5, 1, 2);
  ShintaniData T = ShintaniData::build(P, 6);
  CHECK(T.base_change().kind == BCCase::SplitBC);
  CHECK(T.scale() == 1);
  const auto& M = T.model();
  CHECK(T.entry(0, 0) == 0);
  for (std::size_t idx = 1; idx < T.dim(); ++idx) {
    std::size_t image = M.index_of(M.lambda_of(idx).pow(5));
    for (std::size_t row = 0; row < T.dim(); ++row) CHECK((T.entry(row, idx) >= 0) == (row == image));
    CHECK(T.entry(image, idx) == 0);
    ModelVec twice = T.apply(T.column(idx));
    CHECK(twice == M.basis(idx));
  }
  CHECK_THROWS_AS(ShintaniData::build(P, 1), std::invalid_argument);
}

TEST_CASE("case 2 entries at E = F_9 have magnitude 1/3") {
  auto P = ShintaniPair::build(3, 1, 2);
  ShintaniData T = ShintaniData::build(P, 2);
  CHECK(T.base_change().kind == BCCase::CuspBC);
  CHECK(T.scale() == mpq_class(1, 3));
  std::size_t nonzero = 0;
  for (std::size_t r = 0; r < T.dim(); ++r)
    for (std::size_t c = 0; c < T.dim(); ++c)
      if (T.entry(r, c) >= 0) {
        ++nonzero;
        CHECK(std::abs(std::abs(T.entry_value(r, c).to_complex()) - 1.0 / 3) < 1e-12);
      }
  // column f has 9 entries, each f_lambda column has 1 + 8
  CHECK(nonzero == 10 * 9);
}

TEST_CASE("case 2 at n = 2 carries sign (-1)^{n-1} = -1") {
  auto P = ShintaniPair::build(3, 1, 4);
  ShintaniData T = ShintaniData::build(P, 20);
  CHECK(T.scale() == mpq_class(-1, 9));
}

TEST_CASE("intertwining: monomial route agrees with full action and holds for every pair") {
  for (auto [p, fb, e] : std::vector<std::tuple<int, int, int>>{{3, 1, 2}, {5, 1, 2}, {7, 1, 2}, {3, 1, 4}}) {
    auto P = ShintaniPair::build(p, fb, e);
    for (std::int64_t r = 1; r <= (P.Q - 3) / 2; ++r) {
      if (base_change_class(MulChar::make(P.GE->tower(), P.GE->f(), r), P.q).kind == BCCase::NotBC) continue;
      ShintaniData T = ShintaniData::build(P, r);
      auto a = intertwining_check(T, true);
      auto b = intertwining_check(T, false);
      CHECK_MESSAGE(a.ok, a.witness);
      CHECK(b.ok);
      CHECK(a.generators == static_cast<std::size_t>(P.GE->f() + 2));
    }
  }
}

TEST_CASE("form preservation, exact") {
  auto P = ShintaniPair::build(5, 1, 2);
  for (std::int64_t r : {4, 6, 8}) {
    ShintaniData T = ShintaniData::build(P, r);
    auto u = unitarity_check(T);
    CHECK(u.form_preserving);
    CHECK(u.exhaustive);
    CHECK(u.pairs_checked == 26 * 27 / 2);
    CHECK(u.self_adjoint);
    // independent: <T e_i, T e_j> through the model inner product on a few pairs
    const auto& M = T.model();
    for (std::size_t i : {0u, 1u, 7u})
      for (std::size_t j : {0u, 2u, 7u, 25u})
        CHECK(M.inner(T.column(i), T.column(j)) == CycNum::rational(i == j ? 1 : 0, 24));
  }
  auto P4 = ShintaniPair::build(3, 1, 4);
  auto u4 = unitarity_check(ShintaniData::build(P4, 20));
  CHECK(u4.form_preserving);
  CHECK_FALSE(u4.self_adjoint);
}

TEST_CASE("effect on invariant vectors") {
  auto P = ShintaniPair::build(5, 1, 2);
  for (std::int64_t r : {4, 6, 8}) {
    ShintaniData T = ShintaniData::build(P, r);
    auto inv = effect_on_invariants(T);
    CHECK(inv.vectors_match_model);
    CHECK(inv.tvh);
    CHECK(inv.tvk);
    const Fq alpha = P.GE->alpha();
    if (r == 6)
      CHECK(inv.lambda == CycNum::one(24));
    else
      CHECK(inv.lambda == -T.model().chi().evaluate(alpha.inv()));
    // T v_H is H-fixed, T v_K is K^sigma-fixed
    ModelVec tvh = T.apply(T.vH_roots());
    CHECK(T.model().fixed_by(P.GE->H(), tvh));
    std::vector<PGL2Elem> Ks;
    for (const auto& k : P.GE->K()) Ks.push_back(P.sigma(k));
    CHECK(T.model().fixed_by(Ks, T.apply(T.vK_roots(alpha))));
  }
}

TEST_CASE("base-change vanishing and sign bookkeeping") {
  auto P = ShintaniPair::build(5, 1, 2);
  auto counts = pair_class_counts(*P.GE);
  // tau = cusp:2 of PGL2(F_5), eps = -1, base change Ps{8} over F_25
  ShintaniData T = ShintaniData::build(P, 8);
  auto inv = effect_on_invariants(T);
  auto th = sign_check(T, counts, inv);
  CHECK(th.tau == RepLabel::cusp(2));
  CHECK(th.eps_direct == -1);
  CHECK(th.eps_agree);
  CHECK(th.factor_is_eps);
  CHECK(th.sigma_identity);
  CHECK(th.form_identity);
  CHECK(th.inner.is_zero());
  CHECK(th.constant.is_zero());
  CHECK(th.ok());
  // independent oracle: the raw character sum over H x K vanishes
  {
    std::complex<double> s = 0;
    for (const auto& h : P.GE->H())
      for (const auto& k : P.GE->K()) s += P.GE->character_at(RepLabel::ps(8), P.GE->mul(h, k)).to_complex();
    CHECK(std::abs(s) < 1e-6);
  }

  auto P7 = ShintaniPair::build(7, 1, 2);
  auto counts7 = pair_class_counts(*P7.GE);
  ShintaniData T7 = ShintaniData::build(P7, 8);
  auto th7 = sign_check(T7, counts7, effect_on_invariants(T7));
  CHECK(th7.tau == RepLabel::ps(1));
  CHECK(th7.eps_direct == -1);
  CHECK(th7.case1_bookkeeping);
  CHECK(th7.constant.is_zero());
  CHECK(th7.ok());

  // eps = +1: no vanishing asserted, but the identities still hold and the constant is nonzero here
  ShintaniData T6 = ShintaniData::build(P, 4);
  auto th6 = sign_check(T6, counts, effect_on_invariants(T6));
  CHECK(th6.eps_direct == 1);
  CHECK(th6.ok());
  CHECK_FALSE(th6.constant.is_zero());
}

TEST_CASE("T is unique up to scalar") {
  auto P = ShintaniPair::build(3, 1, 2);
  ShintaniData T = ShintaniData::build(P, 2);
  auto u = uniqueness_check(T);
  CHECK(u.solution_dim == 1);
  CHECK(u.t_spans);
  CHECK(u.orbits >= 1);
  auto P4 = ShintaniPair::build(3, 1, 4);
  CHECK(uniqueness_check(ShintaniData::build(P4, 20)).ok());
}

TEST_CASE("character sum lemmas against floating-point sums") {
  auto t = FieldTower::build(3, 2);
  auto chis = twisted_characters(*t, 1, 1);
  CHECK(chis.size() == 4);
  for (const auto& chi : chis) {
    CHECK(chi.exponent * 3 % 8 == (8 - chi.exponent) % 8);
    std::complex<double> s_recip = 0, s_odd = 0;
    for (Fq lam : t->subfield_elements(2)) {
      if (lam.is_zero() || lam == t->one()) continue;
      Fq x = lam - t->from_int(2) + lam.inv();
      s_recip += zeta(8, chi.exponent * x.log());
    }
    for (int i = 1; i <= 8; ++i) {
      Fq x = t->one() - t->generator().pow(2 * i - 1);
      s_odd += zeta(8, chi.exponent * x.log());
    }
    CHECK(near(charsum_reciprocal(chi).to_complex(), s_recip));
    CHECK(near(charsum_odd_powers(chi, t->generator()).to_complex(), s_odd));
  }
  auto rep = lemma_check(3, 1, 1);
  CHECK(rep.ok());
  for (const auto& r : rep.rows)
    if (r.kind == "generic") {
      CHECK(r.recip == CycNum::rational(3));
      CHECK(r.odd_pow == CycNum::rational(-4));
    }
  auto rep5 = lemma_check(5, 1, 1);
  CHECK(rep5.ok());
  int generic = 0;
  for (const auto& r : rep5.rows)
    if (r.kind == "generic") {
      ++generic;
      CHECK(r.recip == CycNum::rational(5));
    }
  CHECK(generic == 4);
  for (auto [p, fb, n] : std::vector<std::tuple<int, int, int>>{{7, 1, 1}, {3, 1, 2}, {3, 2, 1}}) CHECK(lemma_check(p, fb, n).ok());
}

TEST_CASE("Gauss bridge equals G(chi^2, psi)") {
  auto t = FieldTower::build(3, 4);
  const AddChar psi = AddChar::make(*t, 4);
  for (const auto& chi : twisted_characters(*t, 1, 2)) {
    CycNum b = gauss_bridge(chi, psi);
    CHECK(b == gauss_sum(chi.pow(2), psi));
    if (!chi.pow(2).is_trivial()) CHECK(b == CycNum::rational(-9));
  }
}

TEST_CASE("norm map") {
  auto P = ShintaniPair::build(3, 1, 2);
  auto sweep = norm_map_sweep(P);
  CHECK(sweep.exhaustive);
  CHECK(sweep.checked == 720);
  CHECK(sweep.ok);
  const PGL2& G = *P.GE;
  for (Fq a : G.field_elements()) {
    if (a.is_zero()) continue;
    CHECK(shintani_norm(P, G.diag(a)) == G.diag(a * a.pow(3)));
  }
  for (const auto& g : P.GF->all_elements()) {
    PGL2Elem h = G.make(g.a, g.b, g.c, g.d);
    CHECK(shintani_norm(P, h) == G.mul(h, h));
  }
  auto P3 = ShintaniPair::build(5, 1, 3);
  auto s3 = norm_map_sweep(P3, 200);
  CHECK_FALSE(s3.exhaustive);
  CHECK(s3.checked == 200);
  CHECK(s3.ok);
}

TEST_CASE("suite over the listed pairs") {
  for (auto [p, fb, e] : std::vector<std::tuple<int, int, int>>{{3, 1, 2}, {3, 1, 3}, {3, 1, 4}, {5, 1, 2}, {7, 1, 2}}) {
    auto s = shintani_suite(p, fb, e);
    CHECK(s.ok());
    CHECK(s.norm.ok);
    CHECK(s.lemmas.has_value() == (e % 2 == 0));
  }
  auto s3 = shintani_suite(3, 1, 3);
  CHECK(s3.reps.empty());
  CHECK(s3.not_bc == 12);
  auto s7 = shintani_suite(7, 1, 2);
  CHECK(s7.reps.size() == 5);
  auto j = s7.to_json();
  CHECK(j["ok"] == true);
  CHECK(j["reps"][0]["case"] == "CuspBC");
  CHECK(j["reps"][0]["tau"] == "cusp:1");
}
