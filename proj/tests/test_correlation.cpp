#include "doctest.h"

#include <complex>
#include <set>

#include "toric/chars.hpp"
#include "toric/correlation.hpp"

using namespace toric;

namespace {

using cd = std::complex<double>;
const double kPi = std::acos(-1.0);

CycNum sqrt2_48() { return CycNum::root(48, 6) + CycNum::root(48, 42); }

std::vector<std::pair<std::int64_t, int>> q_up_to_49() {
  return {{3, 1}, {5, 1}, {7, 1}, {3, 2}, {11, 1}, {13, 1}, {17, 1}, {19, 1}, {23, 1}, {5, 2},
          {3, 3}, {29, 1}, {31, 1}, {37, 1}, {41, 1}, {43, 1}, {47, 1}, {7, 2}};
}

// Character values from fixed points and brute-force eigenvalues, without the
// class machinery. Ps(chi^r, chi^-r): sum over fixed lines of chi^r(l^2/det).
// Cuspidal: -(theta(x) + theta(x^q)) at a root x in F_{q^2} \ F_q.
cd oracle_character(const PGL2& G, const RepLabel& rep, const PGL2Elem& g) {
  const FieldTower& t = G.tower();
  const std::int64_t q = G.q();
  const std::int64_t M = q * q - 1;
  auto field = G.field_elements();
  bool scalar = g.b.is_zero() && g.c.is_zero() && g.a == g.d;
  if (rep.kind == RepKind::PrincipalSeries) {
    if (scalar) return static_cast<double>(q + 1);
    cd s = 0;
    auto add_line = [&](Fq x, Fq y) {  // line through (x, y)
      Fq gx = g.a * x + g.b * y, gy = g.c * x + g.d * y;
      if (!(gx * y - gy * x).is_zero()) return;
      Fq lam = x.is_zero() ? gy / y : gx / x;
      std::int64_t l = G.log_q(lam * lam / g.det());
      s += std::polar(1.0, 2 * kPi * static_cast<double>(rep.r * l % (q - 1)) / (q - 1));
    };
    for (Fq x : field) add_line(x, t.one());
    add_line(t.one(), t.zero());
    return s;
  }
  if (rep.kind == RepKind::Cuspidal) {
    if (scalar) return static_cast<double>(q - 1);
    for (Fq x : t.subfield_elements(2 * G.f())) {
      if (x.is_zero() || !(x * x - g.trace() * x + g.det()).is_zero()) continue;
      if (t.in_subfield(x, G.f())) {
        Fq disc = g.trace() * g.trace() - t.from_int(4) * g.det();
        return disc.is_zero() ? cd(-1.0) : cd(0.0);
      }
      std::int64_t l = t.subfield_log(x, 2 * G.f());
      std::int64_t e = ((q - 1) * rep.r % M) * l % M;
      return -2.0 * std::cos(2 * kPi * static_cast<double>(e) / M);
    }
  }
  throw std::logic_error("oracle: unsupported representation");
}

cd oracle_constant(const PGL2& G, const RepLabel& rep) {
  cd s = 0;
  for (const auto& h : G.H())
    for (const auto& k : G.K()) s += oracle_character(G, rep, G.mul(h, k));
  return s / static_cast<double>(G.H().size() * G.K().size());
}

}  // namespace

TEST_CASE("pair counts") {
  for (auto [p, f] : q_up_to_49()) {
    auto G = PGL2::build(p, f);
    auto pc = pair_class_counts(*G);
    std::int64_t sum = 0;
    for (auto n : pc.counts) sum += n;
    CHECK(sum == G->q() * G->q() - 1);
    CHECK(pc.total == sum);
  }
}

TEST_CASE("unipotent pair counts") {
  auto u7 = unipotent_report(*PGL2::build(7, 1), pair_class_counts(*PGL2::build(7, 1)));
  CHECK(u7.measured == 4);
  auto u5 = unipotent_report(*PGL2::build(5, 1), pair_class_counts(*PGL2::build(5, 1)));
  CHECK(u5.measured == 4);
  for (std::int64_t p : {3, 5, 7, 11, 13, 17, 19, 23}) {
    auto G = PGL2::build(p, 1);
    auto u = unipotent_report(*G, pair_class_counts(*G));
    CHECK(u.asserted);
    CHECK(u.ok());
  }
  // For f > 1 the p mod 4 rule is reported but not asserted.
  auto G9 = PGL2::build(3, 2);
  auto u9 = unipotent_report(*G9, pair_class_counts(*G9));
  CHECK_FALSE(u9.asserted);
  CHECK(u9.predicted_p_mod4 == 6);
  CHECK(u9.predicted_q_mod4 == 8);
}

TEST_CASE("q=7 cuspidal constants") {
  auto G = PGL2::build(7, 1);
  auto s2 = sqrt2_48();
  std::vector<CycNum> want = {CycNum::zero(48), (CycNum::rational(2, 48) - s2) / mpq_class(6),
                              (CycNum::rational(2, 48) + s2) / mpq_class(6)};
  std::vector<bool> hit(3, false);
  for (std::int64_t r = 1; r <= 3; ++r) {
    CycNum c = corr_constant(*G, RepLabel::cusp(r));
    CHECK(c.conductor() == 48);
    int which = -1;
    for (int i = 0; i < 3; ++i)
      if (c == want[i]) which = i;
    REQUIRE(which >= 0);
    hit[which] = true;
    CHECK((which == 0) == (epsilon(*G, RepLabel::cusp(r), EpsMethod::Closed) == -1));
  }
  CHECK(hit == std::vector<bool>{true, true, true});
}

TEST_CASE("q=49 Ps{10} at the prescribed prime") {
  auto G = PGL2::build(7, 2, fp::Poly{3, 6, 1});
  CycNum c = corr_constant(*G, RepLabel::ps(10));
  CHECK(c.conductor() == 48);
  CHECK(c == (CycNum::rational(10, 48) - sqrt2_48()) / mpq_class(150));
  CHECK(std::abs(c.to_complex() - cd(0.0572386, 0)) < 1e-6);
}

TEST_CASE("constant against brute-force eigenvalue oracle") {
  for (auto [p, f] : std::vector<std::pair<std::int64_t, int>>{{5, 1}, {7, 1}, {3, 2}, {11, 1}, {13, 1}, {5, 2}, {3, 3}}) {
    auto G = PGL2::build(p, f);
    auto pc = pair_class_counts(*G);
    for (const auto& r : G->reps()) {
      if (r.kind != RepKind::PrincipalSeries && r.kind != RepKind::Cuspidal) continue;
      CycNum c = raw_correlation(*G, pc, r);
      CHECK(std::abs(c.to_complex() - oracle_constant(*G, r)) < 1e-9);
    }
  }
}

TEST_CASE("constants are real, in [0,1], and vanish when epsilon is -1") {
  for (auto [p, f] : q_up_to_49()) {
    auto G = PGL2::build(p, f);
    auto pc = pair_class_counts(*G);
    for (const auto& r : G->reps()) {
      if (!epsilon_eligible(r)) continue;
      auto rep = correlate(*G, pc, r);
      CHECK(rep.mult_one);
      CHECK(rep.value.conj() == rep.value);
      CHECK(rep.approx.real() > -1e-9);
      CHECK(rep.approx.real() < 1 + 1e-9);
      if (*rep.eps == -1) CHECK(rep.zero);
    }
    CHECK(corr_constant(*G, RepLabel::trivial()) == CycNum::one());
  }
}

TEST_CASE("regular identity") {
  for (auto [p, f] : std::vector<std::pair<std::int64_t, int>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}, {11, 1}, {13, 1}, {5, 2}, {3, 3}, {7, 2}}) {
    auto G = PGL2::build(p, f);
    auto pc = pair_class_counts(*G);
    CHECK(regular_identity(*G, pc) == CycNum::rational(G->q()));
    CHECK(raw_correlation(*G, pc, RepLabel::eta()).is_zero());
    CHECK(raw_correlation(*G, pc, RepLabel::steinberg()).is_zero());
  }
}

TEST_CASE("epsilon three ways") {
  for (auto [p, f] : q_up_to_49()) {
    auto G = PGL2::build(p, f);
    for (const auto& r : G->reps()) {
      if (!epsilon_eligible(r)) continue;
      auto e = epsilon_all(*G, r);
      CHECK_MESSAGE(e.agree(), r.to_string());
    }
    CHECK(epsilon(*G, RepLabel::st_eta(), EpsMethod::Closed) == (G->q() % 4 == 1 ? 1 : -1));
  }
  CHECK_THROWS(epsilon(*PGL2::build(7, 1), RepLabel::steinberg(), EpsMethod::Closed));
}

TEST_CASE("epsilon does not depend on the non-square") {
  for (auto [p, f] : std::vector<std::pair<std::int64_t, int>>{{5, 1}, {7, 1}, {3, 2}, {11, 1}, {5, 2}}) {
    auto G = PGL2::build(p, f);
    for (const auto& r : G->reps()) {
      if (!epsilon_eligible(r)) continue;
      int e = epsilon(*G, r, EpsMethod::Closed);
      for (std::int64_t l = 1; l < G->q() - 1; l += 2) CHECK(epsilon_from_delta(*G, r, G->gen_q().pow(l)) == e);
    }
  }
}

TEST_CASE("constant does not depend on the choice of non-split torus") {
  for (auto [p, f] : std::vector<std::pair<std::int64_t, int>>{{5, 1}, {7, 1}, {3, 2}, {11, 1}, {13, 1}}) {
    auto G = PGL2::build(p, f);
    auto base = pair_class_counts(*G);
    for (Fq beta : G->valid_alphas()) {
      auto pc = pair_class_counts(*G, G->H(), G->nonsplit_torus(beta));
      for (const auto& r : G->reps())
        if (epsilon_eligible(r)) CHECK(raw_correlation(*G, pc, r) == raw_correlation(*G, base, r));
    }
  }
}

TEST_CASE("gross tensor identity") {
  // Independent triple sum in floating point over the explicit group.
  auto triple = [](const PGL2& G, const RepLabel& r) {
    auto all = G.all_elements();
    double s = 0;
    for (const auto& g : all) {
      cd a = 0;
      for (const auto& h : G.H()) a += G.character_at(r, G.mul(h, g)).to_complex();
      s += std::norm(a);
    }
    return s / (static_cast<double>(G.H().size() * G.H().size()) * G.order());
  };
  auto G3 = PGL2::build(3, 1);
  auto G5 = PGL2::build(5, 1);
  CHECK(gross_tensor_identity(*G3, RepLabel::trivial()) == CycNum::one());
  CHECK(gross_tensor_identity(*G5, RepLabel::cusp(1)) == CycNum::rational(mpq_class(1, 4)));
  // For Steinberg the H-fixed space is two-dimensional and the sum is dim(pi^H)/dim(pi).
  CHECK(gross_tensor_identity(*G3, RepLabel::steinberg()) == CycNum::rational(mpq_class(2, 3)));
  CHECK(std::abs(triple(*G3, RepLabel::steinberg()) - 2.0 / 3) < 1e-9);
  for (auto* G : {G3.get(), G5.get()})
    for (const auto& r : G->reps()) {
      auto d = G->invariant_dims(r).first;
      mpq_class want(d, r.dimension(G->q()));
      want.canonicalize();
      CHECK(gross_tensor_identity(*G, r) == CycNum::rational(want));
      CHECK(std::abs(triple(*G, r) - want.get_d()) < 1e-9);
    }
}

TEST_CASE("report json") {
  auto G = PGL2::build(7, 1);
  auto pc = pair_class_counts(*G);
  auto j = correlate(*G, pc, RepLabel::cusp(2)).to_json();
  CHECK(j["rep"] == "cusp:2");
  CHECK(j["epsilon"] == -1);
  CHECK(j["zero"] == true);
  CHECK(CycNum::from_json(j["value"]).is_zero());
  auto s = correlate(*G, pc, RepLabel::steinberg()).to_json();
  CHECK(s["non_gelfand"] == true);
}
