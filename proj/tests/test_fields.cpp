#include "doctest.h"

#include <set>

#include "toric/fields.hpp"

using namespace toric;

namespace {

// Naive arithmetic in F_p[X]/(f) on coefficient vectors, independent of the
// tables under test.
struct NaiveField {
  std::int64_t p;
  std::vector<std::int64_t> f;  // monic, low-degree-first
  int m() const { return static_cast<int>(f.size()) - 1; }

  std::vector<std::int64_t> mul(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) const {
    std::vector<std::int64_t> r(2 * m(), 0);
    for (int i = 0; i < m(); ++i)
      for (int j = 0; j < m(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    for (int i = 2 * m() - 1; i >= m(); --i) {
      std::int64_t c = r[i];
      for (int j = 0; j <= m(); ++j) r[i - m() + j] = ((r[i - m() + j] - c * f[j]) % p + p) % p;
    }
    r.resize(m());
    return r;
  }
  std::vector<std::int64_t> power_of_x(std::int64_t e) const {
    std::vector<std::int64_t> r(m(), 0), x(m(), 0);
    r[0] = 1;
    if (m() == 1)
      x[0] = (p - f[0]) % p;
    else
      x[1] = 1;
    while (e) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  }
};

std::vector<std::int64_t> padded(fp::Poly a, int m) {
  a.resize(m, 0);
  return a;
}

}  // namespace

TEST_CASE("tower for F49 from an explicit modulus") {
  auto t = FieldTower::build(7, 2, fp::Poly{3, 6, 1});
  CHECK(t->modulus() == fp::Poly{3, 6, 1});
  CHECK(t->element_order(t->generator()) == 48);
  CHECK(t->group_order() == 48);
}

TEST_CASE("prime field generator is a primitive root") {
  for (std::int64_t p : {3, 5, 7, 11, 13, 17}) {
    auto t = FieldTower::build(p, 1);
    std::int64_t g = t->to_int(t->generator());
    std::set<std::int64_t> seen;
    std::int64_t x = 1;
    for (std::int64_t i = 0; i < p - 1; ++i) {
      seen.insert(x);
      x = x * g % p;
    }
    CHECK(seen.size() == static_cast<std::size_t>(p - 1));
  }
}

TEST_CASE("F9 exponent arithmetic") {
  auto t = FieldTower::build(3, 2);
  Fq g = t->generator();
  CHECK(g.pow(8) == t->one());
  CHECK(g.pow(4) == -t->one());
  CHECK(t->to_int(-t->one()) == 2);
}

TEST_CASE("exp and log tables agree with naive polynomial arithmetic") {
  for (auto [p, m] : std::vector<std::pair<std::int64_t, int>>{{3, 2}, {5, 2}, {7, 2}, {3, 4}, {11, 2}, {3, 3}}) {
    auto t = FieldTower::build(p, m);
    NaiveField nf{p, t->modulus()};
    for (std::int64_t e = 0; e < t->group_order(); e += 1 + t->group_order() / 97) {
      CHECK(padded(t->to_poly(t->from_log(e)), m) == nf.power_of_x(e));
    }
  }
}

TEST_CASE("dlog is additive and addition matches coefficient addition, exhaustive at small size") {
  for (auto [p, m] : std::vector<std::pair<std::int64_t, int>>{{3, 2}, {5, 2}, {7, 2}, {3, 3}}) {
    auto t = FieldTower::build(p, m);
    auto all = t->subfield_elements(m);
    for (auto x : all)
      for (auto y : all) {
        fp::Poly sum = fp::add(t->to_poly(x), t->to_poly(y), p);
        CHECK(t->to_poly(x + y) == sum);
        if (!x.is_zero() && !y.is_zero()) CHECK((x * y).log() == (x.log() + y.log()) % t->group_order());
      }
  }
}

TEST_CASE("canonical modulus is the first primitive polynomial in lexicographic order") {
  // Independent scan: enumerate monic polynomials and test primitivity by brute force order computation.
  for (auto [p, m] : std::vector<std::pair<std::int64_t, int>>{{3, 2}, {5, 2}, {7, 2}, {3, 3}}) {
    std::int64_t n = fp::ipow(p, m) - 1;
    fp::Poly expected;
    std::vector<std::int64_t> digits(m, 0);
    bool found = false;
    while (!found) {
      fp::Poly f(digits.begin(), digits.end());
      f.push_back(1);
      NaiveField nf{p, f};
      if (f[0] != 0) {
        std::vector<std::int64_t> one(m, 0);
        one[0] = 1;
        std::int64_t order = 0;
        for (std::int64_t e = 1; e <= n; ++e)
          if (nf.power_of_x(e) == one) {
            order = e;
            break;
          }
        if (order == n) {
          expected = f;
          found = true;
        }
      }
      int i = m - 1;
      while (i >= 0 && ++digits[i] == p) digits[i--] = 0;
    }
    CHECK(FieldTower::build(p, m)->modulus() == expected);
  }
}

TEST_CASE("subfield constraint pins the generator of the subfield") {
  auto t = FieldTower::build(7, 4, fp::Poly{3, 6, 1});
  Fq s = t->subfield_generator(2);
  fp::Poly constraint{3, 6, 1};
  Fq val = t->zero();
  for (std::size_t i = constraint.size(); i-- > 0;) val = val * s + t->from_int(constraint[i]);
  CHECK(val.is_zero());
  CHECK(t->element_order(s) == 48);
}

TEST_CASE("override rejections") {
  CHECK_THROWS_AS(FieldTower::build(7, 2, fp::Poly{1, 0, 1}), std::invalid_argument);  // irreducible, root of order 4
  CHECK_THROWS_AS(FieldTower::build(7, 2, fp::Poly{3, 1}), std::invalid_argument);     // degree 1 root 4 has order 3
  CHECK_THROWS_AS(FieldTower::build(9, 1), std::invalid_argument);
  CHECK_THROWS_AS(FieldTower::build(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(FieldTower::build(7, 8, std::nullopt, 1 << 20), std::invalid_argument);
}

TEST_CASE("frobenius") {
  auto t = FieldTower::build(3, 2);
  CHECK(t->frobenius(t->generator(), 1) == t->generator().pow(3));
  for (auto x : t->subfield_elements(1)) CHECK(t->frobenius(x, 1) == x);
  auto u = FieldTower::build(5, 2);
  for (auto x : u->subfield_elements(2)) CHECK(u->frobenius(u->frobenius(x, 1), 1) == x);
  // x -> x^p fixes exactly F_p
  std::size_t fixed = 0;
  for (auto x : u->subfield_elements(2)) fixed += (u->frobenius(x, 1) == x);
  CHECK(fixed == 5);
  auto w = FieldTower::build(3, 4);
  std::size_t fixed2 = 0;
  for (auto x : w->subfield_elements(4)) fixed2 += (w->frobenius(x, 2) == x);
  CHECK(fixed2 == 9);
}

TEST_CASE("norm and trace") {
  auto t = FieldTower::build(7, 2, fp::Poly{3, 6, 1});
  auto [n, tr] = t->norm_trace(t->generator(), 1);
  CHECK(n == t->generator().pow(8));
  CHECK(n == t->subfield_generator(1));
  CHECK(t->element_order(n) == 6);
  auto u = FieldTower::build(5, 2);
  auto all = u->subfield_elements(2);
  for (auto x : all)
    for (auto y : all) CHECK(u->norm_trace(x + y, 1).second == u->norm_trace(x, 1).second + u->norm_trace(y, 1).second);
  for (auto x : all) {
    auto [nx, tx] = u->norm_trace(x, 1);
    CHECK(u->in_subfield(nx, 1));
    CHECK(u->in_subfield(tx, 1));
    CHECK(nx == x.pow(6));
  }
  CHECK_THROWS(u->norm_trace(u->generator(), 3));
}

TEST_CASE("element orders") {
  auto t = FieldTower::build(5, 2);
  CHECK(t->element_order(t->generator()) == 24);
  CHECK(t->element_order(-t->one()) == 2);
  CHECK(t->element_order(t->from_log(12)) == 2);
  CHECK_THROWS(t->element_order(t->zero()));
}

TEST_CASE("subfield generator is a non-square and subfields have the right size") {
  for (auto [p, m] : std::vector<std::pair<std::int64_t, int>>{{3, 4}, {5, 2}, {7, 2}, {3, 6}}) {
    auto t = FieldTower::build(p, m);
    for (int d = 1; d <= m; ++d) {
      if (m % d) continue;
      Fq g = t->subfield_generator(d);
      CHECK_FALSE(t->is_square_in(g, d));
      auto sub = t->subfield_elements(d);
      CHECK(static_cast<std::int64_t>(sub.size()) == fp::ipow(p, d));
      for (std::size_t i = 0; i < sub.size(); i += 3)
        for (std::size_t j = 0; j < sub.size(); j += 5) {
          CHECK(t->in_subfield(sub[i] + sub[j], d));
          CHECK(t->in_subfield(sub[i] * sub[j], d));
        }
    }
  }
}

TEST_CASE("json dump") {
  auto t = FieldTower::build(7, 2, fp::Poly{3, 6, 1});
  auto j = t->to_json();
  CHECK(j["p"] == 7);
  CHECK(j["modulus_text"] == "X^2+6X+3");
  CHECK(j["generator_order"] == 48);
}
