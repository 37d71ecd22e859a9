#include "toric/chars.hpp"

#include <regex>
#include <stdexcept>

namespace toric {

namespace {

std::int64_t mod_pos(std::int64_t a, std::int64_t n) {
  a %= n;
  return a < 0 ? a + n : a;
}

}  // namespace

MulChar MulChar::make(const FieldTower& tower, int d, std::int64_t j) {
  if (!tower.has_subfield(d)) throw std::invalid_argument("character field is not a subfield of the tower");
  MulChar c;
  c.tower = &tower;
  c.degree = d;
  c.order = fp::ipow(tower.characteristic(), d) - 1;
  c.exponent = mod_pos(j, c.order);
  return c;
}

MulChar MulChar::operator*(const MulChar& o) const {
  if (degree != o.degree) throw std::invalid_argument("characters on different fields");
  return make(*tower, degree, exponent + o.exponent);
}

MulChar MulChar::inverse() const { return make(*tower, degree, -exponent); }

MulChar MulChar::pow(std::int64_t n) const {
  __int128 e = static_cast<__int128>(exponent) * mod_pos(n, order);
  return make(*tower, degree, static_cast<std::int64_t>(e % order));
}

std::int64_t MulChar::root_exponent(Fq x) const {
  if (x.is_zero()) throw std::domain_error("character evaluated at zero");
  std::int64_t l = tower->subfield_log(x, degree);
  __int128 e = static_cast<__int128>(exponent) * l;
  return static_cast<std::int64_t>(e % order);
}

CycNum MulChar::evaluate(Fq x) const { return CycNum::root(order, root_exponent(x)); }

std::string MulChar::name() const { return "chi[" + std::to_string(order) + "]^" + std::to_string(exponent); }

MulChar sigma_twist(const MulChar& chi, std::int64_t q) { return chi.pow(q); }

MulChar restrict_to(const MulChar& chi, int d) {
  if (d <= 0 || chi.degree % d) throw std::invalid_argument("restriction target is not a subfield");
  // The subfield generator is g_chi^((p^D-1)/(p^d-1)), so the exponent simply reduces.
  std::int64_t small = fp::ipow(chi.tower->characteristic(), d) - 1;
  return MulChar::make(*chi.tower, d, chi.exponent % small);
}

std::int64_t absolute_trace(const FieldTower& tower, Fq x, int d) {
  Fq t = tower.zero();
  Fq c = x;
  for (int i = 0; i < d; ++i) {
    t = t + c;
    c = tower.frobenius(c, 1);
  }
  return tower.to_int(t);
}

AddChar AddChar::make(const FieldTower& tower, int d) { return make(tower, d, tower.one()); }

AddChar AddChar::make(const FieldTower& tower, int d, Fq c) {
  if (!tower.has_subfield(d)) throw std::invalid_argument("additive character field is not a subfield");
  if (c.is_zero() || !tower.in_subfield(c, d)) throw std::invalid_argument("additive character shift must be a nonzero field element");
  return AddChar{&tower, d, c};
}

std::int64_t AddChar::root_exponent(Fq x) const { return absolute_trace(*tower, shift * x, degree); }

CycNum AddChar::evaluate(Fq x) const { return CycNum::root(tower->characteristic(), root_exponent(x)); }

CycNum gauss_sum(const MulChar& chi, const AddChar& psi) {
  if (chi.degree != psi.degree) throw std::invalid_argument("gauss_sum: characters on different fields");
  const std::int64_t p = chi.tower->characteristic();
  const std::int64_t L = chi.order * p;
  RootAccumulator acc(L);
  for (Fq t : chi.tower->subfield_elements(chi.degree)) {
    if (t.is_zero()) continue;
    acc.add(chi.root_exponent(t) * p + psi.root_exponent(t) * chi.order);
  }
  return acc.value_in(L);
}

MulChar parse_character(const std::string& name, const FieldTower& tower, int f) {
  static const std::regex chi_re(R"(chi\^\{?(-?\d+)\}?)");
  static const std::regex psi_re(R"(psi\^\{?(-?\d+)\}?)");
  static const std::regex psi_q_re(R"(psi\^\{\(q-1\)(-?\d+)\})");
  std::smatch m;
  const std::int64_t q = fp::ipow(tower.characteristic(), f);
  if (std::regex_match(name, m, chi_re)) return MulChar::make(tower, f, std::stoll(m[1]));
  if (std::regex_match(name, m, psi_q_re)) return MulChar::make(tower, 2 * f, (q - 1) * std::stoll(m[1]));
  if (std::regex_match(name, m, psi_re)) return MulChar::make(tower, 2 * f, std::stoll(m[1]));
  throw std::invalid_argument("unknown character name: " + name);
}

}  // namespace toric
