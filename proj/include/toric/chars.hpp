#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "toric/cyclo.hpp"
#include "toric/fields.hpp"

namespace toric {

/// Multiplicative character of F_{p^d}^x; its value on the canonical subfield
/// generator is zeta_order^exponent.
struct MulChar {
  const FieldTower* tower = nullptr;
  int degree = 1;          // subfield F_{p^d}
  std::int64_t order = 1;  // p^d - 1
  std::int64_t exponent = 0;

  static MulChar make(const FieldTower& tower, int d, std::int64_t j);

  bool is_trivial() const { return exponent == 0; }
  MulChar operator*(const MulChar& o) const;
  MulChar inverse() const;
  MulChar pow(std::int64_t n) const;
  bool operator==(const MulChar& o) const { return degree == o.degree && exponent == o.exponent; }

  /// e with chi(x) = zeta_order^e.
  std::int64_t root_exponent(Fq x) const;
  CycNum evaluate(Fq x) const;

  std::string name() const;
  nlohmann::json to_json() const { return {{"k", order}, {"j", exponent}}; }
};

/// chi^sigma(x) = chi(x^q).
MulChar sigma_twist(const MulChar& chi, std::int64_t q);
/// Restriction to the subfield F_{p^d}, d dividing chi.degree.
MulChar restrict_to(const MulChar& chi, int d);

/// x -> zeta_p^{Tr(c x)} on F_{p^d}, absolute trace.
struct AddChar {
  const FieldTower* tower = nullptr;
  int degree = 1;
  Fq shift;

  static AddChar make(const FieldTower& tower, int d);
  static AddChar make(const FieldTower& tower, int d, Fq c);

  std::int64_t root_exponent(Fq x) const;  // Tr(cx) as an integer mod p
  CycNum evaluate(Fq x) const;
};

std::int64_t absolute_trace(const FieldTower& tower, Fq x, int d);

/// sum over t != 0 of psi(t) chi(t), conductor lcm(chi.order, p).
CycNum gauss_sum(const MulChar& chi, const AddChar& psi);

/// CLI names: "chi^r" on F_q, "psi^r" or "psi^{(q-1)r}" on F_{q^2}.
MulChar parse_character(const std::string& name, const FieldTower& tower, int f);

}  // namespace toric
