#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "toric/poly_fp.hpp"

namespace toric {

class FieldTower;

inline constexpr std::int64_t kDefaultTableCap = std::int64_t{1} << 20;

/// Element of a tower, stored as a discrete logarithm of the canonical
/// generator (or the zero marker). Cheap to copy; the tower must outlive it.
class Fq {
 public:
  Fq() = default;
  Fq(const FieldTower* tower, std::int64_t log) : tower_(tower), log_(log) {}

  bool is_zero() const { return log_ < 0; }
  std::int64_t log() const { return log_; }
  const FieldTower* tower() const { return tower_; }

  Fq operator+(Fq o) const;
  Fq operator-(Fq o) const;
  Fq operator-() const;
  Fq operator*(Fq o) const;
  Fq operator/(Fq o) const;
  Fq& operator+=(Fq o) { return *this = *this + o; }
  Fq& operator-=(Fq o) { return *this = *this - o; }
  Fq& operator*=(Fq o) { return *this = *this * o; }
  Fq inv() const;
  Fq pow(std::int64_t e) const;

  bool operator==(const Fq& o) const { return log_ == o.log_; }
  bool operator!=(const Fq& o) const { return log_ != o.log_; }
  bool operator<(const Fq& o) const { return log_ < o.log_; }

 private:
  const FieldTower* tower_ = nullptr;
  std::int64_t log_ = -1;
};

/// The ambient field F_{p^m} = F_p[X]/(modulus) with exp/log/Zech tables.
/// Every subfield F_{p^d}, d | m, is {0} together with the powers of
/// g^((p^m-1)/(p^d-1)), g the class of X.
class FieldTower {
 public:
  /// `override_modulus` of degree m is used verbatim (after validation). One of
  /// degree d < m, d | m, instead pins the subfield: the canonical modulus is
  /// then the smallest one whose subfield generator is a root of it.
  static std::shared_ptr<const FieldTower> build(std::int64_t p, int m,
                                                 const std::optional<fp::Poly>& override_modulus = {},
                                                 std::int64_t table_cap = kDefaultTableCap);

  std::int64_t characteristic() const { return p_; }
  int degree() const { return m_; }
  std::int64_t size() const { return size_; }
  std::int64_t group_order() const { return size_ - 1; }
  const fp::Poly& modulus() const { return modulus_; }
  const std::optional<fp::Poly>& subfield_constraint() const { return constraint_; }

  Fq zero() const { return Fq(this, -1); }
  Fq one() const { return Fq(this, 0); }
  Fq generator() const { return Fq(this, 1 % group_order()); }
  Fq from_log(std::int64_t e) const;
  Fq from_int(std::int64_t n) const;
  Fq from_poly(const fp::Poly& a) const;
  fp::Poly to_poly(Fq x) const;
  /// Integer value of an element of the prime field.
  std::int64_t to_int(Fq x) const;

  bool has_subfield(int d) const { return d > 0 && m_ % d == 0; }
  std::int64_t subfield_index(int d) const;  // (p^m-1)/(p^d-1)
  Fq subfield_generator(int d) const;
  bool in_subfield(Fq x, int d) const;
  /// Exponent i with x = subfield_generator(d)^i; x must be a nonzero element of F_{p^d}.
  std::int64_t subfield_log(Fq x, int d) const;
  std::vector<Fq> subfield_elements(int d) const;  // 0 first, then generator powers
  bool is_square_in(Fq x, int d) const;

  Fq frobenius(Fq x, int j) const;
  std::pair<Fq, Fq> norm_trace(Fq x, int d) const;
  std::int64_t element_order(Fq x) const;

  Fq add(Fq a, Fq b) const;
  Fq neg(Fq a) const;
  Fq mul(Fq a, Fq b) const;
  Fq inv(Fq a) const;
  Fq pow(Fq a, std::int64_t e) const;

  std::string to_string(Fq x) const;
  nlohmann::json to_json() const;

 private:
  FieldTower() = default;
  void build_tables();

  std::int64_t p_ = 0;
  int m_ = 0;
  std::int64_t size_ = 0;
  fp::Poly modulus_;
  std::optional<fp::Poly> constraint_;
  std::vector<std::int32_t> exp_;   // log -> packed base-p digits
  std::vector<std::int32_t> log_;   // packed -> log, -1 for zero
  std::vector<std::int32_t> zech_;  // log(1 + g^i), -1 when 1 + g^i = 0
};

/// First monic polynomial of degree m, in lexicographic order of the
/// coefficient list read low degree first, whose root has order p^m - 1.
fp::Poly canonical_modulus(std::int64_t p, int m, const std::optional<fp::Poly>& subfield_constraint = {});
bool is_primitive_poly(const fp::Poly& f, std::int64_t p);

}  // namespace toric
