#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"
#include "toric/poly_fp.hpp"

namespace toric {

using IntPoly = std::vector<mpz_class>;  // low-degree-first

/// Phi_k by exact division of x^k - 1 by the smaller cyclotomic factors.
IntPoly cyclotomic_poly(std::int64_t k);

/// Shared data for Q(zeta_k): the power basis 1, z, ..., z^(phi-1) and the
/// reduction of every z^e. Uses Phi_k(x) = Phi_rad(x^(k/rad)) so that only
/// rad(k) rows are stored.
class CycloContext {
 public:
  struct Term {
    std::int32_t index;
    std::int64_t coef;
  };

  static std::shared_ptr<const CycloContext> get(std::int64_t k);

  std::int64_t conductor() const { return k_; }
  std::int64_t degree() const { return phi_; }

  /// Adds c * z^e (e taken mod k) to a coefficient vector of length phi.
  void add_power(std::vector<mpz_class>& out, std::int64_t e, const mpz_class& c) const;
  void add_power(std::vector<mpz_class>& out, std::int64_t e, std::int64_t c) const;

 private:
  CycloContext() = default;
  std::int64_t k_ = 1, phi_ = 1, rad_ = 1, stride_ = 1;
  std::vector<std::vector<Term>> rows_;  // y^s mod Phi_rad(y), s < rad
};

/// Exact element of Q(zeta_k): integer numerators over a positive common
/// denominator, reduced so that gcd(numerators, denominator) = 1.
class CycNum {
 public:
  CycNum() : CycNum(1) {}
  explicit CycNum(std::int64_t k);

  static CycNum zero(std::int64_t k = 1) { return CycNum(k); }
  static CycNum one(std::int64_t k = 1) { return rational(1, k); }
  static CycNum rational(const mpq_class& c, std::int64_t k = 1);
  /// zeta_k^e
  static CycNum root(std::int64_t k, std::int64_t e);
  static CycNum from_coeffs(std::int64_t k, const std::vector<mpq_class>& coeffs);

  std::int64_t conductor() const { return ctx_->conductor(); }
  std::int64_t degree() const { return ctx_->degree(); }
  const std::vector<mpz_class>& numerators() const { return num_; }
  const mpz_class& denominator() const { return den_; }
  mpq_class coeff(std::size_t i) const;
  std::vector<mpq_class> coeffs() const;

  bool is_zero() const;
  std::optional<mpq_class> as_rational() const;
  std::complex<double> to_complex() const;

  CycNum operator+(const CycNum& o) const;
  CycNum operator-(const CycNum& o) const;
  CycNum operator-() const;
  CycNum operator*(const CycNum& o) const;
  CycNum& operator+=(const CycNum& o) { return *this = *this + o; }
  CycNum& operator-=(const CycNum& o) { return *this = *this - o; }
  CycNum& operator*=(const CycNum& o) { return *this = *this * o; }
  CycNum operator*(const mpq_class& c) const;
  CycNum operator/(const mpq_class& c) const;

  CycNum conj() const;
  CycNum abs2() const { return *this * conj(); }
  CycNum mul_root(std::int64_t e) const;
  /// Same value viewed in Q(zeta_m); requires k | m.
  CycNum lift(std::int64_t m) const;

  /// Value equality; conductors may differ.
  bool operator==(const CycNum& o) const;
  bool operator!=(const CycNum& o) const { return !(*this == o); }

  std::string to_string() const;
  nlohmann::json to_json() const;
  static CycNum from_json(const nlohmann::json& j);

 private:
  friend class RootAccumulator;
  void normalize();
  void require_same(const CycNum& o) const;

  std::shared_ptr<const CycloContext> ctx_;
  std::vector<mpz_class> num_;
  mpz_class den_ = 1;
};

/// Lifts both operands to the lcm of their conductors.
std::pair<CycNum, CycNum> coerce(const CycNum& a, const CycNum& b);

/// Sparse integer combination of k-th roots of unity, sum c * zeta_k^e.
/// The character table stores its entries this way.
struct RootSum {
  std::int64_t modulus = 1;
  std::vector<std::pair<std::int64_t, std::int64_t>> terms;  // (exponent, coefficient)

  static RootSum constant(std::int64_t modulus, std::int64_t c);
  static RootSum monomial(std::int64_t modulus, std::int64_t e, std::int64_t c = 1);
  RootSum conj() const;
  /// Smallest conductor dividing `modulus` that contains every term.
  std::int64_t natural_conductor() const;
  CycNum value() const;
  CycNum value_in(std::int64_t k) const;
};

/// Dense accumulator over Z[Z/k]: cheap additions of roots of unity,
/// reduced to a CycNum once at the end.
class RootAccumulator {
 public:
  explicit RootAccumulator(std::int64_t modulus);
  void add(std::int64_t e, std::int64_t c = 1);
  void add(const RootSum& s, std::int64_t mult = 1);
  /// Adds mult * a * conj(b) term by term.
  void add_product_conj(const RootSum& a, const RootSum& b, std::int64_t mult = 1);
  std::int64_t modulus() const { return modulus_; }
  /// Reduced value in the smallest conductor that holds it.
  CycNum value() const;
  CycNum value_in(std::int64_t k) const;

 private:
  std::int64_t modulus_;
  std::vector<std::int64_t> counts_;
};

/// Prime of Z[zeta_k] above p, given by a monic irreducible factor m of Phi_k mod p.
/// The residue field is F_p[X]/(m) and zeta_k maps to the class of X.
struct PrimeIdealHandle {
  std::int64_t k = 1;
  std::int64_t p = 3;
  fp::Poly factor;
  int index = 0;  // position in the sorted factor list

  int residue_degree() const { return fp::degree(factor); }
  nlohmann::json to_json() const;
};

/// Residue-field element, a polynomial of degree < residue_degree.
struct ResidueElem {
  fp::Poly value;
  std::int64_t p = 3;
  bool in_prime_field() const { return value.size() <= 1; }
  std::int64_t constant() const { return value.empty() ? 0 : value[0]; }
  bool operator==(const ResidueElem& o) const { return value == o.value; }
};

std::vector<PrimeIdealHandle> factor_cyclotomic_mod_p(std::int64_t k, std::int64_t p, std::uint64_t seed = 0x5eedULL);
ResidueElem reduce_at_prime(const CycNum& z, const PrimeIdealHandle& prime);
/// Image of zeta_k^e in the residue field.
ResidueElem root_at_prime(const PrimeIdealHandle& prime, std::int64_t e);

}  // namespace toric
