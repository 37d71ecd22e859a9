#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

// Dense univariate polynomials over a prime field F_p.
// Coefficients are stored low-degree-first and kept trimmed, so the zero
// polynomial is the empty vector.
namespace toric::fp {

using Poly = std::vector<std::int64_t>;

std::int64_t reduce(std::int64_t a, std::int64_t p);
std::int64_t inverse(std::int64_t a, std::int64_t p);
std::int64_t power(std::int64_t a, std::uint64_t e, std::int64_t p);

void trim(Poly& a);
int degree(const Poly& a);  // -1 for zero
Poly normalized(Poly a, std::int64_t p);
Poly monic(const Poly& a, std::int64_t p);

Poly add(const Poly& a, const Poly& b, std::int64_t p);
Poly sub(const Poly& a, const Poly& b, std::int64_t p);
Poly mul(const Poly& a, const Poly& b, std::int64_t p);
Poly scale(const Poly& a, std::int64_t c, std::int64_t p);
void divmod(const Poly& a, const Poly& b, std::int64_t p, Poly& quo, Poly& rem);
Poly rem(const Poly& a, const Poly& b, std::int64_t p);
Poly quo(const Poly& a, const Poly& b, std::int64_t p);
Poly gcd(Poly a, Poly b, std::int64_t p);

Poly mulmod(const Poly& a, const Poly& b, const Poly& m, std::int64_t p);
Poly powmod(const Poly& base, const mpz_class& e, const Poly& m, std::int64_t p);
Poly powmod(const Poly& base, std::uint64_t e, const Poly& m, std::int64_t p);

std::int64_t eval(const Poly& a, std::int64_t x, std::int64_t p);

// Composition a(b) reduced modulo m.
Poly compose_mod(const Poly& a, const Poly& b, const Poly& m, std::int64_t p);

// "X^2+6X+3" style; parse() also accepts "[3,6,1]".
std::string to_string(const Poly& a);
Poly parse(const std::string& text, std::int64_t p);

// Integer helpers shared by the field and cyclotomic code.
bool is_prime(std::int64_t n);
std::vector<std::int64_t> prime_factors(std::int64_t n);
std::int64_t gcd_int(std::int64_t a, std::int64_t b);
std::int64_t euler_phi(std::int64_t n);
std::int64_t mult_order(std::int64_t a, std::int64_t n);
std::int64_t ipow(std::int64_t b, int e);

}  // namespace toric::fp
