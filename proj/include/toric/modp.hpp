#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "toric/correlation.hpp"
#include "toric/cyclo.hpp"
#include "toric/pgl2.hpp"

namespace toric {

/// C(m, n) mod p as the product of digit binomials.
std::int64_t lucas_binom(std::int64_t m, std::int64_t n, std::int64_t p);

std::vector<std::int64_t> base_p_digits(std::int64_t n, std::int64_t p, int count);

/// Smallest a with gcd(a, k) = 1 such that the factor of the prime vanishes at
/// g_k^a, g_k the tower's generator of order k. Reduction sends zeta_k to g_k^a.
std::int64_t residue_log_of_root(const PGL2& G, const PrimeIdealHandle& prime);

struct PrimeLabel {
  std::int64_t a = 1;  // zeta_k -> g_k^a
  std::int64_t r = 0;  // relabeled parameter
  std::int64_t d = 0;  // r for Ps, St-eta and trivial; r - 1 for cuspidals
  std::vector<std::int64_t> digits;  // base-p digits of d, f of them
};

/// Accepts trivial (r = 0), Ps, St-eta and cuspidal labels.
PrimeLabel r_label_at_prime(const PGL2& G, const RepLabel& r, const PrimeIdealHandle& prime);

/// (-1)^((q-1)/2) C(d, d/2) C(q-1-d, (q-1-d)/2) mod p if every digit is even, else 0.
std::int64_t theorem1_prediction(std::int64_t q, std::int64_t p, const std::vector<std::int64_t>& digits);

struct ModpRow {
  PrimeIdealHandle prime;
  PrimeLabel label;
  std::int64_t predicted = 0;
  ResidueElem reduced;
  bool in_prime_field = false;
  bool match = false;
};

struct ModpReport {
  RepLabel rep;
  CycNum value;
  std::vector<ModpRow> rows;
  bool all_match = true;
  bool certifies_nonzero = false;  // some prediction is nonzero
  bool parity_consistent = true;   // d odd iff epsilon = -1, at every prime
  int eps = 1;

  bool ok() const;
  nlohmann::json to_json() const;
};

bool modp_eligible(const RepLabel& r);

ModpReport theorem1_check(const PGL2& G, const PairCounts& counts, const RepLabel& r, std::uint64_t seed = 0x5eedULL);
ModpReport theorem1_check(const PGL2& G, const RepLabel& r);

/// epsilon = -1 implies an exactly vanishing constant, over every eligible rep.
struct VanishingReport {
  int checked = 0;
  int negative = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};
VanishingReport theorem1_vanishing(const PGL2& G, const PairCounts& counts);

/// Reps whose constant vanishes although epsilon = +1. For q = p there should be none.
struct CorollaryRow {
  RepLabel rep;
  int eps = 1;
  bool zero = false;
};
std::vector<CorollaryRow> corollary_scan(const PGL2& G, const PairCounts& counts);

}  // namespace toric
