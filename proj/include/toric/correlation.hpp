#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"
#include "toric/cyclo.hpp"
#include "toric/pgl2.hpp"

namespace toric {

/// N_C = #{(h, k) : hk in C} per class index.
struct PairCounts {
  std::vector<std::int64_t> counts;
  std::int64_t total = 0;
};

PairCounts pair_class_counts(const PGL2& G);
PairCounts pair_class_counts(const PGL2& G, const std::vector<PGL2Elem>& H, const std::vector<PGL2Elem>& K);

/// q-1 for representations whose values lie in Q(zeta_{q-1}), q^2-1 for cuspidals.
std::int64_t conductor_for(const PGL2& G, const RepLabel& r);
bool multiplicity_one(const PGL2& G, const RepLabel& r);

/// (1/|H||K|) sum_C N_C chi_pi(C), exact.
CycNum raw_correlation(const PGL2& G, const PairCounts& counts, const RepLabel& r);
CycNum corr_constant(const PGL2& G, const RepLabel& r);

enum class EpsMethod { Closed, HSum, KSum };

int epsilon(const PGL2& G, const RepLabel& r, EpsMethod method);
/// -psi(sqrt(delta)) for cuspidals, chi(-1) otherwise; delta any non-square of F_q.
int epsilon_from_delta(const PGL2& G, const RepLabel& r, Fq delta);
bool epsilon_eligible(const RepLabel& r);

struct EpsilonReport {
  int closed = 0, h_sum = 0, k_sum = 0;
  bool agree() const { return closed == h_sum && h_sum == k_sum; }
};
EpsilonReport epsilon_all(const PGL2& G, const RepLabel& r);

struct CorrelationReport {
  RepLabel rep;
  CycNum value;
  std::complex<double> approx;
  std::optional<int> eps;
  bool mult_one = false;
  bool zero = false;
  std::vector<std::pair<ClassLabel, std::int64_t>> pair_counts;

  nlohmann::json to_json() const;
};

CorrelationReport correlate(const PGL2& G, const PairCounts& counts, const RepLabel& r);

/// sum over all irreducibles of dim(pi) * raw value; equals |G||H n K|/(|H||K|) = q.
CycNum regular_identity(const PGL2& G, const PairCounts& counts);

/// (1/|H|^2|G|) sum_{h1,h2,g} chi(h1 g) conj(chi(h2 g)); intended for small q.
CycNum gross_tensor_identity(const PGL2& G, const RepLabel& r);

struct UnipotentReport {
  std::int64_t measured = 0;
  std::int64_t predicted_p_mod4 = 0;  // q-1 if p = 1 mod 4, else q-3
  std::int64_t predicted_q_mod4 = 0;  // same rule with q in place of p
  bool asserted = false;              // the p mod 4 rule is only asserted for f = 1
  bool ok() const { return !asserted || measured == predicted_p_mod4; }
  nlohmann::json to_json() const;
};
UnipotentReport unipotent_report(const PGL2& G, const PairCounts& counts);

}  // namespace toric
