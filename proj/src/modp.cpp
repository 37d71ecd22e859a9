#include "toric/modp.hpp"

#include <numeric>
#include <stdexcept>

namespace toric {

std::int64_t lucas_binom(std::int64_t m, std::int64_t n, std::int64_t p) {
  if (n < 0 || n > m) return 0;
  std::int64_t result = 1;
  while (m > 0 || n > 0) {
    std::int64_t mi = m % p, ni = n % p;
    if (ni > mi) return 0;
    // C(mi, ni) with mi < p by a direct product; values stay small.
    std::int64_t num = 1, den = 1;
    for (std::int64_t i = 0; i < ni; ++i) {
      num = num * ((mi - i) % p) % p;
      den = den * ((i + 1) % p) % p;
    }
    result = result * num % p * fp::inverse(den, p) % p;
    m /= p;
    n /= p;
  }
  return result;
}

std::vector<std::int64_t> base_p_digits(std::int64_t n, std::int64_t p, int count) {
  std::vector<std::int64_t> out(count, 0);
  for (int i = 0; i < count; ++i) {
    out[i] = n % p;
    n /= p;
  }
  return out;
}

std::int64_t residue_log_of_root(const PGL2& G, const PrimeIdealHandle& prime) {
  const FieldTower& T = G.tower();
  const std::int64_t k = prime.k;
  Fq g;
  if (k == G.q() - 1)
    g = G.gen_q();
  else if (k == G.q() * G.q() - 1)
    g = G.gen_q2();
  else
    throw std::invalid_argument("prime conductor must be q-1 or q^2-1");
  for (std::int64_t a = 1; a < k; ++a) {
    if (std::gcd(a, k) != 1) continue;
    Fq x = g.pow(a);
    Fq v = T.zero();
    for (std::size_t i = prime.factor.size(); i-- > 0;) v = v * x + T.from_int(prime.factor[i]);
    if (v.is_zero()) return a;
  }
  throw std::logic_error("factor has no root of order k in the tower");
}

bool modp_eligible(const RepLabel& r) {
  return r.kind == RepKind::Trivial || r.kind == RepKind::PrincipalSeries || r.kind == RepKind::SteinbergEta ||
         r.kind == RepKind::Cuspidal;
}

PrimeLabel r_label_at_prime(const PGL2& G, const RepLabel& r, const PrimeIdealHandle& prime) {
  if (!modp_eligible(r)) throw std::invalid_argument("relabeling needs trivial, Ps, st-eta or a cuspidal");
  const std::int64_t q = G.q();
  if (prime.k != conductor_for(G, r)) throw std::invalid_argument("prime conductor does not match the representation");
  PrimeLabel out;
  out.a = residue_log_of_root(G, prime);
  if (r.kind == RepKind::Cuspidal) {
    std::int64_t s = r.r % (q + 1) * (out.a % (q + 1)) % (q + 1);
    out.r = std::min(s, q + 1 - s);
    out.d = out.r - 1;
  } else {
    std::int64_t base = r.kind == RepKind::SteinbergEta ? (q - 1) / 2 : r.r;
    std::int64_t s = base % (q - 1) * (out.a % (q - 1)) % (q - 1);
    out.r = std::min(s, q - 1 - s);
    out.d = out.r;
  }
  out.digits = base_p_digits(out.d, G.p(), G.f());
  return out;
}

std::int64_t theorem1_prediction(std::int64_t q, std::int64_t p, const std::vector<std::int64_t>& digits) {
  std::int64_t d = 0;
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (digits[i] % 2) return 0;
    d = d * p + digits[i];
  }
  std::int64_t v = lucas_binom(d, d / 2, p) * lucas_binom(q - 1 - d, (q - 1 - d) / 2, p) % p;
  if (((q - 1) / 2) % 2) v = (p - v) % p;
  return v;
}

bool ModpReport::ok() const { return all_match && parity_consistent; }

ModpReport theorem1_check(const PGL2& G, const PairCounts& counts, const RepLabel& r, std::uint64_t seed) {
  if (!modp_eligible(r)) throw std::invalid_argument("theorem1_check: representation not eligible");
  ModpReport rep;
  rep.rep = r;
  rep.value = raw_correlation(G, counts, r);
  rep.eps = epsilon(G, r, EpsMethod::Closed);
  for (const auto& prime : factor_cyclotomic_mod_p(conductor_for(G, r), G.p(), seed)) {
    ModpRow row;
    row.prime = prime;
    row.label = r_label_at_prime(G, r, prime);
    row.predicted = theorem1_prediction(G.q(), G.p(), row.label.digits);
    // A non-p-integral constant throws here; nothing is caught on purpose.
    row.reduced = reduce_at_prime(rep.value, prime);
    row.in_prime_field = row.reduced.in_prime_field();
    row.match = row.in_prime_field && row.reduced.constant() == row.predicted;
    rep.all_match = rep.all_match && row.match;
    rep.certifies_nonzero = rep.certifies_nonzero || row.predicted != 0;
    if ((row.label.d % 2 == 1) != (rep.eps == -1)) rep.parity_consistent = false;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

ModpReport theorem1_check(const PGL2& G, const RepLabel& r) { return theorem1_check(G, pair_class_counts(G), r); }

nlohmann::json ModpReport::to_json() const {
  nlohmann::json j;
  j["rep"] = rep.to_string();
  j["value"] = value.to_json();
  j["numeric"] = value.to_complex().real();
  j["exact_nonzero"] = !value.is_zero();
  j["epsilon"] = eps;
  j["all_match"] = all_match;
  j["certifies_nonzero"] = certifies_nonzero;
  j["parity_consistent"] = parity_consistent;
  nlohmann::json rs = nlohmann::json::array();
  for (const auto& row : rows) {
    rs.push_back({{"factor", fp::to_string(row.prime.factor)},
                  {"index", row.prime.index},
                  {"a", row.label.a},
                  {"r", row.label.r},
                  {"digits", row.label.digits},
                  {"predicted", row.predicted},
                  {"reduced", row.in_prime_field ? nlohmann::json(row.reduced.constant()) : nlohmann::json(row.reduced.value)},
                  {"match", row.match}});
  }
  j["rows"] = rs;
  return j;
}

VanishingReport theorem1_vanishing(const PGL2& G, const PairCounts& counts) {
  VanishingReport out;
  for (const auto& r : G.reps()) {
    if (!epsilon_eligible(r)) continue;
    ++out.checked;
    if (epsilon(G, r, EpsMethod::Closed) != -1) continue;
    ++out.negative;
    CycNum c = raw_correlation(G, counts, r);
    if (!c.is_zero()) out.failures.push_back("q=" + std::to_string(G.q()) + " " + r.to_string() + " has epsilon -1 and constant " + c.to_string());
  }
  return out;
}

std::vector<CorollaryRow> corollary_scan(const PGL2& G, const PairCounts& counts) {
  std::vector<CorollaryRow> out;
  for (const auto& r : G.reps()) {
    if (!epsilon_eligible(r)) continue;
    int e = epsilon(G, r, EpsMethod::Closed);
    bool z = raw_correlation(G, counts, r).is_zero();
    if (e == 1 && z) out.push_back({r, e, z});
  }
  return out;
}

}  // namespace toric
