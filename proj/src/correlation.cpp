#include "toric/correlation.hpp"

#include <stdexcept>

namespace toric {

PairCounts pair_class_counts(const PGL2& G) { return pair_class_counts(G, G.H(), G.K()); }

PairCounts pair_class_counts(const PGL2& G, const std::vector<PGL2Elem>& H, const std::vector<PGL2Elem>& K) {
  PairCounts out;
  out.counts.assign(G.classes().size(), 0);
  for (const auto& h : H)
    for (const auto& k : K) ++out.counts[G.class_index_of(G.mul(h, k))];
  out.total = static_cast<std::int64_t>(H.size() * K.size());
  return out;
}

std::int64_t conductor_for(const PGL2& G, const RepLabel& r) {
  return r.kind == RepKind::Cuspidal ? G.q() * G.q() - 1 : G.q() - 1;
}

bool multiplicity_one(const PGL2& G, const RepLabel& r) {
  return G.invariant_dims(r) == std::pair<std::int64_t, std::int64_t>(1, 1);
}

CycNum raw_correlation(const PGL2& G, const PairCounts& counts, const RepLabel& r) {
  const std::size_t ri = G.rep_index(r);
  RootAccumulator acc(G.table_modulus());
  for (std::size_t c = 0; c < counts.counts.size(); ++c)
    if (counts.counts[c]) acc.add(G.entry(ri, c), counts.counts[c]);
  return acc.value_in(conductor_for(G, r)) / mpq_class(counts.total);
}

CycNum corr_constant(const PGL2& G, const RepLabel& r) { return raw_correlation(G, pair_class_counts(G), r); }

bool epsilon_eligible(const RepLabel& r) {
  return r.kind == RepKind::PrincipalSeries || r.kind == RepKind::Cuspidal || r.kind == RepKind::SteinbergEta ||
         r.kind == RepKind::Trivial;
}

namespace {

int as_sign(const CycNum& z, const char* what) {
  auto v = z.as_rational();
  if (!v || (*v != 1 && *v != -1)) throw std::logic_error(std::string("epsilon by ") + what + " is not a sign");
  return *v == 1 ? 1 : -1;
}

int parity_sign(std::int64_t e) { return e % 2 ? -1 : 1; }

}  // namespace

int epsilon(const PGL2& G, const RepLabel& r, EpsMethod method) {
  if (!epsilon_eligible(r)) throw std::invalid_argument("epsilon is defined only for multiplicity-one representations");
  const std::size_t ri = G.rep_index(r);
  switch (method) {
    case EpsMethod::Closed:
      switch (r.kind) {
        case RepKind::PrincipalSeries: return parity_sign(r.r);
        case RepKind::SteinbergEta: return parity_sign((G.q() - 1) / 2);
        case RepKind::Cuspidal: return parity_sign(r.r - 1);
        default: return 1;
      }
    case EpsMethod::HSum: {
      RootAccumulator acc(G.table_modulus());
      for (const auto& h : G.H()) acc.add(G.entry(ri, G.class_index_of(G.mul(h, G.k0()))));
      return as_sign(acc.value() / mpq_class(static_cast<long>(G.H().size())), "H-sum");
    }
    case EpsMethod::KSum: {
      RootAccumulator acc(G.table_modulus());
      for (const auto& k : G.K()) acc.add(G.entry(ri, G.class_index_of(G.mul(G.h0(), k))));
      return as_sign(acc.value() / mpq_class(static_cast<long>(G.K().size())), "K-sum");
    }
  }
  throw std::logic_error("unknown epsilon method");
}

int epsilon_from_delta(const PGL2& G, const RepLabel& r, Fq delta) {
  const FieldTower& t = G.tower();
  if (t.is_square_in(delta, G.f())) throw std::invalid_argument("delta must be a non-square");
  std::int64_t q = G.q();
  switch (r.kind) {
    case RepKind::PrincipalSeries: return parity_sign(r.r);  // chi^r(-1), with -1 = g_q^{(q-1)/2}
    case RepKind::SteinbergEta: return parity_sign((q - 1) / 2);            // eta(-1)
    case RepKind::Trivial: return 1;
    case RepKind::Cuspidal: {
      // psi^{(q-1)r}(sqrt(delta)) is a sign because psi^{(q-1)r} is trivial on F_q^x.
      std::int64_t l = t.subfield_log(delta, 2 * G.f());
      std::int64_t M = q * q - 1;
      std::int64_t e = static_cast<std::int64_t>((static_cast<__int128>((q - 1) * r.r % M) * (l / 2)) % M);
      if ((2 * e) % M) throw std::logic_error("cuspidal character is not a sign at sqrt(delta)");
      return e == 0 ? -1 : 1;
    }
    default: break;
  }
  throw std::invalid_argument("epsilon is defined only for multiplicity-one representations");
}

EpsilonReport epsilon_all(const PGL2& G, const RepLabel& r) {
  return {epsilon(G, r, EpsMethod::Closed), epsilon(G, r, EpsMethod::HSum), epsilon(G, r, EpsMethod::KSum)};
}

CorrelationReport correlate(const PGL2& G, const PairCounts& counts, const RepLabel& r) {
  CorrelationReport rep;
  rep.rep = r;
  rep.value = raw_correlation(G, counts, r);
  rep.approx = rep.value.to_complex();
  rep.mult_one = multiplicity_one(G, r);
  if (epsilon_eligible(r)) rep.eps = epsilon(G, r, EpsMethod::Closed);
  rep.zero = rep.value.is_zero();
  for (std::size_t c = 0; c < counts.counts.size(); ++c)
    if (counts.counts[c]) rep.pair_counts.emplace_back(G.classes()[c].label, counts.counts[c]);
  return rep;
}

nlohmann::json CorrelationReport::to_json() const {
  nlohmann::json j;
  j["rep"] = rep.to_string();
  j["value"] = value.to_json();
  j["numeric"] = approx.real();
  j["multiplicity_one"] = mult_one;
  if (!mult_one) j["non_gelfand"] = true;
  j["epsilon"] = eps ? nlohmann::json(*eps) : nlohmann::json(nullptr);
  j["zero"] = zero;
  auto rat = value.as_rational();
  if (rat) j["rational"] = rat->get_str();
  nlohmann::json pc = nlohmann::json::array();
  for (const auto& [c, n] : pair_counts) pc.push_back({{"class", c.to_string()}, {"count", n}});
  j["pair_counts"] = pc;
  return j;
}

CycNum regular_identity(const PGL2& G, const PairCounts& counts) {
  RootAccumulator acc(G.table_modulus());
  for (std::size_t ri = 0; ri < G.reps().size(); ++ri) {
    std::int64_t dim = G.reps()[ri].dimension(G.q());
    for (std::size_t c = 0; c < counts.counts.size(); ++c)
      if (counts.counts[c]) acc.add(G.entry(ri, c), dim * counts.counts[c]);
  }
  return acc.value() / mpq_class(counts.total);
}

CycNum gross_tensor_identity(const PGL2& G, const RepLabel& r) {
  const std::size_t ri = G.rep_index(r);
  RootAccumulator acc(G.table_modulus());
  const auto& H = G.H();
  std::vector<std::size_t> cls(H.size());
  for (const auto& g : G.all_elements()) {
    for (std::size_t i = 0; i < H.size(); ++i) cls[i] = G.class_index_of(G.mul(H[i], g));
    for (std::size_t i = 0; i < H.size(); ++i)
      for (std::size_t j = 0; j < H.size(); ++j) acc.add_product_conj(G.entry(ri, cls[i]), G.entry(ri, cls[j]));
  }
  mpq_class norm(static_cast<long>(H.size() * H.size()));
  norm *= mpq_class(G.order());
  return acc.value() / norm;
}

UnipotentReport unipotent_report(const PGL2& G, const PairCounts& counts) {
  UnipotentReport rep;
  const std::int64_t q = G.q(), p = G.p();
  rep.measured = counts.counts[G.unipotent_class()];
  rep.predicted_p_mod4 = p % 4 == 1 ? q - 1 : q - 3;
  rep.predicted_q_mod4 = q % 4 == 1 ? q - 1 : q - 3;
  rep.asserted = G.f() == 1;
  return rep;
}

nlohmann::json UnipotentReport::to_json() const {
  return {{"measured", measured},
          {"predicted_p_mod4", predicted_p_mod4},
          {"predicted_q_mod4", predicted_q_mod4},
          {"asserted", asserted},
          {"ok", ok()}};
}

}  // namespace toric
