#include "toric/shintani.hpp"

#include <deque>
#include <random>
#include <stdexcept>

namespace toric {

namespace {

std::int64_t mod_pos(std::int64_t a, std::int64_t n) {
  a %= n;
  return a < 0 ? a + n : a;
}

int sign_of_exponent(std::int64_t e, std::int64_t order) {
  e = mod_pos(e, order);
  if (e == 0) return 1;
  if (2 * e == order) return -1;
  throw std::logic_error("character value is not a sign");
}

int degree_over(std::int64_t size, std::int64_t base) {
  int d = 0;
  std::int64_t s = 1;
  while (s < size) {
    s *= base;
    ++d;
  }
  if (s != size) throw std::invalid_argument("field size is not a power of the base");
  return d;
}

bool vec_eq(const ModelVec& a, const ModelVec& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

}  // namespace

std::string to_string(BCCase c) {
  switch (c) {
    case BCCase::SplitBC: return "SplitBC";
    case BCCase::CuspBC: return "CuspBC";
    case BCCase::NotBC: return "NotBC";
  }
  return "?";
}

BaseChange base_change_class(const MulChar& chi, std::int64_t q) {
  const FieldTower& t = *chi.tower;
  const std::int64_t N = chi.order;
  const std::int64_t j = chi.exponent;
  if (mod_pos(2 * j, N) == 0) throw std::invalid_argument("base change class needs chi^2 nontrivial");
  const int f_base = degree_over(q, t.characteristic());
  if (chi.degree % f_base) throw std::invalid_argument("character field does not contain the base field");
  BaseChange bc;
  bc.j = j;
  const __int128 jq = static_cast<__int128>(j) * q;
  if (static_cast<std::int64_t>(jq % N) == j) {
    bc.kind = BCCase::SplitBC;
    std::int64_t j0 = j / (N / (q - 1));
    bc.chi0 = MulChar::make(t, f_base, j0);
    bc.tau = RepLabel::ps(std::min(j0, q - 1 - j0));
  } else if (static_cast<std::int64_t>(jq % N) == N - j) {
    bc.kind = BCCase::CuspBC;
    std::int64_t k = j / (N / (q + 1));
    bc.chi1 = MulChar::make(t, 2 * f_base, k * (q - 1));
    bc.tau = RepLabel::cusp(std::min(k, q + 1 - k));
  }
  return bc;
}

// ---- ShintaniPair --------------------------------------------------------------

ShintaniPair ShintaniPair::build(std::int64_t p, int f_base, int ext, std::int64_t table_cap) {
  if (f_base < 1 || ext < 1) throw std::invalid_argument("field degrees must be positive");
  ShintaniPair s;
  auto tower = FieldTower::build(p, 2 * f_base * ext, std::nullopt, table_cap);
  s.GE = PGL2::create(tower, f_base * ext);
  s.GF = PGL2::create(tower, f_base);
  s.f_base = f_base;
  s.ext = ext;
  s.q = s.GF->q();
  s.Q = s.GE->q();
  return s;
}

Fq ShintaniPair::sigma(Fq x) const { return GE->tower().frobenius(x, f_base); }

PGL2Elem ShintaniPair::sigma(const PGL2Elem& g) const {
  return GE->make(sigma(g.a), sigma(g.b), sigma(g.c), sigma(g.d));
}

std::vector<std::pair<std::string, PGL2Elem>> ShintaniPair::generators() const {
  std::vector<std::pair<std::string, PGL2Elem>> gens;
  gens.emplace_back("diag(g,1)", GE->diag(GE->gen_q()));
  for (int i = 0; i < GE->f(); ++i) gens.emplace_back("u(g^" + std::to_string(i) + ")", GE->upper(GE->gen_q().pow(i)));
  gens.emplace_back("w", GE->weyl());
  return gens;
}

ModelVec RootVec::to_model(std::int64_t conductor) const {
  ModelVec v(exps.size(), CycNum::zero(conductor));
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (exps[i] >= 0) v[i] = CycNum::root(conductor, exps[i]) * scale;
  return v;
}

// ---- T -------------------------------------------------------------------------

ShintaniData ShintaniData::build(const ShintaniPair& pair, std::int64_t j) {
  ShintaniData T;
  T.pair_ = pair;
  T.model_ = std::make_shared<InducedModel>(pair.GE, j);
  const InducedModel& M = *T.model_;
  T.bc_ = base_change_class(M.chi(), pair.q);
  if (T.bc_.kind == BCCase::NotBC) throw std::invalid_argument("no Shintani operator: chi is not a base change");
  const std::size_t D = M.dim();
  const std::int64_t N = M.conductor();
  T.dim_ = D;
  T.texp_.assign(D * D, -1);
  auto set = [&](std::size_t row, std::size_t col, std::int64_t e) { T.texp_[row * D + col] = mod_pos(e, N); };

  if (T.bc_.kind == BCCase::SplitBC) {
    set(0, 0, 0);
    for (std::size_t idx = 1; idx < D; ++idx) set(M.index_of(pair.sigma(M.lambda_of(idx))), idx, 0);
    return T;
  }
  if (pair.ext % 2) throw std::logic_error("cuspidal base change needs an even extension");
  const int n = pair.ext / 2;
  mpz_class qn;
  mpz_ui_pow_ui(qn.get_mpz_t(), static_cast<unsigned long>(pair.q), static_cast<unsigned long>(n));
  T.scale_ = mpq_class(n % 2 ? 1 : -1) / mpq_class(qn);
  const MulChar& chi = M.chi();
  const std::int64_t e_m1 = chi.root_exponent(-pair.GE->tower().one());
  const auto elems = pair.GE->field_elements();
  for (Fq mu : elems) set(M.index_of(mu), 0, 0);
  for (std::size_t idx = 1; idx < D; ++idx) {
    const Fq lam = M.lambda_of(idx);
    set(0, idx, 0);
    for (Fq mu : elems) {
      if (mu == lam) continue;
      set(M.index_of(pair.sigma(mu)), idx, e_m1 + 2 * chi.root_exponent(lam - mu));
    }
  }
  return T;
}

CycNum ShintaniData::entry_value(std::size_t row, std::size_t col) const {
  const std::int64_t N = model_->conductor();
  std::int64_t e = entry(row, col);
  if (e < 0) return CycNum::zero(N);
  return CycNum::root(N, e) * scale_;
}

ModelVec ShintaniData::column(std::size_t col) const {
  ModelVec v(dim_, CycNum::zero(model_->conductor()));
  for (std::size_t row = 0; row < dim_; ++row)
    if (entry(row, col) >= 0) v[row] = entry_value(row, col);
  return v;
}

ModelVec ShintaniData::apply(const RootVec& v) const {
  const std::int64_t N = model_->conductor();
  const mpq_class s = scale_ * v.scale;
  ModelVec out(dim_, CycNum::zero(N));
  for (std::size_t row = 0; row < dim_; ++row) {
    RootAccumulator acc(N);
    bool any = false;
    for (std::size_t col = 0; col < dim_; ++col) {
      std::int64_t e = entry(row, col);
      if (e < 0 || v.exps[col] < 0) continue;
      acc.add(e + v.exps[col]);
      any = true;
    }
    if (any) out[row] = acc.value_in(N) * s;
  }
  return out;
}

ModelVec ShintaniData::apply(const ModelVec& v) const {
  const std::int64_t N = model_->conductor();
  ModelVec out(dim_, CycNum::zero(N));
  for (std::size_t col = 0; col < dim_; ++col) {
    if (v[col].is_zero()) continue;
    for (std::size_t row = 0; row < dim_; ++row) {
      std::int64_t e = entry(row, col);
      if (e >= 0) out[row] += v[col].mul_root(e);
    }
  }
  for (auto& x : out) x = x * scale_;
  return out;
}

RootVec ShintaniData::vH_roots() const {
  const InducedModel& M = *model_;
  const std::int64_t N = M.conductor();
  RootVec v;
  v.scale = mpq_class(1, N);
  v.exps.assign(dim_, -1);
  for (std::size_t idx = 2; idx < dim_; ++idx) v.exps[idx] = mod_pos(-M.chi().root_exponent(M.lambda_of(idx)), N);
  return v;
}

RootVec ShintaniData::vK_roots(Fq beta) const {
  const InducedModel& M = *model_;
  RootVec v;
  v.scale = mpq_class(1, pair_.Q + 1);
  v.exps.assign(dim_, -1);
  v.exps[0] = 0;
  for (std::size_t idx = 1; idx < dim_; ++idx) {
    Fq lam = M.lambda_of(idx);
    v.exps[idx] = M.chi().root_exponent((beta - lam * lam).inv());
  }
  return v;
}

// ---- checks --------------------------------------------------------------------

IntertwiningReport intertwining_check(const ShintaniData& T, std::optional<bool> via_act) {
  const InducedModel& M = T.model();
  const std::size_t D = T.dim();
  const std::int64_t N = M.conductor();
  IntertwiningReport rep;
  rep.via_act = via_act.value_or(D <= 82);
  const auto gens = T.pair().generators();
  rep.generators = gens.size();
  for (const auto& [name, h] : gens) {
    // pi(g) T = T pi(h) with g = h^sigma
    const PGL2Elem g = T.pair().sigma(h);
    const PGL2Elem& gs = h;
    if (rep.via_act) {
      for (std::size_t b = 0; b < D; ++b) {
        ModelVec lhs = M.act(g, T.column(b));
        auto m = M.basis_action(gs, b);
        ModelVec rhs = T.column(m.target);
        for (auto& x : rhs) x = x.mul_root(m.exponent);
        if (!vec_eq(lhs, rhs)) {
          rep.ok = false;
          rep.witness = name + " column " + std::to_string(b);
          return rep;
        }
      }
      continue;
    }
    std::vector<InducedModel::Monomial> ag(D), ags(D);
    for (std::size_t i = 0; i < D; ++i) {
      ag[i] = M.basis_action(g, i);
      ags[i] = M.basis_action(gs, i);
    }
    for (std::size_t b = 0; b < D; ++b)
      for (std::size_t a = 0; a < D; ++a) {
        const std::size_t row = ag[a].target;
        std::int64_t e = T.entry(a, b);
        std::int64_t lhs = e < 0 ? -1 : mod_pos(e + ag[a].exponent, N);
        std::int64_t t = T.entry(row, ags[b].target);
        std::int64_t rhs = t < 0 ? -1 : mod_pos(t + ags[b].exponent, N);
        if (lhs != rhs) {
          rep.ok = false;
          rep.witness = name + " entry (" + std::to_string(row) + "," + std::to_string(b) + ")";
          return rep;
        }
      }
  }
  return rep;
}

UnitarityReport unitarity_check(const ShintaniData& T, std::size_t max_dim) {
  const std::size_t D = T.dim();
  const std::int64_t N = T.model().conductor();
  UnitarityReport rep;
  for (std::size_t i = 0; i < D && rep.self_adjoint; ++i)
    for (std::size_t j = 0; j < D; ++j) {
      std::int64_t a = T.entry(i, j), b = T.entry(j, i);
      if ((a < 0) != (b < 0) || (a >= 0 && mod_pos(a + b, N) != 0)) {
        rep.self_adjoint = false;
        break;
      }
    }
  const mpq_class s2 = T.scale() * T.scale();
  auto check_pair = [&](std::size_t i, std::size_t j) {
    ++rep.pairs_checked;
    if (i == j) {
      std::int64_t count = 0;
      for (std::size_t r = 0; r < D; ++r) count += T.entry(r, i) >= 0;
      if (s2 * count != 1) {
        rep.form_preserving = false;
        rep.witness = "norm of column " + std::to_string(i);
      }
      return;
    }
    RootAccumulator acc(N);
    for (std::size_t r = 0; r < D; ++r) {
      std::int64_t a = T.entry(r, i), b = T.entry(r, j);
      if (a >= 0 && b >= 0) acc.add(a - b);
    }
    if (!acc.value().is_zero()) {
      rep.form_preserving = false;
      rep.witness = "columns " + std::to_string(i) + "," + std::to_string(j);
    }
  };
  if (D <= max_dim) {
    for (std::size_t i = 0; i < D && rep.form_preserving; ++i)
      for (std::size_t j = i; j < D && rep.form_preserving; ++j) check_pair(i, j);
    return rep;
  }
  rep.exhaustive = false;
  for (std::size_t i = 0; i < D && rep.form_preserving; ++i) {
    check_pair(i, i);
    if (i) check_pair(0, i);
  }
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<std::size_t> pick(1, D - 1);
  for (int k = 0; k < 4096 && rep.form_preserving; ++k) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i != j) check_pair(i, j);
  }
  return rep;
}

InvariantsReport effect_on_invariants(const ShintaniData& T) {
  const InducedModel& M = T.model();
  const ShintaniPair& P = T.pair();
  const Fq alpha = P.GE->alpha();
  const Fq alpha_s = P.sigma(alpha);
  InvariantsReport rep;
  RootVec h = T.vH_roots(), k = T.vK_roots(alpha);
  const ModelVec vH = M.vH(), vK = M.vK(), vKs = M.vK_with(alpha_s);
  const std::int64_t N = M.conductor();
  rep.vectors_match_model = vec_eq(h.to_model(N), vH) && vec_eq(k.to_model(N), vK) &&
                            vec_eq(T.vK_roots(alpha_s).to_model(N), vKs);
  rep.lambda = T.base_change().kind == BCCase::SplitBC ? CycNum::one(N) : -M.chi().evaluate(alpha.inv());
  rep.tvh = vec_eq(T.apply(h), vH);
  ModelVec expect = vKs;
  for (auto& x : expect) x = x * rep.lambda;
  rep.tvk = vec_eq(T.apply(k), expect);
  return rep;
}

bool SignReport::ok() const {
  return eps_agree && case1_bookkeeping && sigma_identity && form_identity && factor_is_eps && vanishing_ok;
}

SignReport sign_check(const ShintaniData& T, const PairCounts& counts_E, const InvariantsReport& inv) {
  const InducedModel& M = T.model();
  const ShintaniPair& P = T.pair();
  const BaseChange& bc = T.base_change();
  const PGL2& GF = *P.GF;
  const MulChar& chi = M.chi();
  const std::int64_t N = M.conductor();
  const std::int64_t q = P.q;
  const Fq alpha = P.GE->alpha();
  SignReport rep;
  rep.kind = bc.kind;
  rep.tau = *bc.tau;
  rep.eps_direct = epsilon(GF, rep.tau, EpsMethod::HSum);
  rep.eps_closed = epsilon(GF, rep.tau, EpsMethod::Closed);
  rep.eps_norm = epsilon_from_delta(GF, rep.tau, alpha.pow((P.Q - 1) / (q - 1)));
  const std::int64_t e_half = chi.root_exponent(alpha.pow((q - 1) / 2));
  if (bc.kind == BCCase::SplitBC) {
    rep.eps_proof = sign_of_exponent(bc.chi0->root_exponent(-P.GE->tower().one()), bc.chi0->order);
    rep.case1_bookkeeping = sign_of_exponent(e_half, N) == rep.eps_proof;
  } else {
    rep.eps_proof = -sign_of_exponent(chi.root_exponent(alpha.pow((q + 1) / 2)), N);
  }
  rep.eps_agree = rep.eps_direct == rep.eps_closed && rep.eps_closed == rep.eps_norm && rep.eps_norm == rep.eps_proof;

  const ModelVec vH = M.vH(), vK = M.vK(), vKs = M.vK_with(P.sigma(alpha));
  const CycNum chi_half = CycNum::root(N, e_half);
  rep.inner = M.inner(vH, vK);
  rep.sigma_identity = M.inner(vH, vKs) == chi_half * rep.inner;
  rep.form_identity = M.inner(T.apply(T.vH_roots()), T.apply(T.vK_roots(alpha))) == rep.inner;
  rep.factor_is_eps = inv.lambda.conj() * chi_half == CycNum::rational(rep.eps_direct, N);
  const std::int64_t r = std::min(chi.exponent, N - chi.exponent);
  rep.constant = raw_correlation(*P.GE, counts_E, RepLabel::ps(r));
  if (rep.eps_direct == -1) rep.vanishing_ok = rep.inner.is_zero() && rep.constant.is_zero();
  return rep;
}

UniquenessReport uniqueness_check(const ShintaniData& T) {
  const InducedModel& M = T.model();
  const std::size_t D = T.dim();
  const std::int64_t N = M.conductor();
  struct Gen {
    std::vector<InducedModel::Monomial> g, gs;
  };
  std::vector<Gen> gens;
  for (const auto& [name, h] : T.pair().generators()) {
    Gen x;
    const PGL2Elem g = T.pair().sigma(h);
    const PGL2Elem& gs = h;
    for (std::size_t i = 0; i < D; ++i) {
      x.g.push_back(M.basis_action(g, i));
      x.gs.push_back(M.basis_action(gs, i));
    }
    gens.push_back(std::move(x));
  }
  // X_{ga, hb} = zeta^{x_g(a) - x_h(b)} X_{a,b} with g = h^sigma; a potential on each
  // orbit of index pairs either exists (one free scalar) or forces the orbit to 0.
  std::vector<std::int64_t> pot(D * D, -1);
  std::vector<std::int32_t> comp(D * D, -1);
  std::vector<bool> consistent;
  for (std::size_t s = 0; s < D * D; ++s) {
    if (comp[s] >= 0) continue;
    const auto id = static_cast<std::int32_t>(consistent.size());
    bool good = true;
    std::deque<std::size_t> queue{s};
    comp[s] = id;
    pot[s] = 0;
    while (!queue.empty()) {
      std::size_t node = queue.front();
      queue.pop_front();
      std::size_t a = node / D, b = node % D;
      for (const auto& x : gens) {
        std::size_t next = x.g[a].target * D + x.gs[b].target;
        std::int64_t e = mod_pos(pot[node] + x.g[a].exponent - x.gs[b].exponent, N);
        if (comp[next] < 0) {
          comp[next] = id;
          pot[next] = e;
          queue.push_back(next);
        } else if (pot[next] != e) {
          good = false;
        }
      }
    }
    consistent.push_back(good);
  }
  UniquenessReport rep;
  rep.orbits = consistent.size();
  for (bool c : consistent) rep.solution_dim += c;
  // T must be supported on exactly one consistent orbit and follow its potential there.
  std::size_t first = 0;
  while (first < D * D && T.entry(first / D, first % D) < 0) ++first;
  if (first == D * D) return rep;
  const std::int32_t support = comp[first];
  const std::int64_t offset = mod_pos(T.entry(first / D, first % D) - pot[first], N);
  bool fits = consistent[support];
  for (std::size_t node = 0; node < D * D && fits; ++node) {
    std::int64_t e = T.entry(node / D, node % D);
    if (comp[node] != support)
      fits = e < 0;
    else
      fits = e >= 0 && mod_pos(e - pot[node], N) == offset;
  }
  rep.t_spans = fits;
  return rep;
}

// ---- per-representation report -------------------------------------------------

bool ShintaniReport::ok() const {
  if (bc.kind == BCCase::NotBC) return true;
  return intertwining && intertwining->ok && unitarity && unitarity->form_preserving && invariants &&
         invariants->vectors_match_model && invariants->tvh && invariants->tvk && sign && sign->ok() &&
         uniqueness && uniqueness->ok();
}

ShintaniReport shintani_report(const ShintaniPair& pair, const PairCounts& counts_E, std::int64_t r) {
  ShintaniReport rep;
  rep.rep = RepLabel::ps(r);
  rep.bc = base_change_class(MulChar::make(pair.GE->tower(), pair.GE->f(), r), pair.q);
  if (rep.bc.kind == BCCase::NotBC) return rep;
  ShintaniData T = ShintaniData::build(pair, r);
  rep.intertwining = intertwining_check(T);
  rep.unitarity = unitarity_check(T);
  rep.invariants = effect_on_invariants(T);
  rep.sign = sign_check(T, counts_E, *rep.invariants);
  rep.uniqueness = uniqueness_check(T);
  return rep;
}

nlohmann::json ShintaniReport::to_json() const {
  nlohmann::json j;
  j["rep"] = rep.to_string();
  j["case"] = to_string(bc.kind);
  j["ok"] = ok();
  if (bc.kind == BCCase::NotBC) return j;
  j["tau"] = bc.tau->to_string();
  if (intertwining)
    j["intertwining"] = {{"ok", intertwining->ok}, {"via_act", intertwining->via_act},
                         {"generators", intertwining->generators}, {"witness", intertwining->witness}};
  if (unitarity)
    j["unitarity"] = {{"form_preserving", unitarity->form_preserving}, {"self_adjoint", unitarity->self_adjoint},
                      {"pairs_checked", unitarity->pairs_checked}, {"exhaustive", unitarity->exhaustive}};
  if (invariants)
    j["invariants"] = {{"vectors_match_model", invariants->vectors_match_model}, {"T_vH", invariants->tvh},
                       {"T_vK", invariants->tvk}, {"lambda", invariants->lambda.to_string()}};
  if (sign)
    j["sign"] = {{"eps_tau", sign->eps_direct},
                     {"eps_closed", sign->eps_closed},
                     {"eps_norm", sign->eps_norm},
                     {"eps_proof", sign->eps_proof},
                     {"eps_agree", sign->eps_agree},
                     {"sigma_identity", sign->sigma_identity},
                     {"form_identity", sign->form_identity},
                     {"factor_is_eps", sign->factor_is_eps},
                     {"inner", sign->inner.to_string()},
                     {"constant", sign->constant.to_string()},
                     {"vanishing_ok", sign->vanishing_ok},
                     {"ok", sign->ok()}};
  if (uniqueness)
    j["uniqueness"] = {{"orbits", uniqueness->orbits}, {"solution_dim", uniqueness->solution_dim},
                       {"T_spans", uniqueness->t_spans}};
  return j;
}

// ---- character sums ------------------------------------------------------------

std::vector<MulChar> twisted_characters(const FieldTower& tower, int f_base, int n) {
  const int d = 2 * f_base * n;
  const std::int64_t q = fp::ipow(tower.characteristic(), f_base);
  const std::int64_t N = fp::ipow(tower.characteristic(), d) - 1;
  std::vector<MulChar> out;
  for (std::int64_t k = 0; k <= q; ++k) out.push_back(MulChar::make(tower, d, k * (N / (q + 1))));
  return out;
}

CycNum charsum_reciprocal(const MulChar& chi) {
  const FieldTower& t = *chi.tower;
  RootAccumulator acc(chi.order);
  for (Fq lam : t.subfield_elements(chi.degree)) {
    if (lam.is_zero() || lam == t.one()) continue;
    acc.add(chi.root_exponent(lam - t.from_int(2) + lam.inv()));
  }
  return acc.value();
}

CycNum charsum_odd_powers(const MulChar& chi, Fq alpha) {
  const FieldTower& t = *chi.tower;
  RootAccumulator acc(chi.order);
  for (std::int64_t i = 1; i <= chi.order; ++i) acc.add(chi.root_exponent(t.one() - alpha.pow(2 * i - 1)));
  return acc.value();
}

CycNum gauss_bridge(const MulChar& chi, const AddChar& psi) {
  const FieldTower& t = *chi.tower;
  const std::int64_t p = t.characteristic();
  const std::int64_t N = chi.order;
  RootAccumulator acc(N * p);
  const auto elems = t.subfield_elements(chi.degree);
  for (Fq lam : elems) {
    const std::int64_t e_lam = psi.root_exponent(lam);
    for (Fq x : elems) {
      if (x == lam) continue;
      acc.add((e_lam - psi.root_exponent(x)) * N + 2 * chi.root_exponent(x - lam) * p);
    }
  }
  return acc.value() / mpq_class(static_cast<long>(elems.size()));
}

bool LemmaReport::ok() const {
  for (const auto& r : rows)
    if (!r.ok) return false;
  return !rows.empty();
}

nlohmann::json LemmaReport::to_json() const {
  nlohmann::json j;
  j["q"] = q;
  j["n"] = n;
  j["ok"] = ok();
  for (const auto& r : rows)
    j["rows"].push_back({{"j", r.j},
                         {"kind", r.kind},
                         {"reciprocal_sum", r.recip.to_string()},
                         {"odd_power_sum", r.odd_pow.to_string()},
                         {"bridge", r.bridge.to_string()},
                         {"gauss", r.gauss.to_string()},
                         {"ok", r.ok}});
  return j;
}

LemmaReport lemma_check(std::int64_t p, int f_base, int n) {
  auto tower = FieldTower::build(p, 2 * f_base * n);
  const int d = 2 * f_base * n;
  LemmaReport rep;
  rep.q = fp::ipow(p, f_base);
  rep.n = n;
  mpz_class qn;
  mpz_ui_pow_ui(qn.get_mpz_t(), static_cast<unsigned long>(rep.q), static_cast<unsigned long>(n));
  const mpq_class sgn(n % 2 ? 1 : -1);  // (-1)^{n-1}
  const mpq_class closed_recip = sgn * mpq_class(qn);
  const mpq_class closed_odd = -1 - sgn * mpq_class(qn);
  const Fq alpha = tower->subfield_generator(d);
  const AddChar psi = AddChar::make(*tower, d);
  const std::int64_t E = tower->size();
  for (const MulChar& chi : twisted_characters(*tower, f_base, n)) {
    LemmaRow row;
    row.j = chi.exponent;
    row.recip = charsum_reciprocal(chi);
    row.odd_pow = charsum_odd_powers(chi, alpha);
    row.bridge = gauss_bridge(chi, psi);
    row.gauss = gauss_sum(chi.pow(2), psi);
    auto is = [](const CycNum& z, const mpq_class& v) { return z == CycNum::rational(v); };
    if (chi.is_trivial()) {
      row.kind = "trivial";
      row.ok = is(row.recip, E - 2) && is(row.odd_pow, E - 1) && is(row.bridge, -1) && is(row.gauss, -1);
    } else if (chi.pow(2).is_trivial()) {
      // eta(1-x) over non-squares x: sum over all x is -1, over squares also -1.
      row.kind = "quadratic";
      row.ok = is(row.recip, -1) && is(row.odd_pow, 0) && is(row.bridge, -1) && is(row.gauss, -1);
    } else {
      row.kind = "generic";
      row.ok = is(row.recip, closed_recip) && is(row.odd_pow, closed_odd) && is(row.bridge, closed_recip) && is(row.gauss, closed_recip);
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

// ---- norm map ------------------------------------------------------------------

PGL2Elem shintani_norm(const ShintaniPair& pair, const PGL2Elem& g) {
  PGL2Elem acc = g, cur = g;
  for (int i = 1; i < pair.ext; ++i) {
    cur = pair.sigma(cur);
    acc = pair.GE->mul(acc, cur);
  }
  return acc;
}

bool norm_map_check(const ShintaniPair& pair, const PGL2Elem& g) {
  PGL2Elem n = shintani_norm(pair, g);
  Fq tr = n.trace();
  Fq x = tr * tr / n.det();
  return pair.GE->tower().in_subfield(x, pair.f_base);
}

NormMapReport norm_map_sweep(const ShintaniPair& pair, std::size_t sample, std::uint64_t seed) {
  NormMapReport rep;
  const PGL2& G = *pair.GE;
  auto check = [&](const PGL2Elem& g) {
    ++rep.checked;
    if (rep.ok && !norm_map_check(pair, g)) {
      rep.ok = false;
      rep.witness = G.elem_to_string(g);
    }
  };
  if (G.order() <= 20000) {
    rep.exhaustive = true;
    for (const auto& g : G.all_elements()) check(g);
    return rep;
  }
  const auto elems = G.field_elements();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
  while (rep.checked < sample) {
    Fq a = elems[pick(rng)], b = elems[pick(rng)], c = elems[pick(rng)], d = elems[pick(rng)];
    if ((a * d - b * c).is_zero()) continue;
    check(G.make(a, b, c, d));
  }
  return rep;
}

// ---- suite ---------------------------------------------------------------------

bool ShintaniSuiteReport::ok() const {
  for (const auto& r : reps)
    if (!r.ok()) return false;
  return norm.ok && (!lemmas || lemmas->ok());
}

nlohmann::json ShintaniSuiteReport::to_json() const {
  nlohmann::json j;
  j["p"] = p;
  j["f_base"] = f_base;
  j["ext"] = ext;
  j["ok"] = ok();
  j["not_bc"] = not_bc;
  j["reps"] = nlohmann::json::array();
  for (const auto& r : reps) j["reps"].push_back(r.to_json());
  j["norm_map"] = {{"checked", norm.checked}, {"exhaustive", norm.exhaustive}, {"ok", norm.ok}, {"witness", norm.witness}};
  if (lemmas) j["lemmas"] = lemmas->to_json();
  return j;
}

ShintaniSuiteReport shintani_suite(std::int64_t p, int f_base, int ext, std::int64_t table_cap) {
  ShintaniSuiteReport rep;
  rep.p = p;
  rep.f_base = f_base;
  rep.ext = ext;
  const ShintaniPair pair = ShintaniPair::build(p, f_base, ext, table_cap);
  const PairCounts counts = pair_class_counts(*pair.GE);
  for (std::int64_t r = 1; r <= (pair.Q - 3) / 2; ++r) {
    ShintaniReport one = shintani_report(pair, counts, r);
    if (one.bc.kind == BCCase::NotBC)
      ++rep.not_bc;
    else
      rep.reps.push_back(std::move(one));
  }
  rep.norm = norm_map_sweep(pair);
  if (ext % 2 == 0) rep.lemmas = lemma_check(p, f_base, ext / 2);
  return rep;
}

}  // namespace toric
