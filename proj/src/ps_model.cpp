#include "toric/ps_model.hpp"

#include <stdexcept>

namespace toric {

InducedModel::InducedModel(std::shared_ptr<const PGL2> G, std::int64_t j)
    : G_(std::move(G)), chi_(MulChar::make(G_->tower(), G_->f(), j)) {
  if (chi_.pow(2).is_trivial()) throw std::invalid_argument("Ps(chi, chi^-1) needs chi^2 nontrivial");
}

std::size_t InducedModel::index_of(Fq lambda) const {
  if (lambda.is_zero()) return 1;
  return static_cast<std::size_t>(2 + G_->log_q(lambda));
}

Fq InducedModel::lambda_of(std::size_t idx) const {
  if (idx == 0) throw std::invalid_argument("f has no lambda");
  if (idx == 1) return G_->tower().zero();
  return G_->gen_q().pow(static_cast<std::int64_t>(idx - 2));
}

PGL2Elem InducedModel::coset_rep(std::size_t idx) const {
  if (idx == 0) return G_->identity();
  return G_->mul(G_->weyl(), G_->upper(lambda_of(idx)));
}

InducedModel::Monomial InducedModel::basis_action(const PGL2Elem& g, std::size_t idx) const {
  // pi(g) f_y = mu(b)^-1 f_{y'} where y g^-1 = b y' (Bruhat), mu((x *; 0 z)) = chi(x/z).
  PGL2Elem m = G_->mul(coset_rep(idx), G_->inverse(g));
  const std::int64_t k = conductor();
  if (m.c.is_zero()) {
    std::int64_t e = chi_.root_exponent(m.a / m.d);
    return {0, (k - e) % k};
  }
  Fq lam = m.d / m.c;
  std::int64_t e = chi_.root_exponent(-m.det() / (m.c * m.c));
  return {index_of(lam), (k - e) % k};
}

ModelVec InducedModel::act(const PGL2Elem& g, const ModelVec& v) const {
  ModelVec out = zero();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    auto mono = basis_action(g, i);
    out[mono.target] += v[i].mul_root(mono.exponent);
  }
  return out;
}

ModelVec InducedModel::zero() const { return ModelVec(dim(), CycNum::zero(conductor())); }

ModelVec InducedModel::basis(std::size_t idx) const {
  ModelVec v = zero();
  v.at(idx) = CycNum::one(conductor());
  return v;
}

CycNum InducedModel::inner(const ModelVec& v, const ModelVec& w) const {
  CycNum s = CycNum::zero(conductor());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero() && !w[i].is_zero()) s += v[i] * w[i].conj();
  return s;
}

ModelVec InducedModel::vH() const {
  ModelVec v = zero();
  mpq_class w(1, G_->q() - 1);
  for (Fq lam : G_->field_elements())
    if (!lam.is_zero()) v[index_of(lam)] = chi_.inverse().evaluate(lam) * w;
  return v;
}

ModelVec InducedModel::vK_with(Fq beta) const {
  if (G_->tower().is_square_in(beta, G_->f())) throw std::invalid_argument("v_K needs a non-square");
  ModelVec v = zero();
  mpq_class w(1, G_->q() + 1);
  v[0] = CycNum::rational(w, conductor());
  for (Fq lam : G_->field_elements()) v[index_of(lam)] = chi_.evaluate((beta - lam * lam).inv()) * w;
  return v;
}

CycNum InducedModel::S_with(Fq beta) const {
  RootAccumulator acc(conductor());
  for (Fq lam : G_->field_elements())
    if (!lam.is_zero()) acc.add(chi_.root_exponent(beta / lam - lam));
  return acc.value_in(conductor());
}

CycNum InducedModel::c_model() const {
  std::int64_t q = G_->q();
  return S().abs2() / mpq_class(q * q - 1);
}

CycNum InducedModel::normalized_ratio() const {
  ModelVec h = vH(), k = vK();
  CycNum ip = inner(h, k);
  auto nh = inner(h, h).as_rational(), nk = inner(k, k).as_rational();
  if (!nh || !nk) throw std::logic_error("model norms are not rational");
  return ip.abs2() / (*nh * *nk);
}

bool InducedModel::fixed_by(const std::vector<PGL2Elem>& gens, const ModelVec& v) const {
  for (const auto& g : gens)
    if (act(g, v) != v) return false;
  return true;
}

ScalingReport scaling_and_sigma_checks(const InducedModel& M, std::int64_t q_sub) {
  ScalingReport rep;
  const PGL2& G = M.group();
  const FieldTower& t = G.tower();
  ModelVec h = M.vH();
  CycNum base = M.inner(h, M.vK());
  for (Fq a : G.field_elements()) {
    if (a.is_zero() || !G.generates_nonsplit_torus(G.alpha() * a * a)) continue;
    ++rep.scalings_checked;
    CycNum lhs = M.inner(h, M.vK_a(a));
    if (lhs != M.chi().evaluate(a) * base) {
      rep.scaling_ok = false;
      if (rep.witness.empty()) rep.witness = "scaling by " + t.to_string(a);
    }
  }
  // K^sigma is the torus for alpha^sigma = alpha * (alpha^{(q_sub-1)/2})^2.
  Fq a = G.alpha().pow((q_sub - 1) / 2);
  Fq alpha_sigma = G.alpha().pow(q_sub);
  CycNum lhs = M.inner(h, M.vK_with(alpha_sigma));
  if (alpha_sigma != G.alpha() * a * a || lhs != M.chi().evaluate(a) * base) {
    rep.sigma_ok = false;
    if (rep.witness.empty()) rep.witness = "sigma twist";
  }
  return rep;
}

CycNum bessel(const PGL2& G, const RepLabel& r, const PGL2Elem& g, const AddChar& psi) {
  if (r.kind == RepKind::Trivial || r.kind == RepKind::Eta) throw std::invalid_argument("bessel needs a generic representation");
  const std::int64_t M = G.table_modulus();
  const std::int64_t p = G.p();
  const std::size_t ri = G.rep_index(r);
  RootAccumulator acc(M * p);
  for (Fq b : G.field_elements()) {
    std::int64_t add = (p - psi.root_exponent(b)) % p;
    const RootSum& val = G.entry(ri, G.class_index_of(G.mul(g, G.upper(b))));
    for (auto [e, c] : val.terms) acc.add(e * p + add * M, c);
  }
  return acc.value_in(M * p) / mpq_class(G.q());
}

}  // namespace toric
