#include "toric/sympow.hpp"

#include <map>
#include <stdexcept>

#include "toric/modp.hpp"

namespace toric {

namespace {

std::int64_t mod_pos(std::int64_t a, std::int64_t n) {
  a %= n;
  return a < 0 ? a + n : a;
}

std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t n) {
  std::int64_t r = 1 % n;
  b = mod_pos(b, n);
  while (e > 0) {
    if (e & 1) r = static_cast<std::int64_t>(static_cast<__int128>(r) * b % n);
    b = static_cast<std::int64_t>(static_cast<__int128>(b) * b % n);
    e >>= 1;
  }
  return r;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(FqMat& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t piv = row;
    while (piv < rows && m[piv][col].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[row]);
    Fq inv = m[row][col].inv();
    for (auto& x : m[row]) x = x * inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      Fq c = m[r][col];
      for (std::size_t k = col; k < cols; ++k) m[r][k] = m[r][k] - c * m[row][k];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

FqMat mat_mul(const FqMat& a, const FqMat& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  const Fq zero = a[0][0] - a[0][0];
  FqMat out(n, FqVec(m, zero));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!b[l][j].is_zero()) out[i][j] = out[i][j] + a[i][l] * b[l][j];
    }
  return out;
}

// Coefficients of (u x + w y)^e, indexed by the power of y.
std::vector<FqVec> linear_form_powers(Fq u, Fq w, int e, const FieldTower& T) {
  std::vector<FqVec> out(e + 1);
  out[0] = {T.one()};
  for (int k = 1; k <= e; ++k) {
    FqVec next(k + 1, T.zero());
    for (int j = 0; j < k; ++j) {
      next[j] = next[j] + out[k - 1][j] * u;
      next[j + 1] = next[j + 1] + out[k - 1][j] * w;
    }
    out[k] = std::move(next);
  }
  return out;
}

Fq binom_fq(const FieldTower& T, std::int64_t n, std::int64_t k) {
  return T.from_int(lucas_binom(n, k, T.characteristic()));
}

}  // namespace

std::size_t fq_rank(FqMat m) { return rref(m).size(); }

std::vector<FqVec> fq_nullspace(FqMat m) {
  std::vector<FqVec> out;
  if (m.empty()) return out;
  const std::size_t cols = m[0].size();
  auto pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  const Fq zero = m[0][0] - m[0][0];
  const Fq one = zero.tower()->one();
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    FqVec v(cols, zero);
    v[free] = one;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    out.push_back(std::move(v));
  }
  return out;
}

// ---- SymRep -----------------------------------------------------------------

SymRep::SymRep(std::shared_ptr<const PGL2> G, std::vector<SymFactor> factors, std::int64_t twist)
    : G_(std::move(G)), factors_(std::move(factors)), twist_(twist) {
  const std::int64_t q = G_->q(), p = G_->p();
  if (static_cast<int>(factors_.size()) != G_->f()) throw std::invalid_argument("need one symmetric factor per Frobenius twist");
  std::int64_t pi = 1, det = twist_, central = 0;
  for (const auto& fac : factors_) {
    if (fac.n < 0) throw std::invalid_argument("negative symmetric power");
    det = mod_pos(det + fac.m % (q - 1) * pi, q - 1);
    central = mod_pos(central + fac.n % (q - 1) * pi, q - 1);
    pi = pi * p % (q - 1);
  }
  det_exp_ = mod_pos(det, q - 1);
  if (mod_pos(central + 2 * det_exp_, q - 1) != 0) throw std::invalid_argument("scalars act nontrivially; not a PGL2 representation");
  stride_.resize(factors_.size());
  dim_ = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    stride_[i] = dim_;
    dim_ *= static_cast<std::size_t>(factors_[i].n + 1);
  }
}

SymRep SymRep::from_digits(std::shared_ptr<const PGL2> G, const std::vector<std::int64_t>& digits) {
  if (static_cast<int>(digits.size()) != G->f()) throw std::invalid_argument("digit count must equal f");
  std::vector<SymFactor> fs;
  for (auto r : digits) {
    if (r < 0 || r > G->p() - 1) throw std::invalid_argument("digit out of range");
    fs.push_back({static_cast<int>(2 * r), -r});
  }
  return SymRep(std::move(G), std::move(fs), 0);
}

std::size_t SymRep::index_of(const std::vector<int>& k) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < k.size(); ++i) idx += static_cast<std::size_t>(k[i]) * stride_[i];
  return idx;
}

FqVec SymRep::zero() const { return FqVec(dim_, G_->tower().zero()); }

FqMat SymRep::factor_matrix(std::size_t i, const PGL2Elem& g) const {
  const FieldTower& T = G_->tower();
  const int n = factors_[i].n;
  const int e = static_cast<int>(i);
  Fq a = T.frobenius(g.a, e), b = T.frobenius(g.b, e), c = T.frobenius(g.c, e), d = T.frobenius(g.d, e);
  auto P = linear_form_powers(a, c, n, T);
  auto Q = linear_form_powers(b, d, n, T);
  FqMat M(n + 1, FqVec(n + 1, T.zero()));
  for (int k = 0; k <= n; ++k) {
    const FqVec& u = P[n - k];
    const FqVec& w = Q[k];
    for (std::size_t s = 0; s < u.size(); ++s) {
      if (u[s].is_zero()) continue;
      for (std::size_t t = 0; t < w.size(); ++t) M[s + t][k] = M[s + t][k] + u[s] * w[t];
    }
  }
  return M;
}

FqVec SymRep::act(const PGL2Elem& g, const FqVec& v) const {
  FqVec cur = v;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const std::size_t len = static_cast<std::size_t>(factors_[i].n + 1);
    if (len == 1) continue;
    FqMat M = factor_matrix(i, g);
    FqVec next = zero();
    for (std::size_t idx = 0; idx < dim_; ++idx) {
      if (cur[idx].is_zero()) continue;
      std::size_t k = (idx / stride_[i]) % len;
      std::size_t base = idx - k * stride_[i];
      for (std::size_t j = 0; j < len; ++j)
        if (!M[j][k].is_zero()) next[base + j * stride_[i]] = next[base + j * stride_[i]] + M[j][k] * cur[idx];
    }
    cur = std::move(next);
  }
  if (det_exp_) {
    Fq s = g.det().pow(det_exp_);
    for (auto& x : cur) x = x * s;
  }
  return cur;
}

FqMat SymRep::matrix(const PGL2Elem& g) const {
  FqMat M(dim_, zero());
  for (std::size_t j = 0; j < dim_; ++j) {
    FqVec e = zero();
    e[j] = G_->tower().one();
    FqVec col = act(g, e);
    for (std::size_t i = 0; i < dim_; ++i) M[i][j] = col[i];
  }
  return M;
}

FqVec SymRep::average(const std::vector<PGL2Elem>& S, const FqVec& v) const {
  FqVec acc = zero();
  for (const auto& s : S) {
    FqVec w = act(s, v);
    for (std::size_t i = 0; i < dim_; ++i) acc[i] = acc[i] + w[i];
  }
  Fq inv = G_->from_int(static_cast<std::int64_t>(S.size())).inv();
  for (auto& x : acc) x = x * inv;
  return acc;
}

FqMat SymRep::averaging_matrix(const std::vector<PGL2Elem>& S) const {
  FqMat M(dim_, zero());
  for (std::size_t j = 0; j < dim_; ++j) {
    FqVec e = zero();
    e[j] = G_->tower().one();
    FqVec col = average(S, e);
    for (std::size_t i = 0; i < dim_; ++i) M[i][j] = col[i];
  }
  return M;
}

std::pair<std::int64_t, std::int64_t> eigen_logs(const PGL2& G, const PGL2Elem& g) {
  const FieldTower& T = G.tower();
  const int f2 = 2 * G.f();
  Fq tr = g.trace(), det = g.det();
  Fq disc = tr * tr - G.from_int(4) * det;
  if (disc.is_zero()) {
    if (g.b.is_zero() && g.c.is_zero() && g.a == g.d) {
      std::int64_t l = T.subfield_log(g.a, f2);
      return {l, l};
    }
    throw std::domain_error("element is unipotent, not p-regular");
  }
  if (disc.log() % 2) throw std::logic_error("discriminant has no square root in the tower");
  Fq s = T.from_log(disc.log() / 2);
  Fq half = G.from_int(2).inv();
  Fq x = (tr + s) * half, y = (tr - s) * half;
  return {T.subfield_log(x, f2), T.subfield_log(y, f2)};
}

RootSum SymRep::brauer(const PGL2Elem& g) const {
  const std::int64_t M = G_->table_modulus();
  auto [ex, ey] = eigen_logs(*G_, g);
  std::map<std::int64_t, std::int64_t> cur{{mod_pos(det_exp_ * (ex + ey), M), 1}};
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const std::int64_t pi = pow_mod(G_->p(), static_cast<std::int64_t>(i), M);
    const int n = factors_[i].n;
    std::map<std::int64_t, std::int64_t> next;
    for (const auto& [e, c] : cur)
      for (int k = 0; k <= n; ++k) next[mod_pos(e + pi * ((k * ex + (n - k) * ey) % M), M)] += c;
    cur = std::move(next);
  }
  RootSum out;
  out.modulus = M;
  for (const auto& [e, c] : cur)
    if (c) out.terms.emplace_back(e, c);
  return out;
}

std::int64_t brauer_fixed_dim(const SymRep& rho, const std::vector<PGL2Elem>& S) {
  RootAccumulator acc(rho.group().table_modulus());
  for (const auto& s : S) acc.add(rho.brauer(s));
  auto v = (acc.value() / mpq_class(static_cast<long>(S.size()))).as_rational();
  if (!v || v->get_den() != 1) throw std::logic_error("Brauer average is not an integer");
  return v->get_num().get_si();
}

// ---- fixed vectors, s and t -------------------------------------------------

std::pair<FqVec, FqVec> invariant_vectors(const SymRep& rho, const std::vector<std::int64_t>& digits) {
  const PGL2& G = rho.group();
  const FieldTower& T = G.tower();
  FqVec vH = rho.zero();
  std::vector<int> k(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i) k[i] = static_cast<int>(digits[i]);
  vH[rho.index_of(k)] = T.one();

  // Per factor: (alpha' x^2 - y^2)^r has y^(2j) coefficient C(r, j) alpha'^(r-j) (-1)^j.
  std::vector<FqVec> parts;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const std::int64_t r = digits[i];
    Fq a = T.frobenius(G.alpha(), static_cast<int>(i));
    FqVec part(2 * r + 1, T.zero());
    for (std::int64_t j = 0; j <= r; ++j) {
      Fq c = binom_fq(T, r, j) * a.pow(r - j);
      part[2 * j] = (j % 2) ? -c : c;
    }
    parts.push_back(std::move(part));
  }
  FqVec vK = rho.zero();
  for (std::size_t idx = 0; idx < rho.dim(); ++idx) {
    Fq c = T.one();
    std::size_t rest = idx;
    for (const auto& part : parts) {
      c = c * part[rest % part.size()];
      rest /= part.size();
      if (c.is_zero()) break;
    }
    vK[idx] = c;
  }
  return {vH, vK};
}

namespace {

// Returns (scalar, proportional) with w = scalar * v read at the first nonzero coordinate of v.
std::pair<Fq, bool> ratio(const FqVec& w, const FqVec& v) {
  std::size_t piv = 0;
  while (piv < v.size() && v[piv].is_zero()) ++piv;
  if (piv == v.size()) throw std::invalid_argument("zero vector");
  Fq s = w[piv] / v[piv];
  for (std::size_t i = 0; i < v.size(); ++i)
    if (w[i] != s * v[i]) return {s, false};
  return {s, true};
}

}  // namespace

STReport extract_s_t(const SymRep& rho, const FqVec& vH, const FqVec& vK) {
  const PGL2& G = rho.group();
  STReport out;
  auto [s, sp] = ratio(rho.average(G.H(), vK), vH);
  auto [t, tp] = ratio(rho.average(G.K(), vH), vK);
  out.s = s;
  out.t = t;
  out.s_proportional = sp;
  out.t_proportional = tp;
  out.st = s * t;
  out.st_in_prime_field = G.tower().in_subfield(out.st, 1);
  return out;
}

ClosedST closed_s_t(const PGL2& G, const std::vector<std::int64_t>& digits) {
  const FieldTower& T = G.tower();
  const std::int64_t q = G.q(), p = G.p();
  ClosedST out{T.zero(), T.zero(), 0};
  std::int64_t r = 0;
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (digits[i] % 2) return out;
    r = r * p + digits[i];
  }
  const std::int64_t u = r / 2, w = (q - 1 - r) / 2;
  Fq s = binom_fq(T, r, u) * G.alpha().pow(u);
  out.s = (u % 2) ? -s : s;
  Fq t = binom_fq(T, q - 1 - r, w) * G.alpha().pow(w);
  out.t = (w % 2) ? t : -t;
  out.st = theorem1_prediction(q, p, digits);
  return out;
}

STCheck st_closed_check(std::shared_ptr<const PGL2> G, const std::vector<std::int64_t>& digits, bool ranks) {
  STCheck out;
  out.digits = digits;
  out.wide_H = true;
  for (auto d : digits) {
    out.all_even = out.all_even && d % 2 == 0;
    out.wide_H = out.wide_H && d == G->p() - 1;
  }
  SymRep rho = SymRep::from_digits(G, digits);
  auto [vH, vK] = invariant_vectors(rho, digits);
  out.extracted = extract_s_t(rho, vH, vK);
  out.closed = closed_s_t(*G, digits);
  out.s_match = out.extracted.s == out.closed.s;
  out.t_match = out.extracted.t == out.closed.t;
  out.st_match = out.extracted.st_in_prime_field && G->tower().to_int(out.extracted.st) == out.closed.st;
  if (ranks) {
    FqMat X = rho.averaging_matrix(G->H());
    FqMat Y = rho.averaging_matrix(G->K());
    out.rank_X = fq_rank(X);
    out.rank_Y = fq_rank(Y);
    out.rank_XY = fq_rank(mat_mul(X, Y));
    out.brauer_dim_H = brauer_fixed_dim(rho, G->H());
    out.brauer_dim_K = brauer_fixed_dim(rho, G->K());
    out.ranks_computed = true;
  }
  return out;
}

nlohmann::json STCheck::to_json() const {
  nlohmann::json j;
  j["digits"] = digits;
  j["all_even"] = all_even;
  j["st_extracted"] = extracted.st_in_prime_field ? nlohmann::json(extracted.st.tower()->to_int(extracted.st)) : nlohmann::json(nullptr);
  j["st_closed"] = closed.st;
  j["s_match"] = s_match;
  j["t_match"] = t_match;
  j["st_match"] = st_match;
  j["s_proportional"] = extracted.s_proportional;
  j["t_proportional"] = extracted.t_proportional;
  j["ok"] = ok();
  if (ranks_computed) {
    j["rank_X"] = rank_X;
    j["rank_Y"] = rank_Y;
    j["rank_XY"] = rank_XY;
    j["brauer_dim_H"] = brauer_dim_H;
    j["brauer_dim_K"] = brauer_dim_K;
  }
  return j;
}

// ---- Jordan-Holder constituents ---------------------------------------------

std::int64_t JHConstituent::dimension() const {
  std::int64_t d = 1;
  for (auto x : n) d *= x;
  return d;
}

SymRep JHConstituent::to_rep(std::shared_ptr<const PGL2> G) const {
  std::vector<SymFactor> fs;
  for (std::size_t i = 0; i < n.size(); ++i) fs.push_back({static_cast<int>(n[i] - 1), m[i]});
  return SymRep(std::move(G), std::move(fs), twist);
}

nlohmann::json JHConstituent::to_json() const {
  nlohmann::json j;
  std::vector<int> js;
  for (std::size_t i = 0; i < J.size(); ++i)
    if (J[i]) js.push_back(static_cast<int>(i));
  j["J"] = js;
  j["n"] = n;
  j["m"] = m;
  j["twist"] = twist;
  j["dimension"] = dimension();
  j["flagged"] = flagged;
  return j;
}

bool diamond_eligible(const RepLabel& r) {
  return r.kind == RepKind::PrincipalSeries || r.kind == RepKind::Cuspidal || r.kind == RepKind::SteinbergEta;
}

namespace {

enum class ListKind { PrincipalSeries, Cuspidal };

std::vector<JHConstituent> diamond_list(std::int64_t p, int f, const std::vector<std::int64_t>& R, ListKind kind, std::int64_t twist) {
  std::vector<JHConstituent> out;
  for (std::uint32_t mask = 0; mask < (1u << f); ++mask) {
    JHConstituent c;
    c.J.assign(f, false);
    for (int i = 0; i < f; ++i) c.J[i] = (mask >> i) & 1u;
    c.n.assign(f, 0);
    c.m.assign(f, 0);
    bool keep = true;
    for (int i = 0; i < f; ++i) {
      const bool in = c.J[i];
      const std::int64_t delta = c.J[(i + f - 1) % f] ? 1 : 0;
      if (kind == ListKind::Cuspidal && i == 0) {
        c.n[i] = in ? R[i] + 1 - delta : p - R[i] - 1 + delta;
        c.m[i] = in ? delta : R[i] + 1;
      } else {
        c.n[i] = in ? R[i] + delta : p - R[i] - delta;
        c.m[i] = in ? 0 : R[i] + delta;
      }
      if (c.n[i] < 1 || c.n[i] > p) keep = false;
    }
    if (!keep) continue;
    c.twist = twist;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<std::int64_t> label_digits(const PGL2& G, const RepLabel& r) {
  const std::int64_t q = G.q();
  switch (r.kind) {
    case RepKind::PrincipalSeries: return base_p_digits(r.r, G.p(), G.f());
    case RepKind::SteinbergEta: return base_p_digits((q - 1) / 2, G.p(), G.f());
    case RepKind::Cuspidal: return base_p_digits(r.r - 1, G.p(), G.f());
    default: throw std::invalid_argument("representation has no Jordan-Holder data here");
  }
}

}  // namespace

std::vector<JHConstituent> jh_constituents(const PGL2& G, const RepLabel& r) {
  if (!diamond_eligible(r)) throw std::invalid_argument("jh_constituents: Ps, st-eta or cuspidal only");
  const std::int64_t p = G.p(), q = G.q();
  const int f = G.f();
  std::vector<JHConstituent> out;
  if (r.kind == RepKind::PrincipalSeries) {
    out = diamond_list(p, f, base_p_digits(2 * r.r, p, f), ListKind::PrincipalSeries, -r.r);
  } else if (r.kind == RepKind::SteinbergEta) {
    // Ps(eta, eta) = (1 + St) eta; remove the one-dimensional piece.
    for (auto& c : diamond_list(p, f, base_p_digits(q - 1, p, f), ListKind::PrincipalSeries, -(q - 1) / 2))
      if (c.dimension() != 1) out.push_back(std::move(c));
  } else {
    out = diamond_list(p, f, base_p_digits(2 * r.r - 1, p, f), ListKind::Cuspidal, -r.r);
  }
  auto J = flagged_J(G, r);
  for (auto& c : out) c.flagged = c.J == J;
  return out;
}

std::vector<bool> flagged_J(const PGL2& G, const RepLabel& r) {
  auto digits = label_digits(G, r);
  std::vector<bool> J(digits.size());
  std::int64_t carry = r.kind == RepKind::Cuspidal ? 1 : 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    std::int64_t v = 2 * digits[i] + carry;
    J[i] = v < G.p();
    carry = v >= G.p() ? 1 : 0;
  }
  return J;
}

CycNum brauer_char(const PGL2& G, const JHConstituent& c, const ClassLabel& cls) {
  if (cls.kind == ClassKind::Unipotent) throw std::invalid_argument("Brauer characters live on p-regular classes");
  std::shared_ptr<const PGL2> shared(&G, [](const PGL2*) {});
  SymRep rho = c.to_rep(shared);
  return rho.brauer(G.classes()[G.class_index(cls)].rep).value_in(G.table_modulus());
}

PrimeIdealHandle canonical_prime(const PGL2& G, std::int64_t k) {
  for (const auto& pr : factor_cyclotomic_mod_p(k, G.p()))
    if (residue_log_of_root(G, pr) == 1) return pr;
  throw std::logic_error("no prime sends zeta to the generator");
}

DiamondReport diamond_check(std::shared_ptr<const PGL2> G, const PairCounts& counts, const RepLabel& r) {
  DiamondReport out;
  out.rep = r;
  out.constituents = jh_constituents(*G, r);
  const std::size_t ri = G->rep_index(r);
  const std::int64_t M = G->table_modulus();

  std::vector<SymRep> reps;
  for (const auto& c : out.constituents) reps.push_back(c.to_rep(G));

  // (i) Brauer sum against the ordinary character on p-regular classes.
  for (std::size_t ci = 0; ci < G->classes().size(); ++ci) {
    if (ci == G->unipotent_class()) continue;
    RootAccumulator acc(M);
    for (const auto& rho : reps) acc.add(rho.brauer(G->classes()[ci].rep));
    if (acc.value_in(M) != G->entry(ri, ci).value_in(M)) {
      out.brauer_ok = false;
      out.witness = "Brauer sum differs at " + G->classes()[ci].label.to_string();
      break;
    }
  }

  // (ii) fixed spaces, by Brauer averages and by idempotent rank.
  int h_count = 0, k_count = 0;
  long h_idx = -1, k_idx = -1, flag_idx = -1;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    out.dims_H.push_back(brauer_fixed_dim(reps[i], G->H()));
    out.dims_K.push_back(brauer_fixed_dim(reps[i], G->K()));
    out.ranks_H.push_back(fq_rank(reps[i].averaging_matrix(G->H())));
    out.ranks_K.push_back(fq_rank(reps[i].averaging_matrix(G->K())));
    if (static_cast<std::int64_t>(out.ranks_H[i]) != out.dims_H[i] || static_cast<std::int64_t>(out.ranks_K[i]) != out.dims_K[i])
      out.dims_agree = false;
    if (out.dims_H[i] > 0) ++h_count, h_idx = static_cast<long>(i);
    if (out.dims_K[i] > 0) ++k_count, k_idx = static_cast<long>(i);
    if (out.constituents[i].flagged) flag_idx = static_cast<long>(i);
  }
  out.unique_bearing = h_count == 1 && k_count == 1 && h_idx == k_idx && h_idx == flag_idx;
  if (flag_idx < 0) {
    if (out.witness.empty()) out.witness = "no constituent carries the flagged index set";
    return out;
  }

  const JHConstituent& fc = out.constituents[flag_idx];
  auto digits = label_digits(*G, r);
  out.shape_ok = true;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    std::int64_t expect = fc.J[i] ? 2 * digits[i] : 2 * G->p() - 2 - 2 * digits[i];
    if (fc.n[i] - 1 != expect) out.shape_ok = false;
  }

  // (iii) s t on the flagged constituent against the reduced constant.
  const SymRep& rho = reps[flag_idx];
  FqMat A = rho.matrix(G->diag(G->gen_q()));
  FqMat B = rho.matrix(G->k_of(G->alpha()));
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    A[i][i] = A[i][i] - G->tower().one();
    B[i][i] = B[i][i] - G->tower().one();
  }
  auto kerA = fq_nullspace(A), kerB = fq_nullspace(B);
  if (kerA.size() != 1 || kerB.size() != 1) {
    if (out.witness.empty()) out.witness = "flagged constituent fixed spaces are not lines";
    return out;
  }
  STReport st = extract_s_t(rho, kerA[0], kerB[0]);
  out.st = st.st;
  out.st_in_prime_field = st.st_in_prime_field && st.s_proportional && st.t_proportional;
  if (st.st_in_prime_field) out.st_value = G->tower().to_int(st.st);
  ResidueElem red = reduce_at_prime(raw_correlation(*G, counts, r), canonical_prime(*G, conductor_for(*G, r)));
  out.reduced = red.constant();
  out.congruence_ok = out.st_in_prime_field && red.in_prime_field() && out.st_value == out.reduced;
  if (!out.congruence_ok && out.witness.empty())
    out.witness = "st = " + std::to_string(out.st_value) + " but the constant reduces to " + std::to_string(out.reduced);
  return out;
}

nlohmann::json DiamondReport::to_json() const {
  nlohmann::json j;
  j["rep"] = rep.to_string();
  nlohmann::json cs = nlohmann::json::array();
  for (std::size_t i = 0; i < constituents.size(); ++i) {
    auto c = constituents[i].to_json();
    if (i < dims_H.size()) {
      c["dim_H"] = dims_H[i];
      c["dim_K"] = dims_K[i];
    }
    cs.push_back(c);
  }
  j["constituents"] = cs;
  j["brauer_ok"] = brauer_ok;
  j["dims_agree"] = dims_agree;
  j["unique_bearing"] = unique_bearing;
  j["shape_ok"] = shape_ok;
  j["st"] = st_in_prime_field ? nlohmann::json(st_value) : nlohmann::json(nullptr);
  j["reduced"] = reduced;
  j["congruence_ok"] = congruence_ok;
  j["ok"] = ok();
  if (!witness.empty()) j["witness"] = witness;
  return j;
}

}  // namespace toric
