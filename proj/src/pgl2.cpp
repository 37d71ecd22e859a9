#include "toric/pgl2.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace toric {

namespace {

std::int64_t mod_pos(std::int64_t a, std::int64_t n) {
  a %= n;
  return a < 0 ? a + n : a;
}

// Square root inside the subfield F_{p^d}; the caller guarantees x is a square there.
Fq sqrt_in(const FieldTower& t, Fq x, int d) {
  if (x.is_zero()) return x;
  std::int64_t l = t.subfield_log(x, d);
  if (l % 2) throw std::domain_error("sqrt_in: not a square");
  return t.subfield_generator(d).pow(l / 2);
}

}  // namespace

bool PGL2Elem::operator<(const PGL2Elem& o) const {
  return std::make_tuple(a.log(), b.log(), c.log(), d.log()) < std::make_tuple(o.a.log(), o.b.log(), o.c.log(), o.d.log());
}

std::string ClassLabel::to_string() const {
  switch (kind) {
    case ClassKind::Identity: return "Id";
    case ClassKind::Unipotent: return "Unip";
    case ClassKind::Split: return "Split{" + std::to_string(index) + "}";
    case ClassKind::Elliptic: return "Elliptic{" + std::to_string(index) + "}";
  }
  return "?";
}

RepLabel RepLabel::parse(const std::string& s) {
  if (s == "trivial") return trivial();
  if (s == "eta") return eta();
  if (s == "st") return steinberg();
  if (s == "st-eta") return st_eta();
  auto colon = s.find(':');
  if (colon != std::string::npos) {
    std::string kind = s.substr(0, colon);
    std::size_t used = 0;
    std::int64_t r = 0;
    try {
      r = std::stoll(s.substr(colon + 1), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad representation selector: " + s);
    }
    if (used != s.size() - colon - 1) throw std::invalid_argument("bad representation selector: " + s);
    if (kind == "ps") return ps(r);
    if (kind == "cusp") return cusp(r);
  }
  throw std::invalid_argument("bad representation selector: " + s);
}

std::int64_t RepLabel::dimension(std::int64_t q) const {
  switch (kind) {
    case RepKind::Trivial:
    case RepKind::Eta: return 1;
    case RepKind::Steinberg:
    case RepKind::SteinbergEta: return q;
    case RepKind::PrincipalSeries: return q + 1;
    case RepKind::Cuspidal: return q - 1;
  }
  return 0;
}

std::string RepLabel::to_string() const {
  switch (kind) {
    case RepKind::Trivial: return "trivial";
    case RepKind::Eta: return "eta";
    case RepKind::Steinberg: return "st";
    case RepKind::SteinbergEta: return "st-eta";
    case RepKind::PrincipalSeries: return "ps:" + std::to_string(r);
    case RepKind::Cuspidal: return "cusp:" + std::to_string(r);
  }
  return "?";
}

// ---- construction ----------------------------------------------------------

std::shared_ptr<const PGL2> PGL2::create(std::shared_ptr<const FieldTower> tower, int f) {
  if (!tower || f < 1 || tower->degree() % (2 * f)) throw std::invalid_argument("tower must contain F_{q^2}");
  std::shared_ptr<PGL2> g(new PGL2());
  g->tower_ = std::move(tower);
  g->f_ = f;
  g->q_ = fp::ipow(g->tower_->characteristic(), f);
  g->build_classes();
  g->build_tori();
  g->build_table();
  return g;
}

std::shared_ptr<const PGL2> PGL2::build(std::int64_t p, int f, const std::optional<fp::Poly>& override_modulus,
                                        std::int64_t table_cap) {
  return create(FieldTower::build(p, 2 * f, override_modulus, table_cap), f);
}

void PGL2::build_classes() {
  const FieldTower& t = *tower_;
  const std::int64_t q = q_;
  classes_.clear();
  classes_.push_back({{ClassKind::Identity, 0}, identity(), 1});
  classes_.push_back({{ClassKind::Unipotent, 0}, upper(t.one()), q * q - 1});
  for (std::int64_t i = 1; i <= (q - 1) / 2; ++i) {
    std::int64_t size = (2 * i == q - 1) ? q * (q + 1) / 2 : q * (q + 1);
    classes_.push_back({{ClassKind::Split, i}, diag(gen_q().pow(i)), size});
  }
  for (std::int64_t j = 1; j <= (q + 1) / 2; ++j) {
    // Companion matrix of the minimal polynomial of x = g_{q^2}^j.
    Fq x = gen_q2().pow(j);
    Fq xq = x.pow(q);
    Fq n = x * xq;
    Fq tr = x + xq;
    std::int64_t size = (2 * j == q + 1) ? q * (q - 1) / 2 : q * (q - 1);
    classes_.push_back({{ClassKind::Elliptic, j}, make(t.zero(), -n, t.one(), tr), size});
  }
  reps_.clear();
  reps_.push_back(RepLabel::trivial());
  reps_.push_back(RepLabel::eta());
  reps_.push_back(RepLabel::steinberg());
  reps_.push_back(RepLabel::st_eta());
  for (std::int64_t r = 1; r <= (q - 3) / 2; ++r) reps_.push_back(RepLabel::ps(r));
  for (std::int64_t r = 1; r <= (q - 1) / 2; ++r) reps_.push_back(RepLabel::cusp(r));
}

RootSum PGL2::compute_entry(const RepLabel& r, const ClassLabel& c) const {
  const std::int64_t q = q_;
  const std::int64_t M = q * q - 1;
  auto sgn = [](std::int64_t e) { return (e % 2) ? -1 : 1; };
  auto cst = [&](std::int64_t v) { return RootSum::constant(M, v); };
  switch (r.kind) {
    case RepKind::Trivial: return cst(1);
    case RepKind::Eta:
      switch (c.kind) {
        case ClassKind::Identity:
        case ClassKind::Unipotent: return cst(1);
        case ClassKind::Split:
        case ClassKind::Elliptic: return cst(sgn(c.index));
      }
      break;
    case RepKind::Steinberg:
      switch (c.kind) {
        case ClassKind::Identity: return cst(q);
        case ClassKind::Unipotent: return cst(0);
        case ClassKind::Split: return cst(1);
        case ClassKind::Elliptic: return cst(-1);
      }
      break;
    case RepKind::SteinbergEta:
      switch (c.kind) {
        case ClassKind::Identity: return cst(q);
        case ClassKind::Unipotent: return cst(0);
        case ClassKind::Split: return cst(sgn(c.index));
        case ClassKind::Elliptic: return cst(-sgn(c.index));
      }
      break;
    case RepKind::PrincipalSeries:
      switch (c.kind) {
        case ClassKind::Identity: return cst(q + 1);
        case ClassKind::Unipotent: return cst(1);
        case ClassKind::Split: {
          // chi^r(rho) + chi^-r(rho) with chi(g_q) = zeta_{q-1} = zeta_M^{q+1}.
          std::int64_t e = mod_pos(r.r * c.index * (q + 1), M);
          RootSum s{M, {{e, 1}, {mod_pos(-e, M), 1}}};
          return s;
        }
        case ClassKind::Elliptic: return cst(0);
      }
      break;
    case RepKind::Cuspidal:
      switch (c.kind) {
        case ClassKind::Identity: return cst(q - 1);
        case ClassKind::Unipotent: return cst(-1);
        case ClassKind::Split: return cst(0);
        case ClassKind::Elliptic: {
          // psi^{(q-1)r}(x) with x^{q-1} = g_{q^2}^{j(q-1)}; value zeta_M^{(q-1) j r}.
          std::int64_t e = mod_pos(r.r * c.index * (q - 1), M);
          RootSum s{M, {{e, -1}, {mod_pos(-e, M), -1}}};
          return s;
        }
      }
      break;
  }
  throw std::logic_error("unreachable character entry");
}

void PGL2::build_table() {
  table_.clear();
  table_.reserve(reps_.size() * classes_.size());
  for (const auto& r : reps_)
    for (const auto& c : classes_) table_.push_back(compute_entry(r, c.label));
}

bool PGL2::generates_nonsplit_torus(Fq beta) const {
  const FieldTower& t = *tower_;
  if (beta.is_zero() || t.is_square_in(beta, f_)) return false;
  // Eigenvalues of (1 beta; 1 1) are 1 +- sqrt(beta); the order in PGL2 is that of their ratio.
  Fq s = sqrt_in(t, beta, 2 * f_);
  Fq u = (t.one() + s) / (t.one() - s);
  return t.element_order(u) == q_ + 1;
}

std::vector<Fq> PGL2::valid_alphas() const {
  std::vector<Fq> out;
  for (std::int64_t l = 1; l < q_ - 1; l += 2) {
    Fq beta = gen_q().pow(l);
    if (generates_nonsplit_torus(beta)) out.push_back(beta);
  }
  return out;
}

PGL2Elem PGL2::k_of(Fq beta) const { return make(tower_->one(), beta, tower_->one(), tower_->one()); }

std::vector<PGL2Elem> PGL2::nonsplit_torus(Fq beta) const {
  const FieldTower& t = *tower_;
  std::vector<PGL2Elem> out;
  out.reserve(q_ + 1);
  for (Fq z : field_elements()) out.push_back(make(t.one(), beta * z, z, t.one()));
  out.push_back(make(t.zero(), beta, t.one(), t.zero()));
  return out;
}

void PGL2::build_tori() {
  bool found = false;
  for (std::int64_t l = 1; l < q_ - 1 && !found; l += 2) {
    Fq beta = gen_q().pow(l);
    if (generates_nonsplit_torus(beta)) {
      alpha_ = beta;
      found = true;
    }
  }
  if (!found) throw std::logic_error("no non-square alpha generates the non-split torus");
  H_.clear();
  for (Fq a : field_elements())
    if (!a.is_zero()) H_.push_back(diag(a));
  K_ = nonsplit_torus(alpha_);
  k0_ = K_.back();
}

// ---- group law ---------------------------------------------------------------

PGL2Elem PGL2::make(Fq a, Fq b, Fq c, Fq d) const {
  if ((a * d - b * c).is_zero()) throw std::domain_error("singular matrix");
  Fq lead = !a.is_zero() ? a : b;
  if (lead == tower_->one()) return {a, b, c, d};
  Fq s = lead.inv();
  return {a * s, b * s, c * s, d * s};
}

PGL2Elem PGL2::identity() const { return {tower_->one(), tower_->zero(), tower_->zero(), tower_->one()}; }
PGL2Elem PGL2::diag(Fq a) const { return make(a, tower_->zero(), tower_->zero(), tower_->one()); }
PGL2Elem PGL2::upper(Fq b) const { return {tower_->one(), b, tower_->zero(), tower_->one()}; }
PGL2Elem PGL2::weyl() const { return {tower_->zero(), tower_->one(), tower_->one(), tower_->zero()}; }

PGL2Elem PGL2::mul(const PGL2Elem& x, const PGL2Elem& y) const {
  return make(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d);
}

PGL2Elem PGL2::inverse(const PGL2Elem& x) const { return make(x.d, -x.b, -x.c, x.a); }

PGL2Elem PGL2::power(const PGL2Elem& x, std::int64_t n) const {
  PGL2Elem base = n < 0 ? inverse(x) : x;
  std::int64_t e = n < 0 ? -n : n;
  PGL2Elem r = identity();
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

std::int64_t PGL2::element_order(const PGL2Elem& x) const {
  PGL2Elem y = x;
  for (std::int64_t n = 1; n <= 2 * q_ + 2; ++n) {
    if (is_identity(y)) return n;
    y = mul(y, x);
  }
  throw std::logic_error("element order exceeds any PGL2 element order");
}

// ---- classes -------------------------------------------------------------------

ClassLabel PGL2::classify(const PGL2Elem& g) const {
  const FieldTower& t = *tower_;
  if (g.b.is_zero() && g.c.is_zero() && g.a == g.d) return {ClassKind::Identity, 0};
  Fq tr = g.trace();
  Fq det = g.det();
  Fq disc = tr * tr - t.from_int(4) * det;
  if (disc.is_zero()) return {ClassKind::Unipotent, 0};
  Fq two_inv = t.from_int(2).inv();
  if (t.is_square_in(disc, f_)) {
    Fq s = sqrt_in(t, disc, f_);
    Fq rho = (tr + s) / (tr - s);
    std::int64_t i = log_q(rho);
    return {ClassKind::Split, std::min(i, q_ - 1 - i)};
  }
  Fq s = sqrt_in(t, disc, 2 * f_);
  Fq x = (tr + s) * two_inv;
  Fq u = x.pow(q_ - 1);
  std::int64_t l = t.subfield_log(u, 2 * f_);
  std::int64_t j = mod_pos(l / (q_ - 1), q_ + 1);
  return {ClassKind::Elliptic, std::min(j, q_ + 1 - j)};
}

std::size_t PGL2::class_index(const ClassLabel& c) const {
  const std::int64_t half = (q_ - 1) / 2;
  switch (c.kind) {
    case ClassKind::Identity: return 0;
    case ClassKind::Unipotent: return 1;
    case ClassKind::Split:
      if (c.index < 1 || c.index > half) break;
      return static_cast<std::size_t>(1 + c.index);
    case ClassKind::Elliptic:
      if (c.index < 1 || c.index > (q_ + 1) / 2) break;
      return static_cast<std::size_t>(1 + half + c.index);
  }
  throw std::invalid_argument("class label out of range: " + c.to_string());
}

std::size_t PGL2::rep_index(const RepLabel& r) const {
  switch (r.kind) {
    case RepKind::Trivial: return 0;
    case RepKind::Eta: return 1;
    case RepKind::Steinberg: return 2;
    case RepKind::SteinbergEta: return 3;
    case RepKind::PrincipalSeries:
      if (r.r < 1 || r.r > (q_ - 3) / 2) break;
      return static_cast<std::size_t>(3 + r.r);
    case RepKind::Cuspidal:
      if (r.r < 1 || r.r > (q_ - 1) / 2) break;
      return static_cast<std::size_t>(3 + (q_ - 3) / 2 + r.r);
  }
  throw std::invalid_argument("representation label out of range for q=" + std::to_string(q_) + ": " + r.to_string());
}

CycNum PGL2::character_value(const RepLabel& r, const ClassLabel& c) const {
  return entry(rep_index(r), class_index(c)).value_in(table_modulus());
}

std::vector<PGL2Elem> PGL2::all_elements() const {
  const FieldTower& t = *tower_;
  std::vector<PGL2Elem> out;
  out.reserve(static_cast<std::size_t>(order()));
  auto field = field_elements();
  for (Fq b : field)
    for (Fq c : field)
      for (Fq d : field)
        if (!(d - b * c).is_zero()) out.push_back({t.one(), b, c, d});
  for (Fq c : field)
    for (Fq d : field)
      if (!c.is_zero()) out.push_back({t.zero(), t.one(), c, d});
  return out;
}

std::pair<std::int64_t, std::int64_t> PGL2::invariant_dims(const RepLabel& r) const {
  const std::size_t ri = rep_index(r);
  auto average = [&](const std::vector<PGL2Elem>& group) {
    RootAccumulator acc(table_modulus());
    for (const auto& g : group) acc.add(entry(ri, class_index_of(g)));
    auto v = (acc.value() / mpq_class(static_cast<long>(group.size()))).as_rational();
    if (!v || v->get_den() != 1) throw std::logic_error("fixed-space dimension is not an integer for " + r.to_string());
    return v->get_num().get_si();
  };
  return {average(H_), average(K_)};
}

OrthogonalityReport PGL2::orthogonality_check() const {
  OrthogonalityReport rep;
  const std::size_t n = classes_.size();
  const std::int64_t G = order();
  for (std::size_t a = 0; a < reps_.size(); ++a)
    for (std::size_t b = a; b < reps_.size(); ++b) {
      RootAccumulator acc(table_modulus());
      for (std::size_t c = 0; c < n; ++c) acc.add_product_conj(entry(a, c), entry(b, c), classes_[c].size);
      ++rep.row_pairs;
      if (acc.value() != CycNum::rational(a == b ? G : 0)) {
        rep.ok = false;
        if (rep.witness.empty()) rep.witness = "row " + reps_[a].to_string() + " x " + reps_[b].to_string();
      }
    }
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = c; d < n; ++d) {
      RootAccumulator acc(table_modulus());
      for (std::size_t a = 0; a < reps_.size(); ++a) acc.add_product_conj(entry(a, c), entry(a, d));
      ++rep.column_pairs;
      mpq_class expect = c == d ? mpq_class(G, classes_[c].size) : mpq_class(0);
      expect.canonicalize();
      if (acc.value() != CycNum::rational(expect)) {
        rep.ok = false;
        if (rep.witness.empty()) rep.witness = "column " + classes_[c].label.to_string() + " x " + classes_[d].label.to_string();
      }
    }
  return rep;
}

std::string PGL2::elem_to_string(const PGL2Elem& g) const {
  const FieldTower& t = *tower_;
  std::ostringstream out;
  out << "[[" << t.to_string(g.a) << "," << t.to_string(g.b) << "],[" << t.to_string(g.c) << "," << t.to_string(g.d) << "]]";
  return out.str();
}

nlohmann::json PGL2::table_json() const {
  nlohmann::json j;
  j["q"] = q_;
  j["p"] = p();
  j["f"] = f_;
  j["order"] = order();
  j["tower"] = tower_->to_json();
  j["alpha_log"] = alpha_.log();
  nlohmann::json cls = nlohmann::json::array();
  for (const auto& c : classes_)
    cls.push_back({{"label", c.label.to_string()}, {"size", c.size}, {"representative", elem_to_string(c.rep)}});
  j["classes"] = cls;
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t a = 0; a < reps_.size(); ++a) {
    nlohmann::json vals = nlohmann::json::array();
    for (std::size_t c = 0; c < classes_.size(); ++c) vals.push_back(entry(a, c).value().to_json());
    rows.push_back({{"rep", reps_[a].to_string()}, {"dimension", reps_[a].dimension(q_)}, {"values", vals}});
  }
  j["characters"] = rows;
  return j;
}

}  // namespace toric
