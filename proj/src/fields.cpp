#include "toric/fields.hpp"

#include <sstream>
#include <stdexcept>

namespace toric {

namespace {

std::int64_t mod_pos(std::int64_t a, std::int64_t n) {
  a %= n;
  return a < 0 ? a + n : a;
}

}  // namespace

// ---- Fq -------------------------------------------------------------------

Fq Fq::operator+(Fq o) const { return tower_->add(*this, o); }
Fq Fq::operator-(Fq o) const { return tower_->add(*this, tower_->neg(o)); }
Fq Fq::operator-() const { return tower_->neg(*this); }
Fq Fq::operator*(Fq o) const { return tower_->mul(*this, o); }
Fq Fq::operator/(Fq o) const { return tower_->mul(*this, tower_->inv(o)); }
Fq Fq::inv() const { return tower_->inv(*this); }
Fq Fq::pow(std::int64_t e) const { return tower_->pow(*this, e); }

// ---- modulus search --------------------------------------------------------

bool is_primitive_poly(const fp::Poly& f, std::int64_t p) {
  int m = fp::degree(f);
  if (m < 1 || f.back() != 1 || f[0] == 0) return false;
  mpz_class n;
  mpz_ui_pow_ui(n.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(m));
  n -= 1;
  const fp::Poly x{0, 1};
  if (fp::powmod(x, n, f, p) != fp::Poly{1}) return false;
  // Prime factors of p^m - 1; these sizes always fit in 64 bits here.
  for (auto q : fp::prime_factors(n.get_si())) {
    mpz_class e = n / q;
    if (fp::powmod(x, e, f, p) == fp::Poly{1}) return false;
  }
  return true;
}

namespace {

bool satisfies_constraint(const fp::Poly& f, std::int64_t p, const fp::Poly& sub) {
  int m = fp::degree(f);
  int d = fp::degree(sub);
  std::int64_t big = fp::ipow(p, m) - 1;
  std::int64_t small = fp::ipow(p, d) - 1;
  fp::Poly y = fp::powmod(fp::Poly{0, 1}, static_cast<std::uint64_t>(big / small), f, p);
  return fp::compose_mod(sub, y, f, p).empty();
}

}  // namespace

fp::Poly canonical_modulus(std::int64_t p, int m, const std::optional<fp::Poly>& subfield_constraint) {
  fp::Poly f(m + 1, 0);
  f[m] = 1;
  // Odometer over (c_0, ..., c_{m-1}) with c_0 the most significant digit.
  std::vector<std::int64_t> digits(m, 0);
  while (true) {
    for (int i = 0; i < m; ++i) f[i] = digits[i];
    if (is_primitive_poly(f, p) && (!subfield_constraint || satisfies_constraint(f, p, *subfield_constraint)))
      return f;
    int i = m - 1;
    while (i >= 0 && ++digits[i] == p) digits[i--] = 0;
    if (i < 0) break;
  }
  throw std::runtime_error("no primitive modulus found");
}

// ---- FieldTower ------------------------------------------------------------

std::shared_ptr<const FieldTower> FieldTower::build(std::int64_t p, int m, const std::optional<fp::Poly>& override_modulus,
                                                    std::int64_t table_cap) {
  if (p < 3 || !fp::is_prime(p)) throw std::invalid_argument("field characteristic must be an odd prime");
  if (m < 1) throw std::invalid_argument("field degree must be positive");
  std::int64_t size = 1;
  for (int i = 0; i < m; ++i) {
    size *= p;
    if (size > table_cap) throw std::invalid_argument("field size exceeds table cap");
  }
  std::shared_ptr<FieldTower> t(new FieldTower());
  t->p_ = p;
  t->m_ = m;
  t->size_ = size;
  if (override_modulus) {
    fp::Poly g = fp::normalized(*override_modulus, p);
    int d = fp::degree(g);
    if (d < 1 || g.back() != 1) throw std::invalid_argument("modulus override must be monic");
    if (d > m || m % d != 0) throw std::invalid_argument("modulus override degree must divide the tower degree");
    if (!is_primitive_poly(g, p)) throw std::invalid_argument("modulus override is reducible or not primitive");
    if (d == m) {
      t->modulus_ = g;
    } else {
      t->constraint_ = g;
      t->modulus_ = canonical_modulus(p, m, g);
    }
  } else {
    t->modulus_ = canonical_modulus(p, m);
  }
  t->build_tables();
  return t;
}

void FieldTower::build_tables() {
  const std::int64_t n = group_order();
  exp_.assign(n, 0);
  log_.assign(size_, -1);
  std::vector<std::int64_t> cur(m_, 0);
  cur[0] = 1;
  auto pack = [&] {
    std::int64_t v = 0;
    for (int i = m_; i-- > 0;) v = v * p_ + cur[i];
    return v;
  };
  for (std::int64_t i = 0; i < n; ++i) {
    std::int64_t v = pack();
    if (log_[v] >= 0) throw std::invalid_argument("modulus root is not primitive");
    exp_[i] = static_cast<std::int32_t>(v);
    log_[v] = static_cast<std::int32_t>(i);
    std::int64_t lead = cur[m_ - 1];
    for (int j = m_ - 1; j > 0; --j) cur[j] = cur[j - 1];
    cur[0] = 0;
    for (int j = 0; j < m_; ++j) cur[j] = fp::reduce(cur[j] - lead * modulus_[j], p_);
  }
  if (pack() != 1) throw std::invalid_argument("modulus root has wrong order");
  zech_.assign(n, -1);
  for (std::int64_t i = 0; i < n; ++i) {
    std::int64_t v = exp_[i];
    // Adding one touches only the constant digit.
    std::int64_t c = v % p_;
    std::int64_t w = v - c + (c + 1) % p_;
    zech_[i] = log_[w];
  }
}

Fq FieldTower::from_log(std::int64_t e) const { return Fq(this, mod_pos(e, group_order())); }

Fq FieldTower::from_int(std::int64_t n) const {
  std::int64_t v = fp::reduce(n, p_);
  return Fq(this, log_[v]);
}

Fq FieldTower::from_poly(const fp::Poly& a) const {
  fp::Poly r = fp::rem(fp::normalized(a, p_), modulus_, p_);
  std::int64_t v = 0;
  for (std::size_t i = r.size(); i-- > 0;) v = v * p_ + r[i];
  return Fq(this, log_[v]);
}

fp::Poly FieldTower::to_poly(Fq x) const {
  if (x.is_zero()) return {};
  fp::Poly r(m_, 0);
  std::int64_t v = exp_[x.log()];
  for (int i = 0; i < m_; ++i) {
    r[i] = v % p_;
    v /= p_;
  }
  fp::trim(r);
  return r;
}

std::int64_t FieldTower::to_int(Fq x) const {
  if (x.is_zero()) return 0;
  std::int64_t v = exp_[x.log()];
  if (v >= p_) throw std::domain_error("element is not in the prime field");
  return v;
}

std::int64_t FieldTower::subfield_index(int d) const {
  if (!has_subfield(d)) throw std::invalid_argument("subfield degree must divide the tower degree");
  return group_order() / (fp::ipow(p_, d) - 1);
}

Fq FieldTower::subfield_generator(int d) const { return Fq(this, subfield_index(d) % group_order()); }

bool FieldTower::in_subfield(Fq x, int d) const {
  return x.is_zero() || x.log() % subfield_index(d) == 0;
}

std::int64_t FieldTower::subfield_log(Fq x, int d) const {
  if (x.is_zero()) throw std::domain_error("discrete log of zero");
  std::int64_t idx = subfield_index(d);
  if (x.log() % idx) throw std::domain_error("element outside the requested subfield");
  return x.log() / idx;
}

std::vector<Fq> FieldTower::subfield_elements(int d) const {
  std::int64_t idx = subfield_index(d);
  std::int64_t order = fp::ipow(p_, d) - 1;
  std::vector<Fq> out;
  out.reserve(order + 1);
  out.push_back(zero());
  for (std::int64_t i = 0; i < order; ++i) out.push_back(Fq(this, i * idx));
  return out;
}

bool FieldTower::is_square_in(Fq x, int d) const {
  if (x.is_zero()) return true;
  return subfield_log(x, d) % 2 == 0;
}

Fq FieldTower::frobenius(Fq x, int j) const {
  if (x.is_zero()) return x;
  const std::int64_t n = group_order();
  std::int64_t e = x.log();
  int steps = ((j % m_) + m_) % m_;
  for (int i = 0; i < steps; ++i) e = e * p_ % n;
  return Fq(this, e);
}

std::pair<Fq, Fq> FieldTower::norm_trace(Fq x, int d) const {
  if (!has_subfield(d)) throw std::invalid_argument("norm_trace: d must divide m");
  Fq norm = pow(x, subfield_index(d));
  Fq tr = zero();
  Fq c = x;
  for (int i = 0; i < m_ / d; ++i) {
    tr = add(tr, c);
    c = frobenius(c, d);
  }
  return {norm, tr};
}

std::int64_t FieldTower::element_order(Fq x) const {
  if (x.is_zero()) throw std::domain_error("order of zero");
  return group_order() / fp::gcd_int(x.log(), group_order());
}

Fq FieldTower::add(Fq a, Fq b) const {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const std::int64_t n = group_order();
  std::int64_t d = b.log() - a.log();
  if (d < 0) d += n;
  std::int64_t z = zech_[d];
  if (z < 0) return zero();
  std::int64_t e = a.log() + z;
  if (e >= n) e -= n;
  return Fq(this, e);
}

Fq FieldTower::neg(Fq a) const {
  if (a.is_zero()) return a;
  const std::int64_t n = group_order();
  std::int64_t e = a.log() + n / 2;
  if (e >= n) e -= n;
  return Fq(this, e);
}

Fq FieldTower::mul(Fq a, Fq b) const {
  if (a.is_zero() || b.is_zero()) return zero();
  const std::int64_t n = group_order();
  std::int64_t e = a.log() + b.log();
  if (e >= n) e -= n;
  return Fq(this, e);
}

Fq FieldTower::inv(Fq a) const {
  if (a.is_zero()) throw std::domain_error("inverse of zero");
  return Fq(this, a.log() == 0 ? 0 : group_order() - a.log());
}

Fq FieldTower::pow(Fq a, std::int64_t e) const {
  if (a.is_zero()) {
    if (e == 0) return one();
    if (e < 0) throw std::domain_error("negative power of zero");
    return a;
  }
  const std::int64_t n = group_order();
  __int128 t = static_cast<__int128>(a.log()) * mod_pos(e, n);
  return Fq(this, static_cast<std::int64_t>(t % n));
}

std::string FieldTower::to_string(Fq x) const {
  if (x.is_zero()) return "0";
  std::ostringstream out;
  out << "g^" << x.log();
  return out.str();
}

nlohmann::json FieldTower::to_json() const {
  nlohmann::json j;
  j["p"] = p_;
  j["m"] = m_;
  j["modulus"] = modulus_;
  j["modulus_text"] = fp::to_string(modulus_);
  j["generator_order"] = group_order();
  if (constraint_) j["subfield_constraint"] = *constraint_;
  return j;
}

}  // namespace toric
