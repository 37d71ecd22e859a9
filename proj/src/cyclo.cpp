#include "toric/cyclo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace toric {

namespace {

std::int64_t mod_pos(std::int64_t a, std::int64_t n) {
  a %= n;
  return a < 0 ? a + n : a;
}

std::int64_t radical(std::int64_t n) {
  std::int64_t r = 1;
  for (auto q : fp::prime_factors(n)) r *= q;
  return r;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    if (d * d != n) out.push_back(n / d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void exact_divide(IntPoly& a, const IntPoly& b) {
  // b is monic.
  int db = static_cast<int>(b.size()) - 1;
  int da = static_cast<int>(a.size()) - 1;
  IntPoly q(da - db + 1);
  for (int i = da; i >= db; --i) {
    mpz_class c = a[i];
    q[i - db] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  for (int i = 0; i < db; ++i)
    if (a[i] != 0) throw std::logic_error("cyclotomic division left a remainder");
  a = std::move(q);
}

void addmul(mpz_class& acc, const mpz_class& c, std::int64_t coef) {
  if (coef >= 0)
    mpz_addmul_ui(acc.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(coef));
  else
    mpz_submul_ui(acc.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(-coef));
}

void addmul(mpz_class& acc, std::int64_t c, std::int64_t coef) {
  __int128 prod = static_cast<__int128>(c) * coef;
  if (prod >= LONG_MIN && prod <= LONG_MAX) {
    long v = static_cast<long>(prod);
    if (v >= 0)
      mpz_add_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(v));
    else
      mpz_sub_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(-(v + 1)) + 1UL);
  } else {
    addmul(acc, mpz_class(static_cast<long>(c)), coef);
  }
}

}  // namespace

// ---- cyclotomic polynomials ---------------------------------------------------

IntPoly cyclotomic_poly(std::int64_t k) {
  if (k < 1) throw std::invalid_argument("cyclotomic_poly: k must be positive");
  static std::mutex mu;
  static std::map<std::int64_t, IntPoly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
  }
  IntPoly result;
  std::int64_t rad = radical(k);
  if (rad != k) {
    IntPoly base = cyclotomic_poly(rad);
    std::int64_t stride = k / rad;
    result.assign((base.size() - 1) * stride + 1, 0);
    for (std::size_t i = 0; i < base.size(); ++i) result[i * stride] = base[i];
  } else {
    result.assign(k + 1, 0);
    result[0] = -1;
    result[k] = 1;
    for (auto d : divisors(k))
      if (d < k) exact_divide(result, cyclotomic_poly(d));
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(k, result);
  return result;
}

// ---- CycloContext ------------------------------------------------------------

std::shared_ptr<const CycloContext> CycloContext::get(std::int64_t k) {
  if (k < 1) throw std::invalid_argument("conductor must be positive");
  static std::mutex mu;
  static std::map<std::int64_t, std::shared_ptr<const CycloContext>> registry;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = registry.find(k);
    if (it != registry.end()) return it->second;
  }
  std::shared_ptr<CycloContext> ctx(new CycloContext());
  ctx->k_ = k;
  ctx->rad_ = radical(k);
  ctx->stride_ = k / ctx->rad_;
  IntPoly phi_rad = cyclotomic_poly(ctx->rad_);
  const std::int64_t dr = static_cast<std::int64_t>(phi_rad.size()) - 1;
  ctx->phi_ = dr * ctx->stride_;
  std::vector<std::int64_t> base(dr);
  for (std::int64_t i = 0; i < dr; ++i) {
    if (!phi_rad[i].fits_slong_p()) throw std::overflow_error("cyclotomic coefficient too large");
    base[i] = phi_rad[i].get_si();
  }
  ctx->rows_.resize(ctx->rad_);
  std::vector<std::int64_t> cur(dr, 0);
  for (std::int64_t s = 0; s < ctx->rad_; ++s) {
    if (s < dr) {
      std::fill(cur.begin(), cur.end(), 0);
      cur[s] = 1;
    } else {
      std::int64_t lead = cur[dr - 1];
      for (std::int64_t i = dr - 1; i > 0; --i) cur[i] = cur[i - 1];
      cur[0] = 0;
      if (lead)
        for (std::int64_t i = 0; i < dr; ++i) {
          cur[i] -= lead * base[i];
          if (std::abs(cur[i]) > (std::int64_t{1} << 40)) throw std::overflow_error("reduction row overflow");
        }
    }
    auto& row = ctx->rows_[s];
    for (std::int64_t i = 0; i < dr; ++i)
      if (cur[i]) row.push_back({static_cast<std::int32_t>(i), cur[i]});
  }
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = registry.emplace(k, ctx);
  return it->second;
}

void CycloContext::add_power(std::vector<mpz_class>& out, std::int64_t e, const mpz_class& c) const {
  e = mod_pos(e, k_);
  std::int64_t s = e / stride_, t = e % stride_;
  for (const auto& term : rows_[s]) addmul(out[t + stride_ * term.index], c, term.coef);
}

void CycloContext::add_power(std::vector<mpz_class>& out, std::int64_t e, std::int64_t c) const {
  e = mod_pos(e, k_);
  std::int64_t s = e / stride_, t = e % stride_;
  for (const auto& term : rows_[s]) addmul(out[t + stride_ * term.index], c, term.coef);
}

// ---- CycNum ---------------------------------------------------------------------

CycNum::CycNum(std::int64_t k) : ctx_(CycloContext::get(k)), num_(ctx_->degree()), den_(1) {}

CycNum CycNum::rational(const mpq_class& c, std::int64_t k) {
  CycNum z(k);
  z.num_[0] = c.get_num();
  z.den_ = c.get_den();
  z.normalize();
  return z;
}

CycNum CycNum::root(std::int64_t k, std::int64_t e) {
  CycNum z(k);
  z.ctx_->add_power(z.num_, e, std::int64_t{1});
  return z;
}

CycNum CycNum::from_coeffs(std::int64_t k, const std::vector<mpq_class>& coeffs) {
  CycNum z(k);
  mpz_class den = 1;
  for (const auto& c : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  // Coefficients beyond the basis are reduced like any other power.
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    mpz_class n = coeffs[i].get_num() * (den / coeffs[i].get_den());
    z.ctx_->add_power(z.num_, static_cast<std::int64_t>(i), n);
  }
  z.den_ = den;
  z.normalize();
  return z;
}

void CycNum::normalize() {
  mpz_class g = den_;
  for (const auto& n : num_) {
    if (g == 1) break;
    if (n != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  if (is_zero()) {
    den_ = 1;
    return;
  }
  if (g != 1) {
    for (auto& n : num_) mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

mpq_class CycNum::coeff(std::size_t i) const {
  mpq_class c(num_.at(i), den_);
  c.canonicalize();
  return c;
}

std::vector<mpq_class> CycNum::coeffs() const {
  std::vector<mpq_class> out;
  out.reserve(num_.size());
  for (std::size_t i = 0; i < num_.size(); ++i) out.push_back(coeff(i));
  return out;
}

bool CycNum::is_zero() const {
  return std::all_of(num_.begin(), num_.end(), [](const mpz_class& n) { return n == 0; });
}

std::optional<mpq_class> CycNum::as_rational() const {
  for (std::size_t i = 1; i < num_.size(); ++i)
    if (num_[i] != 0) return std::nullopt;
  return coeff(0);
}

std::complex<double> CycNum::to_complex() const {
  long double re = 0, im = 0;
  const long double k = static_cast<long double>(conductor());
  const long double d = den_.get_d();
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (num_[i] == 0) continue;
    long double a = 2 * std::numbers::pi_v<long double> * static_cast<long double>(i) / k;
    long double c = num_[i].get_d() / d;
    re += c * std::cos(a);
    im += c * std::sin(a);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

void CycNum::require_same(const CycNum& o) const {
  if (conductor() != o.conductor())
    throw std::invalid_argument("conductor mismatch: " + std::to_string(conductor()) + " vs " +
                                std::to_string(o.conductor()));
}

namespace {

// Rationals embed in every conductor; anything else must match.
std::pair<CycNum, CycNum> align(const CycNum& a, const CycNum& b) {
  if (a.conductor() == b.conductor()) return {a, b};
  if (a.conductor() == 1) return {a.lift(b.conductor()), b};
  if (b.conductor() == 1) return {a, b.lift(a.conductor())};
  throw std::invalid_argument("conductor mismatch: " + std::to_string(a.conductor()) + " vs " +
                              std::to_string(b.conductor()));
}

}  // namespace

CycNum CycNum::operator+(const CycNum& o) const {
  if (conductor() != o.conductor()) {
    auto [a, b] = align(*this, o);
    return a + b;
  }
  CycNum r(conductor());
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), den_.get_mpz_t(), o.den_.get_mpz_t());
  mpz_class fa = l / den_, fb = l / o.den_;
  for (std::size_t i = 0; i < num_.size(); ++i) r.num_[i] = num_[i] * fa + o.num_[i] * fb;
  r.den_ = l;
  r.normalize();
  return r;
}

CycNum CycNum::operator-() const {
  CycNum r(*this);
  for (auto& n : r.num_) n = -n;
  return r;
}

CycNum CycNum::operator-(const CycNum& o) const { return *this + (-o); }

CycNum CycNum::operator*(const CycNum& o) const {
  if (conductor() != o.conductor()) {
    auto [a, b] = align(*this, o);
    return a * b;
  }
  const std::int64_t k = conductor();
  const std::size_t n = num_.size();
  CycNum r(k);
  if (is_zero() || o.is_zero()) return r;
  if (auto c = as_rational()) return o * *c;
  if (auto c = o.as_rational()) return *this * *c;
  std::vector<mpz_class> acc(std::min<std::int64_t>(k, 2 * static_cast<std::int64_t>(n)));
  for (std::size_t i = 0; i < n; ++i) {
    if (num_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (o.num_[j] == 0) continue;
      std::int64_t e = static_cast<std::int64_t>(i + j);
      if (e >= k) e -= k;
      mpz_addmul(acc[e].get_mpz_t(), num_[i].get_mpz_t(), o.num_[j].get_mpz_t());
    }
  }
  for (std::size_t e = 0; e < acc.size(); ++e) {
    if (acc[e] == 0) continue;
    if (e < n)
      r.num_[e] += acc[e];
    else
      ctx_->add_power(r.num_, static_cast<std::int64_t>(e), acc[e]);
  }
  r.den_ = den_ * o.den_;
  r.normalize();
  return r;
}

CycNum CycNum::operator*(const mpq_class& c) const {
  CycNum r(*this);
  for (auto& n : r.num_) n *= c.get_num();
  r.den_ *= c.get_den();
  r.normalize();
  return r;
}

CycNum CycNum::operator/(const mpq_class& c) const {
  if (c == 0) throw std::domain_error("division by zero");
  mpq_class inv = 1 / c;
  return *this * inv;
}

CycNum CycNum::conj() const {
  CycNum r(conductor());
  const std::int64_t k = conductor();
  for (std::size_t i = 0; i < num_.size(); ++i)
    if (num_[i] != 0) ctx_->add_power(r.num_, k - static_cast<std::int64_t>(i), num_[i]);
  r.den_ = den_;
  r.normalize();
  return r;
}

CycNum CycNum::mul_root(std::int64_t e) const {
  CycNum r(conductor());
  for (std::size_t i = 0; i < num_.size(); ++i)
    if (num_[i] != 0) ctx_->add_power(r.num_, static_cast<std::int64_t>(i) + e, num_[i]);
  r.den_ = den_;
  r.normalize();
  return r;
}

CycNum CycNum::lift(std::int64_t m) const {
  const std::int64_t k = conductor();
  if (m == k) return *this;
  if (m % k) throw std::invalid_argument("lift: target conductor must be a multiple");
  CycNum r(m);
  const std::int64_t f = m / k;
  for (std::size_t i = 0; i < num_.size(); ++i)
    if (num_[i] != 0) r.ctx_->add_power(r.num_, static_cast<std::int64_t>(i) * f, num_[i]);
  r.den_ = den_;
  r.normalize();
  return r;
}

std::pair<CycNum, CycNum> coerce(const CycNum& a, const CycNum& b) {
  std::int64_t l = a.conductor() / fp::gcd_int(a.conductor(), b.conductor()) * b.conductor();
  return {a.lift(l), b.lift(l)};
}

bool CycNum::operator==(const CycNum& o) const {
  if (conductor() == o.conductor()) return den_ == o.den_ && num_ == o.num_;
  auto [a, b] = coerce(*this, o);
  return a.den_ == b.den_ && a.num_ == b.num_;
}

std::string CycNum::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < num_.size(); ++i) {
    const mpz_class& n = num_[i];
    if (n == 0) continue;
    if (n < 0)
      out << (first ? "-" : " - ");
    else if (!first)
      out << " + ";
    mpz_class a = abs(n);
    if (i == 0)
      out << a;
    else {
      if (a != 1) out << a << '*';
      out << "z" << conductor();
      if (i > 1) out << '^' << i;
    }
    first = false;
  }
  if (first) return "0";
  if (den_ == 1) return out.str();
  return "(" + out.str() + ")/" + den_.get_str();
}

namespace {

nlohmann::json int_json(const mpz_class& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

mpz_class json_int(const nlohmann::json& j) {
  if (j.is_string()) return mpz_class(j.get<std::string>());
  return mpz_class(static_cast<long>(j.get<std::int64_t>()));
}

}  // namespace

nlohmann::json CycNum::to_json() const {
  nlohmann::json coeff_list = nlohmann::json::array();
  for (std::size_t i = 0; i < num_.size(); ++i) {
    mpq_class c = coeff(i);
    coeff_list.push_back({int_json(c.get_num()), int_json(c.get_den())});
  }
  auto z = to_complex();
  nlohmann::json j;
  j["conductor"] = conductor();
  j["coeffs"] = coeff_list;
  j["approx"] = {{"re", z.real()}, {"im", z.imag()}};
  if (auto r = as_rational()) j["rational"] = r->get_str();
  return j;
}

CycNum CycNum::from_json(const nlohmann::json& j) {
  std::int64_t k = j.at("conductor").get<std::int64_t>();
  std::vector<mpq_class> coeffs;
  for (const auto& c : j.at("coeffs")) {
    mpq_class q(json_int(c.at(0)), json_int(c.at(1)));
    q.canonicalize();
    coeffs.push_back(q);
  }
  CycNum z = from_coeffs(k, coeffs);
  if (z.degree() != static_cast<std::int64_t>(coeffs.size()))
    throw std::invalid_argument("coefficient vector length does not match conductor");
  return z;
}

// ---- RootSum / RootAccumulator ---------------------------------------------------

RootSum RootSum::constant(std::int64_t modulus, std::int64_t c) {
  RootSum s{modulus, {}};
  if (c) s.terms.push_back({0, c});
  return s;
}

RootSum RootSum::monomial(std::int64_t modulus, std::int64_t e, std::int64_t c) {
  RootSum s{modulus, {}};
  if (c) s.terms.push_back({mod_pos(e, modulus), c});
  return s;
}

RootSum RootSum::conj() const {
  RootSum s{modulus, {}};
  for (auto [e, c] : terms) s.terms.push_back({mod_pos(-e, modulus), c});
  return s;
}

std::int64_t RootSum::natural_conductor() const {
  std::int64_t g = modulus;
  for (auto [e, c] : terms)
    if (c) g = fp::gcd_int(g, e);
  return modulus / g;
}

CycNum RootSum::value() const { return value_in(natural_conductor()); }

CycNum RootSum::value_in(std::int64_t k) const {
  RootAccumulator acc(modulus);
  acc.add(*this);
  return acc.value_in(k);
}

RootAccumulator::RootAccumulator(std::int64_t modulus) : modulus_(modulus), counts_(modulus, 0) {}

void RootAccumulator::add(std::int64_t e, std::int64_t c) { counts_[mod_pos(e, modulus_)] += c; }

void RootAccumulator::add(const RootSum& s, std::int64_t mult) {
  if (s.modulus != modulus_) throw std::invalid_argument("root sum modulus mismatch");
  for (auto [e, c] : s.terms) counts_[mod_pos(e, modulus_)] += c * mult;
}

void RootAccumulator::add_product_conj(const RootSum& a, const RootSum& b, std::int64_t mult) {
  if (a.modulus != modulus_ || b.modulus != modulus_) throw std::invalid_argument("root sum modulus mismatch");
  for (auto [ea, ca] : a.terms)
    for (auto [eb, cb] : b.terms) counts_[mod_pos(ea - eb, modulus_)] += ca * cb * mult;
}

CycNum RootAccumulator::value() const {
  std::int64_t g = modulus_;
  for (std::int64_t e = 0; e < modulus_ && g > 1; ++e)
    if (counts_[e]) g = fp::gcd_int(g, e);
  return value_in(modulus_ / g);
}

CycNum RootAccumulator::value_in(std::int64_t k) const {
  // zeta_M^e lies in Q(zeta_k) iff M | e*k.
  CycNum z(k);
  for (std::int64_t e = 0; e < modulus_; ++e) {
    if (!counts_[e]) continue;
    __int128 t = static_cast<__int128>(e) * k;
    if (t % modulus_) throw std::invalid_argument("accumulated value does not lie in the requested conductor");
    z.ctx_->add_power(z.num_, static_cast<std::int64_t>(t / modulus_), counts_[e]);
  }
  z.normalize();
  return z;
}

// ---- primes above p ------------------------------------------------------------------

nlohmann::json PrimeIdealHandle::to_json() const {
  return {{"k", k}, {"p", p}, {"factor", factor}, {"factor_text", fp::to_string(factor)}, {"index", index}};
}

namespace {

void equal_degree_split(const fp::Poly& f, int d, std::int64_t p, std::mt19937_64& rng, std::vector<fp::Poly>& out) {
  const int n = fp::degree(f);
  if (n == d) {
    out.push_back(fp::monic(f, p));
    return;
  }
  mpz_class e;
  mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  while (true) {
    fp::Poly a(n);
    for (auto& c : a) c = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
    fp::trim(a);
    if (fp::degree(a) < 1) continue;
    fp::Poly g = fp::gcd(a, f, p);
    if (fp::degree(g) < 1 || fp::degree(g) == n) {
      fp::Poly b = fp::sub(fp::powmod(a, e, f, p), fp::Poly{1}, p);
      g = fp::gcd(b, f, p);
    }
    int dg = fp::degree(g);
    if (dg >= 1 && dg < n) {
      equal_degree_split(g, d, p, rng, out);
      equal_degree_split(fp::quo(f, g, p), d, p, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<PrimeIdealHandle> factor_cyclotomic_mod_p(std::int64_t k, std::int64_t p, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("conductor must be positive");
  if (p < 3 || !fp::is_prime(p)) throw std::invalid_argument("p must be an odd prime");
  if (k % p == 0) throw std::invalid_argument("p divides the conductor (ramified)");
  static std::mutex mu;
  static std::map<std::tuple<std::int64_t, std::int64_t, std::uint64_t>, std::vector<PrimeIdealHandle>> cache;
  auto key = std::make_tuple(k, p, seed);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  IntPoly phi = cyclotomic_poly(k);
  fp::Poly f(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), phi[i].get_mpz_t(), static_cast<unsigned long>(p));
    f[i] = r.get_si();
  }
  fp::trim(f);
  const int d = static_cast<int>(fp::mult_order(p % k, k));
  std::mt19937_64 rng(seed);
  std::vector<fp::Poly> factors;
  equal_degree_split(f, d, p, rng, factors);
  std::sort(factors.begin(), factors.end());
  std::vector<PrimeIdealHandle> out;
  for (std::size_t i = 0; i < factors.size(); ++i)
    out.push_back(PrimeIdealHandle{k, p, factors[i], static_cast<int>(i)});
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, out);
  return out;
}

ResidueElem root_at_prime(const PrimeIdealHandle& prime, std::int64_t e) {
  fp::Poly x{0, 1};
  return {fp::powmod(x, static_cast<std::uint64_t>(mod_pos(e, prime.k)), prime.factor, prime.p), prime.p};
}

ResidueElem reduce_at_prime(const CycNum& z, const PrimeIdealHandle& prime) {
  const std::int64_t kz = z.conductor();
  if (prime.k % kz) throw std::invalid_argument("value conductor does not divide the prime's conductor");
  const std::int64_t p = prime.p;
  mpz_class dr;
  mpz_fdiv_r_ui(dr.get_mpz_t(), z.denominator().get_mpz_t(), static_cast<unsigned long>(p));
  if (dr == 0) throw std::domain_error("value is not p-integral");
  const fp::Poly step = root_at_prime(prime, prime.k / kz).value;
  fp::Poly acc, power{1};
  for (const auto& n : z.numerators()) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(p));
    if (r != 0) acc = fp::add(acc, fp::scale(power, r.get_si(), p), p);
    power = fp::mulmod(power, step, prime.factor, p);
  }
  acc = fp::scale(acc, fp::inverse(dr.get_si(), p), p);
  return {acc, p};
}

}  // namespace toric
