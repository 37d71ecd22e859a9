#include "toric/poly_fp.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace toric::fp {

std::int64_t reduce(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

std::int64_t power(std::int64_t a, std::uint64_t e, std::int64_t p) {
  std::int64_t r = 1 % p;
  a = reduce(a, p);
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

std::int64_t inverse(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = reduce(a, p);
  while (nr) {
    std::int64_t q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  if (r != 1) throw std::domain_error("not invertible modulo p");
  return reduce(t, p);
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly normalized(Poly a, std::int64_t p) {
  for (auto& c : a) c = reduce(c, p);
  trim(a);
  return a;
}

Poly monic(const Poly& a, std::int64_t p) {
  if (a.empty()) return a;
  return scale(a, inverse(a.back(), p), p);
}

Poly add(const Poly& a, const Poly& b, std::int64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b, std::int64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = reduce(r[i] - b[i], p);
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

Poly scale(const Poly& a, std::int64_t c, std::int64_t p) {
  Poly r(a);
  c = reduce(c, p);
  for (auto& x : r) x = x * c % p;
  trim(r);
  return r;
}

void divmod(const Poly& a, const Poly& b, std::int64_t p, Poly& quo, Poly& rem) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  rem = a;
  trim(rem);
  int db = degree(b);
  if (degree(rem) < db) {
    quo.clear();
    return;
  }
  quo.assign(rem.size() - b.size() + 1, 0);
  std::int64_t lead_inv = inverse(b.back(), p);
  for (int i = degree(rem); i >= db; --i) {
    std::int64_t c = rem[i] * lead_inv % p;
    if (!c) continue;
    quo[i - db] = c;
    for (int j = 0; j <= db; ++j) rem[i - db + j] = reduce(rem[i - db + j] - c * b[j], p);
  }
  trim(rem);
  trim(quo);
}

Poly rem(const Poly& a, const Poly& b, std::int64_t p) {
  Poly q, r;
  divmod(a, b, p, q, r);
  return r;
}

Poly quo(const Poly& a, const Poly& b, std::int64_t p) {
  Poly q, r;
  divmod(a, b, p, q, r);
  return q;
}

Poly gcd(Poly a, Poly b, std::int64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m, std::int64_t p) {
  return rem(mul(a, b, p), m, p);
}

Poly powmod(const Poly& base, const mpz_class& e, const Poly& m, std::int64_t p) {
  Poly r = rem(Poly{1}, m, p);
  Poly b = rem(base, m, p);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mulmod(r, r, m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mulmod(r, b, m, p);
  }
  return r;
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& m, std::int64_t p) {
  return powmod(base, mpz_class(static_cast<unsigned long>(e)), m, p);
}

std::int64_t eval(const Poly& a, std::int64_t x, std::int64_t p) {
  std::int64_t r = 0;
  x = reduce(x, p);
  for (std::size_t i = a.size(); i-- > 0;) r = (r * x + a[i]) % p;
  return r;
}

Poly compose_mod(const Poly& a, const Poly& b, const Poly& m, std::int64_t p) {
  Poly r;
  for (std::size_t i = a.size(); i-- > 0;) {
    r = mulmod(r, b, m, p);
    r = add(r, Poly{reduce(a[i], p)}, p);
  }
  return rem(r, m, p);
}

std::string to_string(const Poly& a) {
  if (a.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = a.size(); i-- > 0;) {
    std::int64_t c = a[i];
    if (!c) continue;
    if (!first) out << '+';
    first = false;
    if (i == 0) {
      out << c;
      continue;
    }
    if (c != 1) out << c;
    out << 'X';
    if (i > 1) out << '^' << i;
  }
  return out.str();
}

namespace {

Poly parse_list(const std::string& s, std::int64_t p) {
  Poly r;
  std::string body = s.substr(1, s.size() - 2);
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) r.push_back(std::stoll(item));
  return normalized(r, p);
}

}  // namespace

Poly parse(const std::string& text, std::int64_t p) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw std::invalid_argument("empty polynomial");
  if (s.front() == '[') {
    if (s.back() != ']') throw std::invalid_argument("bad coefficient list: " + text);
    return parse_list(s, p);
  }
  Poly r;
  std::size_t i = 0;
  while (i < s.size()) {
    std::int64_t sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
    }
    std::int64_t coef = 1;
    bool have_digits = false;
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) {
      coef = std::stoll(s.substr(i, j - i));
      have_digits = true;
      i = j;
    }
    if (i < s.size() && s[i] == '*') ++i;
    std::size_t exp = 0;
    if (i < s.size() && (s[i] == 'X' || s[i] == 'x')) {
      ++i;
      exp = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) throw std::invalid_argument("bad exponent in " + text);
        exp = std::stoul(s.substr(i, j - i));
        i = j;
      }
    } else if (!have_digits) {
      throw std::invalid_argument("cannot parse polynomial: " + text);
    }
    if (r.size() <= exp) r.resize(exp + 1, 0);
    r[exp] = reduce(r[exp] + sign * coef, p);
  }
  trim(r);
  return r;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::int64_t gcd_int(std::int64_t a, std::int64_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t r = n;
  for (auto q : prime_factors(n)) r = r / q * (q - 1);
  return r;
}

std::int64_t mult_order(std::int64_t a, std::int64_t n) {
  if (n == 1) return 1;
  if (gcd_int(a, n) != 1) throw std::domain_error("mult_order: not a unit");
  std::int64_t phi = euler_phi(n);
  std::int64_t ord = phi;
  for (auto q : prime_factors(phi)) {
    while (ord % q == 0 && power(a, static_cast<std::uint64_t>(ord / q), n) == 1 % n) ord /= q;
  }
  return ord;
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace toric::fp
