#include "poncelet/gf.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace poncelet {

namespace {

using Poly = std::vector<uint32_t>;  // low-degree first over F_p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic-or-not b over F_p; b nonzero, trimmed.
Poly poly_rem(Poly a, const Poly& b, uint32_t p) {
  trim(a);
  const size_t db = b.size() - 1;
  uint64_t lead_inv = 1;
  {
    // b's leading coefficient inverse by Fermat
    uint64_t base = b.back(), e = p - 2;
    while (e) {
      if (e & 1) lead_inv = lead_inv * base % p;
      base = base * base % p;
      e >>= 1;
    }
  }
  while (a.size() >= b.size()) {
    const size_t shift = a.size() - 1 - db;
    const uint64_t factor = a.back() * lead_inv % p;
    for (size_t i = 0; i <= db; ++i) {
      uint64_t sub = factor * b[i] % p;
      a[shift + i] = static_cast<uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

bool has_root(const Poly& f, uint32_t p) {
  for (uint64_t x = 0; x < p; ++x) {
    uint64_t acc = 0;
    for (size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
    if (acc == 0) return true;
  }
  return false;
}

// Irreducibility of a monic f of degree r over F_p: no roots, and no monic
// factor of degree 2..r/2 (trial division).
bool is_irreducible(const Poly& f, uint32_t p) {
  const uint32_t r = static_cast<uint32_t>(f.size() - 1);
  if (r == 1) return true;
  if (has_root(f, p)) return false;
  for (uint32_t d = 2; d <= r / 2; ++d) {
    uint64_t count = 1;
    for (uint32_t i = 0; i < d; ++i) count *= p;
    Poly g(d + 1, 0);
    g[d] = 1;
    for (uint64_t idx = 0; idx < count; ++idx) {
      uint64_t t = idx;
      for (uint32_t i = 0; i < d; ++i) {
        g[i] = static_cast<uint32_t>(t % p);
        t /= p;
      }
      if (g[0] == 0) continue;
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

// Smallest monic irreducible of degree r, coefficients (a_0, ..., a_{r-1})
// compared lexicographically with a_0 most significant.
Poly smallest_irreducible(uint32_t p, uint32_t r) {
  uint64_t count = 1;
  for (uint32_t i = 0; i < r; ++i) count *= p;
  Poly f(r + 1, 0);
  f[r] = 1;
  for (uint64_t idx = 0; idx < count; ++idx) {
    uint64_t t = idx;
    for (uint32_t i = r; i-- > 0;) {
      f[i] = static_cast<uint32_t>(t % p);
      t /= p;
    }
    if (f[0] == 0) continue;
    if (is_irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field FieldCtx::make(uint32_t p, uint32_t r) {
  if (p == 2) throw std::invalid_argument("characteristic 2 is not supported");
  if (!is_prime(p)) throw std::invalid_argument("p must be prime: " + std::to_string(p));
  if (r < 1 || r > kMaxDegree)
    throw std::invalid_argument("extension degree must be in [1, 8]");
  uint64_t q = 1;
  for (uint32_t i = 0; i < r; ++i) {
    q *= p;
    if (q >= (uint64_t{1} << 31)) throw std::overflow_error("p^r exceeds 2^31");
  }
  return Field(new FieldCtx(p, r));
}

FieldCtx::FieldCtx(uint32_t p, uint32_t r) : p_(p), r_(r), q_(1), small_(p < (1u << 16)) {
  for (uint32_t i = 0; i < r; ++i) {
    pw_.push_back(q_);
    q_ *= p;
  }
  if (small_) fastmod_m_ = std::numeric_limits<uint64_t>::max() / p + 1;
  if (r == 1) {
    modulus_ = {0, 1};
  } else {
    modulus_ = smallest_irreducible(p, r);
    if (q_ <= (1u << 20)) build_tables();
  }
  for (uint32_t a = 2; a < q_; ++a) {
    if (legendre(a) == -1) {
      nonresidue_ = a;
      break;
    }
  }
}

void FieldCtx::build_tables() {
  const uint32_t order = q_ - 1;
  const auto factors = prime_factors(order);
  uint32_t gen = 0;
  for (uint32_t g = 2; g < q_ && gen == 0; ++g) {
    bool primitive = true;
    for (uint64_t l : factors) {
      uint64_t e = order / l;
      uint32_t acc = 1, base = g;
      while (e) {
        if (e & 1) acc = poly_mul(acc, base);
        base = poly_mul(base, base);
        e >>= 1;
      }
      if (acc == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) gen = g;
  }
  log_.assign(q_, 0);
  exp_.assign(2 * static_cast<size_t>(order), 0);
  uint32_t x = 1;
  for (uint32_t i = 0; i < order; ++i) {
    exp_[i] = x;
    exp_[i + order] = x;
    log_[x] = i;
    x = poly_mul(x, gen);
  }
}

uint32_t FieldCtx::digit(uint32_t a, uint32_t i) const {
  return (a / pw_[i]) % p_;
}

bool FieldCtx::lex_less(uint32_t a, uint32_t b) const {
  for (uint32_t i = 0; i < r_; ++i) {
    uint32_t da = digit(a, i), db = digit(b, i);
    if (da != db) return da < db;
  }
  return false;
}

uint32_t FieldCtx::ext_add(uint32_t a, uint32_t b) const {
  uint32_t out = 0;
  for (uint32_t i = 0; i < r_; ++i) {
    uint32_t s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    out += s * pw_[i];
    a /= p_;
    b /= p_;
  }
  return out;
}

uint32_t FieldCtx::ext_sub(uint32_t a, uint32_t b) const {
  uint32_t out = 0;
  for (uint32_t i = 0; i < r_; ++i) {
    uint32_t da = a % p_, db = b % p_;
    out += (da >= db ? da - db : da + p_ - db) * pw_[i];
    a /= p_;
    b /= p_;
  }
  return out;
}

uint32_t FieldCtx::poly_mul(uint32_t a, uint32_t b) const {
  uint64_t da[kMaxDegree], db[kMaxDegree], prod[2 * kMaxDegree] = {};
  for (uint32_t i = 0; i < r_; ++i) {
    da[i] = a % p_;
    db[i] = b % p_;
    a /= p_;
    b /= p_;
  }
  for (uint32_t i = 0; i < r_; ++i)
    for (uint32_t j = 0; j < r_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
  for (uint32_t k = 2 * r_ - 1; k-- > r_;) {
    const uint64_t c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    // x^k = x^{k-r} * (x^r) and x^r = -sum m_i x^i
    for (uint32_t i = 0; i < r_; ++i)
      prod[k - r_ + i] = (prod[k - r_ + i] + (p_ - modulus_[i]) * c) % p_;
  }
  uint32_t out = 0;
  for (uint32_t i = 0; i < r_; ++i) out += static_cast<uint32_t>(prod[i]) * pw_[i];
  return out;
}

uint32_t FieldCtx::ext_mul(uint32_t a, uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  if (!exp_.empty()) return exp_[log_[a] + log_[b]];
  return poly_mul(a, b);
}

uint32_t FieldCtx::inv(uint32_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  if (r_ == 1) {
    int64_t t = 0, new_t = 1, rr = p_, new_r = a;
    while (new_r != 0) {
      int64_t quot = rr / new_r;
      t -= quot * new_t;
      std::swap(t, new_t);
      rr -= quot * new_r;
      std::swap(rr, new_r);
    }
    return static_cast<uint32_t>(t < 0 ? t + p_ : t);
  }
  if (!exp_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  return pow(a, q_ - 2);
}

uint32_t FieldCtx::pow(uint32_t a, uint64_t e) const {
  uint32_t acc = 1;
  while (e) {
    if (e & 1) acc = mul(acc, a);
    a = mul(a, a);
    e >>= 1;
  }
  return acc;
}

uint32_t FieldCtx::from_int(int64_t v) const {
  int64_t m = v % static_cast<int64_t>(p_);
  if (m < 0) m += p_;
  return static_cast<uint32_t>(m);
}

int FieldCtx::legendre(uint32_t a) const {
  if (a == 0) return 0;
  return pow(a, (q_ - 1) / 2) == 1 ? 1 : -1;
}

std::optional<uint32_t> FieldCtx::sqrt(uint32_t a) const {
  if (a == 0) return 0u;
  if (legendre(a) != 1) return std::nullopt;
  // Tonelli-Shanks
  uint64_t odd = q_ - 1;
  uint32_t twos = 0;
  while ((odd & 1) == 0) {
    odd >>= 1;
    ++twos;
  }
  uint32_t x;
  if (twos == 1) {
    x = pow(a, (q_ + 1) / 4);
  } else {
    uint32_t m = twos;
    uint32_t c = pow(nonresidue_, odd);
    uint32_t t = pow(a, odd);
    x = pow(a, (odd + 1) / 2);
    while (t != 1) {
      uint32_t i = 0, t2 = t;
      while (t2 != 1) {
        t2 = mul(t2, t2);
        ++i;
      }
      uint32_t b = c;
      for (uint32_t k = 0; k + i + 1 < m; ++k) b = mul(b, b);
      m = i;
      c = mul(b, b);
      t = mul(t, c);
      x = mul(x, b);
    }
  }
  const uint32_t other = neg(x);
  if (r_ == 1) return std::min(x, other);
  return lex_less(other, x) ? other : x;
}

Fq FieldCtx::zero() const { return Fq(*this, 0); }
Fq FieldCtx::one() const { return Fq(*this, 1); }
Fq FieldCtx::operator()(int64_t v) const { return Fq(*this, from_int(v)); }
Fq FieldCtx::element(uint32_t rep) const { return Fq(*this, rep); }

std::vector<Fq> FieldCtx::elements() const {
  std::vector<Fq> out;
  out.reserve(q_);
  for (uint32_t a = 0; a < q_; ++a) out.emplace_back(*this, a);
  return out;
}

std::string FieldCtx::describe() const {
  std::string s = "F_" + std::to_string(q_);
  if (r_ > 1) {
    s += " = F_" + std::to_string(p_) + "[T]/(";
    bool first = true;
    for (uint32_t i = r_ + 1; i-- > 0;) {
      if (modulus_[i] == 0) continue;
      if (!first) s += " + ";
      first = false;
      if (modulus_[i] != 1 || i == 0) s += std::to_string(modulus_[i]);
      if (i >= 1) s += "T";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    s += ")";
  }
  return s;
}

Fq::Fq(const FieldCtx& f, uint32_t rep) : f_(&f), v_(rep) {
  if (rep >= f.q()) throw std::invalid_argument("element rep out of range");
}

const FieldCtx& Fq::field() const {
  if (!f_) throw std::invalid_argument("element has no field context");
  return *f_;
}

const FieldCtx& Fq::checked(const Fq& o) const {
  if (!f_ || f_ != o.f_) throw std::invalid_argument("mixed field contexts");
  return *f_;
}

Fq Fq::inv() const { return Fq(field(), field().inv(v_)); }
Fq Fq::pow(uint64_t e) const { return Fq(field(), field().pow(v_, e)); }
int Fq::legendre() const { return field().legendre(v_); }

std::optional<Fq> Fq::sqrt() const {
  auto root = field().sqrt(v_);
  if (!root) return std::nullopt;
  return Fq(*f_, *root);
}

Fq& Fq::operator+=(const Fq& o) {
  v_ = checked(o).add(v_, o.v_);
  return *this;
}
Fq& Fq::operator-=(const Fq& o) {
  v_ = checked(o).sub(v_, o.v_);
  return *this;
}
Fq& Fq::operator*=(const Fq& o) {
  v_ = checked(o).mul(v_, o.v_);
  return *this;
}
Fq& Fq::operator/=(const Fq& o) {
  const FieldCtx& f = checked(o);
  v_ = f.mul(v_, f.inv(o.v_));
  return *this;
}
Fq Fq::operator-() const { return Fq(field(), f_->neg(v_)); }

}  // namespace poncelet
