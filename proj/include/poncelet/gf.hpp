#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace poncelet {

class Fq;
class FieldCtx;

using Field = std::shared_ptr<const FieldCtx>;

/// Finite field F_q, q = p^r with p an odd prime.
///
/// Elements are stored as canonical integer representatives: for r = 1 the
/// residue in [0, p); for r > 1 the base-p encoding sum(a_i p^i) of the
/// coefficient vector (a_0, ..., a_{r-1}) modulo the context's modulus.
/// The prime subfield therefore occupies reps [0, p).
///
/// The rep-level methods (add, mul, ...) are unchecked and meant for hot
/// loops; the checked value type is Fq.
class FieldCtx {
 public:
  static constexpr uint32_t kMaxDegree = 8;

  /// Throws std::invalid_argument for non-prime or even p, r outside
  /// [1, kMaxDegree]; std::overflow_error when p^r >= 2^31.
  static Field make(uint32_t p, uint32_t r = 1);

  FieldCtx(const FieldCtx&) = delete;
  FieldCtx& operator=(const FieldCtx&) = delete;

  uint32_t p() const { return p_; }
  uint32_t r() const { return r_; }
  uint32_t q() const { return q_; }
  bool is_prime_field() const { return r_ == 1; }

  /// Monic modulus, low-degree coefficient first (size r + 1). For r = 1 it
  /// is the trivial polynomial x.
  std::span<const uint32_t> modulus() const { return modulus_; }

  uint32_t add(uint32_t a, uint32_t b) const {
    if (r_ == 1) {
      uint32_t s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    return ext_add(a, b);
  }
  uint32_t sub(uint32_t a, uint32_t b) const {
    if (r_ == 1) return a >= b ? a - b : a + p_ - b;
    return ext_sub(a, b);
  }
  uint32_t neg(uint32_t a) const {
    if (r_ == 1) return a == 0 ? 0 : p_ - a;
    return ext_sub(0, a);
  }
  uint32_t mul(uint32_t a, uint32_t b) const {
    if (r_ == 1) return reduce(static_cast<uint64_t>(a) * b);
    return ext_mul(a, b);
  }
  uint32_t sqr(uint32_t a) const { return mul(a, a); }

  /// Throws std::domain_error for a = 0.
  uint32_t inv(uint32_t a) const;
  uint32_t pow(uint32_t a, uint64_t e) const;
  uint32_t from_int(int64_t v) const;

  int legendre(uint32_t a) const;
  std::optional<uint32_t> sqrt(uint32_t a) const;

  /// i-th coefficient of the element's polynomial representative.
  uint32_t digit(uint32_t a, uint32_t i) const;
  /// Lexicographic order on coefficient vectors, low degree compared first.
  bool lex_less(uint32_t a, uint32_t b) const;

  Fq zero() const;
  Fq one() const;
  Fq operator()(int64_t v) const;
  Fq element(uint32_t rep) const;
  /// All q elements in rep order.
  std::vector<Fq> elements() const;

  std::string describe() const;

 private:
  FieldCtx(uint32_t p, uint32_t r);

  uint32_t reduce(uint64_t x) const {
    if (small_) {
      // Lemire fastmod; valid for x < 2^32.
      uint64_t low = fastmod_m_ * static_cast<uint32_t>(x);
      return static_cast<uint32_t>((static_cast<__uint128_t>(low) * p_) >> 64);
    }
    return static_cast<uint32_t>(x % p_);
  }

  uint32_t ext_add(uint32_t a, uint32_t b) const;
  uint32_t ext_sub(uint32_t a, uint32_t b) const;
  uint32_t ext_mul(uint32_t a, uint32_t b) const;
  uint32_t poly_mul(uint32_t a, uint32_t b) const;
  void build_tables();

  uint32_t p_;
  uint32_t r_;
  uint32_t q_;
  bool small_;
  uint64_t fastmod_m_ = 0;
  std::vector<uint32_t> modulus_;
  std::vector<uint32_t> pw_;  // p^i
  // log/antilog tables for extension fields; exp_ has length 2(q-1).
  std::vector<uint32_t> log_;
  std::vector<uint32_t> exp_;
  uint32_t nonresidue_ = 0;
};

/// Element of F_q bound to its context. Arithmetic across different contexts
/// (or on a default-constructed element) throws std::invalid_argument.
class Fq {
 public:
  Fq() = default;
  Fq(const FieldCtx& f, uint32_t rep);

  const FieldCtx& field() const;
  const FieldCtx* field_ptr() const { return f_; }
  uint32_t rep() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Fq inv() const;
  Fq pow(uint64_t e) const;
  int legendre() const;
  std::optional<Fq> sqrt() const;

  Fq& operator+=(const Fq& o);
  Fq& operator-=(const Fq& o);
  Fq& operator*=(const Fq& o);
  Fq& operator/=(const Fq& o);

  friend Fq operator+(Fq a, const Fq& b) { return a += b; }
  friend Fq operator-(Fq a, const Fq& b) { return a -= b; }
  friend Fq operator*(Fq a, const Fq& b) { return a *= b; }
  friend Fq operator/(Fq a, const Fq& b) { return a /= b; }
  Fq operator-() const;

  friend bool operator==(const Fq& a, const Fq& b) {
    return a.f_ == b.f_ && a.v_ == b.v_;
  }
  /// Rep order; only meaningful within one context.
  friend std::strong_ordering operator<=>(const Fq& a, const Fq& b) {
    return a.v_ <=> b.v_;
  }

  std::string str() const { return std::to_string(v_); }

 private:
  const FieldCtx& checked(const Fq& o) const;

  const FieldCtx* f_ = nullptr;
  uint32_t v_ = 0;
};

/// Field constructor matching the library's naming of operations.
inline Field field_new(uint32_t p, uint32_t r = 1) { return FieldCtx::make(p, r); }

inline Fq add(const Fq& a, const Fq& b) { return a + b; }
inline Fq sub(const Fq& a, const Fq& b) { return a - b; }
inline Fq mul(const Fq& a, const Fq& b) { return a * b; }
inline Fq neg(const Fq& a) { return -a; }
inline Fq inv(const Fq& a) { return a.inv(); }
inline Fq pow(const Fq& a, uint64_t e) { return a.pow(e); }
inline int legendre(const Fq& a) { return a.legendre(); }
inline std::optional<Fq> sqrt(const Fq& a) { return a.sqrt(); }

bool is_prime(uint64_t n);

}  // namespace poncelet
