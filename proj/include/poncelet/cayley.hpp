#pragma once

#include <array>
#include <cstdint>

#include "poncelet/pencil.hpp"

namespace poncelet {

/// h1..h8 of sqrt(Delta(t) / c0) = 1 + h1 t + ... + h8 t^8 + O(t^9).
struct SqrtSeries {
  std::array<Fq, 8> h;
  /// h_k for k in 1..8.
  const Fq& operator[](int k) const { return h.at(k - 1); }
};

constexpr int kMinNgon = 3;
constexpr int kMaxNgon = 9;

/// Throws std::domain_error when c0 = 0.
SqrtSeries sqrt_series(const CharCubic& d);

/// det [h_{start+i+j}], 0 <= i, j < size; size in 1..4, start + 2(size-1) <= 8.
Fq hankel_det(const SqrtSeries& s, int start, int size);

/// Closure condition for n-gons, n in 3..9, on the normalized series.
/// Throws std::domain_error for c0 = 0, std::invalid_argument for n out of range.
bool ngon_condition(const CharCubic& d, int n);

/// Requires A, B nonsingular and transversal; throws std::invalid_argument otherwise.
bool ngon_condition(const Conic& a, const Conic& b, int n);

/// Bit n set iff the n-gon condition holds, for n in 3..9.
uint32_t ngon_mask(const CharCubic& d);

/// 4 c0 c2 - c1^2.
Fq triangle_numerator(const CharCubic& d);
/// Same truth value as ngon_condition(d, 3). Throws std::domain_error for c0 = 0.
bool triangle_condition_fast(const CharCubic& d);

/// Closed forms on the C_alpha pencil, A = C_r, B = C_s.
struct Class3Reference {
  Fq h2;     // r^2 + (6s^2 - 4s^3 - 4s) r + s^4
  Fq delta;  // e * f
  Fq e;      // 16 s^2 (s-1)^2
  Fq f;      // s^2 - s + 1
};
Class3Reference class3_reference_polys(const Fq& r, const Fq& s);

/// s^6 - (2r+2) s^5 + 5 r s^4 - 5 r^2 s^2 + (2r^3 + 2r^2) s - r^3.
Fq class3_square_sextic(const Fq& r, const Fq& s);

/// The triangle numerator for A = r F + G, B = s F + G as a quadratic
/// a r^2 + b r + c in r, with B fixed.
struct RQuadratic {
  Fq a, b, c;
  Fq disc() const;
};
RQuadratic triangle_quadratic_in_r(const Pencil& pencil, const Fq& s);

}  // namespace poncelet
