#include "poncelet/cayley.hpp"

#include <stdexcept>

#include "poncelet/kernels.hpp"

namespace poncelet {

namespace {

std::array<uint32_t, 4> reps(const CharCubic& d) {
  return {d.c0.rep(), d.c1.rep(), d.c2.rep(), d.c3.rep()};
}

const FieldCtx& field_of(const CharCubic& d) {
  const FieldCtx& f = d.c0.field();
  if (d.c1.field_ptr() != &f || d.c2.field_ptr() != &f || d.c3.field_ptr() != &f)
    throw std::invalid_argument("cubic coefficients from different fields");
  return f;
}

void require_c0(const CharCubic& d) {
  if (d.c0.is_zero()) throw std::domain_error("series needs c0 != 0");
}

void require_n(int n) {
  if (n < kMinNgon || n > kMaxNgon) throw std::invalid_argument("n must lie in 3..9");
}

uint32_t inv2(const FieldCtx& f) { return f.inv(f.from_int(2)); }

}  // namespace

SqrtSeries sqrt_series(const CharCubic& d) {
  const FieldCtx& f = field_of(d);
  require_c0(d);
  const auto h = kernel::sqrt_series(f, reps(d), inv2(f));
  SqrtSeries out;
  for (int i = 0; i < 8; ++i) out.h[i] = f.element(h[i]);
  return out;
}

Fq hankel_det(const SqrtSeries& s, int start, int size) {
  if (size < 1 || size > 4 || start < 1 || start + 2 * (size - 1) > 8)
    throw std::invalid_argument("Hankel block outside h1..h8");
  const FieldCtx& f = s.h[0].field();
  std::array<uint32_t, 8> h;
  for (int i = 0; i < 8; ++i) h[i] = s.h[i].rep();
  return f.element(kernel::hankel_det(f, h, start, size));
}

bool ngon_condition(const CharCubic& d, int n) {
  require_n(n);
  return (ngon_mask(d) >> n) & 1u;
}

bool ngon_condition(const Conic& a, const Conic& b, int n) {
  require_n(n);
  if (!is_transversal(a, b)) throw std::invalid_argument("ngon_condition: pair is not transversal");
  return ngon_condition(char_cubic(a, b), n);
}

uint32_t ngon_mask(const CharCubic& d) {
  const FieldCtx& f = field_of(d);
  require_c0(d);
  return kernel::ngon_mask(f, reps(d), inv2(f));
}

Fq triangle_numerator(const CharCubic& d) {
  const FieldCtx& f = field_of(d);
  return f.element(kernel::triangle_numerator(f, reps(d)));
}

bool triangle_condition_fast(const CharCubic& d) {
  require_c0(d);
  return triangle_numerator(d).is_zero();
}

Class3Reference class3_reference_polys(const Fq& r, const Fq& s) {
  const FieldCtx& f = r.field();
  const Fq s2 = s * s;
  const Fq h2 = r * r + (f(6) * s2 - f(4) * s2 * s - f(4) * s) * r + s2 * s2;
  const Fq sm1 = s - f.one();
  const Fq e = f(16) * s2 * sm1 * sm1;
  const Fq ff = s2 - s + f.one();
  return {h2, e * ff, e, ff};
}

Fq class3_square_sextic(const Fq& r, const Fq& s) {
  const FieldCtx& f = r.field();
  const Fq s2 = s * s, s4 = s2 * s2, r2 = r * r;
  return s4 * s2 - (r + r + f(2)) * s4 * s + f(5) * r * s4 - f(5) * r2 * s2 +
         (f(2) * r2 * r + f(2) * r2) * s - r2 * r;
}

Fq RQuadratic::disc() const { return b * b - a.field()(4) * a * c; }

RQuadratic triangle_quadratic_in_r(const Pencil& pencil, const Fq& s) {
  const FieldCtx& f = pencil.field();
  const SymMat b = pencil.member_matrix(s);
  Fq n[3];
  for (int r = 0; r < 3; ++r)
    n[r] = triangle_numerator(char_cubic(pencil.member_matrix(f(r)), b));
  // through (0, n0), (1, n1), (2, n2)
  const Fq a = (n[2] - n[1] - n[1] + n[0]) * f(2).inv();
  return {a, n[1] - n[0] - a, n[0]};
}

}  // namespace poncelet
