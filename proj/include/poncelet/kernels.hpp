#pragma once

// Rep-level arithmetic on raw field representatives. Used by the checked
// Fq-level API and by the census inner loops, so there is one code path for
// the closure predicates.

#include <array>
#include <cstdint>

#include "poncelet/gf.hpp"

namespace poncelet::kernel {

/// Upper triangle (m00, m01, m02, m11, m12, m22) with cached det and adjugate.
struct ConicRep {
  std::array<uint32_t, 6> m{};
  std::array<uint32_t, 6> adj{};
  uint32_t det = 0;
};

inline uint32_t mul_add(const FieldCtx& f, uint32_t acc, uint32_t a, uint32_t b) {
  return f.add(acc, f.mul(a, b));
}

inline void fill_adjugate(const FieldCtx& f, ConicRep& c) {
  const auto& [a, b, cc, d, e, g] = c.m;
  c.adj[0] = f.sub(f.mul(d, g), f.mul(e, e));
  c.adj[1] = f.sub(f.mul(cc, e), f.mul(b, g));
  c.adj[2] = f.sub(f.mul(b, e), f.mul(cc, d));
  c.adj[3] = f.sub(f.mul(a, g), f.mul(cc, cc));
  c.adj[4] = f.sub(f.mul(b, cc), f.mul(a, e));
  c.adj[5] = f.sub(f.mul(a, d), f.mul(b, b));
  // det = row 0 of m against row 0 of adj
  c.det = f.add(f.add(f.mul(a, c.adj[0]), f.mul(b, c.adj[1])), f.mul(cc, c.adj[2]));
}

inline ConicRep make_conic_rep(const FieldCtx& f, const std::array<uint32_t, 6>& m) {
  ConicRep c;
  c.m = m;
  fill_adjugate(f, c);
  return c;
}

/// tr(X Y) for symmetric X, Y given as upper triangles.
inline uint32_t trace_product(const FieldCtx& f, const std::array<uint32_t, 6>& x,
                              const std::array<uint32_t, 6>& y) {
  uint32_t diag = f.add(f.add(f.mul(x[0], y[0]), f.mul(x[3], y[3])), f.mul(x[5], y[5]));
  uint32_t off = f.add(f.add(f.mul(x[1], y[1]), f.mul(x[2], y[2])), f.mul(x[4], y[4]));
  return f.add(diag, f.add(off, off));
}

/// Coefficients c0..c3 of det(tA + B).
inline std::array<uint32_t, 4> char_cubic(const FieldCtx& f, const ConicRep& a,
                                          const ConicRep& b) {
  return {b.det, trace_product(f, b.adj, a.m), trace_product(f, a.adj, b.m), a.det};
}

inline uint32_t cubic_disc(const FieldCtx& f, const std::array<uint32_t, 4>& c) {
  const uint32_t c0 = c[0], c1 = c[1], c2 = c[2], c3 = c[3];
  const uint32_t c1c2 = f.mul(c1, c2);
  const uint32_t c0c3 = f.mul(c0, c3);
  uint32_t acc = f.mul(f.from_int(18), f.mul(c1c2, c0c3));
  acc = f.sub(acc, f.mul(f.from_int(4), f.mul(f.mul(f.sqr(c2), c2), c0)));
  acc = f.add(acc, f.sqr(c1c2));
  acc = f.sub(acc, f.mul(f.from_int(4), f.mul(f.mul(f.sqr(c1), c1), c3)));
  acc = f.sub(acc, f.mul(f.from_int(27), f.sqr(c0c3)));
  return acc;
}

/// 4 c0 c2 - c1^2; vanishes iff h2 does.
inline uint32_t triangle_numerator(const FieldCtx& f, const std::array<uint32_t, 4>& c) {
  return f.sub(f.mul(f.from_int(4), f.mul(c[0], c[2])), f.sqr(c[1]));
}

/// h1..h8 of sqrt(Delta / c0) = 1 + h1 t + ... ; requires c0 != 0.
/// As sqrt_series, with ic0 = 1 / c0 supplied by the caller.
inline std::array<uint32_t, 8> sqrt_series_inv(const FieldCtx& f, const std::array<uint32_t, 4>& c,
                                               uint32_t ic0, uint32_t inv2) {
  const uint32_t e[4] = {0, f.mul(c[1], ic0), f.mul(c[2], ic0), f.mul(c[3], ic0)};
  std::array<uint32_t, 9> h{};
  h[0] = 1;
  for (int k = 1; k <= 8; ++k) {
    uint32_t acc = k <= 3 ? e[k] : 0;
    // sum_{i=1}^{k-1} h_i h_{k-i}, pairing symmetric terms
    uint32_t cross = 0;
    for (int i = 1; 2 * i < k; ++i) cross = mul_add(f, cross, h[i], h[k - i]);
    cross = f.add(cross, cross);
    if (k % 2 == 0) cross = f.add(cross, f.sqr(h[k / 2]));
    h[k] = f.mul(f.sub(acc, cross), inv2);
  }
  return {h[1], h[2], h[3], h[4], h[5], h[6], h[7], h[8]};
}

inline std::array<uint32_t, 8> sqrt_series(const FieldCtx& f, const std::array<uint32_t, 4>& c,
                                           uint32_t inv2) {
  return sqrt_series_inv(f, c, f.inv(c[0]), inv2);
}

inline uint32_t det2(const FieldCtx& f, uint32_t a, uint32_t b, uint32_t c, uint32_t d) {
  return f.sub(f.mul(a, d), f.mul(b, c));
}

/// Determinant of the k x k Hankel matrix [h_{start+i+j}], k in 1..4, with
/// h given as h1..h8 (so h_j = series[j-1]).
inline uint32_t hankel_det(const FieldCtx& f, const std::array<uint32_t, 8>& series, int start,
                           int k) {
  auto h = [&](int j) { return series[j - 1]; };
  const int s = start;
  switch (k) {
    case 1:
      return h(s);
    case 2:
      return det2(f, h(s), h(s + 1), h(s + 1), h(s + 2));
    case 3: {
      // rows (a b c) (b c d) (c d e)
      const uint32_t a = h(s), b = h(s + 1), c = h(s + 2), d = h(s + 3), e = h(s + 4);
      uint32_t acc = f.mul(a, det2(f, c, d, d, e));
      acc = f.sub(acc, f.mul(b, det2(f, b, d, c, e)));
      acc = f.add(acc, f.mul(c, det2(f, b, c, c, d)));
      return acc;
    }
    case 4: {
      uint32_t m[4][4];
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m[i][j] = h(s + i + j);
      // Laplace expansion along the first two rows
      static constexpr int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
      uint32_t acc = 0;
      for (int top = 0; top < 6; ++top) {
        const int c0 = pairs[top][0], c1 = pairs[top][1];
        const int bottom = 5 - top;  // complementary column pair
        const int d0 = pairs[bottom][0], d1 = pairs[bottom][1];
        const uint32_t upper = det2(f, m[0][c0], m[0][c1], m[1][c0], m[1][c1]);
        const uint32_t lower = det2(f, m[2][d0], m[2][d1], m[3][d0], m[3][d1]);
        const uint32_t term = f.mul(upper, lower);
        // sign (-1)^(0 + 1 + c0 + c1)
        acc = ((c0 + c1 + 1) % 2 == 0) ? f.add(acc, term) : f.sub(acc, term);
      }
      return acc;
    }
    default:
      return 0;
  }
}

/// Hankel block (first index, size) of the closure condition for n in 3..9.
struct HankelShape {
  int start;
  int size;
};

constexpr HankelShape ngon_shape(int n) {
  // odd n = 2m+1: m x m on h2..h_{2m}; even n = 2m: (m-1) x (m-1) on h3..h_{2m-1}
  return n % 2 == 1 ? HankelShape{2, (n - 1) / 2} : HankelShape{3, n / 2 - 1};
}

inline bool ngon_holds(const FieldCtx& f, const std::array<uint32_t, 8>& h, int n) {
  const HankelShape shape = ngon_shape(n);
  return hankel_det(f, h, shape.start, shape.size) == 0;
}

/// Bit n set iff the n-gon condition holds, n in 3..9. Requires c0 != 0.
inline uint32_t ngon_mask(const FieldCtx& f, const std::array<uint32_t, 4>& c, uint32_t inv2,
                          int n_max = 9) {
  const auto h = sqrt_series(f, c, inv2);
  uint32_t mask = 0;
  for (int n = 3; n <= n_max; ++n) {
    const HankelShape shape = ngon_shape(n);
    if (hankel_det(f, h, shape.start, shape.size) == 0) mask |= 1u << n;
  }
  return mask;
}

}  // namespace poncelet::kernel
