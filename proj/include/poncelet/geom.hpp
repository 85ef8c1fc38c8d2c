#pragma once

#include <array>
#include <compare>
#include <string>
#include <vector>

#include "poncelet/gf.hpp"

namespace poncelet {

using Vec3 = std::array<Fq, 3>;
using Mat3 = std::array<std::array<Fq, 3>, 3>;

/// Symmetric 3x3 matrix stored as its upper triangle
/// (m00, m01, m02, m11, m12, m22). Not normalized.
struct SymMat {
  std::array<Fq, 6> e;

  static constexpr int index(int i, int j) {
    if (i > j) std::swap(i, j);
    return i == 0 ? j : (i == 1 ? 2 + j : 5);
  }
  const Fq& at(int i, int j) const { return e[index(i, j)]; }
  const FieldCtx& field() const { return e[0].field(); }

  /// Matrix of the quadratic form
  ///   xx x^2 + yy y^2 + zz z^2 + xy xy + xz xz + yz yz
  /// with diagonal entries 2*coefficient and off-diagonal entries equal to
  /// the full cross-term coefficient (twice the Gram matrix).
  static SymMat from_form(const Fq& xx, const Fq& yy, const Fq& zz, const Fq& xy, const Fq& xz,
                          const Fq& yz);
  static SymMat from_matrix(const Mat3& m);

  friend SymMat operator+(const SymMat& a, const SymMat& b);
  friend SymMat operator*(const Fq& s, const SymMat& a);
  friend bool operator==(const SymMat&, const SymMat&) = default;
};

Fq det(const SymMat& m);
SymMat adjugate(const SymMat& m);
Vec3 apply(const SymMat& m, const Vec3& v);
Fq bilinear(const SymMat& m, const Vec3& u, const Vec3& v);
Fq quad_form(const SymMat& m, const Vec3& v);
Vec3 cross(const Vec3& a, const Vec3& b);

namespace detail {

/// Projective triple normalized so the first nonzero coordinate is 1.
class NormalizedTriple {
 public:
  const Vec3& coords() const { return c_; }
  const Fq& operator[](int i) const { return c_[i]; }
  const FieldCtx& field() const { return c_[0].field(); }
  /// "[x,y,z]" with canonical integer representatives.
  std::string str() const;

 protected:
  NormalizedTriple() = default;
  explicit NormalizedTriple(const Vec3& v);
  Vec3 c_;
};

}  // namespace detail

class PPoint : public detail::NormalizedTriple {
 public:
  PPoint() = default;
  /// Throws std::invalid_argument when all coordinates vanish.
  explicit PPoint(const Vec3& v) : NormalizedTriple(v) {}
  static PPoint of(const FieldCtx& f, int64_t x, int64_t y, int64_t z);

  friend bool operator==(const PPoint& a, const PPoint& b) { return a.c_ == b.c_; }
  friend std::strong_ordering operator<=>(const PPoint& a, const PPoint& b) {
    return a.c_ <=> b.c_;
  }
};

/// The line u x + v y + w z = 0.
class PLine : public detail::NormalizedTriple {
 public:
  PLine() = default;
  explicit PLine(const Vec3& v) : NormalizedTriple(v) {}
  static PLine of(const FieldCtx& f, int64_t u, int64_t v, int64_t w);

  friend bool operator==(const PLine& a, const PLine& b) { return a.c_ == b.c_; }
  friend std::strong_ordering operator<=>(const PLine& a, const PLine& b) {
    return a.c_ <=> b.c_;
  }
};

/// Projective conic, matrix normalized so the first nonzero upper-triangle
/// entry (row-major) equals 1.
class Conic {
 public:
  Conic() = default;
  /// Throws std::invalid_argument for the zero matrix.
  explicit Conic(const SymMat& m);
  static Conic from_form(const Fq& xx, const Fq& yy, const Fq& zz, const Fq& xy, const Fq& xz,
                         const Fq& yz) {
    return Conic(SymMat::from_form(xx, yy, zz, xy, xz, yz));
  }

  const SymMat& matrix() const { return m_; }
  const Fq& det() const { return det_; }
  bool nonsingular() const { return nonsingular_; }
  const FieldCtx& field() const { return m_.field(); }
  std::string str() const;

  friend bool operator==(const Conic& a, const Conic& b) { return a.m_ == b.m_; }

 private:
  SymMat m_;
  Fq det_;
  bool nonsingular_ = false;
};

/// C_alpha : alpha xy + (1 - alpha) xz - yz = 0, the pencil through
/// [1,0,0], [0,1,0], [0,0,1], [1,1,1].
Conic c_alpha(const Fq& alpha);

Fq det3(const Conic& c);
bool on_conic(const PPoint& p, const Conic& c);
bool incident(const PPoint& p, const PLine& l);

/// Polar line C.P; the tangent at P when P lies on C. Requires C nonsingular.
PLine polar_line(const PPoint& p, const Conic& c);

/// All rational points of L on C, sorted. A single point means tangency (or
/// a double root); all q+1 points of L when L is a component of C.
std::vector<PPoint> line_conic_intersect(const PLine& l, const Conic& c);

/// The other point of L on C, or P itself when L is tangent at P.
/// Requires P on C and on L.
PPoint second_intersection(const PPoint& p, const PLine& l, const Conic& c);

/// Throws std::invalid_argument for P = Q.
PLine line_through(const PPoint& p, const PPoint& q);

/// The q+1 rational points of a nonsingular conic, sorted.
std::vector<PPoint> conic_points(const Conic& c);

/// The conic with matrix M^T C M. Throws for singular M.
Conic congruence_transform(const Conic& c, const Mat3& m);

/// Two points spanning L.
std::array<Vec3, 2> line_basis(const PLine& l);

}  // namespace poncelet
