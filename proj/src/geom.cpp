#include "poncelet/geom.hpp"

#include <algorithm>
#include <stdexcept>

namespace poncelet {

SymMat SymMat::from_form(const Fq& xx, const Fq& yy, const Fq& zz, const Fq& xy, const Fq& xz,
                         const Fq& yz) {
  return SymMat{{xx + xx, xy, xz, yy + yy, yz, zz + zz}};
}

SymMat SymMat::from_matrix(const Mat3& m) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (m[i][j] != m[j][i]) throw std::invalid_argument("matrix is not symmetric");
  return SymMat{{m[0][0], m[0][1], m[0][2], m[1][1], m[1][2], m[2][2]}};
}

SymMat operator+(const SymMat& a, const SymMat& b) {
  SymMat out;
  for (int i = 0; i < 6; ++i) out.e[i] = a.e[i] + b.e[i];
  return out;
}

SymMat operator*(const Fq& s, const SymMat& a) {
  SymMat out;
  for (int i = 0; i < 6; ++i) out.e[i] = s * a.e[i];
  return out;
}

Fq det(const SymMat& m) {
  const auto& [a, b, c, d, e, f] = m.e;
  return a * (d * f - e * e) - b * (b * f - e * c) + c * (b * e - d * c);
}

SymMat adjugate(const SymMat& m) {
  const auto& [a, b, c, d, e, f] = m.e;
  return SymMat{{d * f - e * e, c * e - b * f, b * e - c * d, a * f - c * c, b * c - a * e,
                 a * d - b * b}};
}

Vec3 apply(const SymMat& m, const Vec3& v) {
  Vec3 out;
  for (int i = 0; i < 3; ++i) out[i] = m.at(i, 0) * v[0] + m.at(i, 1) * v[1] + m.at(i, 2) * v[2];
  return out;
}

Fq bilinear(const SymMat& m, const Vec3& u, const Vec3& v) {
  const Vec3 mv = apply(m, v);
  return u[0] * mv[0] + u[1] * mv[1] + u[2] * mv[2];
}

Fq quad_form(const SymMat& m, const Vec3& v) { return bilinear(m, v, v); }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

namespace {

bool is_zero(const Vec3& v) { return v[0].is_zero() && v[1].is_zero() && v[2].is_zero(); }

Vec3 scaled(const Vec3& v, const Fq& s) { return {v[0] * s, v[1] * s, v[2] * s}; }

Vec3 combine(const Fq& a, const Vec3& u, const Fq& b, const Vec3& v) {
  return {a * u[0] + b * v[0], a * u[1] + b * v[1], a * u[2] + b * v[2]};
}

void require_nonsingular(const Conic& c) {
  if (!c.nonsingular()) throw std::invalid_argument("conic is singular");
}

}  // namespace

namespace detail {

NormalizedTriple::NormalizedTriple(const Vec3& v) {
  if (is_zero(v)) throw std::invalid_argument("projective triple is zero");
  for (const Fq& x : v) {
    if (!x.is_zero()) {
      c_ = scaled(v, x.inv());
      return;
    }
  }
}

std::string NormalizedTriple::str() const {
  return "[" + c_[0].str() + "," + c_[1].str() + "," + c_[2].str() + "]";
}

}  // namespace detail

PPoint PPoint::of(const FieldCtx& f, int64_t x, int64_t y, int64_t z) {
  return PPoint(Vec3{f(x), f(y), f(z)});
}

PLine PLine::of(const FieldCtx& f, int64_t u, int64_t v, int64_t w) {
  return PLine(Vec3{f(u), f(v), f(w)});
}

Conic::Conic(const SymMat& m) {
  const Fq* lead = nullptr;
  for (const Fq& x : m.e) {
    if (!x.is_zero()) {
      lead = &x;
      break;
    }
  }
  if (!lead) throw std::invalid_argument("conic matrix is zero");
  m_ = lead->inv() * m;
  det_ = poncelet::det(m_);
  nonsingular_ = !det_.is_zero();
}

std::string Conic::str() const {
  std::string s = "[";
  for (int i = 0; i < 3; ++i) {
    s += i ? ",[" : "[";
    for (int j = 0; j < 3; ++j) s += (j ? "," : "") + m_.at(i, j).str();
    s += "]";
  }
  return s + "]";
}

Conic c_alpha(const Fq& alpha) {
  const FieldCtx& f = alpha.field();
  const Fq zero = f.zero();
  return Conic::from_form(zero, zero, zero, alpha, f.one() - alpha, -f.one());
}

Fq det3(const Conic& c) { return c.det(); }

bool on_conic(const PPoint& p, const Conic& c) {
  return quad_form(c.matrix(), p.coords()).is_zero();
}

bool incident(const PPoint& p, const PLine& l) {
  const Vec3& a = p.coords();
  const Vec3& b = l.coords();
  return (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]).is_zero();
}

PLine polar_line(const PPoint& p, const Conic& c) {
  require_nonsingular(c);
  return PLine(apply(c.matrix(), p.coords()));
}

std::array<Vec3, 2> line_basis(const PLine& l) {
  const FieldCtx& f = l.field();
  const Fq zero = f.zero(), one = f.one();
  const Vec3& c = l.coords();
  if (!c[0].is_zero())  // u = 1
    return {Vec3{-c[1], one, zero}, Vec3{-c[2], zero, one}};
  if (!c[1].is_zero())  // u = 0, v = 1
    return {Vec3{one, zero, zero}, Vec3{zero, -c[2], one}};
  return {Vec3{one, zero, zero}, Vec3{zero, one, zero}};
}

std::vector<PPoint> line_conic_intersect(const PLine& l, const Conic& c) {
  const auto [u, v] = line_basis(l);
  const SymMat& m = c.matrix();
  // C(lambda u + mu v) = a lambda^2 + b lambda mu + cc mu^2
  const Fq a = quad_form(m, u);
  const Fq b = bilinear(m, u, v) + bilinear(m, u, v);
  const Fq cc = quad_form(m, v);
  const FieldCtx& f = l.field();
  std::vector<PPoint> out;
  if (a.is_zero() && b.is_zero() && cc.is_zero()) {
    out.emplace_back(u);
    for (const Fq& t : f.elements()) out.emplace_back(combine(t, u, f.one(), v));
  } else if (a.is_zero()) {
    out.emplace_back(u);  // (1:0)
    if (!b.is_zero()) out.emplace_back(combine(-cc / b, u, f.one(), v));
  } else {
    const Fq disc = b * b - f(4) * a * cc;
    if (auto root = disc.sqrt()) {
      const Fq denom = (a + a).inv();
      out.emplace_back(combine((-b + *root) * denom, u, f.one(), v));
      out.emplace_back(combine((-b - *root) * denom, u, f.one(), v));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PPoint second_intersection(const PPoint& p, const PLine& l, const Conic& c) {
  if (!on_conic(p, c) || !incident(p, l))
    throw std::invalid_argument("second_intersection: point must lie on conic and line");
  const auto basis = line_basis(l);
  // a basis vector not proportional to p
  const Vec3& other = is_zero(cross(basis[0], p.coords())) ? basis[1] : basis[0];
  const SymMat& m = c.matrix();
  // points p + t other: 2t B(p, other) + t^2 C(other) = 0
  const Fq pq = bilinear(m, p.coords(), other);
  const Fq qq = quad_form(m, other);
  const Vec3 x = combine(qq, p.coords(), -(pq + pq), other);
  if (is_zero(x)) throw std::invalid_argument("second_intersection: line lies on the conic");
  return PPoint(x);
}

PLine line_through(const PPoint& p, const PPoint& q) {
  if (p == q) throw std::invalid_argument("line_through: points coincide");
  return PLine(cross(p.coords(), q.coords()));
}

std::vector<PPoint> conic_points(const Conic& c) {
  require_nonsingular(c);
  const FieldCtx& f = c.field();
  const auto elems = f.elements();
  const Fq zero = f.zero(), one = f.one();
  const SymMat& m = c.matrix();

  // first rational point in canonical order: [0,0,1], [0,1,z], [1,y,z]
  std::optional<Vec3> first;
  if (quad_form(m, {zero, zero, one}).is_zero()) first = Vec3{zero, zero, one};
  for (size_t i = 0; !first && i < elems.size(); ++i) {
    Vec3 v{zero, one, elems[i]};
    if (quad_form(m, v).is_zero()) first = v;
  }
  for (size_t i = 0; !first && i < elems.size(); ++i) {
    for (size_t j = 0; !first && j < elems.size(); ++j) {
      Vec3 v{one, elems[i], elems[j]};
      if (quad_form(m, v).is_zero()) first = v;
    }
  }
  if (!first) throw std::logic_error("nonsingular conic without rational point");

  // project from the first point through the points of a line missing it
  const Vec3& p0 = *first;
  Vec3 n{zero, zero, zero};
  for (int i = 0; i < 3; ++i)
    if (!p0[i].is_zero()) {
      n[i] = one;
      break;
    }
  const auto [u, v] = line_basis(PLine(n));
  std::vector<PPoint> out;
  out.reserve(f.q() + 1);
  auto project = [&](const Vec3& q) {
    const Fq pq = bilinear(m, p0, q);
    const Fq qq = quad_form(m, q);
    out.emplace_back(combine(qq, p0, -(pq + pq), q));
  };
  project(u);
  for (const Fq& t : elems) project(combine(t, u, one, v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Conic congruence_transform(const Conic& c, const Mat3& m) {
  const Fq d = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  if (d.is_zero()) throw std::invalid_argument("congruence_transform: singular matrix");
  const FieldCtx& f = c.field();
  Mat3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Fq acc = f.zero();
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) acc += m[k][i] * c.matrix().at(k, l) * m[l][j];
      out[i][j] = acc;
    }
  return Conic(SymMat::from_matrix(out));
}

}  // namespace poncelet
