#include "poncelet/pencil.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "poncelet/rng.hpp"

namespace poncelet {

namespace {

Fq trace_product(const SymMat& x, const SymMat& y) {
  const auto& a = x.e;
  const auto& b = y.e;
  const Fq off = a[1] * b[1] + a[2] * b[2] + a[4] * b[4];
  return a[0] * b[0] + a[3] * b[3] + a[5] * b[5] + off + off;
}

bool quadratic_irreducible(const Fq& e) {
  // T^2 + T + e irreducible iff 1 - 4e is a non-square
  const FieldCtx& f = e.field();
  return (f.one() - f(4) * e).legendre() == -1;
}

bool cubic_has_root(const Fq& b, const Fq& c) {
  const FieldCtx& f = b.field();
  for (const Fq& t : f.elements())
    if ((((t + b) * t + c) * t + f.one()).is_zero()) return true;
  return false;
}

void require_eligible_field(const FieldCtx& f) {
  if (f.p() < 5) throw std::invalid_argument("Dickson classes require characteristic >= 5");
}

}  // namespace

CharCubic char_cubic(const SymMat& a, const SymMat& b) {
  return {det(b), trace_product(adjugate(b), a), trace_product(adjugate(a), b), det(a)};
}

CharCubic char_cubic(const Conic& a, const Conic& b) {
  return char_cubic(a.matrix(), b.matrix());
}

Fq cubic_disc(const CharCubic& d) {
  const FieldCtx& f = d.c0.field();
  const Fq &c0 = d.c0, &c1 = d.c1, &c2 = d.c2, &c3 = d.c3;
  return f(18) * c3 * c2 * c1 * c0 - f(4) * c2 * c2 * c2 * c0 + c2 * c2 * c1 * c1 -
         f(4) * c3 * c1 * c1 * c1 - f(27) * c3 * c3 * c0 * c0;
}

bool is_transversal(const Conic& a, const Conic& b) {
  if (!a.nonsingular() || !b.nonsingular())
    throw std::invalid_argument("is_transversal: conics must be nonsingular");
  if (a == b) throw std::invalid_argument("is_transversal: conics coincide");
  return !cubic_disc(char_cubic(a, b)).is_zero();
}

std::string to_string(DicksonTag tag) { return std::to_string(static_cast<int>(tag)); }

DicksonTag parse_dickson_tag(const std::string& s) {
  if (s == "3") return DicksonTag::C3;
  if (s == "14") return DicksonTag::C14;
  if (s == "16") return DicksonTag::C16;
  if (s == "18") return DicksonTag::C18;
  if (s == "19") return DicksonTag::C19;
  throw std::invalid_argument("unknown Dickson class: " + s);
}

size_t param_count(DicksonTag tag) {
  switch (tag) {
    case DicksonTag::C3:
      return 0;
    case DicksonTag::C14:
      return 1;
    case DicksonTag::C16:
    case DicksonTag::C18:
      return 2;
    case DicksonTag::C19:
      return 3;
  }
  return 0;
}

std::string DicksonClass::params_str() const {
  std::string s;
  for (size_t i = 0; i < params.size(); ++i) s += (i ? ";" : "") + params[i].str();
  return s;
}

bool params_valid(const DicksonClass& cls, const FieldCtx& f) {
  if (cls.params.size() != param_count(cls.tag)) return false;
  for (const Fq& x : cls.params)
    if (x.field_ptr() != &f) return false;
  const auto& v = cls.params;
  switch (cls.tag) {
    case DicksonTag::C3:
      return true;
    case DicksonTag::C14:
      return quadratic_irreducible(v[0]);
    case DicksonTag::C16:
      return quadratic_irreducible(v[0]) && quadratic_irreducible(v[1]);
    case DicksonTag::C18:
      return !cubic_has_root(v[0], v[1]);
    case DicksonTag::C19:
      return v[0].legendre() == -1 && (v[1] * v[1] - f(4) * v[0] * v[2] * v[2]).legendre() == -1;
  }
  return false;
}

Pencil::Pencil(SymMat f, SymMat g) : f_(std::move(f)), g_(std::move(g)) {
  const bool f_zero = std::all_of(f_.e.begin(), f_.e.end(), [](const Fq& x) { return x.is_zero(); });
  const bool g_zero = std::all_of(g_.e.begin(), g_.e.end(), [](const Fq& x) { return x.is_zero(); });
  if (f_zero || g_zero || Conic(f_) == Conic(g_))
    throw std::invalid_argument("pencil generators must be distinct conics");
}

SymMat Pencil::member_matrix(const std::optional<Fq>& eta) const {
  if (!eta) return f_;
  return *eta * f_ + g_;
}

Pencil dickson_generators(const DicksonClass& cls, const FieldCtx& f) {
  require_eligible_field(f);
  if (!params_valid(cls, f))
    throw std::invalid_argument("invalid parameters for class " + to_string(cls.tag));
  const Fq o = f.zero(), one = f.one();
  const auto& v = cls.params;
  switch (cls.tag) {
    case DicksonTag::C3:  // F = xy, G = z^2 + yz + xz
      return Pencil(SymMat::from_form(o, o, o, one, o, o), SymMat::from_form(o, o, one, o, one, one));
    case DicksonTag::C14:  // F = xy, G = y^2 + yz + xz + e z^2
      return Pencil(SymMat::from_form(o, o, o, one, o, o),
                    SymMat::from_form(o, one, v[0], o, one, one));
    case DicksonTag::C16:  // F = xy, G = e1 x^2 + e2 y^2 + xz + yz + z^2
      return Pencil(SymMat::from_form(o, o, o, one, o, o),
                    SymMat::from_form(v[0], v[1], one, o, one, one));
    case DicksonTag::C18:  // F = y^2 - xz, G = x^2 + b y^2 + c xy + yz
      return Pencil(SymMat::from_form(o, one, o, o, -one, o),
                    SymMat::from_form(one, v[0], o, v[1], o, one));
    case DicksonTag::C19:  // F = x^2 - nu y^2, G = z^2 - rho y^2 + 2 sigma xy
      return Pencil(SymMat::from_form(one, -v[0], o, o, o, o),
                    SymMat::from_form(o, -v[1], one, v[2] + v[2], o, o));
  }
  throw std::invalid_argument("unknown class");
}

Pencil sample_pencil(const FieldCtx& f) {
  const Fq o = f.zero(), one = f.one();
  return Pencil(SymMat::from_form(o, o, o, one, -one, o), SymMat::from_form(o, o, o, o, one, -one));
}

std::vector<PencilMember> nonsingular_members(const Pencil& pencil) {
  std::vector<PencilMember> out;
  for (const Fq& eta : pencil.field().elements()) {
    Conic c = pencil.member(eta);
    if (c.nonsingular()) out.push_back({eta, std::move(c)});
  }
  Conic at_infinity = pencil.member(std::nullopt);
  if (at_infinity.nonsingular()) out.push_back({std::nullopt, std::move(at_infinity)});
  return out;
}

void for_each_valid_params(DicksonTag tag, const FieldCtx& f,
                           const std::function<void(const DicksonClass&)>& fn) {
  require_eligible_field(f);
  const auto elems = f.elements();
  DicksonClass cls{tag, {}};
  switch (tag) {
    case DicksonTag::C3:
      fn(cls);
      return;
    case DicksonTag::C14:
      for (const Fq& e : elems)
        if (quadratic_irreducible(e)) {
          cls.params = {e};
          fn(cls);
        }
      return;
    case DicksonTag::C16: {
      std::vector<Fq> good;
      for (const Fq& e : elems)
        if (quadratic_irreducible(e)) good.push_back(e);
      for (const Fq& e1 : good)
        for (const Fq& e2 : good) {
          cls.params = {e1, e2};
          fn(cls);
        }
      return;
    }
    case DicksonTag::C18:
      for (const Fq& b : elems)
        for (const Fq& c : elems)
          if (!cubic_has_root(b, c)) {
            cls.params = {b, c};
            fn(cls);
          }
      return;
    case DicksonTag::C19: {
      std::vector<Fq> nonsquares;
      for (const Fq& x : elems)
        if (x.legendre() == -1) nonsquares.push_back(x);
      for (const Fq& nu : nonsquares)
        for (const Fq& rho : elems)
          for (const Fq& sigma : elems)
            if ((rho * rho - f(4) * nu * sigma * sigma).legendre() == -1) {
              cls.params = {nu, rho, sigma};
              fn(cls);
            }
      return;
    }
  }
}

std::vector<DicksonClass> valid_param_enumerator(DicksonTag tag, const FieldCtx& f) {
  std::vector<DicksonClass> out;
  for_each_valid_params(tag, f, [&](const DicksonClass& c) { out.push_back(c); });
  return out;
}

std::vector<DicksonClass> sample_valid_params(DicksonTag tag, const FieldCtx& f, size_t k,
                                              uint64_t seed) {
  auto all = valid_param_enumerator(tag, f);
  if (all.size() <= k) return all;
  std::vector<size_t> idx(all.size());
  std::iota(idx.begin(), idx.end(), size_t{0});
  StreamRng rng(seed, static_cast<uint64_t>(tag));
  for (size_t i = 0; i < k; ++i) std::swap(idx[i], idx[i + rng.below(idx.size() - i)]);
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  std::vector<DicksonClass> out;
  out.reserve(k);
  for (size_t i : idx) out.push_back(all[i]);
  return out;
}

}  // namespace poncelet
