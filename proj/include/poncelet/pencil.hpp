#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "poncelet/geom.hpp"

namespace poncelet {

/// Coefficients of Delta(t) = det(tA + B) = c3 t^3 + c2 t^2 + c1 t + c0.
struct CharCubic {
  Fq c0, c1, c2, c3;
  friend bool operator==(const CharCubic&, const CharCubic&) = default;
};

/// Uses det(tA + B) = det(A) t^3 + tr(adj(A) B) t^2 + tr(adj(B) A) t + det(B).
CharCubic char_cubic(const SymMat& a, const SymMat& b);
CharCubic char_cubic(const Conic& a, const Conic& b);

/// 18 c3 c2 c1 c0 - 4 c2^3 c0 + c2^2 c1^2 - 4 c3 c1^3 - 27 c3^2 c0^2.
Fq cubic_disc(const CharCubic& d);

/// Whether A and B meet in four distinct points over the algebraic closure.
/// Throws std::invalid_argument for singular input or A = B.
bool is_transversal(const Conic& a, const Conic& b);

enum class DicksonTag { C3 = 3, C14 = 14, C16 = 16, C18 = 18, C19 = 19 };

std::string to_string(DicksonTag tag);
/// Parses "3", "14", ... ; throws std::invalid_argument otherwise.
DicksonTag parse_dickson_tag(const std::string& s);
size_t param_count(DicksonTag tag);

/// An eligible Dickson class with its parameters:
///   C3: none; C14: e; C16: e1, e2; C18: b, c; C19: nu, rho, sigma.
struct DicksonClass {
  DicksonTag tag = DicksonTag::C3;
  std::vector<Fq> params;

  /// "e1;e2" with canonical integer representatives ("" for C3).
  std::string params_str() const;
};

/// Whether the parameters satisfy the class's irreducibility conditions.
bool params_valid(const DicksonClass& cls, const FieldCtx& f);

/// Members eta F + G for eta in F_q, and F for eta = infinity (nullopt).
class Pencil {
 public:
  /// Throws std::invalid_argument when F and G are proportional.
  Pencil(SymMat f, SymMat g);

  const SymMat& f() const { return f_; }
  const SymMat& g() const { return g_; }
  const FieldCtx& field() const { return f_.field(); }

  SymMat member_matrix(const std::optional<Fq>& eta) const;
  Conic member(const std::optional<Fq>& eta) const { return Conic(member_matrix(eta)); }

 private:
  SymMat f_, g_;
};

struct PencilMember {
  std::optional<Fq> eta;
  Conic conic;
};

/// Canonical generators of an eligible class. Requires p >= 5 and valid
/// parameters; throws std::invalid_argument otherwise.
Pencil dickson_generators(const DicksonClass& cls, const FieldCtx& f);

/// The pencil of C_alpha (F = xy - xz, G = xz - yz, so eta = alpha). A class-3
/// pencil that stays usable in characteristic 3.
Pencil sample_pencil(const FieldCtx& f);

/// Members with nonzero determinant, eta = infinity last.
std::vector<PencilMember> nonsingular_members(const Pencil& pencil);

/// Deterministic enumeration of every valid parameter tuple, in
/// lexicographic rep order. Requires p >= 5.
void for_each_valid_params(DicksonTag tag, const FieldCtx& f,
                           const std::function<void(const DicksonClass&)>& fn);
std::vector<DicksonClass> valid_param_enumerator(DicksonTag tag, const FieldCtx& f);

/// The full list if it has at most k entries, otherwise k tuples drawn
/// without replacement (seeded), kept in enumeration order.
std::vector<DicksonClass> sample_valid_params(DicksonTag tag, const FieldCtx& f, size_t k,
                                              uint64_t seed);

}  // namespace poncelet
