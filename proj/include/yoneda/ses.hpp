#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "yoneda/fpab.hpp"

namespace yoneda {

// A --i--> E --p--> B, exact with i mono and p epi.
class ShortExactSeq {
 public:
  // Checks p∘i = 0, i mono, p epi and exactness at E.
  // Throws NotMono, NotEpi or NotExact, or DimensionMismatch when i.tgt ≠ p.src.
  static ShortExactSeq make(FpAbHom i, FpAbHom p);
  static ShortExactSeq trusted(FpAbHom i, FpAbHom p);
  // A → A⊕B → B.
  static ShortExactSeq split(const FpAbGroup& a, const FpAbGroup& b);

  [[nodiscard]] const FpAbGroup& A() const { return i_.src(); }
  [[nodiscard]] const FpAbGroup& E() const { return i_.tgt(); }
  [[nodiscard]] const FpAbGroup& B() const { return p_.tgt(); }
  [[nodiscard]] const FpAbHom& i() const { return i_; }
  [[nodiscard]] const FpAbHom& p() const { return p_; }

  [[nodiscard]] std::string to_string() const;

 private:
  ShortExactSeq(FpAbHom i, FpAbHom p) : i_(std::move(i)), p_(std::move(p)) {}
  FpAbHom i_, p_;
};

ShortExactSeq make_ses(FpAbHom i, FpAbHom p);

// A section s with p∘s = id_B, if any.
std::optional<FpAbHom> is_split(const ShortExactSeq& e);

// f_*E along f : A → A′, middle term (A′⊕E)/⟨(f(a), −i(a))⟩.
ShortExactSeq pushout_ses(const FpAbHom& f, const ShortExactSeq& e);
// g^*E along g : B′ → B, middle term ker((p, −g) : E⊕B′ → B).
ShortExactSeq pullback_ses(const FpAbHom& g, const ShortExactSeq& e);
// A⊕A′ → E⊕E′ → B⊕B′.
ShortExactSeq direct_sum_ses(const ShortExactSeq& e, const ShortExactSeq& f);
// ∇_* Δ^* (E ⊕ F), pulling back first.
ShortExactSeq baer_sum(const ShortExactSeq& e, const ShortExactSeq& f);

// φ : E.E → F.E with φ∘i_E = i_F and p_F∘φ = p_E, if any.
std::optional<FpAbHom> are_equivalent(const ShortExactSeq& e, const ShortExactSeq& f);

class ExtClass;

// Ext¹(B, A) computed from the presentation K → F → B, where F is free on the
// generators of B and K is the (free) relation lattice.
class Ext1Group {
 public:
  Ext1Group(FpAbGroup b, FpAbGroup a);

  [[nodiscard]] const FpAbGroup& B() const;
  [[nodiscard]] const FpAbGroup& A() const;
  [[nodiscard]] const FpAbGroup& group() const;

  // K → F → B with F = ℤ^{gens B}.
  [[nodiscard]] const ShortExactSeq& presentation_sequence() const;
  // Columns span K inside F.
  [[nodiscard]] const IntMatrix& kernel_basis() const;
  // Hom(K, A) = A^k and its projection onto group().
  [[nodiscard]] const FpAbGroup& cocycles() const;
  [[nodiscard]] const FpAbHom& to_ext() const;
  // Column j: a cocycle (vec of a gens(A) × k matrix) representing generator j.
  [[nodiscard]] const IntMatrix& representatives() const;
  // Lattice coordinates of a vector of F that lies in K.
  [[nodiscard]] IntVector kernel_coordinates(const IntVector& x) const;

  [[nodiscard]] ExtClass class_of(const ShortExactSeq& e) const;
  // Class of a cocycle ψ : K → A, given as a gens(A) × k matrix.
  [[nodiscard]] ExtClass class_of_cocycle(const IntMatrix& psi) const;
  // Pushout of the presentation sequence along ψ.
  [[nodiscard]] ShortExactSeq realize(const IntMatrix& psi) const;
  [[nodiscard]] ShortExactSeq realize(const ExtClass& c) const;
  [[nodiscard]] ExtClass zero() const;

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

Ext1Group ext1_group(const FpAbGroup& b, const FpAbGroup& a);

class ExtClass {
 public:
  ExtClass(Ext1Group parent, Element coords);

  [[nodiscard]] const Ext1Group& parent() const { return parent_; }
  [[nodiscard]] const Element& coords() const { return coords_; }
  [[nodiscard]] bool is_zero() const { return coords_.is_zero(); }

  friend ExtClass operator+(const ExtClass& a, const ExtClass& b) { return {a.parent_, a.coords_ + b.coords_}; }
  friend ExtClass operator-(const ExtClass& a) { return {a.parent_, -a.coords_}; }
  friend bool operator==(const ExtClass& a, const ExtClass& b) { return a.coords_ == b.coords_; }

 private:
  Ext1Group parent_;
  Element coords_;
};

ExtClass class_of(const ShortExactSeq& e, const Ext1Group& g);

// f_* : Ext¹(B, A) → Ext¹(B, A′) for f : A → A′.
FpAbHom ext_covariant(const FpAbHom& f, const Ext1Group& from, const Ext1Group& to);
// g^* : Ext¹(B, A) → Ext¹(B′, A) for g : B′ → B.
FpAbHom ext_contravariant(const FpAbHom& g, const Ext1Group& from, const Ext1Group& to);

// Exactness of X --f--> Y --g--> Z at Y.
bool exact_at(const FpAbHom& f, const FpAbHom& g);

enum class Variance { covariant, contravariant };

struct SixTermSequence {
  std::vector<FpAbGroup> groups;  // six
  std::vector<FpAbHom> maps;     // five
  bool left_mono = false;
  std::array<bool, 4> exact_interior{};
  bool right_epi = false;

  [[nodiscard]] bool exact() const {
    return left_mono && right_epi && exact_interior[0] && exact_interior[1] && exact_interior[2] &&
           exact_interior[3];
  }
};

// Covariant: Hom(M,A) → Hom(M,E) → Hom(M,B) → Ext¹(M,A) → Ext¹(M,E) → Ext¹(M,B),
//   δ(f) = class of f^*E.
// Contravariant: Hom(B,M) → Hom(E,M) → Hom(A,M) → Ext¹(B,M) → Ext¹(E,M) → Ext¹(A,M),
//   δ(g) = class of g_*E.
SixTermSequence six_term(const ShortExactSeq& e, const FpAbGroup& m, Variance variance);

}  // namespace yoneda
