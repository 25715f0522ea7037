#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "yoneda/exactint.hpp"

namespace yoneda {

// ℤ^rank ⊕ ℤ/d₁ ⊕ … with d₁ | d₂ | … and every dᵢ ≥ 2.
struct CanonicalForm {
  std::size_t rank = 0;
  std::vector<Integer> factors;

  [[nodiscard]] bool is_zero() const { return rank == 0 && factors.empty(); }
  [[nodiscard]] bool is_finite() const { return rank == 0; }
  // "0", "Z", "Z^2 + Z/2 + Z/6", …
  [[nodiscard]] std::string to_string() const;
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

class FpAbHom;

// The abelian group ℤ^gens / colspan(relations).
//
// A cheap handle: copies share the presentation and its lazily computed
// canonical form, which makes values safe to pass around and share across
// threads.
class FpAbGroup {
 public:
  FpAbGroup();  // the zero group, 0 generators

  // Throws DimensionMismatch when relations.rows() != gens.
  static FpAbGroup make(std::size_t gens, IntMatrix relations);
  static FpAbGroup free(std::size_t rank);
  // ℤ/n; n = 0 gives ℤ.
  static FpAbGroup cyclic(const Integer& n);
  static FpAbGroup from_canonical(const CanonicalForm& form);
  // A^r with block-diagonal relations.
  static FpAbGroup power(const FpAbGroup& a, std::size_t r);

  [[nodiscard]] std::size_t gens() const;
  [[nodiscard]] const IntMatrix& relations() const;
  [[nodiscard]] const CanonicalForm& canonical() const;
  [[nodiscard]] bool is_zero() const { return canonical().is_zero(); }
  // No nonzero relation column.
  [[nodiscard]] bool has_free_presentation() const;
  [[nodiscard]] bool isomorphic(const FpAbGroup& other) const { return canonical() == other.canonical(); }
  // Same generator count and literally equal relation matrix.
  [[nodiscard]] bool same_presentation(const FpAbGroup& other) const;
  [[nodiscard]] std::optional<Integer> order() const;

  // Membership of a coordinate vector in the relation lattice.
  [[nodiscard]] bool is_zero_element(const IntVector& x) const;
  [[nodiscard]] bool equal_elements(const IntVector& x, const IntVector& y) const;
  [[nodiscard]] const ColumnEchelon& relation_lattice() const;

  [[nodiscard]] std::string to_string() const { return canonical().to_string(); }

 private:
  struct Data;
  explicit FpAbGroup(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

// An element of a presented group, compared modulo relations.
class Element {
 public:
  Element(FpAbGroup group, IntVector coords);
  static Element zero(const FpAbGroup& group) { return {group, IntVector(group.gens())}; }

  [[nodiscard]] const FpAbGroup& group() const { return group_; }
  [[nodiscard]] const IntVector& coords() const { return coords_; }
  [[nodiscard]] bool is_zero() const { return group_.is_zero_element(coords_); }

  friend Element operator+(const Element& a, const Element& b);
  friend Element operator-(const Element& a, const Element& b);
  friend Element operator-(const Element& a);
  friend Element operator*(const Integer& k, const Element& a);
  friend bool operator==(const Element& a, const Element& b);

 private:
  FpAbGroup group_;
  IntVector coords_;
};

// A homomorphism given on generators: column j is the image of generator j.
class FpAbHom {
 public:
  // Throws DimensionMismatch on shape errors and IllDefined when the matrix
  // does not carry source relations into the target relation lattice.
  static FpAbHom make(FpAbGroup src, FpAbGroup tgt, IntMatrix matrix);
  // Skips the well-definedness check; for maps that are correct by construction.
  static FpAbHom trusted(FpAbGroup src, FpAbGroup tgt, IntMatrix matrix);
  static FpAbHom identity(const FpAbGroup& g);
  static FpAbHom zero(const FpAbGroup& src, const FpAbGroup& tgt);

  [[nodiscard]] const FpAbGroup& src() const { return src_; }
  [[nodiscard]] const FpAbGroup& tgt() const { return tgt_; }
  [[nodiscard]] const IntMatrix& matrix() const { return matrix_; }

  [[nodiscard]] Element apply(const Element& x) const;
  [[nodiscard]] IntVector apply(const IntVector& x) const { return matrix_ * x; }

  // Equality in Hom(src, tgt): columns agree modulo the target relations.
  [[nodiscard]] bool equals(const FpAbHom& other) const;
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_well_defined() const;

  friend FpAbHom operator+(const FpAbHom& a, const FpAbHom& b);
  friend FpAbHom operator-(const FpAbHom& a, const FpAbHom& b);
  friend FpAbHom operator-(const FpAbHom& a);
  friend FpAbHom operator*(const Integer& k, const FpAbHom& a);

 private:
  FpAbHom(FpAbGroup src, FpAbGroup tgt, IntMatrix matrix)
      : src_(std::move(src)), tgt_(std::move(tgt)), matrix_(std::move(matrix)) {}
  FpAbGroup src_;
  FpAbGroup tgt_;
  IntMatrix matrix_;
};

// g ∘ f. Throws DimensionMismatch unless f.tgt and g.src share a presentation.
FpAbHom compose(const FpAbHom& g, const FpAbHom& f);

FpAbGroup make_group(std::size_t gens, IntMatrix relations);
FpAbHom make_hom(FpAbGroup src, FpAbGroup tgt, IntMatrix matrix);

struct Kernel {
  FpAbGroup group;
  FpAbHom inclusion;
};

struct Cokernel {
  FpAbGroup group;
  FpAbHom projection;
};

struct DirectSum {
  FpAbGroup group;
  FpAbHom in_a, in_b, pr_a, pr_b;
};

// A presentation-reducing isomorphism: `to` and `from` are mutually inverse.
struct Simplification {
  FpAbGroup group;  // diagonal relations, no unit factors
  FpAbHom to;       // original → simplified
  FpAbHom from;     // simplified → original
};

Simplification simplify(const FpAbGroup& g);

// Kernel with a reduced presentation (free when the source is free).
Kernel kernel(const FpAbHom& f);
// Target generators with relations augmented by the columns of f; projection is the identity matrix.
Cokernel cokernel(const FpAbHom& f);
DirectSum direct_sum(const FpAbGroup& a, const FpAbGroup& b);
// ⊕ parts with block-diagonal relations; offsets receives each part's first generator.
FpAbGroup direct_sum_of(const std::vector<FpAbGroup>& parts, std::vector<std::size_t>* offsets = nullptr);

// Δ = (id, id) : A → A⊕A and ∇ = id + id : A⊕A → A for s = direct_sum(A, A).
FpAbHom diagonal(const DirectSum& s);
FpAbHom codiagonal(const DirectSum& s);
// ⟨f, g⟩ : X → A⊕B and [f, g] : A⊕B → Y.
FpAbHom pairing(const FpAbHom& f, const FpAbHom& g, const DirectSum& s);
FpAbHom copairing(const FpAbHom& f, const FpAbHom& g, const DirectSum& s);
// f ⊕ g : A⊕B → A'⊕B'.
FpAbHom sum_map(const FpAbHom& f, const FpAbHom& g, const DirectSum& src, const DirectSum& tgt);

bool is_epi(const FpAbHom& f);
bool is_mono(const FpAbHom& f);
bool is_iso(const FpAbHom& f);

// h : F → X with p∘h = g. F must be free (NotFree) and p epi (NotEpi).
FpAbHom lift_through_epi(const FpAbHom& p, const FpAbHom& g);
// h with m∘h = g when g lands in the image of m.
std::optional<FpAbHom> factor_through(const FpAbHom& m, const FpAbHom& g);
// Two-sided inverse of an isomorphism.
std::optional<FpAbHom> inverse(const FpAbHom& f);

// Elements of a finite group, one coordinate vector per class. Throws DomainError when infinite.
std::vector<IntVector> finite_elements(const FpAbGroup& g);

// ---------------------------------------------------------------------------
// Linear systems whose unknowns are homomorphisms.
//
// Every equation Σ L·X·R ≡ C (mod target relations, columnwise) is flattened
// with vec(L·X·R) = (Rᵀ ⊗ L)·vec(X) into a single integer system.
class HomSystem {
 public:
  struct Term {
    std::size_t unknown;
    std::optional<IntMatrix> left;   // identity when absent
    std::optional<IntMatrix> right;  // identity when absent
  };

  // Unknown homomorphism src → tgt; its well-definedness is added automatically.
  std::size_t add_unknown(const FpAbGroup& src, const FpAbGroup& tgt);
  // Σ terms ≡ rhs, read in `target` (rhs is target.gens × c).
  void add_equation(std::vector<Term> terms, IntMatrix rhs, const FpAbGroup& target);

  [[nodiscard]] std::size_t unknowns() const { return blocks_.size(); }

  // One solution of the inhomogeneous system.
  [[nodiscard]] std::optional<std::vector<IntMatrix>> solve() const;

  // Solutions of the homogeneous system modulo blockwise equality of homs.
  struct SolutionGroup {
    FpAbGroup group;
    std::vector<std::vector<IntMatrix>> basis;  // one block list per generator of `group`
    [[nodiscard]] IntVector coordinates(const std::vector<IntMatrix>& blocks) const;

    std::shared_ptr<const ColumnEchelon> lattice;  // basis of the solution lattice
    IntMatrix to_group;                             // lattice coordinates → group coordinates
  };
  [[nodiscard]] SolutionGroup homogeneous_solutions() const;

 private:
  struct Block {
    FpAbGroup src, tgt;
    std::size_t offset;
  };
  struct Equation {
    std::vector<Term> terms;
    IntMatrix rhs;
    FpAbGroup target;
  };
  [[nodiscard]] std::size_t vec_size() const;
  [[nodiscard]] IntMatrix flatten(IntVector* rhs) const;  // [unknown part | slack part]
  [[nodiscard]] std::vector<IntMatrix> unpack(const IntVector& x) const;

  std::vector<Block> blocks_;
  std::vector<Equation> equations_;
};

// Hom(A, B) as a presented group with a basis of homomorphisms.
class HomGroup {
 public:
  HomGroup(FpAbGroup a, FpAbGroup b);
  // Homs a → b cut out by a system whose unknown 0 is a → b.
  HomGroup(FpAbGroup a, FpAbGroup b, const HomSystem& system);

  [[nodiscard]] const FpAbGroup& group() const { return solutions_.group; }
  [[nodiscard]] const FpAbGroup& source() const { return a_; }
  [[nodiscard]] const FpAbGroup& target() const { return b_; }
  [[nodiscard]] const std::vector<FpAbHom>& basis() const { return basis_; }
  [[nodiscard]] IntVector coordinates(const FpAbHom& f) const;
  [[nodiscard]] FpAbHom hom_at(const IntVector& coords) const;

 private:
  FpAbGroup a_, b_;
  HomSystem::SolutionGroup solutions_;
  std::vector<FpAbHom> basis_;
};

HomGroup hom_group(const FpAbGroup& a, const FpAbGroup& b);

// The map between hom groups induced by a function on homomorphisms
// (pre- or post-composition), assembled on basis elements.
FpAbHom induced_hom_map(const HomGroup& from, const HomGroup& to,
                        const std::function<FpAbHom(const FpAbHom&)>& action);

}  // namespace yoneda
