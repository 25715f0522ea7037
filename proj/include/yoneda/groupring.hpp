#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "yoneda/fpab.hpp"
#include "yoneda/resolution.hpp"
#include "yoneda/ses.hpp"

namespace yoneda {

// A finite group on {0, …, n−1} given by its multiplication table.
class FiniteGroup {
 public:
  // Checks closure, associativity, identity and inverses exhaustively;
  // throws LawViolation naming the failing axiom and indices.
  static FiniteGroup make(std::vector<std::vector<std::size_t>> table);
  static FiniteGroup cyclic(std::size_t n);
  // Closure of a set of permutations of {0, …, k−1}; element 0 is the identity.
  static FiniteGroup from_permutations(const std::vector<std::vector<std::size_t>>& generators);
  static FiniteGroup symmetric(std::size_t k);
  static FiniteGroup product(const FiniteGroup& g, const FiniteGroup& h);

  [[nodiscard]] std::size_t order() const { return table_.size(); }
  [[nodiscard]] std::size_t identity() const { return identity_; }
  [[nodiscard]] std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  [[nodiscard]] std::size_t inv(std::size_t a) const { return inverse_[a]; }
  [[nodiscard]] const std::vector<std::vector<std::size_t>>& table() const { return table_; }
  [[nodiscard]] bool is_abelian() const;
  // For groups built from permutations: the permutation of element g.
  [[nodiscard]] const std::vector<std::vector<std::size_t>>& permutations() const { return perms_; }

 private:
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
  std::size_t identity_ = 0;
  std::vector<std::vector<std::size_t>> perms_;
};

// An abelian group with a left G-action, one automorphism per group element.
class GModule {
 public:
  // Validates action(e) = id and action(g)∘action(h) = action(gh) modulo relations.
  static GModule make(FiniteGroup g, FpAbGroup m, std::vector<FpAbHom> action);
  static GModule trusted(FiniteGroup g, FpAbGroup m, std::vector<FpAbHom> action);

  [[nodiscard]] const FiniteGroup& group() const { return g_; }
  [[nodiscard]] const FpAbGroup& module() const { return m_; }
  [[nodiscard]] const FpAbHom& action(std::size_t g) const { return action_[g]; }
  [[nodiscard]] const std::vector<FpAbHom>& actions() const { return action_; }

 private:
  GModule(FiniteGroup g, FpAbGroup m, std::vector<FpAbHom> action)
      : g_(std::move(g)), m_(std::move(m)), action_(std::move(action)) {}
  FiniteGroup g_;
  FpAbGroup m_;
  std::vector<FpAbHom> action_;
};

GModule trivial_module(const FiniteGroup& g, const FpAbGroup& m);
// M with g acting as χ(g)·id for a homomorphism χ : G → {±1}.
GModule character_module(const FiniteGroup& g, const FpAbGroup& m, const std::vector<int>& chi);
// ℤ with the generator of ℤ/2 acting by −1.
GModule sign_module(const FiniteGroup& g);
// M^k with g permuting the summands: summand i goes to summand perm[g][i].
GModule permutation_module(const FiniteGroup& g, const FpAbGroup& m, const std::vector<std::vector<std::size_t>>& perm);
// ℤG^r; basis e_{b,h} at index b·|G| + h, and g·e_{b,h} = e_{b,gh}.
GModule group_ring_module(const FiniteGroup& g, std::size_t r);

class GModuleHom {
 public:
  // Throws LawViolation when f does not commute with the actions.
  static GModuleHom make(GModule src, GModule tgt, FpAbHom f);
  static GModuleHom trusted(GModule src, GModule tgt, FpAbHom f);

  [[nodiscard]] const GModule& src() const { return src_; }
  [[nodiscard]] const GModule& tgt() const { return tgt_; }
  [[nodiscard]] const FpAbHom& map() const { return f_; }

 private:
  GModuleHom(GModule src, GModule tgt, FpAbHom f) : src_(std::move(src)), tgt_(std::move(tgt)), f_(std::move(f)) {}
  GModule src_, tgt_;
  FpAbHom f_;
};

// Hom_G(X, Y) as a subgroup of Hom(X, Y): solutions of f·x_g = y_g·f.
HomGroup gmodule_hom_group(const GModule& x, const GModule& y);
// A G-equivariant s with p∘s = id, if any.
std::optional<GModuleHom> gmodule_section(const GModuleHom& p);

// A map ℤG^s → ℤG^t of free modules, stored on block units: column i lists
// (b·|G| + g, c) for the image Σ c·e_{b,g} of e_{i,1}.
struct GroupRingMatrix {
  std::size_t src_blocks = 0;
  std::size_t tgt_blocks = 0;
  std::vector<std::vector<std::pair<std::size_t, Integer>>> columns;

  // Sort entries, merge duplicates and drop zeros.
  void normalize();
  friend bool operator==(const GroupRingMatrix& a, const GroupRingMatrix& b);
};

class GModuleContext {
 public:
  using Object = GModule;
  using Morphism = GModuleHom;
  using FreeSpec = std::size_t;
  using FreeMap = GroupRingMatrix;

  explicit GModuleContext(FiniteGroup g) : g_(std::move(g)) {}
  [[nodiscard]] const FiniteGroup& group() const { return g_; }

  [[nodiscard]] GModule free_object(std::size_t r) const { return group_ring_module(g_, r); }
  [[nodiscard]] std::size_t rank(std::size_t r) const { return r; }
  // One free block per generator of the underlying group.
  [[nodiscard]] CoverOf<GModuleContext> epi_cover(const GModule& m, CoverOrder order) const;
  [[nodiscard]] KernelOf<GModuleContext> kernel(const GModuleHom& f) const;
  [[nodiscard]] GModuleHom compose(const GModuleHom& g, const GModuleHom& f) const;
  [[nodiscard]] bool is_zero(const GModuleHom& f) const { return f.map().is_zero(); }
  [[nodiscard]] bool equal(const GModuleHom& a, const GModuleHom& b) const { return a.map().equals(b.map()); }
  [[nodiscard]] GroupRingMatrix as_free_map(const GModuleHom& f) const;
  [[nodiscard]] GModuleHom from_free(const GroupRingMatrix& m, std::size_t src, std::size_t tgt) const;
  [[nodiscard]] GroupRingMatrix compose_free(const GroupRingMatrix& g, const GroupRingMatrix& f) const;
  [[nodiscard]] bool is_zero_free(const GroupRingMatrix& m) const;
  [[nodiscard]] bool equal_free(const GroupRingMatrix& a, const GroupRingMatrix& b) const;
  // Hom_G(ℤG^r, M) = M^r by evaluation at the block units.
  [[nodiscard]] FpAbGroup hom_free(std::size_t r, const GModule& m) const {
    return FpAbGroup::power(m.module(), r);
  }
  [[nodiscard]] IntMatrix hom_precompose(const GroupRingMatrix& d, std::size_t src, std::size_t tgt,
                                         const GModule& m) const;
  [[nodiscard]] GroupRingMatrix lift_free(const GroupRingMatrix& d, std::size_t src,
                                          const GroupRingMatrix& g) const;
  [[nodiscard]] GroupRingMatrix lift_augmentation(const GModuleHom& eps, std::size_t src,
                                                  const GModuleHom& g) const;

  // The ℤ-matrix of a free map on the bases e_{b,h}.
  [[nodiscard]] IntMatrix expand(const GroupRingMatrix& m) const;

 private:
  FiniteGroup g_;
};

static_assert(ModuleContext<GModuleContext>);

// Unnormalized bar resolution of trivial ℤ: P_n has |G|ⁿ blocks indexed by
// tuples (g₁, …, gₙ) in base |G|, with
//   d[g₁|…|gₙ] = g₁[g₂|…|gₙ] + Σᵢ (−1)ⁱ [… |gᵢgᵢ₊₁| …] + (−1)ⁿ [g₁|…|gₙ₋₁].
FreeResolution<GModuleContext> bar_resolution(const FiniteGroup& g, std::size_t max_deg);

// Ext^n_{ℤG}(ℤ, M) through the bar resolution.
FpAbGroup group_cohomology(const FiniteGroup& g, const GModule& m, std::size_t n);

// M^G with its inclusion.
Kernel fixed_points(const GModule& m);

// Crossed homomorphisms modulo principal ones.
FpAbGroup h1_crossed(const GModule& m);

// Ext¹_ℤ(B, A) with g acting by (a_g)_* ∘ (b_{g⁻¹})^*.
GModule ext_action(const GModule& b, const GModule& a);
// The same with (b_g)^* in place of (b_{g⁻¹})^*; not validated, since for
// nonabelian G it need not be an action.
std::vector<FpAbHom> ext_action_uninverted(const GModule& b, const GModule& a);

}  // namespace yoneda
