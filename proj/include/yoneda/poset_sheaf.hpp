#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "yoneda/fpab.hpp"
#include "yoneda/resolution.hpp"

namespace yoneda {

// A finite partial order on {0, …, n−1}; leq(d, c) reads d ≤ c.
class FinitePoset {
 public:
  FinitePoset() = default;
  // Throws LawViolation unless the relation is reflexive, antisymmetric and transitive.
  static FinitePoset make(std::vector<std::vector<bool>> leq);
  // Reflexive-transitive closure of the pairs (d, c) meaning d ≤ c.
  static FinitePoset from_relations(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& less);
  // 0 < 1 < … < k−1.
  static FinitePoset chain(std::size_t k);
  static FinitePoset sierpinski() { return chain(2); }
  // parent[i] is the element i covers, or i itself for a root.
  static FinitePoset forest(const std::vector<std::size_t>& parent);
  // z < m₁, m₂ < p, q with z = 0, m₁ = 1, m₂ = 2, p = 3, q = 4.
  static FinitePoset bowtie();

  [[nodiscard]] std::size_t size() const { return leq_.size(); }
  [[nodiscard]] bool leq(std::size_t d, std::size_t c) const { return leq_[d][c]; }
  [[nodiscard]] const std::vector<std::vector<bool>>& relation() const { return leq_; }
  // Pairs (d, c) with d < c and nothing strictly between.
  [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> covers() const;
  // ↓c in increasing index order.
  [[nodiscard]] std::vector<std::size_t> down_set(std::size_t c) const;
  // The induced order on the listed elements, renumbered by position.
  [[nodiscard]] FinitePoset subposet(const std::vector<std::size_t>& elements) const;
  // Elements sorted so that every element comes after everything above it.
  [[nodiscard]] std::vector<std::size_t> top_down() const;
  [[nodiscard]] std::optional<std::size_t> top() const;

  friend bool operator==(const FinitePoset&, const FinitePoset&) = default;

 private:
  std::vector<std::vector<bool>> leq_;
};

// ↓c ∩ ↓d is empty or has a maximum for all c, d.
bool principal_intersection_check(const FinitePoset& p);

// F(c) for each element with restrictions F(c) → F(d) for every d ≤ c.
class AbPresheaf {
 public:
  using Restrictions = std::map<std::pair<std::size_t, std::size_t>, FpAbHom>;  // key (c, d) for d < c

  // Restrictions must be given at least on covering pairs; the rest are composed
  // along chains of covers. Throws LawViolation when two composites disagree.
  static AbPresheaf make(FinitePoset site, std::vector<FpAbGroup> stalks, const Restrictions& res);
  static AbPresheaf zero(const FinitePoset& site);
  static AbPresheaf constant(const FinitePoset& site, const FpAbGroup& a);

  [[nodiscard]] const FinitePoset& site() const { return site_; }
  [[nodiscard]] const FpAbGroup& stalk(std::size_t c) const { return stalks_[c]; }
  [[nodiscard]] const std::vector<FpAbGroup>& stalks() const { return stalks_; }
  // F(c) → F(d); requires d ≤ c.
  [[nodiscard]] const FpAbHom& res(std::size_t c, std::size_t d) const;
  // Elements of the summands when this is the free presheaf ⊕ ℤy(cⱼ).
  [[nodiscard]] const std::optional<std::vector<std::size_t>>& free_basis() const { return free_basis_; }
  // Restriction to the listed elements, on site().subposet(elements).
  [[nodiscard]] AbPresheaf restrict(const std::vector<std::size_t>& elements) const;
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] std::string to_string() const;

 private:
  friend AbPresheaf free_presheaf(const FinitePoset& p, const std::vector<std::size_t>& summands);
  AbPresheaf(FinitePoset site, std::vector<FpAbGroup> stalks, std::vector<std::optional<FpAbHom>> res)
      : site_(std::move(site)), stalks_(std::move(stalks)), res_(std::move(res)) {}
  FinitePoset site_;
  std::vector<FpAbGroup> stalks_;
  std::vector<std::optional<FpAbHom>> res_;  // index c·n + d
  std::optional<std::vector<std::size_t>> free_basis_;
};

// ℤy(c): ℤ on ↓c with identity restrictions.
AbPresheaf free_presheaf(const FinitePoset& p, std::size_t c);
// ⊕ⱼ ℤy(cⱼ); the stalk at d has one coordinate per j with d ≤ cⱼ, in order.
AbPresheaf free_presheaf(const FinitePoset& p, const std::vector<std::size_t>& summands);

class PresheafHom {
 public:
  // Throws LawViolation naming the first pair whose naturality square fails.
  static PresheafHom make(AbPresheaf src, AbPresheaf tgt, std::vector<FpAbHom> components);
  static PresheafHom trusted(AbPresheaf src, AbPresheaf tgt, std::vector<FpAbHom> components);
  static PresheafHom identity(const AbPresheaf& f);
  static PresheafHom zero(const AbPresheaf& src, const AbPresheaf& tgt);

  [[nodiscard]] const AbPresheaf& src() const { return src_; }
  [[nodiscard]] const AbPresheaf& tgt() const { return tgt_; }
  [[nodiscard]] const FpAbHom& at(std::size_t c) const { return components_[c]; }
  [[nodiscard]] const std::vector<FpAbHom>& components() const { return components_; }
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool equals(const PresheafHom& other) const;

 private:
  PresheafHom(AbPresheaf src, AbPresheaf tgt, std::vector<FpAbHom> components)
      : src_(std::move(src)), tgt_(std::move(tgt)), components_(std::move(components)) {}
  AbPresheaf src_, tgt_;
  std::vector<FpAbHom> components_;
};

PresheafHom compose(const PresheafHom& g, const PresheafHom& f);
bool is_epi(const PresheafHom& f);
bool is_mono(const PresheafHom& f);
// Stalkwise cokernels; restrictions are those of the target.
AbPresheaf cokernel(const PresheafHom& f);

// Natural transformations F → G as a presented group.
class PresheafHomGroup {
 public:
  PresheafHomGroup(AbPresheaf f, AbPresheaf g);

  [[nodiscard]] const FpAbGroup& group() const { return solutions_.group; }
  [[nodiscard]] const std::vector<PresheafHom>& basis() const { return basis_; }
  [[nodiscard]] IntVector coordinates(const PresheafHom& h) const;
  [[nodiscard]] PresheafHom hom_at(const IntVector& coords) const;

 private:
  AbPresheaf f_, g_;
  HomSystem::SolutionGroup solutions_;
  std::vector<PresheafHom> basis_;
};

PresheafHomGroup presheaf_hom_group(const AbPresheaf& f, const AbPresheaf& g);

// ihom(F, G)(c) = Hom over ↓c of the restrictions; restriction maps restrict families.
AbPresheaf internal_hom(const AbPresheaf& f, const AbPresheaf& g);
// ihom(F, σ) : ihom(F, X) → ihom(F, Y) for σ : X → Y.
PresheafHom internal_hom_map(const AbPresheaf& f, const PresheafHom& sigma);

// Compatible families, i.e. the limit over the poset.
FpAbGroup global_sections(const AbPresheaf& f);

// A map ⊕ⱼ ℤy(src[j]) → ⊕ᵢ ℤy(tgt[i]); entry (i, j) may be nonzero only when src[j] ≤ tgt[i].
struct PresheafFreeMap {
  std::vector<std::size_t> src, tgt;
  IntMatrix matrix;
  friend bool operator==(const PresheafFreeMap&, const PresheafFreeMap&) = default;
};

class PresheafContext {
 public:
  using Object = AbPresheaf;
  using Morphism = PresheafHom;
  using FreeSpec = std::vector<std::size_t>;
  using FreeMap = PresheafFreeMap;

  explicit PresheafContext(FinitePoset p) : p_(std::move(p)) {}
  [[nodiscard]] const FinitePoset& site() const { return p_; }

  [[nodiscard]] AbPresheaf free_object(const FreeSpec& s) const { return free_presheaf(p_, s); }
  [[nodiscard]] std::size_t rank(const FreeSpec& s) const { return s.size(); }
  // One summand ℤy(c) per stalk generator at c not already reached from above.
  [[nodiscard]] CoverOf<PresheafContext> epi_cover(const AbPresheaf& f, CoverOrder order) const;
  [[nodiscard]] KernelOf<PresheafContext> kernel(const PresheafHom& f) const;
  [[nodiscard]] PresheafHom compose(const PresheafHom& g, const PresheafHom& f) const { return yoneda::compose(g, f); }
  [[nodiscard]] bool is_zero(const PresheafHom& f) const { return f.is_zero(); }
  [[nodiscard]] bool equal(const PresheafHom& a, const PresheafHom& b) const { return a.equals(b); }
  [[nodiscard]] PresheafFreeMap as_free_map(const PresheafHom& f) const;
  [[nodiscard]] PresheafHom from_free(const PresheafFreeMap& m, const FreeSpec& src, const FreeSpec& tgt) const;
  [[nodiscard]] PresheafFreeMap compose_free(const PresheafFreeMap& g, const PresheafFreeMap& f) const;
  [[nodiscard]] bool is_zero_free(const PresheafFreeMap& m) const { return m.matrix.is_zero(); }
  [[nodiscard]] bool equal_free(const PresheafFreeMap& a, const PresheafFreeMap& b) const { return a == b; }
  // Hom(⊕ ℤy(cⱼ), A) = ⊕ A(cⱼ).
  [[nodiscard]] FpAbGroup hom_free(const FreeSpec& s, const AbPresheaf& a) const;
  [[nodiscard]] IntMatrix hom_precompose(const PresheafFreeMap& d, const FreeSpec& src, const FreeSpec& tgt,
                                         const AbPresheaf& a) const;
  [[nodiscard]] PresheafFreeMap lift_free(const PresheafFreeMap& d, const FreeSpec& src,
                                          const PresheafFreeMap& g) const;
  [[nodiscard]] PresheafFreeMap lift_augmentation(const PresheafHom& eps, const FreeSpec& src,
                                                  const PresheafHom& g) const;

 private:
  FinitePoset p_;
};

static_assert(ModuleContext<PresheafContext>);

struct SheafExtResult {
  AbPresheaf value;
  // Per element c: ↓c and the resolution of B restricted to it, in local numbering.
  std::vector<std::vector<std::size_t>> down_sets;
  std::vector<FreeResolution<PresheafContext>> resolutions;
};

// sExtⁿ(B, A): stalk at c is Extⁿ over ↓c; restrictions come from comparison lifts.
SheafExtResult sheaf_ext(const AbPresheaf& b, const AbPresheaf& a, std::size_t n,
                         CoverOrder order = CoverOrder::natural);
// Stalks of sExtⁿ from one resolution of B over the whole site. Throws DomainError
// unless principal_intersection_check holds.
std::vector<FpAbGroup> sheaf_ext_fast(const AbPresheaf& b, const AbPresheaf& a, std::size_t n);
// Extⁿ in presheaves on the whole site.
FpAbGroup external_ext(const AbPresheaf& b, const AbPresheaf& a, std::size_t n);

// An element at which ihom(ℤy(c), σ) is not onto.
std::optional<std::size_t> internal_projectivity_witness(const FinitePoset& p, std::size_t c,
                                                         const PresheafHom& sigma);

struct ProjectivityWitness {
  PresheafHom sigma;
  std::size_t stalk;
};

struct WitnessSearch {
  std::optional<ProjectivityWitness> witness;
  std::size_t examined = 0;  // candidate epis tested
};

// Presheaves with stalks drawn from `stalks` (each cyclic) and restriction maps
// with coefficients 0 or 1, searched in order of size for an epi σ, with
// components 1 wherever the target is nonzero, that ihom(ℤy(c), −) does not preserve.
WitnessSearch search_projectivity_witness(const FinitePoset& p, std::size_t c, const std::vector<FpAbGroup>& stalks);

}  // namespace yoneda
