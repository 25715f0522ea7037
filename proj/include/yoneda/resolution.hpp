#pragma once

#include <concepts>
#include <cstddef>
#include <optional>
#include <vector>

#include "yoneda/errors.hpp"
#include "yoneda/fpab.hpp"

namespace yoneda {

// Which way epi_cover enumerates generators; two orders give two independent resolutions.
enum class CoverOrder { natural, reversed };

template <class C>
struct CoverOf {
  typename C::FreeSpec spec;
  typename C::Morphism epi;  // free_object(spec) → target
};

template <class C>
struct KernelOf {
  typename C::Object object;
  typename C::Morphism inclusion;
};

// What the resolution engine needs from a category of modules with enough
// free objects.
//
//   FreeSpec  names a free object; FreeMap is a map between free objects
//   recorded on generators. hom_free(P, A) is Hom(P, A) as a presented group,
//   and hom_precompose(d, P, Q, A) is the matrix of Hom(Q, A) → Hom(P, A) for
//   d : P → Q. lift_free(d, P, g) solves d∘h = g for h : P → Q′ when g lands
//   in the image of d : Q′ → Q; lift_augmentation does the same through an epi
//   onto an arbitrary object.
template <class C>
concept ModuleContext = requires(const C& ctx, const typename C::Object& obj, const typename C::Morphism& mor,
                                 const typename C::FreeSpec& spec, const typename C::FreeMap& fm, CoverOrder order) {
  { ctx.free_object(spec) } -> std::convertible_to<typename C::Object>;
  { ctx.rank(spec) } -> std::convertible_to<std::size_t>;
  { ctx.epi_cover(obj, order) } -> std::convertible_to<CoverOf<C>>;
  { ctx.kernel(mor) } -> std::convertible_to<KernelOf<C>>;
  { ctx.compose(mor, mor) } -> std::convertible_to<typename C::Morphism>;
  { ctx.is_zero(mor) } -> std::convertible_to<bool>;
  { ctx.equal(mor, mor) } -> std::convertible_to<bool>;
  { ctx.as_free_map(mor) } -> std::convertible_to<typename C::FreeMap>;
  { ctx.from_free(fm, spec, spec) } -> std::convertible_to<typename C::Morphism>;
  { ctx.compose_free(fm, fm) } -> std::convertible_to<typename C::FreeMap>;
  { ctx.is_zero_free(fm) } -> std::convertible_to<bool>;
  { ctx.equal_free(fm, fm) } -> std::convertible_to<bool>;
  { ctx.hom_free(spec, obj) } -> std::convertible_to<FpAbGroup>;
  { ctx.hom_precompose(fm, spec, spec, obj) } -> std::convertible_to<IntMatrix>;
  { ctx.lift_free(fm, spec, fm) } -> std::convertible_to<typename C::FreeMap>;
  { ctx.lift_augmentation(mor, spec, mor) } -> std::convertible_to<typename C::FreeMap>;
};

// P_N → … → P_1 → P_0 → B.
template <ModuleContext C>
struct FreeResolution {
  typename C::Object target;
  std::vector<typename C::FreeSpec> terms;         // P_0 … P_N
  std::vector<typename C::FreeMap> differentials;  // [n − 1] is d_n : P_n → P_{n−1}
  typename C::Morphism augmentation;               // P_0 → B
  // B_n = ker(P_{n−1} → B_{n−1}) with P_n → B_n; empty when the resolution
  // was written down directly.
  std::vector<KernelOf<C>> syzygies;
  std::vector<typename C::Morphism> covers;

  [[nodiscard]] std::size_t length() const { return terms.size() - 1; }
};

template <ModuleContext C>
FreeResolution<C> free_resolution(const C& ctx, const typename C::Object& b, std::size_t max_deg,
                                  CoverOrder order = CoverOrder::natural) {
  CoverOf<C> cover = ctx.epi_cover(b, order);
  FreeResolution<C> r{b, {cover.spec}, {}, cover.epi, {}, {}};
  typename C::Morphism prev = cover.epi;
  for (std::size_t n = 1; n <= max_deg; ++n) {
    KernelOf<C> k = ctx.kernel(prev);
    CoverOf<C> c = ctx.epi_cover(k.object, order);
    r.differentials.push_back(ctx.as_free_map(ctx.compose(k.inclusion, c.epi)));
    r.terms.push_back(c.spec);
    r.syzygies.push_back(k);
    r.covers.push_back(c.epi);
    prev = c.epi;
  }
  return r;
}

// d∘d = 0 and ε∘d_1 = 0 at every built degree.
template <ModuleContext C>
bool is_chain_complex(const C& ctx, const FreeResolution<C>& r) {
  if (!r.differentials.empty()) {
    auto d1 = ctx.from_free(r.differentials[0], r.terms[1], r.terms[0]);
    if (!ctx.is_zero(ctx.compose(r.augmentation, d1))) return false;
  }
  for (std::size_t n = 1; n < r.differentials.size(); ++n)
    if (!ctx.is_zero_free(ctx.compose_free(r.differentials[n - 1], r.differentials[n]))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Cochain complexes of presented groups.

struct CohomologyData {
  FpAbGroup group;
  FpAbHom cocycle_inclusion;  // Z^n → C^n
  FpAbHom to_group;           // Z^n → H^n
  IntMatrix representatives;  // column j: a cocycle in C^n for generator j of H^n

  // Class in H^n of a cocycle given in C^n coordinates. Throws ValidationError when x is not a cocycle.
  [[nodiscard]] IntVector classify(const IntVector& x) const;
};

// C^0 → C^1 → … → C^N with maps[n] : C^n → C^{n+1}.
struct FpAbComplex {
  std::vector<FpAbGroup> groups;
  std::vector<FpAbHom> maps;

  [[nodiscard]] std::size_t top() const { return groups.empty() ? 0 : groups.size() - 1; }
  [[nodiscard]] bool composites_vanish() const;
  // ker(d^n)/im(d^{n−1}); the map out of the top degree is taken to be zero. Throws DomainError when n > top().
  [[nodiscard]] CohomologyData cohomology(std::size_t n) const;
  // Just the group, skipping representatives when every term is free.
  [[nodiscard]] FpAbGroup cohomology_group(std::size_t n) const;
};

template <ModuleContext C>
FpAbComplex hom_complex(const C& ctx, const FreeResolution<C>& r, const typename C::Object& a) {
  FpAbComplex out;
  for (const auto& spec : r.terms) out.groups.push_back(ctx.hom_free(spec, a));
  for (std::size_t n = 0; n < r.differentials.size(); ++n) {
    IntMatrix m = ctx.hom_precompose(r.differentials[n], r.terms[n + 1], r.terms[n], a);
    out.maps.push_back(FpAbHom::trusted(out.groups[n], out.groups[n + 1], std::move(m)));
  }
  return out;
}

template <ModuleContext C>
FpAbGroup ext_n(const C& ctx, const typename C::Object& b, const typename C::Object& a, std::size_t n,
                CoverOrder order = CoverOrder::natural) {
  return hom_complex(ctx, free_resolution(ctx, b, n + 1, order), a).cohomology_group(n);
}

// Degreewise maps φ_n : P_n → Q_n over f : B → B′.
template <ModuleContext C>
struct ChainMap {
  std::vector<typename C::FreeMap> components;
};

template <ModuleContext C>
ChainMap<C> lift_chain_map(const C& ctx, const FreeResolution<C>& p, const FreeResolution<C>& q,
                           const typename C::Morphism& f) {
  ChainMap<C> out;
  const std::size_t top = std::min(p.length(), q.length());
  out.components.push_back(ctx.lift_augmentation(q.augmentation, p.terms[0], ctx.compose(f, p.augmentation)));
  for (std::size_t n = 1; n <= top; ++n) {
    auto g = ctx.compose_free(out.components[n - 1], p.differentials[n - 1]);
    out.components.push_back(ctx.lift_free(q.differentials[n - 1], p.terms[n], g));
  }
  return out;
}

template <ModuleContext C>
bool is_chain_map(const C& ctx, const FreeResolution<C>& p, const FreeResolution<C>& q,
                  const typename C::Morphism& f, const ChainMap<C>& phi) {
  auto phi0 = ctx.from_free(phi.components[0], p.terms[0], q.terms[0]);
  if (!ctx.equal(ctx.compose(q.augmentation, phi0), ctx.compose(f, p.augmentation))) return false;
  for (std::size_t n = 1; n < phi.components.size(); ++n) {
    auto lhs = ctx.compose_free(q.differentials[n - 1], phi.components[n]);
    auto rhs = ctx.compose_free(phi.components[n - 1], p.differentials[n - 1]);
    if (!ctx.equal_free(lhs, rhs)) return false;
  }
  return true;
}

// H^n(Hom(Q, A)) → H^n(Hom(P, A)) induced by a chain map P → Q.
template <ModuleContext C>
FpAbHom induced_on_cohomology(const C& ctx, const ChainMap<C>& phi, const FreeResolution<C>& p,
                              const FreeResolution<C>& q, const typename C::Object& a, std::size_t n,
                              const CohomologyData& hq, const CohomologyData& hp) {
  if (n >= phi.components.size()) throw DomainError("induced_on_cohomology: chain map too short");
  IntMatrix pre = ctx.hom_precompose(phi.components[n], p.terms[n], q.terms[n], a);
  IntMatrix images = pre * hq.representatives;
  IntMatrix m(hp.group.gens(), hq.group.gens());
  for (std::size_t j = 0; j < images.cols(); ++j) m.set_col(j, hp.classify(images.col(j)));
  return FpAbHom::trusted(hq.group, hp.group, std::move(m));
}

// ---------------------------------------------------------------------------
// Abelian groups as ℤ-modules.

class IntegerContext {
 public:
  using Object = FpAbGroup;
  using Morphism = FpAbHom;
  using FreeSpec = std::size_t;
  using FreeMap = IntMatrix;

  [[nodiscard]] FpAbGroup free_object(std::size_t r) const { return FpAbGroup::free(r); }
  [[nodiscard]] std::size_t rank(std::size_t r) const { return r; }
  [[nodiscard]] CoverOf<IntegerContext> epi_cover(const FpAbGroup& b, CoverOrder order) const;
  [[nodiscard]] KernelOf<IntegerContext> kernel(const FpAbHom& f) const;
  [[nodiscard]] FpAbHom compose(const FpAbHom& g, const FpAbHom& f) const { return yoneda::compose(g, f); }
  [[nodiscard]] bool is_zero(const FpAbHom& f) const { return f.is_zero(); }
  [[nodiscard]] bool equal(const FpAbHom& f, const FpAbHom& g) const { return f.equals(g); }
  [[nodiscard]] IntMatrix as_free_map(const FpAbHom& f) const { return f.matrix(); }
  [[nodiscard]] FpAbHom from_free(const IntMatrix& m, std::size_t src, std::size_t tgt) const {
    return FpAbHom::trusted(FpAbGroup::free(src), FpAbGroup::free(tgt), m);
  }
  [[nodiscard]] IntMatrix compose_free(const IntMatrix& g, const IntMatrix& f) const { return g * f; }
  [[nodiscard]] bool is_zero_free(const IntMatrix& m) const { return m.is_zero(); }
  [[nodiscard]] bool equal_free(const IntMatrix& a, const IntMatrix& b) const { return a == b; }
  [[nodiscard]] FpAbGroup hom_free(std::size_t r, const FpAbGroup& a) const { return FpAbGroup::power(a, r); }
  [[nodiscard]] IntMatrix hom_precompose(const IntMatrix& d, std::size_t src, std::size_t tgt,
                                         const FpAbGroup& a) const;
  [[nodiscard]] IntMatrix lift_free(const IntMatrix& d, std::size_t src, const IntMatrix& g) const;
  [[nodiscard]] IntMatrix lift_augmentation(const FpAbHom& eps, std::size_t src, const FpAbHom& g) const;
};

static_assert(ModuleContext<IntegerContext>);

}  // namespace yoneda
