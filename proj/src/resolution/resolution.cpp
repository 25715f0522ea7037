#include "yoneda/resolution.hpp"

namespace yoneda {

IntVector CohomologyData::classify(const IntVector& x) const {
  auto y = solve_mod(cocycle_inclusion.matrix(), x, cocycle_inclusion.tgt().relations());
  if (!y) throw ValidationError("classify: vector is not a cocycle");
  return to_group.matrix() * *y;
}

bool FpAbComplex::composites_vanish() const {
  for (std::size_t n = 0; n + 1 < maps.size(); ++n)
    if (!compose(maps[n + 1], maps[n]).is_zero()) return false;
  return true;
}

namespace {

FpAbHom outgoing(const FpAbComplex& c, std::size_t n) {
  if (n < c.maps.size()) return c.maps[n];
  return FpAbHom::zero(c.groups[n], FpAbGroup());
}

}  // namespace

CohomologyData FpAbComplex::cohomology(std::size_t n) const {
  if (groups.empty() || n > top())
    throw DomainError("cohomology: degree " + std::to_string(n) + " is beyond the complex (top " +
                      std::to_string(top()) + ")");
  const FpAbGroup& cn = groups[n];
  Kernel z = kernel(outgoing(*this, n));
  IntMatrix incoming(z.group.gens(), 0);
  if (n > 0) {
    auto d = solve_mod_columns(z.inclusion.matrix(), maps[n - 1].matrix(), cn.relations());
    if (!d) throw InternalInvariant("cohomology: coboundaries are not cocycles");
    incoming = std::move(*d);
  }
  FpAbGroup quotient = FpAbGroup::make(z.group.gens(), IntMatrix::hcat(z.group.relations(), incoming));
  Simplification s = simplify(quotient);
  return {s.group, z.inclusion, FpAbHom::trusted(z.group, s.group, s.to.matrix()),
          z.inclusion.matrix() * s.from.matrix()};
}

FpAbGroup FpAbComplex::cohomology_group(std::size_t n) const {
  if (groups.empty() || n > top())
    throw DomainError("cohomology: degree " + std::to_string(n) + " is beyond the complex (top " +
                      std::to_string(top()) + ")");
  const bool free_here = groups[n].has_free_presentation() && (n == 0 || groups[n - 1].has_free_presentation()) &&
                         (n >= maps.size() || groups[n + 1].has_free_presentation());
  if (!free_here) return cohomology(n).group;

  // Over free terms the cocycles are saturated, so the torsion of H^n is the
  // torsion of coker d^{n−1} and only ranks are needed otherwise.
  CanonicalForm form;
  std::size_t rank_in = 0;
  if (n > 0) {
    for (const auto& d : smith_diagonal(maps[n - 1].matrix())) {
      if (d.is_zero()) continue;
      ++rank_in;
      if (!d.is_one()) form.factors.push_back(d);
    }
  }
  const std::size_t rank_out = n < maps.size() ? rank(maps[n].matrix()) : 0;
  form.rank = groups[n].gens() - rank_out - rank_in;
  return FpAbGroup::from_canonical(form);
}

// ---------------------------------------------------------------------------
// IntegerContext

CoverOf<IntegerContext> IntegerContext::epi_cover(const FpAbGroup& b, CoverOrder order) const {
  const std::size_t r = b.gens();
  IntMatrix m(r, r);
  for (std::size_t i = 0; i < r; ++i) m(i, order == CoverOrder::natural ? i : r - 1 - i) = Integer(1);
  return {r, FpAbHom::trusted(FpAbGroup::free(r), b, std::move(m))};
}

KernelOf<IntegerContext> IntegerContext::kernel(const FpAbHom& f) const {
  Kernel k = yoneda::kernel(f);
  return {k.group, k.inclusion};
}

IntMatrix IntegerContext::hom_precompose(const IntMatrix& d, std::size_t src, std::size_t tgt,
                                         const FpAbGroup& a) const {
  if (d.rows() != tgt || d.cols() != src) throw DimensionMismatch("hom_precompose: map has the wrong shape");
  return IntMatrix::kron(d.transpose(), IntMatrix::identity(a.gens()));
}

IntMatrix IntegerContext::lift_free(const IntMatrix& d, std::size_t src, const IntMatrix& g) const {
  if (g.cols() != src) throw DimensionMismatch("lift_free: map has the wrong source");
  auto h = solve_mod_columns(d, g, IntMatrix(d.rows(), 0));
  if (!h) throw InternalInvariant("lift_free: map does not land in the image of the differential");
  return std::move(*h);
}

IntMatrix IntegerContext::lift_augmentation(const FpAbHom& eps, std::size_t src, const FpAbHom& g) const {
  if (g.src().gens() != src) throw DimensionMismatch("lift_augmentation: map has the wrong source");
  auto h = solve_mod_columns(eps.matrix(), g.matrix(), eps.tgt().relations());
  if (!h) throw InternalInvariant("lift_augmentation: augmentation is not onto");
  return std::move(*h);
}

}  // namespace yoneda
