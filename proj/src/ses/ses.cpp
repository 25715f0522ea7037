#include "yoneda/ses.hpp"

#include "yoneda/errors.hpp"

namespace yoneda {

bool exact_at(const FpAbHom& f, const FpAbHom& g) {
  if (!f.tgt().same_presentation(g.src())) throw DimensionMismatch("exact_at: maps are not composable");
  if (!compose(g, f).is_zero()) return false;
  Kernel k = kernel(g);
  if (k.inclusion.matrix().cols() == 0) return true;
  return solve_mod_columns(f.matrix(), k.inclusion.matrix(), f.tgt().relations()).has_value();
}

ShortExactSeq ShortExactSeq::make(FpAbHom i, FpAbHom p) {
  if (!i.tgt().same_presentation(p.src())) throw DimensionMismatch("make_ses: target of i is not the source of p");
  if (!compose(p, i).is_zero()) throw NotExact("make_ses: p∘i is not zero");
  if (!is_mono(i)) throw NotMono("make_ses: i is not injective");
  if (!is_epi(p)) throw NotEpi("make_ses: p is not surjective");
  if (!exact_at(i, p)) throw NotExact("make_ses: image of i is smaller than the kernel of p");
  return {std::move(i), std::move(p)};
}

ShortExactSeq ShortExactSeq::trusted(FpAbHom i, FpAbHom p) {
  if (!i.tgt().same_presentation(p.src())) throw DimensionMismatch("ses: target of i is not the source of p");
  return {std::move(i), std::move(p)};
}

ShortExactSeq ShortExactSeq::split(const FpAbGroup& a, const FpAbGroup& b) {
  DirectSum s = direct_sum(a, b);
  return {s.in_a, s.pr_b};
}

std::string ShortExactSeq::to_string() const {
  return A().to_string() + " -> " + E().to_string() + " -> " + B().to_string();
}

ShortExactSeq make_ses(FpAbHom i, FpAbHom p) { return ShortExactSeq::make(std::move(i), std::move(p)); }

std::optional<FpAbHom> is_split(const ShortExactSeq& e) {
  HomSystem sys;
  const auto s = sys.add_unknown(e.B(), e.E());
  sys.add_equation({{s, e.p().matrix(), std::nullopt}}, IntMatrix::identity(e.B().gens()), e.B());
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  return FpAbHom::trusted(e.B(), e.E(), std::move((*sol)[0]));
}

ShortExactSeq pushout_ses(const FpAbHom& f, const ShortExactSeq& e) {
  if (!f.src().same_presentation(e.A())) throw DimensionMismatch("pushout_ses: f does not start at A");
  DirectSum s = direct_sum(f.tgt(), e.E());
  FpAbHom glue = FpAbHom::trusted(e.A(), s.group, IntMatrix::vcat(f.matrix(), -e.i().matrix()));
  Cokernel c = cokernel(glue);
  FpAbHom i2 = FpAbHom::trusted(f.tgt(), c.group, s.in_a.matrix());
  FpAbHom p2 = FpAbHom::trusted(c.group, e.B(),
                                IntMatrix::hcat(IntMatrix(e.B().gens(), f.tgt().gens()), e.p().matrix()));
  return ShortExactSeq::trusted(std::move(i2), std::move(p2));
}

ShortExactSeq pullback_ses(const FpAbHom& g, const ShortExactSeq& e) {
  if (!g.tgt().same_presentation(e.B())) throw DimensionMismatch("pullback_ses: g does not end at B");
  DirectSum s = direct_sum(e.E(), g.src());
  FpAbHom diff = FpAbHom::trusted(s.group, e.B(), IntMatrix::hcat(e.p().matrix(), -g.matrix()));
  Kernel k = kernel(diff);
  FpAbHom a_in = compose(s.in_a, e.i());
  auto i2 = factor_through(k.inclusion, a_in);
  if (!i2) throw InternalInvariant("pullback_ses: i does not land in the pullback");
  FpAbHom p2 = compose(s.pr_b, k.inclusion);
  return ShortExactSeq::trusted(std::move(*i2), std::move(p2));
}

ShortExactSeq direct_sum_ses(const ShortExactSeq& e, const ShortExactSeq& f) {
  DirectSum a = direct_sum(e.A(), f.A());
  DirectSum m = direct_sum(e.E(), f.E());
  DirectSum b = direct_sum(e.B(), f.B());
  return ShortExactSeq::trusted(sum_map(e.i(), f.i(), a, m), sum_map(e.p(), f.p(), m, b));
}

ShortExactSeq baer_sum(const ShortExactSeq& e, const ShortExactSeq& f) {
  if (!e.A().same_presentation(f.A()) || !e.B().same_presentation(f.B()))
    throw DimensionMismatch("baer_sum: sequences have different endpoints");
  ShortExactSeq sum = direct_sum_ses(e, f);
  DirectSum bb = direct_sum(e.B(), e.B());
  DirectSum aa = direct_sum(e.A(), e.A());
  ShortExactSeq pulled = pullback_ses(diagonal(bb), sum);
  return pushout_ses(codiagonal(aa), pulled);
}

std::optional<FpAbHom> are_equivalent(const ShortExactSeq& e, const ShortExactSeq& f) {
  if (!e.A().same_presentation(f.A()) || !e.B().same_presentation(f.B()))
    throw DimensionMismatch("are_equivalent: sequences have different endpoints");
  HomSystem sys;
  const auto phi = sys.add_unknown(e.E(), f.E());
  sys.add_equation({{phi, std::nullopt, e.i().matrix()}}, f.i().matrix(), f.E());
  sys.add_equation({{phi, f.p().matrix(), std::nullopt}}, e.p().matrix(), e.B());
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  FpAbHom w = FpAbHom::trusted(e.E(), f.E(), std::move((*sol)[0]));
  if (!is_mono(w) || !is_epi(w)) throw InternalInvariant("are_equivalent: witness is not an isomorphism");
  return w;
}

// ---------------------------------------------------------------------------
// Ext¹

struct Ext1Group::Data {
  FpAbGroup b, a;
  IntMatrix kb;
  std::unique_ptr<ColumnEchelon> kb_lattice;
  std::optional<ShortExactSeq> presentation;
  FpAbGroup cocycles;
  FpAbGroup group;
  std::optional<FpAbHom> to_ext;
  IntMatrix representatives;
};

Ext1Group::Ext1Group(FpAbGroup b, FpAbGroup a) {
  auto d = std::make_shared<Data>();
  d->b = std::move(b);
  d->a = std::move(a);
  const std::size_t gb = d->b.gens();
  const std::size_t ga = d->a.gens();

  FpAbGroup f = FpAbGroup::free(gb);
  FpAbHom cover = FpAbHom::trusted(f, d->b, IntMatrix::identity(gb));
  Kernel k = kernel(cover);
  d->kb = k.inclusion.matrix();
  d->kb_lattice = std::make_unique<ColumnEchelon>(d->kb, false);
  d->presentation = ShortExactSeq::trusted(k.inclusion, cover);
  const std::size_t kk = d->kb.cols();

  // Hom(F, A) = A^{gb} → Hom(K, A) = A^k, φ ↦ φ·Kb.
  FpAbGroup hom_f = FpAbGroup::power(d->a, gb);
  d->cocycles = FpAbGroup::power(d->a, kk);
  FpAbHom restrict_map =
      FpAbHom::trusted(hom_f, d->cocycles, IntMatrix::kron(d->kb.transpose(), IntMatrix::identity(ga)));
  Cokernel c = cokernel(restrict_map);
  Simplification s = simplify(c.group);
  d->group = s.group;
  d->to_ext = FpAbHom::trusted(d->cocycles, s.group, s.to.matrix());
  d->representatives = s.from.matrix();
  data_ = std::move(d);
}

const FpAbGroup& Ext1Group::B() const { return data_->b; }
const FpAbGroup& Ext1Group::A() const { return data_->a; }
const FpAbGroup& Ext1Group::group() const { return data_->group; }
const ShortExactSeq& Ext1Group::presentation_sequence() const { return *data_->presentation; }
const IntMatrix& Ext1Group::kernel_basis() const { return data_->kb; }
const FpAbGroup& Ext1Group::cocycles() const { return data_->cocycles; }
const FpAbHom& Ext1Group::to_ext() const { return *data_->to_ext; }
const IntMatrix& Ext1Group::representatives() const { return data_->representatives; }

IntVector Ext1Group::kernel_coordinates(const IntVector& x) const {
  auto y = data_->kb_lattice->lattice_coordinates(x);
  if (!y) throw ValidationError("kernel_coordinates: vector is not in the relation lattice");
  return *y;
}

ExtClass Ext1Group::class_of_cocycle(const IntMatrix& psi) const {
  if (psi.rows() != A().gens() || psi.cols() != data_->kb.cols())
    throw DimensionMismatch("class_of_cocycle: cocycle has the wrong shape");
  return {*this, Element(group(), to_ext().matrix() * psi.vec().col(0))};
}

ExtClass Ext1Group::class_of(const ShortExactSeq& e) const {
  if (!e.A().same_presentation(A()) || !e.B().same_presentation(B()))
    throw DimensionMismatch("class_of: sequence endpoints do not match the Ext group");
  const ShortExactSeq& pres = presentation_sequence();
  FpAbHom h = lift_through_epi(e.p(), pres.p());
  FpAbHom hk = compose(h, pres.i());
  auto psi = factor_through(e.i(), hk);
  if (!psi) throw InternalInvariant("class_of: restriction to the relations does not land in A");
  return class_of_cocycle(psi->matrix());
}

ShortExactSeq Ext1Group::realize(const IntMatrix& psi) const {
  FpAbHom cocycle = FpAbHom::trusted(presentation_sequence().A(), A(), psi);
  return pushout_ses(cocycle, presentation_sequence());
}

ShortExactSeq Ext1Group::realize(const ExtClass& c) const {
  IntMatrix v = IntMatrix::column(representatives() * c.coords().coords());
  return realize(IntMatrix::unvec(v, A().gens(), data_->kb.cols()));
}

ExtClass Ext1Group::zero() const { return {*this, Element::zero(group())}; }

Ext1Group ext1_group(const FpAbGroup& b, const FpAbGroup& a) { return {b, a}; }

ExtClass::ExtClass(Ext1Group parent, Element coords) : parent_(std::move(parent)), coords_(std::move(coords)) {
  if (!coords_.group().same_presentation(parent_.group()))
    throw DimensionMismatch("ExtClass: coordinates are not in the Ext group");
}

ExtClass class_of(const ShortExactSeq& e, const Ext1Group& g) { return g.class_of(e); }

FpAbHom ext_covariant(const FpAbHom& f, const Ext1Group& from, const Ext1Group& to) {
  if (!from.B().same_presentation(to.B()) || !f.src().same_presentation(from.A()) ||
      !f.tgt().same_presentation(to.A()))
    throw DimensionMismatch("ext_covariant: endpoints do not match");
  const std::size_t k = from.kernel_basis().cols();
  IntMatrix on_cocycles = IntMatrix::kron(IntMatrix::identity(k), f.matrix());
  return FpAbHom::trusted(from.group(), to.group(), to.to_ext().matrix() * on_cocycles * from.representatives());
}

FpAbHom ext_contravariant(const FpAbHom& g, const Ext1Group& from, const Ext1Group& to) {
  if (!from.A().same_presentation(to.A()) || !g.tgt().same_presentation(from.B()) ||
      !g.src().same_presentation(to.B()))
    throw DimensionMismatch("ext_contravariant: endpoints do not match");
  // g lifts to F′ → F with the same matrix; restricted to K′ it lands in K.
  IntMatrix image = g.matrix() * to.kernel_basis();
  IntMatrix c(from.kernel_basis().cols(), image.cols());
  for (std::size_t j = 0; j < image.cols(); ++j) c.set_col(j, from.kernel_coordinates(image.col(j)));
  IntMatrix on_cocycles = IntMatrix::kron(c.transpose(), IntMatrix::identity(from.A().gens()));
  return FpAbHom::trusted(from.group(), to.group(), to.to_ext().matrix() * on_cocycles * from.representatives());
}

// ---------------------------------------------------------------------------
// Six-term sequences

SixTermSequence six_term(const ShortExactSeq& e, const FpAbGroup& m, Variance variance) {
  SixTermSequence out;
  if (variance == Variance::covariant) {
    HomGroup ha(m, e.A()), he(m, e.E()), hb(m, e.B());
    Ext1Group xa(m, e.A()), xe(m, e.E()), xb(m, e.B());
    FpAbHom i_star = induced_hom_map(ha, he, [&](const FpAbHom& f) { return compose(e.i(), f); });
    FpAbHom p_star = induced_hom_map(he, hb, [&](const FpAbHom& f) { return compose(e.p(), f); });
    IntMatrix delta(xa.group().gens(), hb.group().gens());
    for (std::size_t j = 0; j < hb.basis().size(); ++j)
      delta.set_col(j, xa.class_of(pullback_ses(hb.basis()[j], e)).coords().coords());
    out.groups = {ha.group(), he.group(), hb.group(), xa.group(), xe.group(), xb.group()};
    out.maps = {i_star, p_star, FpAbHom::trusted(hb.group(), xa.group(), std::move(delta)),
                ext_covariant(e.i(), xa, xe), ext_covariant(e.p(), xe, xb)};
  } else {
    HomGroup hb(e.B(), m), he(e.E(), m), ha(e.A(), m);
    Ext1Group xb(e.B(), m), xe(e.E(), m), xa(e.A(), m);
    FpAbHom p_star = induced_hom_map(hb, he, [&](const FpAbHom& g) { return compose(g, e.p()); });
    FpAbHom i_star = induced_hom_map(he, ha, [&](const FpAbHom& g) { return compose(g, e.i()); });
    IntMatrix delta(xb.group().gens(), ha.group().gens());
    for (std::size_t j = 0; j < ha.basis().size(); ++j)
      delta.set_col(j, xb.class_of(pushout_ses(ha.basis()[j], e)).coords().coords());
    out.groups = {hb.group(), he.group(), ha.group(), xb.group(), xe.group(), xa.group()};
    out.maps = {p_star, i_star, FpAbHom::trusted(ha.group(), xb.group(), std::move(delta)),
                ext_contravariant(e.p(), xb, xe), ext_contravariant(e.i(), xe, xa)};
  }
  out.left_mono = is_mono(out.maps[0]);
  for (std::size_t k = 0; k < 4; ++k) out.exact_interior[k] = exact_at(out.maps[k], out.maps[k + 1]);
  out.right_epi = is_epi(out.maps[4]);
  return out;
}

}  // namespace yoneda
