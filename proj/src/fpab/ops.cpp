#include "yoneda/errors.hpp"
#include "yoneda/fpab.hpp"

namespace yoneda {

Simplification simplify(const FpAbGroup& g) {
  if (g.has_free_presentation()) {
    FpAbGroup f = FpAbGroup::free(g.gens());
    IntMatrix id = IntMatrix::identity(g.gens());
    return {f, FpAbHom::trusted(g, f, id), FpAbHom::trusted(f, g, id)};
  }
  const SmithDecomposition s = snf(g.relations());
  const auto diag = s.diagonal();
  const std::size_t n = g.gens();

  // Torsion generators first, in divisibility order, then the free ones.
  std::vector<std::size_t> kept;
  std::vector<Integer> torsion;
  for (std::size_t i = 0; i < n; ++i) {
    const bool has_entry = i < diag.size() && !diag[i].is_zero();
    if (has_entry && !diag[i].is_one()) {
      kept.push_back(i);
      torsion.push_back(diag[i]);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (i >= diag.size() || diag[i].is_zero()) kept.push_back(i);

  IntMatrix rel(kept.size(), torsion.size());
  for (std::size_t i = 0; i < torsion.size(); ++i) rel(i, i) = torsion[i];
  FpAbGroup h = FpAbGroup::make(kept.size(), std::move(rel));

  IntMatrix to = s.U.select_rows(kept);
  IntMatrix from = s.U_inv.select_cols(kept);
  return {h, FpAbHom::trusted(g, h, std::move(to)), FpAbHom::trusted(h, g, std::move(from))};
}

Kernel kernel(const FpAbHom& f) {
  const FpAbGroup& x = f.src();
  const FpAbGroup& y = f.tgt();
  const std::size_t gx = x.gens();

  IntMatrix kb;
  std::optional<ColumnEchelon> ech;
  if (y.relations().cols() == 0) {
    kb = kernel_basis(f.matrix());
  } else {
    IntMatrix n = kernel_basis(IntMatrix::hcat(f.matrix(), y.relations()));
    IntMatrix top = n.block(0, 0, gx, n.cols());
    ech.emplace(top, false);
    kb = ech->image_basis();
  }

  if (x.has_free_presentation()) {
    FpAbGroup k = FpAbGroup::free(kb.cols());
    return {k, FpAbHom::trusted(k, x, std::move(kb))};
  }

  if (!ech) ech.emplace(kb, false);
  const IntMatrix& rel_x = x.relations();
  IntMatrix coords(kb.cols(), rel_x.cols());
  for (std::size_t j = 0; j < rel_x.cols(); ++j) {
    auto c = ech->lattice_coordinates(rel_x.col(j));
    if (!c) throw InternalInvariant("kernel: source relations escape the kernel lattice; map is ill-defined");
    coords.set_col(j, *c);
  }
  FpAbGroup k0 = FpAbGroup::make(kb.cols(), std::move(coords));
  Simplification s = simplify(k0);
  return {s.group, FpAbHom::trusted(s.group, x, kb * s.from.matrix())};
}

Cokernel cokernel(const FpAbHom& f) {
  const FpAbGroup& y = f.tgt();
  FpAbGroup c = FpAbGroup::make(y.gens(), IntMatrix::hcat(y.relations(), f.matrix()));
  return {c, FpAbHom::trusted(y, c, IntMatrix::identity(y.gens()))};
}

DirectSum direct_sum(const FpAbGroup& a, const FpAbGroup& b) {
  const std::size_t m = a.gens();
  const std::size_t n = b.gens();
  FpAbGroup s = FpAbGroup::make(m + n, IntMatrix::block_diag(a.relations(), b.relations()));
  IntMatrix ia(m + n, m), ib(m + n, n), pa(m, m + n), pb(n, m + n);
  for (std::size_t i = 0; i < m; ++i) ia(i, i) = pa(i, i) = Integer(1);
  for (std::size_t i = 0; i < n; ++i) ib(m + i, i) = pb(i, m + i) = Integer(1);
  return {s, FpAbHom::trusted(a, s, std::move(ia)), FpAbHom::trusted(b, s, std::move(ib)),
          FpAbHom::trusted(s, a, std::move(pa)), FpAbHom::trusted(s, b, std::move(pb))};
}

FpAbGroup direct_sum_of(const std::vector<FpAbGroup>& parts, std::vector<std::size_t>* offsets) {
  std::size_t gens = 0, rels = 0;
  for (const auto& g : parts) {
    if (offsets) offsets->push_back(gens);
    gens += g.gens();
    rels += g.relations().cols();
  }
  IntMatrix r(gens, rels);
  std::size_t row = 0, col = 0;
  for (const auto& g : parts) {
    r.set_block(row, col, g.relations());
    row += g.gens();
    col += g.relations().cols();
  }
  return FpAbGroup::make(gens, std::move(r));
}

FpAbHom diagonal(const DirectSum& s) {
  return pairing(FpAbHom::identity(s.pr_a.tgt()), FpAbHom::identity(s.pr_b.tgt()), s);
}

FpAbHom codiagonal(const DirectSum& s) {
  return copairing(FpAbHom::identity(s.in_a.src()), FpAbHom::identity(s.in_b.src()), s);
}

FpAbHom pairing(const FpAbHom& f, const FpAbHom& g, const DirectSum& s) {
  if (!f.src().same_presentation(g.src())) throw DimensionMismatch("pairing: sources differ");
  if (!f.tgt().same_presentation(s.pr_a.tgt()) || !g.tgt().same_presentation(s.pr_b.tgt()))
    throw DimensionMismatch("pairing: targets do not match the sum");
  return FpAbHom::trusted(f.src(), s.group, IntMatrix::vcat(f.matrix(), g.matrix()));
}

FpAbHom copairing(const FpAbHom& f, const FpAbHom& g, const DirectSum& s) {
  if (!f.tgt().same_presentation(g.tgt())) throw DimensionMismatch("copairing: targets differ");
  if (!f.src().same_presentation(s.in_a.src()) || !g.src().same_presentation(s.in_b.src()))
    throw DimensionMismatch("copairing: sources do not match the sum");
  return FpAbHom::trusted(s.group, f.tgt(), IntMatrix::hcat(f.matrix(), g.matrix()));
}

FpAbHom sum_map(const FpAbHom& f, const FpAbHom& g, const DirectSum& src, const DirectSum& tgt) {
  if (!f.src().same_presentation(src.in_a.src()) || !g.src().same_presentation(src.in_b.src()) ||
      !f.tgt().same_presentation(tgt.in_a.src()) || !g.tgt().same_presentation(tgt.in_b.src()))
    throw DimensionMismatch("sum_map: summands do not match");
  return FpAbHom::trusted(src.group, tgt.group, IntMatrix::block_diag(f.matrix(), g.matrix()));
}

bool is_epi(const FpAbHom& f) { return cokernel(f).group.is_zero(); }
bool is_mono(const FpAbHom& f) { return kernel(f).group.is_zero(); }
bool is_iso(const FpAbHom& f) { return is_epi(f) && is_mono(f); }

FpAbHom lift_through_epi(const FpAbHom& p, const FpAbHom& g) {
  if (!g.src().has_free_presentation()) throw NotFree("lift_through_epi: source of the map is not free");
  if (!p.tgt().same_presentation(g.tgt())) throw DimensionMismatch("lift_through_epi: targets differ");
  auto h = solve_mod_columns(p.matrix(), g.matrix(), p.tgt().relations());
  if (!h) throw NotEpi("lift_through_epi: map does not factor; p is not surjective onto its image");
  return FpAbHom::trusted(g.src(), p.src(), std::move(*h));
}

std::optional<FpAbHom> factor_through(const FpAbHom& m, const FpAbHom& g) {
  if (!m.tgt().same_presentation(g.tgt())) throw DimensionMismatch("factor_through: targets differ");
  auto h = solve_mod_columns(m.matrix(), g.matrix(), m.tgt().relations());
  if (h) {
    FpAbHom cand = FpAbHom::trusted(g.src(), m.src(), std::move(*h));
    if (cand.is_well_defined()) return cand;
  }
  // Columnwise lifts can disagree on relations when m is not mono.
  HomSystem sys;
  const std::size_t u = sys.add_unknown(g.src(), m.src());
  sys.add_equation({{u, m.matrix(), std::nullopt}}, g.matrix(), g.tgt());
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  return FpAbHom::trusted(g.src(), m.src(), std::move((*sol)[0]));
}

std::optional<FpAbHom> inverse(const FpAbHom& f) {
  if (!is_iso(f)) return std::nullopt;
  auto h = solve_mod_columns(f.matrix(), IntMatrix::identity(f.tgt().gens()), f.tgt().relations());
  if (!h) throw InternalInvariant("inverse: isomorphism without preimages");
  return FpAbHom::trusted(f.tgt(), f.src(), std::move(*h));
}

std::vector<IntVector> finite_elements(const FpAbGroup& g) {
  Simplification s = simplify(g);
  const CanonicalForm& c = g.canonical();
  if (c.rank > 0) throw DomainError("finite_elements: group " + c.to_string() + " is infinite");
  const std::size_t t = s.group.gens();
  std::vector<std::int64_t> radix(t);
  for (std::size_t i = 0; i < t; ++i) {
    const Integer& d = s.group.relations()(i, i);
    if (!d.fits_int64()) throw DomainError("finite_elements: group too large to enumerate");
    radix[i] = d.small_value();
  }
  std::vector<IntVector> out;
  std::vector<std::int64_t> digit(t, 0);
  while (true) {
    IntVector v(t);
    for (std::size_t i = 0; i < t; ++i) v[i] = Integer(static_cast<long long>(digit[i]));
    out.push_back(s.from.matrix() * v);
    std::size_t i = 0;
    while (i < t && ++digit[i] == radix[i]) digit[i++] = 0;
    if (i == t) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// HomSystem

std::size_t HomSystem::add_unknown(const FpAbGroup& src, const FpAbGroup& tgt) {
  const std::size_t idx = blocks_.size();
  blocks_.push_back({src, tgt, vec_size()});
  if (src.relations().cols() > 0) {
    equations_.push_back({{{idx, std::nullopt, src.relations()}}, IntMatrix(tgt.gens(), src.relations().cols()), tgt});
  }
  return idx;
}

void HomSystem::add_equation(std::vector<Term> terms, IntMatrix rhs, const FpAbGroup& target) {
  if (rhs.rows() != target.gens()) throw DimensionMismatch("add_equation: rhs rows differ from target generators");
  for (const auto& t : terms) {
    if (t.unknown >= blocks_.size()) throw DimensionMismatch("add_equation: unknown index out of range");
    const Block& b = blocks_[t.unknown];
    const std::size_t out_rows = t.left ? t.left->rows() : b.tgt.gens();
    const std::size_t in_rows = t.left ? t.left->cols() : b.tgt.gens();
    const std::size_t in_cols = t.right ? t.right->rows() : b.src.gens();
    const std::size_t out_cols = t.right ? t.right->cols() : b.src.gens();
    if (in_rows != b.tgt.gens() || in_cols != b.src.gens() || out_rows != rhs.rows() || out_cols != rhs.cols())
      throw DimensionMismatch("add_equation: term shape does not match");
  }
  equations_.push_back({std::move(terms), std::move(rhs), target});
}

std::size_t HomSystem::vec_size() const {
  std::size_t n = 0;
  for (const auto& b : blocks_) n += b.tgt.gens() * b.src.gens();
  return n;
}

IntMatrix HomSystem::flatten(IntVector* rhs) const {
  std::size_t rows = 0, slack = 0;
  for (const auto& e : equations_) {
    rows += e.rhs.rows() * e.rhs.cols();
    slack += e.rhs.cols() * e.target.relations().cols();
  }
  const std::size_t nv = vec_size();
  IntMatrix m(rows, nv + slack);
  if (rhs) rhs->assign(rows, Integer());

  std::size_t r0 = 0, s0 = nv;
  for (const auto& e : equations_) {
    const std::size_t g = e.rhs.rows();
    const std::size_t c = e.rhs.cols();
    for (const auto& t : e.terms) {
      const Block& b = blocks_[t.unknown];
      const IntMatrix left = t.left ? *t.left : IntMatrix::identity(b.tgt.gens());
      const IntMatrix right_t = t.right ? t.right->transpose() : IntMatrix::identity(b.src.gens());
      // (Rᵀ ⊗ L) accumulated in place.
      for (std::size_t i = 0; i < right_t.rows(); ++i)
        for (std::size_t j = 0; j < right_t.cols(); ++j) {
          const Integer& s = right_t(i, j);
          if (s.is_zero()) continue;
          for (std::size_t k = 0; k < left.rows(); ++k) {
            auto lrow = left.row(k);
            auto mrow = m.row(r0 + i * g + k);
            for (std::size_t l = 0; l < left.cols(); ++l)
              if (!lrow[l].is_zero()) mrow[b.offset + j * b.tgt.gens() + l].add_mul(s, lrow[l]);
          }
        }
    }
    const IntMatrix& rel = e.target.relations();
    for (std::size_t col = 0; col < c; ++col) {
      m.set_block(r0 + col * g, s0, rel);
      s0 += rel.cols();
    }
    if (rhs) {
      for (std::size_t col = 0; col < c; ++col)
        for (std::size_t k = 0; k < g; ++k) (*rhs)[r0 + col * g + k] = e.rhs(k, col);
    }
    r0 += g * c;
  }
  return m;
}

std::vector<IntMatrix> HomSystem::unpack(const IntVector& x) const {
  std::vector<IntMatrix> out;
  out.reserve(blocks_.size());
  for (const auto& b : blocks_) {
    IntMatrix blk(b.tgt.gens(), b.src.gens());
    for (std::size_t c = 0; c < blk.cols(); ++c)
      for (std::size_t r = 0; r < blk.rows(); ++r) blk(r, c) = x[b.offset + c * blk.rows() + r];
    out.push_back(std::move(blk));
  }
  return out;
}

std::optional<std::vector<IntMatrix>> HomSystem::solve() const {
  IntVector rhs;
  IntMatrix m = flatten(&rhs);
  if (m.rows() == 0) return unpack(IntVector(vec_size()));
  auto x = yoneda::solve(m, rhs);
  if (!x) return std::nullopt;
  return unpack(*x);
}

namespace {

IntVector pack_blocks(const std::vector<IntMatrix>& blocks) {
  IntVector v;
  for (const auto& b : blocks)
    for (std::size_t c = 0; c < b.cols(); ++c)
      for (std::size_t r = 0; r < b.rows(); ++r) v.push_back(b(r, c));
  return v;
}

}  // namespace

HomSystem::SolutionGroup HomSystem::homogeneous_solutions() const {
  const std::size_t nv = vec_size();
  IntMatrix m = flatten(nullptr);
  IntMatrix w;
  if (m.rows() == 0) {
    w = IntMatrix::identity(nv);
  } else {
    IntMatrix n = kernel_basis(m);
    w = n.block(0, 0, nv, n.cols());
  }
  auto ech = std::make_shared<ColumnEchelon>(w, false);
  IntMatrix wb = ech->image_basis();

  // Homs that are zero blockwise: columns of I ⊗ Rel_tgt in each block.
  std::vector<IntVector> null_vecs;
  for (const auto& b : blocks_) {
    const IntMatrix& rel = b.tgt.relations();
    for (std::size_t c = 0; c < b.src.gens(); ++c)
      for (std::size_t j = 0; j < rel.cols(); ++j) {
        IntVector v(nv);
        for (std::size_t r = 0; r < rel.rows(); ++r) v[b.offset + c * b.tgt.gens() + r] = rel(r, j);
        null_vecs.push_back(std::move(v));
      }
  }
  IntMatrix coords(wb.cols(), null_vecs.size());
  for (std::size_t j = 0; j < null_vecs.size(); ++j) {
    auto y = ech->lattice_coordinates(null_vecs[j]);
    if (!y) throw InternalInvariant("homogeneous_solutions: zero hom is not a solution");
    coords.set_col(j, *y);
  }
  Simplification s = simplify(FpAbGroup::make(wb.cols(), std::move(coords)));

  SolutionGroup out{s.group, {}, ech, s.to.matrix()};
  IntMatrix gens = wb * s.from.matrix();
  for (std::size_t j = 0; j < gens.cols(); ++j) out.basis.push_back(unpack(gens.col(j)));
  return out;
}

IntVector HomSystem::SolutionGroup::coordinates(const std::vector<IntMatrix>& blocks) const {
  auto y = lattice->lattice_coordinates(pack_blocks(blocks));
  if (!y) throw ValidationError("coordinates: blocks do not solve the homogeneous system");
  return to_group * *y;
}

// ---------------------------------------------------------------------------
// HomGroup

HomGroup::HomGroup(FpAbGroup a, FpAbGroup b) : a_(std::move(a)), b_(std::move(b)) {
  HomSystem sys;
  sys.add_unknown(a_, b_);
  solutions_ = sys.homogeneous_solutions();
  for (const auto& blocks : solutions_.basis) basis_.push_back(FpAbHom::trusted(a_, b_, blocks[0]));
}

HomGroup::HomGroup(FpAbGroup a, FpAbGroup b, const HomSystem& system) : a_(std::move(a)), b_(std::move(b)) {
  if (system.unknowns() != 1) throw DimensionMismatch("HomGroup: system must have exactly one unknown");
  solutions_ = system.homogeneous_solutions();
  for (const auto& blocks : solutions_.basis) {
    if (blocks[0].rows() != b_.gens() || blocks[0].cols() != a_.gens())
      throw DimensionMismatch("HomGroup: unknown has the wrong endpoints");
    basis_.push_back(FpAbHom::trusted(a_, b_, blocks[0]));
  }
}

IntVector HomGroup::coordinates(const FpAbHom& f) const {
  if (!f.src().same_presentation(a_) || !f.tgt().same_presentation(b_))
    throw DimensionMismatch("HomGroup::coordinates: map has the wrong endpoints");
  return solutions_.coordinates({f.matrix()});
}

FpAbHom HomGroup::hom_at(const IntVector& coords) const {
  if (coords.size() != basis_.size()) throw DimensionMismatch("HomGroup::hom_at: wrong number of coordinates");
  IntMatrix m(b_.gens(), a_.gens());
  for (std::size_t j = 0; j < coords.size(); ++j)
    if (!coords[j].is_zero()) m += basis_[j].matrix() * coords[j];
  return FpAbHom::trusted(a_, b_, std::move(m));
}

HomGroup hom_group(const FpAbGroup& a, const FpAbGroup& b) { return {a, b}; }

FpAbHom induced_hom_map(const HomGroup& from, const HomGroup& to,
                        const std::function<FpAbHom(const FpAbHom&)>& action) {
  IntMatrix m(to.group().gens(), from.group().gens());
  for (std::size_t j = 0; j < from.basis().size(); ++j) m.set_col(j, to.coordinates(action(from.basis()[j])));
  return FpAbHom::trusted(from.group(), to.group(), std::move(m));
}

}  // namespace yoneda
