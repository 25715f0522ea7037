#include <algorithm>
#include <numeric>

#include "yoneda/errors.hpp"
#include "yoneda/poset_sheaf.hpp"

namespace yoneda {

namespace {

// Indices j with d ≤ spec[j], i.e. the stalk basis of the free presheaf at d.
std::vector<std::size_t> basis_at(const FinitePoset& p, const std::vector<std::size_t>& spec, std::size_t d) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < spec.size(); ++j)
    if (p.leq(d, spec[j])) out.push_back(j);
  return out;
}

std::size_t position(const std::vector<std::size_t>& sorted, std::size_t j) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), j) - sorted.begin());
}

const std::vector<std::size_t>& free_spec(const AbPresheaf& f, const char* what) {
  if (!f.free_basis()) throw DimensionMismatch(std::string(what) + ": presheaf is not a free presheaf");
  return *f.free_basis();
}

}  // namespace

CoverOf<PresheafContext> PresheafContext::epi_cover(const AbPresheaf& f, CoverOrder order) const {
  std::vector<std::size_t> elems = p_.top_down();
  if (order == CoverOrder::reversed) {
    std::vector<std::size_t> below(p_.size());
    for (std::size_t c = 0; c < p_.size(); ++c) below[c] = p_.down_set(c).size();
    std::reverse(elems.begin(), elems.end());
    std::stable_sort(elems.begin(), elems.end(), [&](std::size_t a, std::size_t b) { return below[a] > below[b]; });
  }
  std::vector<std::size_t> spec;
  std::vector<IntVector> gens;
  for (std::size_t x : elems) {
    const FpAbGroup& s = f.stalk(x);
    IntMatrix span = s.relations();
    for (std::size_t j = 0; j < spec.size(); ++j)
      if (p_.leq(x, spec[j])) span = IntMatrix::hcat(span, IntMatrix::column(f.res(spec[j], x).apply(gens[j])));
    for (std::size_t step = 0; step < s.gens(); ++step) {
      const std::size_t k = order == CoverOrder::natural ? step : s.gens() - 1 - step;
      IntVector e(s.gens());
      e[k] = Integer(1);
      if (span.cols() > 0 && ColumnEchelon(span, false).contains(e)) continue;
      span = IntMatrix::hcat(span, IntMatrix::column(e));
      spec.push_back(x);
      gens.push_back(std::move(e));
    }
  }
  AbPresheaf free = free_object(spec);
  std::vector<FpAbHom> comps;
  for (std::size_t d = 0; d < p_.size(); ++d) {
    const auto at = basis_at(p_, spec, d);
    IntMatrix m(f.stalk(d).gens(), at.size());
    for (std::size_t a = 0; a < at.size(); ++a) m.set_col(a, f.res(spec[at[a]], d).apply(gens[at[a]]));
    comps.push_back(FpAbHom::trusted(free.stalk(d), f.stalk(d), std::move(m)));
  }
  return {spec, PresheafHom::trusted(free, f, std::move(comps))};
}

KernelOf<PresheafContext> PresheafContext::kernel(const PresheafHom& f) const {
  std::vector<Kernel> ks;
  std::vector<FpAbGroup> stalks;
  for (const auto& c : f.components()) {
    ks.push_back(yoneda::kernel(c));
    stalks.push_back(ks.back().group);
  }
  AbPresheaf::Restrictions res;
  for (const auto& [d, c] : p_.covers()) {
    auto r = factor_through(ks[d].inclusion, yoneda::compose(f.src().res(c, d), ks[c].inclusion));
    if (!r) throw InternalInvariant("kernel: restriction leaves the kernel");
    res.emplace(std::pair{c, d}, std::move(*r));
  }
  AbPresheaf k = AbPresheaf::make(p_, stalks, res);
  std::vector<FpAbHom> incl;
  for (const auto& kk : ks) incl.push_back(kk.inclusion);
  return {k, PresheafHom::trusted(k, f.src(), std::move(incl))};
}

PresheafFreeMap PresheafContext::as_free_map(const PresheafHom& f) const {
  const auto& s = free_spec(f.src(), "as_free_map");
  const auto& t = free_spec(f.tgt(), "as_free_map");
  IntMatrix m(t.size(), s.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    const std::size_t x = s[j];
    const auto src_at = basis_at(p_, s, x);
    const auto tgt_at = basis_at(p_, t, x);
    const IntMatrix& comp = f.at(x).matrix();
    const std::size_t col = position(src_at, j);
    for (std::size_t a = 0; a < tgt_at.size(); ++a) m(tgt_at[a], j) = comp(a, col);
  }
  return {s, t, std::move(m)};
}

PresheafHom PresheafContext::from_free(const PresheafFreeMap& m, const FreeSpec& src, const FreeSpec& tgt) const {
  if (m.src != src || m.tgt != tgt) throw DimensionMismatch("from_free: map has the wrong shape");
  AbPresheaf s = free_object(src), t = free_object(tgt);
  std::vector<FpAbHom> comps;
  for (std::size_t d = 0; d < p_.size(); ++d)
    comps.push_back(FpAbHom::trusted(s.stalk(d), t.stalk(d),
                                     m.matrix.select_rows(basis_at(p_, tgt, d)).select_cols(basis_at(p_, src, d))));
  return PresheafHom::trusted(s, t, std::move(comps));
}

PresheafFreeMap PresheafContext::compose_free(const PresheafFreeMap& g, const PresheafFreeMap& f) const {
  if (f.tgt != g.src) throw DimensionMismatch("compose_free: inner target differs from outer source");
  return {f.src, g.tgt, g.matrix * f.matrix};
}

FpAbGroup PresheafContext::hom_free(const FreeSpec& s, const AbPresheaf& a) const {
  std::vector<FpAbGroup> parts;
  for (std::size_t c : s) parts.push_back(a.stalk(c));
  return direct_sum_of(parts);
}

IntMatrix PresheafContext::hom_precompose(const PresheafFreeMap& d, const FreeSpec& src, const FreeSpec& tgt,
                                          const AbPresheaf& a) const {
  if (d.src != src || d.tgt != tgt) throw DimensionMismatch("hom_precompose: map has the wrong shape");
  std::vector<FpAbGroup> src_parts, tgt_parts;
  for (std::size_t c : src) src_parts.push_back(a.stalk(c));
  for (std::size_t c : tgt) tgt_parts.push_back(a.stalk(c));
  std::vector<std::size_t> row_off, col_off;
  FpAbGroup rows = direct_sum_of(src_parts, &row_off), cols = direct_sum_of(tgt_parts, &col_off);
  IntMatrix out(rows.gens(), cols.gens());
  for (std::size_t j = 0; j < src.size(); ++j)
    for (std::size_t i = 0; i < tgt.size(); ++i) {
      const Integer& c = d.matrix(i, j);
      if (c.is_zero()) continue;
      if (!p_.leq(src[j], tgt[i])) throw InternalInvariant("hom_precompose: free map is not natural");
      const IntMatrix& r = a.res(tgt[i], src[j]).matrix();
      for (std::size_t x = 0; x < r.rows(); ++x)
        for (std::size_t y = 0; y < r.cols(); ++y)
          if (!r(x, y).is_zero()) out(row_off[j] + x, col_off[i] + y) += c * r(x, y);
    }
  return out;
}

PresheafFreeMap PresheafContext::lift_free(const PresheafFreeMap& d, const FreeSpec& src,
                                           const PresheafFreeMap& g) const {
  if (g.src != src || g.tgt != d.tgt) throw DimensionMismatch("lift_free: map has the wrong shape");
  IntMatrix h(d.src.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    const auto rows = basis_at(p_, d.tgt, src[j]);
    const auto cols = basis_at(p_, d.src, src[j]);
    IntVector rhs;
    for (std::size_t i : rows) rhs.push_back(g.matrix(i, j));
    auto x = solve(d.matrix.select_rows(rows).select_cols(cols), rhs);
    if (!x) throw InternalInvariant("lift_free: map does not land in the image of the differential");
    for (std::size_t k = 0; k < cols.size(); ++k) h(cols[k], j) = (*x)[k];
  }
  return {src, d.src, std::move(h)};
}

PresheafFreeMap PresheafContext::lift_augmentation(const PresheafHom& eps, const FreeSpec& src,
                                                   const PresheafHom& g) const {
  const auto& t = free_spec(eps.src(), "lift_augmentation");
  IntMatrix h(t.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    const std::size_t x = src[j];
    const IntVector rhs = g.at(x).matrix().col(position(basis_at(p_, src, x), j));
    auto y = solve_mod(eps.at(x).matrix(), rhs, eps.tgt().stalk(x).relations());
    if (!y) throw InternalInvariant("lift_augmentation: augmentation is not onto");
    const auto cols = basis_at(p_, t, x);
    for (std::size_t k = 0; k < cols.size(); ++k) h(cols[k], j) = (*y)[k];
  }
  return {src, t, std::move(h)};
}

// ---------------------------------------------------------------------------
// Sheaf Ext

namespace {

void check_same_site(const AbPresheaf& b, const AbPresheaf& a, const char* what) {
  if (!(b.site() == a.site())) throw DimensionMismatch(std::string(what) + ": presheaves live on different sites");
}

std::vector<std::size_t> relabel(const std::vector<std::size_t>& spec, const std::vector<std::size_t>& map) {
  std::vector<std::size_t> out;
  for (std::size_t e : spec) out.push_back(map[e]);
  return out;
}

}  // namespace

SheafExtResult sheaf_ext(const AbPresheaf& b, const AbPresheaf& a, std::size_t n, CoverOrder order) {
  check_same_site(b, a, "sheaf_ext");
  const FinitePoset& p = b.site();
  const std::size_t size = p.size();
  std::vector<std::vector<std::size_t>> down;
  std::vector<PresheafContext> ctx;
  std::vector<AbPresheaf> bl, al;
  std::vector<FreeResolution<PresheafContext>> res;
  std::vector<CohomologyData> h;
  for (std::size_t c = 0; c < size; ++c) {
    down.push_back(p.down_set(c));
    ctx.emplace_back(p.subposet(down[c]));
    bl.push_back(b.restrict(down[c]));
    al.push_back(a.restrict(down[c]));
    res.push_back(free_resolution(ctx[c], bl[c], n + 1, order));
    h.push_back(hom_complex(ctx[c], res[c], al[c]).cohomology(n));
  }

  std::vector<FpAbGroup> stalks;
  for (const auto& x : h) stalks.push_back(x.group);
  AbPresheaf::Restrictions restrictions;
  for (std::size_t c = 0; c < size; ++c)
    for (std::size_t d : down[c]) {
      if (d == c) continue;
      // Extend the ↓d resolution by zero to ↓c and compare it with the ↓c one.
      std::vector<std::size_t> into(down[d].size());
      for (std::size_t k = 0; k < down[d].size(); ++k) into[k] = position(down[c], down[d][k]);
      const FreeResolution<PresheafContext>& rd = res[d];
      FreeResolution<PresheafContext> ext{bl[c], {}, {}, PresheafHom::identity(bl[c]), {}, {}};
      for (const auto& t : rd.terms) ext.terms.push_back(relabel(t, into));
      for (const auto& m : rd.differentials) ext.differentials.push_back({relabel(m.src, into), relabel(m.tgt, into), m.matrix});
      AbPresheaf p0 = ctx[c].free_object(ext.terms[0]);
      std::vector<FpAbHom> comps;
      for (std::size_t y = 0; y < down[c].size(); ++y) {
        auto it = std::find(into.begin(), into.end(), y);
        if (it != into.end())
          comps.push_back(FpAbHom::trusted(p0.stalk(y), bl[c].stalk(y),
                                           rd.augmentation.at(static_cast<std::size_t>(it - into.begin())).matrix()));
        else
          comps.push_back(FpAbHom::zero(p0.stalk(y), bl[c].stalk(y)));
      }
      ext.augmentation = PresheafHom::trusted(p0, bl[c], std::move(comps));
      auto phi = lift_chain_map(ctx[c], ext, res[c], PresheafHom::identity(bl[c]));
      restrictions.emplace(std::pair{c, d}, induced_on_cohomology(ctx[c], phi, ext, res[c], al[c], n, h[c], h[d]));
    }
  return {AbPresheaf::make(p, std::move(stalks), restrictions), std::move(down), std::move(res)};
}

std::vector<FpAbGroup> sheaf_ext_fast(const AbPresheaf& b, const AbPresheaf& a, std::size_t n) {
  check_same_site(b, a, "sheaf_ext_fast");
  const FinitePoset& p = b.site();
  if (!principal_intersection_check(p))
    throw DomainError("sheaf_ext_fast: some intersection of principal down-sets is not principal");
  PresheafContext whole(p);
  auto r = free_resolution(whole, b, n + 1);
  std::vector<FpAbGroup> out;
  for (std::size_t c = 0; c < p.size(); ++c) {
    const auto down = p.down_set(c);
    PresheafContext local(p.subposet(down));
    AbPresheaf ac = a.restrict(down);
    // Each ℤy(e) restricts to ℤy(max(↓e ∩ ↓c)), or to 0 when they do not meet.
    std::vector<std::vector<std::size_t>> kept(r.terms.size()), spec(r.terms.size());
    for (std::size_t k = 0; k < r.terms.size(); ++k)
      for (std::size_t j = 0; j < r.terms[k].size(); ++j) {
        const std::size_t e = r.terms[k][j];
        for (std::size_t m = 0; m < down.size(); ++m) {
          const std::size_t x = down[m];
          if (!p.leq(x, e)) continue;
          const bool is_max = std::all_of(down.begin(), down.end(), [&](std::size_t y) { return !p.leq(y, e) || p.leq(y, x); });
          if (is_max) {
            kept[k].push_back(j);
            spec[k].push_back(m);
            break;
          }
        }
      }
    FpAbComplex cx;
    for (std::size_t k = 0; k < r.terms.size(); ++k) cx.groups.push_back(local.hom_free(spec[k], ac));
    for (std::size_t k = 0; k + 1 < r.terms.size(); ++k) {
      PresheafFreeMap d{spec[k + 1], spec[k], r.differentials[k].matrix.select_rows(kept[k]).select_cols(kept[k + 1])};
      cx.maps.push_back(FpAbHom::trusted(cx.groups[k], cx.groups[k + 1],
                                         local.hom_precompose(d, spec[k + 1], spec[k], ac)));
    }
    out.push_back(cx.cohomology_group(n));
  }
  return out;
}

FpAbGroup external_ext(const AbPresheaf& b, const AbPresheaf& a, std::size_t n) {
  check_same_site(b, a, "external_ext");
  return ext_n(PresheafContext(b.site()), b, a, n);
}

// ---------------------------------------------------------------------------
// Projectivity witnesses

std::optional<std::size_t> internal_projectivity_witness(const FinitePoset& p, std::size_t c, const PresheafHom& sigma) {
  if (!(sigma.src().site() == p)) throw DimensionMismatch("internal_projectivity_witness: map lives on another site");
  if (!is_epi(sigma)) throw NotEpi("internal_projectivity_witness: map is not an epimorphism");
  AbPresheaf y = free_presheaf(p, c);
  for (std::size_t x = 0; x < p.size(); ++x) {
    const auto down = p.down_set(x);
    AbPresheaf yl = y.restrict(down);
    AbPresheaf src = sigma.src().restrict(down), tgt = sigma.tgt().restrict(down);
    PresheafHomGroup from(yl, src), to(yl, tgt);
    std::vector<FpAbHom> local;
    for (std::size_t e : down) local.push_back(sigma.at(e));
    PresheafHom s = PresheafHom::trusted(src, tgt, std::move(local));
    IntMatrix m(to.group().gens(), from.group().gens());
    for (std::size_t k = 0; k < from.basis().size(); ++k) m.set_col(k, to.coordinates(compose(s, from.basis()[k])));
    if (!is_epi(FpAbHom::trusted(from.group(), to.group(), std::move(m)))) return x;
  }
  return std::nullopt;
}

namespace {

// A presheaf with cyclic stalks and integer restriction coefficients.
struct Candidate {
  std::vector<std::size_t> kind;  // index into the family per element
  std::vector<long> coeff;        // per covering pair
  std::size_t weight = 0;
};

// Order of a cyclic family member; 0 for ℤ, 1 for the zero group.
long cyclic_order(const FpAbGroup& g) {
  if (g.is_zero()) return 1;
  if (!g.canonical().factors.empty()) return static_cast<long>(g.canonical().factors[0].small_value());
  return 0;
}

bool map_ok(long from, long to, long k) {
  // k : ℤ/from → ℤ/to is well defined when to | k·from.
  if (to == 1) return k == 0;
  if (from == 0) return true;
  if (to == 0) return k == 0;
  return (k * from) % to == 0;
}

bool same_map(long to, long x, long y) {
  if (to == 1) return true;
  if (to == 0) return x == y;
  return ((x - y) % to + to) % to == 0;
}

}  // namespace

WitnessSearch search_projectivity_witness(const FinitePoset& p, std::size_t c, const std::vector<FpAbGroup>& stalks) {
  const std::size_t n = p.size();
  if (c >= n) throw DomainError("search_projectivity_witness: element out of range");
  std::vector<FpAbGroup> family;
  std::vector<long> orders;
  for (const auto& g : stalks) {
    Simplification s = simplify(g);
    if (s.group.gens() > 1) throw DomainError("search_projectivity_witness: family stalks must be cyclic");
    family.push_back(s.group);
    orders.push_back(cyclic_order(s.group));
  }
  const auto covers = p.covers();

  // Composite coefficient along any chain of covers from c down to d, all pairs.
  auto coefficients = [&](const Candidate& x) {
    std::vector<std::vector<long>> k(n, std::vector<long>(n, 0));
    for (std::size_t a = 0; a < n; ++a) k[a][a] = 1;
    std::vector<std::size_t> order = p.top_down();
    std::reverse(order.begin(), order.end());  // bottom-up
    for (std::size_t top : order)
      for (std::size_t q = 0; q < covers.size(); ++q)
        if (covers[q].second == top) {
          const std::size_t e = covers[q].first;
          for (std::size_t d = 0; d < n; ++d)
            if (p.leq(d, e)) k[top][d] = k[e][d] * x.coeff[q];
        }
    return k;
  };
  auto valid = [&](const Candidate& x) {
    auto k = coefficients(x);
    for (std::size_t top = 0; top < n; ++top)
      for (std::size_t q = 0; q < covers.size(); ++q) {
        if (covers[q].second != top) continue;
        const std::size_t e = covers[q].first;
        for (std::size_t d = 0; d < n; ++d)
          if (p.leq(d, e) && !same_map(orders[x.kind[d]], k[top][d], k[e][d] * x.coeff[q])) return false;
      }
    return true;
  };

  std::vector<Candidate> cands;
  std::vector<std::size_t> kind(n, 0);
  for (;;) {
    std::vector<std::size_t> live;
    for (std::size_t q = 0; q < covers.size(); ++q) {
      const auto [d, top] = covers[q];
      if (orders[kind[d]] != 1 && orders[kind[top]] != 1) live.push_back(q);
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << live.size()); ++mask) {
      Candidate x{kind, std::vector<long>(covers.size(), 0), 0};
      for (std::size_t b = 0; b < live.size(); ++b)
        if ((mask >> b) & 1) x.coeff[live[b]] = 1;
      bool ok = true;
      for (std::size_t q = 0; q < covers.size() && ok; ++q)
        ok = map_ok(orders[kind[covers[q].second]], orders[kind[covers[q].first]], x.coeff[q]);
      if (!ok || !valid(x)) continue;
      for (std::size_t a = 0; a < n; ++a) x.weight += kind[a];
      cands.push_back(std::move(x));
    }
    std::size_t pos = 0;
    while (pos < n && ++kind[pos] == family.size()) kind[pos++] = 0;
    if (pos == n) break;
  }

  std::vector<std::optional<AbPresheaf>> built(cands.size());
  auto build = [&](std::size_t i) -> const AbPresheaf& {
    if (!built[i]) {
      std::vector<FpAbGroup> st;
      for (std::size_t a = 0; a < n; ++a) st.push_back(family[cands[i].kind[a]]);
      AbPresheaf::Restrictions r;
      for (std::size_t q = 0; q < covers.size(); ++q) {
        const auto [d, top] = covers[q];
        IntMatrix m(st[d].gens(), st[top].gens());
        if (m.rows() == 1 && m.cols() == 1) m(0, 0) = Integer(cands[i].coeff[q]);
        r.emplace(std::pair{top, d}, FpAbHom::trusted(st[top], st[d], std::move(m)));
      }
      built[i] = AbPresheaf::make(p, std::move(st), r);
    }
    return *built[i];
  };

  WitnessSearch out;
  std::size_t max_weight = 0;
  for (const auto& x : cands) max_weight = std::max(max_weight, x.weight);
  std::vector<std::vector<std::size_t>> by_weight(max_weight + 1);
  for (std::size_t i = 0; i < cands.size(); ++i) by_weight[cands[i].weight].push_back(i);
  for (std::size_t total = 0; total <= 2 * max_weight; ++total)
    for (std::size_t wx = 0; wx <= std::min(total, max_weight); ++wx) {
      if (total - wx > max_weight) continue;
      for (std::size_t i : by_weight[wx])
      for (std::size_t j : by_weight[total - wx]) {
        const Candidate& x = cands[i];
        const Candidate& y = cands[j];
        // σ has component 1 wherever Y is nonzero; it must be onto and natural.
        bool ok = true;
        for (std::size_t a = 0; a < n && ok; ++a) {
          const long ox = orders[x.kind[a]], oy = orders[y.kind[a]];
          if (oy == 1) continue;
          ok = ox != 1 && map_ok(ox, oy, 1) && (oy != 0 || ox == 0);
        }
        for (std::size_t q = 0; q < covers.size() && ok; ++q) {
          const auto [d, top] = covers[q];
          const long sd = orders[y.kind[d]] == 1 ? 0 : 1, st = orders[y.kind[top]] == 1 ? 0 : 1;
          ok = same_map(orders[y.kind[d]], y.coeff[q] * st, sd * x.coeff[q]);
        }
        if (!ok) continue;
        const AbPresheaf& xs = build(i);
        const AbPresheaf& ys = build(j);
        std::vector<FpAbHom> comps;
        for (std::size_t a = 0; a < n; ++a) {
          IntMatrix m(ys.stalk(a).gens(), xs.stalk(a).gens());
          if (m.rows() == 1 && m.cols() == 1) m(0, 0) = Integer(1);
          comps.push_back(FpAbHom::trusted(xs.stalk(a), ys.stalk(a), std::move(m)));
        }
        PresheafHom sigma = PresheafHom::make(xs, ys, std::move(comps));
        if (!is_epi(sigma)) continue;
        ++out.examined;
        if (auto w = internal_projectivity_witness(p, c, sigma)) {
          out.witness = ProjectivityWitness{sigma, *w};
          return out;
        }
      }
    }
  return out;
}

}  // namespace yoneda
