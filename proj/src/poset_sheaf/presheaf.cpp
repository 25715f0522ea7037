#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "yoneda/errors.hpp"
#include "yoneda/poset_sheaf.hpp"

namespace yoneda {

FinitePoset FinitePoset::make(std::vector<std::vector<bool>> leq) {
  const std::size_t n = leq.size();
  for (std::size_t a = 0; a < n; ++a) {
    if (leq[a].size() != n) throw LawViolation("order relation is not square");
    if (!leq[a][a]) throw LawViolation("reflexivity fails at " + std::to_string(a));
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && leq[a][b] && leq[b][a])
        throw LawViolation("antisymmetry fails for " + std::to_string(a) + " and " + std::to_string(b));
      if (!leq[a][b]) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (leq[b][c] && !leq[a][c])
          throw LawViolation("transitivity fails for " + std::to_string(a) + " ≤ " + std::to_string(b) + " ≤ " +
                             std::to_string(c));
    }
  FinitePoset p;
  p.leq_ = std::move(leq);
  return p;
}

FinitePoset FinitePoset::from_relations(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& less) {
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) r[a][a] = true;
  for (const auto& [d, c] : less) {
    if (d >= n || c >= n) throw ValidationError("order relation mentions an element out of range");
    r[d][c] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < n; ++a)
      if (r[a][k])
        for (std::size_t b = 0; b < n; ++b)
          if (r[k][b]) r[a][b] = true;
  return make(std::move(r));
}

FinitePoset FinitePoset::chain(std::size_t k) {
  std::vector<std::vector<bool>> r(k, std::vector<bool>(k, false));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b) r[a][b] = true;
  return make(std::move(r));
}

FinitePoset FinitePoset::forest(const std::vector<std::size_t>& parent) {
  std::vector<std::pair<std::size_t, std::size_t>> less;
  for (std::size_t i = 0; i < parent.size(); ++i)
    if (parent[i] != i) less.emplace_back(parent[i], i);
  return from_relations(parent.size(), less);
}

FinitePoset FinitePoset::bowtie() { return from_relations(5, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}}); }

std::vector<std::pair<std::size_t, std::size_t>> FinitePoset::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = size();
  for (std::size_t d = 0; d < n; ++d)
    for (std::size_t c = 0; c < n; ++c) {
      if (d == c || !leq_[d][c]) continue;
      bool direct = true;
      for (std::size_t e = 0; e < n && direct; ++e)
        if (e != d && e != c && leq_[d][e] && leq_[e][c]) direct = false;
      if (direct) out.emplace_back(d, c);
    }
  return out;
}

std::vector<std::size_t> FinitePoset::down_set(std::size_t c) const {
  std::vector<std::size_t> out;
  for (std::size_t d = 0; d < size(); ++d)
    if (leq_[d][c]) out.push_back(d);
  return out;
}

FinitePoset FinitePoset::subposet(const std::vector<std::size_t>& elements) const {
  const std::size_t k = elements.size();
  std::vector<std::vector<bool>> r(k, std::vector<bool>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) r[a][b] = leq_[elements[a]][elements[b]];
  FinitePoset p;
  p.leq_ = std::move(r);
  return p;
}

std::vector<std::size_t> FinitePoset::top_down() const {
  std::vector<std::size_t> order(size()), below(size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t c = 0; c < size(); ++c) below[c] = down_set(c).size();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return below[a] > below[b]; });
  return order;
}

std::optional<std::size_t> FinitePoset::top() const {
  for (std::size_t c = 0; c < size(); ++c)
    if (down_set(c).size() == size()) return c;
  return std::nullopt;
}

bool principal_intersection_check(const FinitePoset& p) {
  const std::size_t n = p.size();
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < c; ++d) {
      std::vector<std::size_t> both;
      for (std::size_t e = 0; e < n; ++e)
        if (p.leq(e, c) && p.leq(e, d)) both.push_back(e);
      if (both.empty()) continue;
      const bool has_max = std::any_of(both.begin(), both.end(), [&](std::size_t m) {
        return std::all_of(both.begin(), both.end(), [&](std::size_t e) { return p.leq(e, m); });
      });
      if (!has_max) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Presheaves

AbPresheaf AbPresheaf::make(FinitePoset site, std::vector<FpAbGroup> stalks, const Restrictions& res) {
  const std::size_t n = site.size();
  if (stalks.size() != n) throw DimensionMismatch("presheaf: one stalk per element required");
  std::vector<std::optional<FpAbHom>> table(n * n);
  for (const auto& [key, f] : res) {
    const auto [c, d] = key;
    if (c >= n || d >= n || c == d || !site.leq(d, c))
      throw ValidationError("presheaf: restriction given for (" + std::to_string(c) + ", " + std::to_string(d) +
                            "), which is not a pair d < c");
    if (!f.src().same_presentation(stalks[c]) || !f.tgt().same_presentation(stalks[d]))
      throw DimensionMismatch("presheaf: restriction " + std::to_string(c) + " → " + std::to_string(d) +
                              " does not run between the stalks");
    if (!f.is_well_defined())
      throw IllDefined("presheaf: restriction " + std::to_string(c) + " → " + std::to_string(d) + " is ill-defined");
    table[c * n + d] = f;
  }
  for (std::size_t c = 0; c < n; ++c) table[c * n + c] = FpAbHom::identity(stalks[c]);
  const auto covers = site.covers();
  for (const auto& [d, c] : covers)
    if (!table[c * n + d])
      throw ValidationError("presheaf: no restriction on the covering pair " + std::to_string(d) + " < " +
                            std::to_string(c));
  std::function<const FpAbHom&(std::size_t, std::size_t)> get = [&](std::size_t c, std::size_t d) -> const FpAbHom& {
    auto& slot = table[c * n + d];
    if (!slot) {
      for (const auto& [e, top] : covers)
        if (top == c && site.leq(d, e)) {
          slot = compose(get(e, d), *table[c * n + e]);
          break;
        }
    }
    return *slot;
  };
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d)
      if (site.leq(d, c)) (void)get(c, d);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d) {
      if (d == c || !site.leq(d, c)) continue;
      for (std::size_t e = 0; e < n; ++e)
        if (e != d && site.leq(e, d) && !compose(*table[d * n + e], *table[c * n + d]).equals(*table[c * n + e]))
          throw LawViolation("presheaf: restrictions " + std::to_string(c) + " → " + std::to_string(d) + " → " +
                             std::to_string(e) + " do not compose to " + std::to_string(c) + " → " +
                             std::to_string(e));
    }
  return {std::move(site), std::move(stalks), std::move(table)};
}

AbPresheaf AbPresheaf::zero(const FinitePoset& site) {
  return make(site, std::vector<FpAbGroup>(site.size()), [&] {
    Restrictions r;
    for (const auto& [d, c] : site.covers()) r.emplace(std::pair{c, d}, FpAbHom::zero(FpAbGroup(), FpAbGroup()));
    return r;
  }());
}

AbPresheaf AbPresheaf::constant(const FinitePoset& site, const FpAbGroup& a) {
  Restrictions r;
  for (const auto& [d, c] : site.covers()) r.emplace(std::pair{c, d}, FpAbHom::identity(a));
  return make(site, std::vector<FpAbGroup>(site.size(), a), r);
}

const FpAbHom& AbPresheaf::res(std::size_t c, std::size_t d) const {
  const std::size_t n = site_.size();
  if (c >= n || d >= n || !site_.leq(d, c))
    throw DomainError("presheaf: no restriction from " + std::to_string(c) + " to " + std::to_string(d));
  return *res_[c * n + d];
}

AbPresheaf AbPresheaf::restrict(const std::vector<std::size_t>& elements) const {
  const std::size_t k = elements.size();
  const std::size_t n = site_.size();
  std::vector<FpAbGroup> stalks;
  for (std::size_t e : elements) stalks.push_back(stalks_.at(e));
  std::vector<std::optional<FpAbHom>> table(k * k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) table[a * k + b] = res_[elements[a] * n + elements[b]];
  AbPresheaf out(site_.subposet(elements), std::move(stalks), std::move(table));
  if (free_basis_) {
    // ℤy(c) restricts to a free presheaf only when ↓c meets the elements in a principal down-set.
    std::vector<std::size_t> basis;
    bool free = true;
    for (std::size_t c : *free_basis_) {
      std::optional<std::size_t> top;
      std::size_t count = 0;
      for (std::size_t a = 0; a < k; ++a)
        if (site_.leq(elements[a], c)) ++count;
      for (std::size_t a = 0; a < k && !top; ++a) {
        if (!site_.leq(elements[a], c)) continue;
        std::size_t below = 0;
        for (std::size_t b = 0; b < k; ++b)
          if (site_.leq(elements[b], c) && site_.leq(elements[b], elements[a])) ++below;
        if (below == count) top = a;
      }
      if (count == 0) continue;
      if (!top) {
        free = false;
        break;
      }
      basis.push_back(*top);
    }
    if (free && basis.size() == free_basis_->size()) out.free_basis_ = std::move(basis);
  }
  return out;
}

bool AbPresheaf::is_zero() const {
  return std::all_of(stalks_.begin(), stalks_.end(), [](const FpAbGroup& g) { return g.is_zero(); });
}

std::string AbPresheaf::to_string() const {
  std::ostringstream out;
  for (std::size_t c = 0; c < stalks_.size(); ++c) out << (c ? ", " : "") << c << ": " << stalks_[c].to_string();
  return out.str();
}

AbPresheaf free_presheaf(const FinitePoset& p, std::size_t c) {
  if (c >= p.size()) throw DomainError("free_presheaf: element out of range");
  return free_presheaf(p, std::vector<std::size_t>{c});
}

AbPresheaf free_presheaf(const FinitePoset& p, const std::vector<std::size_t>& summands) {
  const std::size_t n = p.size();
  std::vector<std::vector<std::size_t>> at(n);
  for (std::size_t j = 0; j < summands.size(); ++j) {
    if (summands[j] >= n) throw DomainError("free_presheaf: element out of range");
    for (std::size_t d = 0; d < n; ++d)
      if (p.leq(d, summands[j])) at[d].push_back(j);
  }
  std::vector<FpAbGroup> stalks;
  for (std::size_t d = 0; d < n; ++d) stalks.push_back(FpAbGroup::free(at[d].size()));
  std::vector<std::optional<FpAbHom>> table(n * n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t d = 0; d < n; ++d) {
      if (!p.leq(d, c)) continue;
      IntMatrix m(at[d].size(), at[c].size());
      for (std::size_t a = 0; a < at[c].size(); ++a) {
        const auto pos = std::lower_bound(at[d].begin(), at[d].end(), at[c][a]) - at[d].begin();
        m(static_cast<std::size_t>(pos), a) = Integer(1);
      }
      table[c * n + d] = FpAbHom::trusted(stalks[c], stalks[d], std::move(m));
    }
  AbPresheaf out(p, std::move(stalks), std::move(table));
  out.free_basis_ = summands;
  return out;
}

// ---------------------------------------------------------------------------
// Morphisms

PresheafHom PresheafHom::trusted(AbPresheaf src, AbPresheaf tgt, std::vector<FpAbHom> components) {
  if (!(src.site() == tgt.site())) throw DimensionMismatch("presheaf map: source and target live on different sites");
  if (components.size() != src.site().size()) throw DimensionMismatch("presheaf map: one component per element required");
  for (std::size_t c = 0; c < components.size(); ++c)
    if (!components[c].src().same_presentation(src.stalk(c)) || !components[c].tgt().same_presentation(tgt.stalk(c)))
      throw DimensionMismatch("presheaf map: component " + std::to_string(c) + " does not run between the stalks");
  return {std::move(src), std::move(tgt), std::move(components)};
}

PresheafHom PresheafHom::make(AbPresheaf src, AbPresheaf tgt, std::vector<FpAbHom> components) {
  PresheafHom out = trusted(std::move(src), std::move(tgt), std::move(components));
  for (std::size_t c = 0; c < out.components_.size(); ++c)
    if (!out.components_[c].is_well_defined())
      throw IllDefined("presheaf map: component " + std::to_string(c) + " is ill-defined");
  for (const auto& [d, c] : out.src_.site().covers())
    if (!compose(out.tgt_.res(c, d), out.components_[c]).equals(compose(out.components_[d], out.src_.res(c, d))))
      throw LawViolation("presheaf map: naturality fails on " + std::to_string(d) + " < " + std::to_string(c));
  return out;
}

PresheafHom PresheafHom::identity(const AbPresheaf& f) {
  std::vector<FpAbHom> comps;
  for (const auto& s : f.stalks()) comps.push_back(FpAbHom::identity(s));
  return {f, f, std::move(comps)};
}

PresheafHom PresheafHom::zero(const AbPresheaf& src, const AbPresheaf& tgt) {
  std::vector<FpAbHom> comps;
  for (std::size_t c = 0; c < src.site().size(); ++c) comps.push_back(FpAbHom::zero(src.stalk(c), tgt.stalk(c)));
  return trusted(src, tgt, std::move(comps));
}

bool PresheafHom::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const FpAbHom& f) { return f.is_zero(); });
}

bool PresheafHom::equals(const PresheafHom& other) const {
  if (components_.size() != other.components_.size()) return false;
  for (std::size_t c = 0; c < components_.size(); ++c)
    if (!components_[c].equals(other.components_[c])) return false;
  return true;
}

PresheafHom compose(const PresheafHom& g, const PresheafHom& f) {
  std::vector<FpAbHom> comps;
  for (std::size_t c = 0; c < f.components().size(); ++c) comps.push_back(compose(g.at(c), f.at(c)));
  return PresheafHom::trusted(f.src(), g.tgt(), std::move(comps));
}

bool is_epi(const PresheafHom& f) {
  return std::all_of(f.components().begin(), f.components().end(), [](const FpAbHom& h) { return is_epi(h); });
}

bool is_mono(const PresheafHom& f) {
  return std::all_of(f.components().begin(), f.components().end(), [](const FpAbHom& h) { return is_mono(h); });
}

AbPresheaf cokernel(const PresheafHom& f) {
  const AbPresheaf& t = f.tgt();
  std::vector<FpAbGroup> stalks;
  for (std::size_t c = 0; c < t.site().size(); ++c) stalks.push_back(cokernel(f.at(c)).group);
  AbPresheaf::Restrictions res;
  for (const auto& [d, c] : t.site().covers())
    res.emplace(std::pair{c, d}, FpAbHom::trusted(stalks[c], stalks[d], t.res(c, d).matrix()));
  return AbPresheaf::make(t.site(), std::move(stalks), res);
}

// ---------------------------------------------------------------------------
// Hom groups

PresheafHomGroup::PresheafHomGroup(AbPresheaf f, AbPresheaf g) : f_(std::move(f)), g_(std::move(g)) {
  if (!(f_.site() == g_.site())) throw DimensionMismatch("presheaf Hom: different sites");
  HomSystem sys;
  const std::size_t n = f_.site().size();
  for (std::size_t c = 0; c < n; ++c) sys.add_unknown(f_.stalk(c), g_.stalk(c));
  for (const auto& [d, c] : f_.site().covers()) {
    const std::size_t gd = g_.stalk(d).gens();
    sys.add_equation({{c, g_.res(c, d).matrix(), std::nullopt},
                      {d, -IntMatrix::identity(gd), f_.res(c, d).matrix()}},
                     IntMatrix(gd, f_.stalk(c).gens()), g_.stalk(d));
  }
  solutions_ = sys.homogeneous_solutions();
  for (const auto& blocks : solutions_.basis) {
    std::vector<FpAbHom> comps;
    for (std::size_t c = 0; c < n; ++c) comps.push_back(FpAbHom::trusted(f_.stalk(c), g_.stalk(c), blocks[c]));
    basis_.push_back(PresheafHom::trusted(f_, g_, std::move(comps)));
  }
}

IntVector PresheafHomGroup::coordinates(const PresheafHom& h) const {
  std::vector<IntMatrix> blocks;
  for (const auto& c : h.components()) blocks.push_back(c.matrix());
  return solutions_.coordinates(blocks);
}

PresheafHom PresheafHomGroup::hom_at(const IntVector& coords) const {
  if (coords.size() != basis_.size()) throw DimensionMismatch("presheaf Hom: coordinate vector has the wrong length");
  PresheafHom out = PresheafHom::zero(f_, g_);
  std::vector<FpAbHom> comps = out.components();
  for (std::size_t k = 0; k < coords.size(); ++k)
    for (std::size_t c = 0; c < comps.size(); ++c) comps[c] = comps[c] + coords[k] * basis_[k].at(c);
  return PresheafHom::trusted(f_, g_, std::move(comps));
}

PresheafHomGroup presheaf_hom_group(const AbPresheaf& f, const AbPresheaf& g) { return {f, g}; }

namespace {

// Positions of the elements of ↓d inside ↓c.
std::vector<std::size_t> positions(const std::vector<std::size_t>& inner, const std::vector<std::size_t>& outer) {
  std::vector<std::size_t> out;
  for (std::size_t e : inner)
    out.push_back(static_cast<std::size_t>(std::lower_bound(outer.begin(), outer.end(), e) - outer.begin()));
  return out;
}

struct LocalHoms {
  std::vector<std::vector<std::size_t>> down;
  std::vector<AbPresheaf> f;
  std::vector<PresheafHomGroup> homs;
};

LocalHoms local_homs(const AbPresheaf& f, const AbPresheaf& g) {
  if (!(f.site() == g.site())) throw DimensionMismatch("internal Hom: different sites");
  LocalHoms out;
  for (std::size_t c = 0; c < f.site().size(); ++c) {
    out.down.push_back(f.site().down_set(c));
    out.f.push_back(f.restrict(out.down.back()));
    out.homs.emplace_back(out.f.back(), g.restrict(out.down.back()));
  }
  return out;
}

// The restriction of a family over ↓c to ↓d.
PresheafHom restrict_family(const PresheafHom& h, const std::vector<std::size_t>& pos, const AbPresheaf& src,
                            const AbPresheaf& tgt) {
  std::vector<FpAbHom> comps;
  for (std::size_t p : pos) comps.push_back(h.at(p));
  return PresheafHom::trusted(src, tgt, std::move(comps));
}

}  // namespace

AbPresheaf internal_hom(const AbPresheaf& f, const AbPresheaf& g) {
  LocalHoms l = local_homs(f, g);
  const FinitePoset& p = f.site();
  std::vector<FpAbGroup> stalks;
  for (const auto& h : l.homs) stalks.push_back(h.group());
  AbPresheaf::Restrictions res;
  for (const auto& [d, c] : p.covers()) {
    const auto pos = positions(l.down[d], l.down[c]);
    const PresheafHomGroup& to = l.homs[d];
    IntMatrix m(stalks[d].gens(), stalks[c].gens());
    for (std::size_t k = 0; k < l.homs[c].basis().size(); ++k) {
      const PresheafHom& fam = l.homs[c].basis()[k];
      m.set_col(k, to.coordinates(restrict_family(fam, pos, l.f[d], g.restrict(l.down[d]))));
    }
    res.emplace(std::pair{c, d}, FpAbHom::trusted(stalks[c], stalks[d], std::move(m)));
  }
  return AbPresheaf::make(p, std::move(stalks), res);
}

PresheafHom internal_hom_map(const AbPresheaf& f, const PresheafHom& sigma) {
  AbPresheaf x = internal_hom(f, sigma.src());
  AbPresheaf y = internal_hom(f, sigma.tgt());
  LocalHoms lx = local_homs(f, sigma.src());
  LocalHoms ly = local_homs(f, sigma.tgt());
  std::vector<FpAbHom> comps;
  for (std::size_t c = 0; c < f.site().size(); ++c) {
    const auto& down = lx.down[c];
    std::vector<FpAbHom> local;
    for (std::size_t e : down) local.push_back(sigma.at(e));
    PresheafHom s = PresheafHom::trusted(sigma.src().restrict(down), sigma.tgt().restrict(down), std::move(local));
    IntMatrix m(y.stalk(c).gens(), x.stalk(c).gens());
    for (std::size_t k = 0; k < lx.homs[c].basis().size(); ++k)
      m.set_col(k, ly.homs[c].coordinates(compose(s, lx.homs[c].basis()[k])));
    comps.push_back(FpAbHom::trusted(x.stalk(c), y.stalk(c), std::move(m)));
  }
  return PresheafHom::trusted(x, y, std::move(comps));
}

FpAbGroup global_sections(const AbPresheaf& f) {
  const FinitePoset& p = f.site();
  std::vector<std::size_t> off;
  FpAbGroup all = direct_sum_of(f.stalks(), &off);
  const auto covers = p.covers();
  std::vector<FpAbGroup> targets;
  for (const auto& [d, c] : covers) targets.push_back(f.stalk(d));
  std::vector<std::size_t> toff;
  FpAbGroup tgt = direct_sum_of(targets, &toff);
  IntMatrix m(tgt.gens(), all.gens());
  for (std::size_t k = 0; k < covers.size(); ++k) {
    const auto [d, c] = covers[k];
    m.set_block(toff[k], off[c], f.res(c, d).matrix());
    m.set_block(toff[k], off[d], -IntMatrix::identity(f.stalk(d).gens()));
  }
  return kernel(FpAbHom::trusted(all, tgt, std::move(m))).group;
}

}  // namespace yoneda
