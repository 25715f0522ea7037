#include <algorithm>
#include <map>
#include <numeric>

#include "yoneda/errors.hpp"
#include "yoneda/groupring.hpp"

namespace yoneda {

FiniteGroup FiniteGroup::make(std::vector<std::vector<std::size_t>> table) {
  const std::size_t n = table.size();
  if (n == 0) throw LawViolation("group table is empty");
  for (std::size_t a = 0; a < n; ++a) {
    if (table[a].size() != n)
      throw LawViolation("group table row " + std::to_string(a) + " has " + std::to_string(table[a].size()) +
                         " entries, expected " + std::to_string(n));
    for (std::size_t b = 0; b < n; ++b)
      if (table[a][b] >= n)
        throw LawViolation("closure fails: " + std::to_string(a) + "*" + std::to_string(b) + " = " +
                           std::to_string(table[a][b]) + " is not an element");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw LawViolation("associativity fails for (" + std::to_string(a) + ", " + std::to_string(b) + ", " +
                             std::to_string(c) + ")");

  std::optional<std::size_t> e;
  for (std::size_t c = 0; c < n && !e; ++c) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = table[c][x] == x && table[x][c] == x;
    if (ok) e = c;
  }
  if (!e) throw LawViolation("identity fails: no element is a two-sided unit");

  FiniteGroup g;
  g.inverse_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b)
      if (table[a][b] == *e && table[b][a] == *e) {
        g.inverse_[a] = b;
        break;
      }
    if (g.inverse_[a] == n) throw LawViolation("inverse fails: element " + std::to_string(a) + " has no inverse");
  }
  g.table_ = std::move(table);
  g.identity_ = *e;
  return g;
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n == 0) throw DomainError("cyclic group of order 0");
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return make(std::move(t));
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<std::vector<std::size_t>>& generators) {
  const std::size_t k = generators.empty() ? 0 : generators.front().size();
  for (const auto& p : generators) {
    std::vector<std::size_t> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted.size() != k || sorted[i] != i) throw LawViolation("generator is not a permutation of 0..k-1");
  }
  std::vector<std::size_t> id(k);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<std::size_t>> elems{id};
  std::map<std::vector<std::size_t>, std::size_t> index{{id, 0}};
  auto compose_perm = [](const std::vector<std::size_t>& s, const std::vector<std::size_t>& t) {
    std::vector<std::size_t> out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) out[i] = s[t[i]];
    return out;
  };
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& s : generators) {
      auto p = compose_perm(s, elems[i]);
      if (index.emplace(p, elems.size()).second) elems.push_back(std::move(p));
    }
  const std::size_t n = elems.size();
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = index.at(compose_perm(elems[a], elems[b]));
  FiniteGroup g = make(std::move(t));
  g.perms_ = std::move(elems);
  return g;
}

FiniteGroup FiniteGroup::symmetric(std::size_t k) {
  if (k <= 1) return from_permutations({std::vector<std::size_t>(k, 0)});
  std::vector<std::size_t> swap(k), cycle(k);
  std::iota(swap.begin(), swap.end(), 0);
  std::swap(swap[0], swap[1]);
  for (std::size_t i = 0; i < k; ++i) cycle[i] = (i + 1) % k;
  return from_permutations({swap, cycle});
}

FiniteGroup FiniteGroup::product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t m = g.order(), n = h.order();
  std::vector<std::vector<std::size_t>> t(m * n, std::vector<std::size_t>(m * n));
  for (std::size_t a = 0; a < m * n; ++a)
    for (std::size_t b = 0; b < m * n; ++b) t[a][b] = g.mul(a / n, b / n) * n + h.mul(a % n, b % n);
  return make(std::move(t));
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t a = 0; a < order(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Modules

GModule GModule::trusted(FiniteGroup g, FpAbGroup m, std::vector<FpAbHom> action) {
  if (action.size() != g.order()) throw DimensionMismatch("GModule: one action map per group element required");
  return {std::move(g), std::move(m), std::move(action)};
}

GModule GModule::make(FiniteGroup g, FpAbGroup m, std::vector<FpAbHom> action) {
  GModule out = trusted(std::move(g), std::move(m), std::move(action));
  const FiniteGroup& G = out.g_;
  for (std::size_t a = 0; a < G.order(); ++a) {
    const FpAbHom& f = out.action_[a];
    if (!f.src().same_presentation(out.m_) || !f.tgt().same_presentation(out.m_))
      throw DimensionMismatch("GModule: action of element " + std::to_string(a) + " is not an endomorphism");
    if (!f.is_well_defined())
      throw IllDefined("GModule: action of element " + std::to_string(a) + " does not respect relations");
  }
  if (!out.action_[G.identity()].equals(FpAbHom::identity(out.m_)))
    throw LawViolation("GModule: the identity element does not act trivially");
  for (std::size_t a = 0; a < G.order(); ++a)
    for (std::size_t b = 0; b < G.order(); ++b)
      if (!compose(out.action_[a], out.action_[b]).equals(out.action_[G.mul(a, b)]))
        throw LawViolation("GModule: action(" + std::to_string(a) + ")∘action(" + std::to_string(b) +
                           ") differs from action(" + std::to_string(G.mul(a, b)) + ")");
  return out;
}

GModule trivial_module(const FiniteGroup& g, const FpAbGroup& m) {
  return GModule::trusted(g, m, std::vector<FpAbHom>(g.order(), FpAbHom::identity(m)));
}

GModule character_module(const FiniteGroup& g, const FpAbGroup& m, const std::vector<int>& chi) {
  if (chi.size() != g.order()) throw DimensionMismatch("character_module: one sign per group element required");
  std::vector<FpAbHom> act;
  for (int s : chi) {
    if (s != 1 && s != -1) throw ValidationError("character_module: values must be +1 or -1");
    act.push_back(s == 1 ? FpAbHom::identity(m) : -FpAbHom::identity(m));
  }
  return GModule::make(g, m, std::move(act));
}

GModule sign_module(const FiniteGroup& g) {
  if (g.order() != 2) throw DomainError("sign_module: group must have order 2");
  std::vector<int> chi(2, -1);
  chi[g.identity()] = 1;
  return character_module(g, FpAbGroup::free(1), chi);
}

GModule permutation_module(const FiniteGroup& g, const FpAbGroup& m, const std::vector<std::vector<std::size_t>>& perm) {
  if (perm.size() != g.order()) throw DimensionMismatch("permutation_module: one permutation per group element required");
  const std::size_t k = perm.empty() ? 0 : perm.front().size();
  FpAbGroup mk = FpAbGroup::power(m, k);
  const std::size_t gm = m.gens();
  std::vector<FpAbHom> act;
  for (const auto& p : perm) {
    if (p.size() != k) throw DimensionMismatch("permutation_module: permutations have different sizes");
    IntMatrix mat(gm * k, gm * k);
    for (std::size_t i = 0; i < k; ++i) {
      if (p[i] >= k) throw ValidationError("permutation_module: index out of range");
      for (std::size_t r = 0; r < gm; ++r) mat(p[i] * gm + r, i * gm + r) = Integer(1);
    }
    act.push_back(FpAbHom::trusted(mk, mk, std::move(mat)));
  }
  return GModule::make(g, mk, std::move(act));
}

GModule group_ring_module(const FiniteGroup& g, std::size_t r) {
  const std::size_t n = g.order();
  FpAbGroup m = FpAbGroup::free(n * r);
  std::vector<FpAbHom> act;
  for (std::size_t a = 0; a < n; ++a) {
    IntMatrix mat(n * r, n * r);
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t h = 0; h < n; ++h) mat(b * n + g.mul(a, h), b * n + h) = Integer(1);
    act.push_back(FpAbHom::trusted(m, m, std::move(mat)));
  }
  return GModule::trusted(g, m, std::move(act));
}

GModuleHom GModuleHom::trusted(GModule src, GModule tgt, FpAbHom f) {
  if (!f.src().same_presentation(src.module()) || !f.tgt().same_presentation(tgt.module()))
    throw DimensionMismatch("GModuleHom: map endpoints differ from the modules");
  return {std::move(src), std::move(tgt), std::move(f)};
}

GModuleHom GModuleHom::make(GModule src, GModule tgt, FpAbHom f) {
  if (src.group().order() != tgt.group().order()) throw DimensionMismatch("GModuleHom: modules over different groups");
  if (!f.is_well_defined()) throw IllDefined("GModuleHom: underlying map is ill-defined");
  for (std::size_t g = 0; g < src.group().order(); ++g)
    if (!compose(f, src.action(g)).equals(compose(tgt.action(g), f)))
      throw LawViolation("GModuleHom: map does not commute with the action of element " + std::to_string(g));
  return trusted(std::move(src), std::move(tgt), std::move(f));
}

HomGroup gmodule_hom_group(const GModule& x, const GModule& y) {
  HomSystem sys;
  const auto f = sys.add_unknown(x.module(), y.module());
  for (std::size_t g = 0; g < x.group().order(); ++g)
    sys.add_equation({{f, std::nullopt, x.action(g).matrix()}, {f, -y.action(g).matrix(), std::nullopt}},
                     IntMatrix(y.module().gens(), x.module().gens()), y.module());
  return {x.module(), y.module(), sys};
}

std::optional<GModuleHom> gmodule_section(const GModuleHom& p) {
  const GModule& x = p.src();
  const GModule& y = p.tgt();
  HomSystem sys;
  const auto s = sys.add_unknown(y.module(), x.module());
  sys.add_equation({{s, p.map().matrix(), std::nullopt}}, IntMatrix::identity(y.module().gens()), y.module());
  for (std::size_t g = 0; g < x.group().order(); ++g)
    sys.add_equation({{s, std::nullopt, y.action(g).matrix()}, {s, -x.action(g).matrix(), std::nullopt}},
                     IntMatrix(x.module().gens(), y.module().gens()), x.module());
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  return GModuleHom::trusted(y, x, FpAbHom::trusted(y.module(), x.module(), std::move((*sol)[0])));
}

Kernel fixed_points(const GModule& m) {
  const std::size_t n = m.group().order();
  const std::size_t gm = m.module().gens();
  IntMatrix stacked(gm * n, gm);
  for (std::size_t g = 0; g < n; ++g)
    stacked.set_block(g * gm, 0, m.action(g).matrix() - IntMatrix::identity(gm));
  return kernel(FpAbHom::trusted(m.module(), FpAbGroup::power(m.module(), n), std::move(stacked)));
}

FpAbGroup h1_crossed(const GModule& m) {
  const FiniteGroup& G = m.group();
  const std::size_t n = G.order();
  const std::size_t gm = m.module().gens();
  const IntMatrix id = IntMatrix::identity(gm);
  FpAbGroup mn = FpAbGroup::power(m.module(), n);
  FpAbGroup mnn = FpAbGroup::power(m.module(), n * n);

  // (g, h) ↦ f(gh) − f(g) − g·f(h)
  IntMatrix cocycle(gm * n * n, gm * n);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) {
      const std::size_t row = (g * n + h) * gm;
      auto add = [&](std::size_t block, const IntMatrix& x, int sign) {
        for (std::size_t r = 0; r < gm; ++r)
          for (std::size_t c = 0; c < gm; ++c)
            if (!x(r, c).is_zero()) cocycle(row + r, block * gm + c) += sign > 0 ? x(r, c) : -x(r, c);
      };
      add(G.mul(g, h), id, 1);
      add(g, id, -1);
      add(h, m.action(g).matrix(), -1);
    }
  Kernel z = kernel(FpAbHom::trusted(mn, mnn, std::move(cocycle)));

  IntMatrix principal(gm * n, gm);
  for (std::size_t g = 0; g < n; ++g) principal.set_block(g * gm, 0, m.action(g).matrix() - id);
  auto coords = solve_mod_columns(z.inclusion.matrix(), principal, mn.relations());
  if (!coords) throw InternalInvariant("h1_crossed: principal crossed homomorphisms are not crossed");
  return simplify(FpAbGroup::make(z.group.gens(), IntMatrix::hcat(z.group.relations(), *coords))).group;
}

GModule ext_action(const GModule& b, const GModule& a) {
  const FiniteGroup& G = b.group();
  Ext1Group x(b.module(), a.module());
  std::vector<FpAbHom> act;
  for (std::size_t g = 0; g < G.order(); ++g)
    act.push_back(compose(ext_covariant(a.action(g), x, x), ext_contravariant(b.action(G.inv(g)), x, x)));
  return GModule::make(G, x.group(), std::move(act));
}

std::vector<FpAbHom> ext_action_uninverted(const GModule& b, const GModule& a) {
  const FiniteGroup& G = b.group();
  Ext1Group x(b.module(), a.module());
  std::vector<FpAbHom> act;
  for (std::size_t g = 0; g < G.order(); ++g)
    act.push_back(compose(ext_covariant(a.action(g), x, x), ext_contravariant(b.action(g), x, x)));
  return act;
}

}  // namespace yoneda
