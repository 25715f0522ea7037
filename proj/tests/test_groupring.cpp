#include <iostream>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "yoneda/groupring.hpp"

using namespace yoneda;

namespace {

FpAbGroup zmod(long n) { return FpAbGroup::cyclic(Integer(n)); }

FpAbGroup zsum(std::initializer_list<long> orders) {
  std::vector<Integer> d;
  for (long o : orders) d.emplace_back(o);
  return FpAbGroup::make(d.size(), IntMatrix::diagonal(d, d.size(), d.size()));
}

// ℤ/m acting on M through powers of t.
GModule cyclic_module(std::size_t m, const FpAbGroup& mod, const IntMatrix& t) {
  std::vector<FpAbHom> act;
  IntMatrix p = IntMatrix::identity(mod.gens());
  for (std::size_t i = 0; i < m; ++i) {
    act.push_back(FpAbHom::make(mod, mod, p));
    p = t * p;
  }
  return GModule::make(FiniteGroup::cyclic(m), mod, std::move(act));
}

std::size_t kernel_size(const FpAbHom& f) {
  std::size_t count = 0;
  for (const auto& x : finite_elements(f.src()))
    if (f.tgt().is_zero_element(f.apply(x))) ++count;
  return count;
}

// |Hⁿ| from the 2-periodic resolution of ℤ over ℤ[ℤ/m], counted by enumeration.
std::size_t periodic_order(const GModule& m, std::size_t n) {
  const std::size_t k = m.group().order();
  const FpAbGroup& mod = m.module();
  FpAbHom diff = m.action(1 % k) - FpAbHom::identity(mod);
  FpAbHom norm = FpAbHom::zero(mod, mod);
  for (std::size_t g = 0; g < k; ++g) norm = norm + m.action(g);
  auto d = [&](std::size_t i) { return i % 2 == 0 ? diff : norm; };
  const std::size_t size = finite_elements(mod).size();
  if (n == 0) return kernel_size(d(0));
  return kernel_size(d(n)) * kernel_size(d(n - 1)) / size;
}

std::size_t group_order(const FpAbGroup& g) { return static_cast<std::size_t>(g.order()->small_value()); }

std::vector<std::vector<int>> characters(const FiniteGroup& g) {
  std::vector<std::vector<int>> out;
  const std::size_t n = g.order();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<int> chi(n);
    for (std::size_t a = 0; a < n; ++a) chi[a] = (mask >> a) & 1 ? -1 : 1;
    bool ok = chi[g.identity()] == 1;
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = 0; b < n && ok; ++b) ok = chi[a] * chi[b] == chi[g.mul(a, b)];
    if (ok && mask != 0) out.push_back(chi);
  }
  return out;
}

// Finite modules of order ≤ 8 over g.
std::vector<GModule> small_modules(const FiniteGroup& g) {
  std::vector<GModule> out;
  for (long k = 2; k <= 8; ++k) out.push_back(trivial_module(g, zmod(k)));
  for (auto group : {zsum({2, 2}), zsum({2, 4}), zsum({2, 2, 2})}) out.push_back(trivial_module(g, group));
  for (const auto& chi : characters(g))
    for (long k = 3; k <= 8; ++k) out.push_back(character_module(g, zmod(k), chi));
  if (g.order() <= 3) {
    std::vector<std::vector<std::size_t>> left(g.order());
    for (std::size_t a = 0; a < g.order(); ++a)
      for (std::size_t h = 0; h < g.order(); ++h) left[a].push_back(g.mul(a, h));
    out.push_back(permutation_module(g, zmod(2), left));
  }
  if (!g.permutations().empty() && g.permutations().front().size() == 3)
    out.push_back(permutation_module(g, zmod(2), g.permutations()));
  return out;
}

std::vector<FiniteGroup> small_groups() {
  std::vector<FiniteGroup> out;
  for (std::size_t n = 1; n <= 6; ++n) out.push_back(FiniteGroup::cyclic(n));
  out.push_back(FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)));
  out.push_back(FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)));
  out.push_back(FiniteGroup::symmetric(3));
  return out;
}

}  // namespace

TEST_CASE("finite groups are validated") {
  CHECK(FiniteGroup::cyclic(1).order() == 1);
  FiniteGroup c2 = FiniteGroup::cyclic(2);
  CHECK(c2.inv(0) == 0);
  CHECK(c2.inv(1) == 1);
  FiniteGroup s3 = FiniteGroup::symmetric(3);
  CHECK(s3.order() == 6);
  CHECK_FALSE(s3.is_abelian());
  CHECK(s3.identity() == 0);
  CHECK(FiniteGroup::product(c2, FiniteGroup::cyclic(3)).is_abelian());

  // x*y = 2x + y mod 3 is closed but not associative.
  std::vector<std::vector<std::size_t>> bad(3, std::vector<std::size_t>(3));
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = 0; y < 3; ++y) bad[x][y] = (2 * x + y) % 3;
  try {
    (void)FiniteGroup::make(bad);
    FAIL("non-associative table accepted");
  } catch (const LawViolation& e) {
    CHECK(std::string(e.what()).find("associativity") != std::string::npos);
  }
  CHECK_THROWS_AS((void)FiniteGroup::make({{0, 1}, {1, 1}}), LawViolation);
  CHECK_THROWS_AS((void)FiniteGroup::make({{0, 2}, {1, 0}}), LawViolation);
  CHECK_THROWS_AS((void)FiniteGroup::make({{0}, {0}}), LawViolation);
}

TEST_CASE("module constructors") {
  FiniteGroup c2 = FiniteGroup::cyclic(2);
  GModule zg = group_ring_module(c2, 1);
  CHECK(zg.module().to_string() == "Z^2");
  CHECK(zg.action(1).matrix() == IntMatrix{{0, 1}, {1, 0}});
  CHECK(group_ring_module(c2, 0).module().is_zero());
  CHECK(group_ring_module(FiniteGroup::cyclic(1), 1).action(0).matrix() == IntMatrix{{1}});
  CHECK(sign_module(c2).action(1).matrix() == IntMatrix{{-1}});
  CHECK_THROWS_AS((void)sign_module(FiniteGroup::cyclic(3)), DomainError);

  // t acting by 2 on ℤ/5 has order 4, not 2.
  std::vector<FpAbHom> act{FpAbHom::identity(zmod(5)), FpAbHom::make(zmod(5), zmod(5), IntMatrix{{2}})};
  CHECK_THROWS_AS((void)GModule::make(c2, zmod(5), act), LawViolation);
  // On ℤ/3 multiplication by 2 squares to the identity modulo relations.
  std::vector<FpAbHom> ok{FpAbHom::identity(zmod(3)), FpAbHom::make(zmod(3), zmod(3), IntMatrix{{2}})};
  CHECK_NOTHROW((void)GModule::make(c2, zmod(3), ok));

  GModule sgn = sign_module(c2);
  CHECK_THROWS_AS((void)GModuleHom::make(sgn, trivial_module(c2, FpAbGroup::free(1)), FpAbHom::identity(sgn.module())),
                  LawViolation);
}

TEST_CASE("Hom from the group ring is evaluation") {
  for (const auto& g : small_groups()) {
    GModuleContext ctx(g);
    for (const auto& m : small_modules(g)) {
      if (group_order(m.module()) > 8) continue;
      HomGroup h = gmodule_hom_group(ctx.free_object(1), m);
      CHECK(h.group().isomorphic(m.module()));
      // Every element m gives the G-map e_h ↦ h·m, and distinct m give distinct maps.
      auto elems = finite_elements(m.module());
      std::vector<FpAbHom> maps;
      for (const auto& x : elems) {
        IntMatrix mat(m.module().gens(), g.order());
        for (std::size_t a = 0; a < g.order(); ++a) mat.set_col(a, m.action(a).apply(x));
        auto f = GModuleHom::make(ctx.free_object(1), m, FpAbHom::make(ctx.free_object(1).module(), m.module(), mat));
        maps.push_back(f.map());
      }
      for (std::size_t i = 0; i < maps.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) CHECK_FALSE(maps[i].equals(maps[j]));
      CHECK(elems.size() == group_order(h.group()));
    }
    CHECK(gmodule_hom_group(ctx.free_object(0), trivial_module(g, zmod(3))).group().is_zero());
  }
}

TEST_CASE("kernel of the augmentation for the cyclic group of order two") {
  FiniteGroup c2 = FiniteGroup::cyclic(2);
  GModuleContext ctx(c2);
  auto bar = bar_resolution(c2, 0);
  auto k = ctx.kernel(bar.augmentation);
  CHECK(k.object.module().to_string() == "Z");
  IntMatrix gen = k.inclusion.map().matrix();
  CHECK((gen == IntMatrix{{1}, {-1}} || gen == IntMatrix{{-1}, {1}}));
  CHECK(k.object.action(1).matrix() == IntMatrix{{-1}});
}

TEST_CASE("bar resolution") {
  FiniteGroup c2 = FiniteGroup::cyclic(2);
  auto r = bar_resolution(c2, 2);
  CHECK(r.terms == std::vector<std::size_t>{1, 2, 4});
  CHECK(r.augmentation.map().matrix() == IntMatrix{{1, 1}});
  for (const auto& g : small_groups()) {
    if (g.order() > 4) continue;
    GModuleContext ctx(g);
    CHECK(is_chain_complex(ctx, bar_resolution(g, 3)));
  }
}

TEST_CASE("group cohomology of cyclic groups agrees with the periodic resolution") {
  for (std::size_t m = 1; m <= 6; ++m) {
    FiniteGroup g = FiniteGroup::cyclic(m);
    GModule z = trivial_module(g, FpAbGroup::free(1));
    for (std::size_t n = 0; n <= 4; ++n) {
      FpAbGroup h = group_cohomology(g, z, n);
      if (n == 0)
        CHECK(h.to_string() == "Z");
      else if (n % 2 == 1 || m == 1)
        CHECK(h.is_zero());
      else
        CHECK(h.isomorphic(zmod(static_cast<long>(m))));
    }
  }
  // Twisted finite coefficients, counted by enumeration on the periodic complex.
  struct Case {
    std::size_t m;
    FpAbGroup mod;
    IntMatrix t;
  };
  std::vector<Case> cases{{2, zmod(4), IntMatrix{{-1}}},        {3, zmod(7), IntMatrix{{2}}},
                          {4, zmod(5), IntMatrix{{2}}},         {2, zsum({2, 2}), IntMatrix{{0, 1}, {1, 0}}},
                          {3, zsum({2, 2}), IntMatrix{{0, 1}, {1, 1}}}, {6, zmod(9), IntMatrix{{2}}},
                          {4, zmod(6), IntMatrix{{5}}}};
  for (const auto& c : cases) {
    GModule mod = cyclic_module(c.m, c.mod, c.t);
    for (std::size_t n = 0; n <= 3; ++n) {
      CAPTURE(c.m);
      CAPTURE(n);
      CHECK(group_order(group_cohomology(mod.group(), mod, n)) == periodic_order(mod, n));
    }
  }
}

TEST_CASE("trivial group and sign examples") {
  FiniteGroup e = FiniteGroup::cyclic(1);
  GModule m = trivial_module(e, zsum({2, 6}));
  CHECK(group_cohomology(e, m, 0).isomorphic(m.module()));
  for (std::size_t n = 1; n <= 3; ++n) CHECK(group_cohomology(e, m, n).is_zero());
  CHECK(h1_crossed(m).is_zero());

  FiniteGroup c2 = FiniteGroup::cyclic(2);
  CHECK(group_cohomology(c2, sign_module(c2), 1).to_string() == "Z/2");
  CHECK(h1_crossed(sign_module(c2)).to_string() == "Z/2");
  CHECK(h1_crossed(trivial_module(FiniteGroup::symmetric(3), FpAbGroup::free(1))).is_zero());
}

TEST_CASE("H1 by crossed homomorphisms matches the bar resolution") {
  std::size_t checked = 0;
  for (const auto& g : small_groups())
    for (const auto& m : small_modules(g)) {
      CAPTURE(g.order());
      CAPTURE(m.module().to_string());
      CHECK(group_cohomology(g, m, 1).isomorphic(h1_crossed(m)));
      ++checked;
    }
  CHECK(checked > 100);
}

TEST_CASE("fixed points") {
  FiniteGroup c2 = FiniteGroup::cyclic(2);
  CHECK(fixed_points(sign_module(c2)).group.is_zero());
  CHECK(fixed_points(trivial_module(c2, zsum({2, 4}))).group.to_string() == "Z/2 + Z/4");
  Kernel norm = fixed_points(group_ring_module(c2, 1));
  CHECK(norm.group.to_string() == "Z");
  IntMatrix v = norm.inclusion.matrix();
  CHECK((v == IntMatrix{{1}, {1}} || v == IntMatrix{{-1}, {-1}}));
  FiniteGroup s3 = FiniteGroup::symmetric(3);
  CHECK(fixed_points(permutation_module(s3, FpAbGroup::free(1), s3.permutations())).group.to_string() == "Z");
  CHECK(fixed_points(character_module(c2, zmod(2), {1, -1})).group.to_string() == "Z/2");
}

TEST_CASE("Ext over the group ring differs from Ext over the integers") {
  FiniteGroup c2 = FiniteGroup::cyclic(2);
  GModuleContext ctx(c2);
  GModule z = trivial_module(c2, FpAbGroup::free(1));
  CHECK(ext_n(ctx, z, z, 2).to_string() == "Z/2");
  CHECK(ext_n(IntegerContext{}, FpAbGroup::free(1), FpAbGroup::free(1), 2).is_zero());
  for (std::size_t n = 0; n <= 4; ++n) {
    FpAbGroup a = ext_n(ctx, z, z, n, CoverOrder::natural);
    CHECK(a.isomorphic(ext_n(ctx, z, z, n, CoverOrder::reversed)));
    CHECK(a.isomorphic(group_cohomology(c2, z, n)));
  }
  GModule sgn = sign_module(c2);
  for (std::size_t n = 0; n <= 3; ++n)
    CHECK(ext_n(ctx, z, sgn, n).isomorphic(group_cohomology(c2, sgn, n)));

  auto r = free_resolution(ctx, z, 3);
  CHECK(is_chain_complex(ctx, r));
  auto bar = bar_resolution(c2, 3);
  GModuleHom id = GModuleHom::trusted(z, z, FpAbHom::identity(z.module()));
  auto phi = lift_chain_map(ctx, r, bar, id);
  CHECK(is_chain_map(ctx, r, bar, id, phi));
}

TEST_CASE("the augmentation has no equivariant section") {
  FiniteGroup c2 = FiniteGroup::cyclic(2);
  GModuleContext ctx(c2);
  auto bar = bar_resolution(c2, 0);
  CHECK_FALSE(gmodule_section(bar.augmentation).has_value());
  // A section is determined by s(1) = (a, b); equivariance forces a = b, and ε(s(1)) = 2a ≠ 1.
  std::size_t found = 0;
  for (int a = -10; a <= 10; ++a)
    for (int b = -10; b <= 10; ++b) {
      IntMatrix s{{a}, {b}};
      const bool equivariant = IntMatrix{{0, 1}, {1, 0}} * s == s;
      if (equivariant && a + b == 1) ++found;
    }
  CHECK(found == 0);

  FiniteGroup e = FiniteGroup::cyclic(1);
  CHECK(gmodule_section(bar_resolution(e, 0).augmentation).has_value());
}

TEST_CASE("induced action on Ext") {
  FiniteGroup c2 = FiniteGroup::cyclic(2);
  GModule b = trivial_module(c2, zmod(2));
  GModule a = sign_module(c2);
  GModule x = ext_action(b, a);
  CHECK(x.module().to_string() == "Z/2");
  CHECK(x.action(1).equals(FpAbHom::identity(x.module())));

  GModule t = ext_action(trivial_module(c2, zmod(6)), trivial_module(c2, zmod(4)));
  CHECK(t.action(1).equals(FpAbHom::identity(t.module())));

  // ℤ/3 with t ↦ −1 on both sides: Ext¹(ℤ/3, ℤ/3) = ℤ/3 with (−1)_*(−1)^* = id.
  GModule neg = character_module(c2, zmod(3), {1, -1});
  GModule y = ext_action(neg, trivial_module(c2, zmod(3)));
  CHECK(y.action(1).equals(-FpAbHom::identity(y.module())));
  CHECK(fixed_points(y).group.is_zero());
}

TEST_CASE("inverse placement in the induced action") {
  // For abelian G the two placements coincide as maps; for S3 acting on
  // (ℤ/2)³ by permutations they are different maps and only the inverted one is an action.
  FiniteGroup s3 = FiniteGroup::symmetric(3);
  GModule b = permutation_module(s3, zmod(2), s3.permutations());
  GModule a = trivial_module(s3, zmod(2));
  GModule inverted = ext_action(b, a);
  auto plain = ext_action_uninverted(b, a);
  std::size_t differ = 0;
  for (std::size_t g = 0; g < s3.order(); ++g)
    if (!plain[g].equals(inverted.action(g))) ++differ;
  CHECK(differ > 0);
  CHECK_THROWS_AS((void)GModule::make(s3, inverted.module(), plain), LawViolation);
  // With trivial A the inverted action at g is the plain one at g⁻¹, so the fixed subgroups agree.
  for (std::size_t g = 0; g < s3.order(); ++g) CHECK(plain[s3.inv(g)].equals(inverted.action(g)));
  CHECK(fixed_points(GModule::trusted(s3, inverted.module(), plain)).group.isomorphic(fixed_points(inverted).group));

  FiniteGroup c3 = FiniteGroup::cyclic(3);
  GModule pc = permutation_module(c3, zmod(2), {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  GModule ic = ext_action(pc, trivial_module(c3, zmod(2)));
  auto uc = ext_action_uninverted(pc, trivial_module(c3, zmod(2)));
  std::size_t differ_c3 = 0;
  for (std::size_t g = 0; g < 3; ++g)
    if (!uc[g].equals(ic.action(g))) ++differ_c3;
  CHECK(differ_c3 > 0);
  CHECK(fixed_points(GModule::trusted(c3, ic.module(), uc)).group.isomorphic(fixed_points(ic).group));
}

TEST_CASE("fixed points of Ext against Ext over the group ring (report)") {
  std::mt19937 rng(71);
  std::vector<FiniteGroup> groups{FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric(3)};
  int reported = 0;
  while (reported < 10) {
    const FiniteGroup& g = groups[rng() % groups.size()];
    auto mods = small_modules(g);
    const GModule& b = mods[rng() % mods.size()];
    const GModule& a = mods[rng() % mods.size()];
    if (oracle::gcd_long(static_cast<long>(group_order(b.module())), static_cast<long>(group_order(a.module()))) == 1)
      continue;
    ++reported;
    GModuleContext ctx(g);
    FpAbGroup fixed = fixed_points(ext_action(b, a)).group;
    FpAbGroup over = ext_n(ctx, b, a, 1);
    const std::string verdict = fixed.isomorphic(over) ? "equal" : "differ";
    MESSAGE("|G|=" << g.order() << " B=" << b.module().to_string() << " A=" << a.module().to_string()
                   << "  Ext^1_Z(B,A)^G=" << fixed.to_string() << "  Ext^1_ZG(B,A)=" << over.to_string() << "  "
                   << verdict);
  }
}
