#include <algorithm>

#include "yoneda/errors.hpp"
#include "yoneda/groupring.hpp"

namespace yoneda {

void GroupRingMatrix::normalize() {
  for (auto& col : columns) {
    std::sort(col.begin(), col.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<std::pair<std::size_t, Integer>> merged;
    for (auto& [idx, c] : col) {
      if (!merged.empty() && merged.back().first == idx)
        merged.back().second += c;
      else
        merged.emplace_back(idx, std::move(c));
    }
    std::erase_if(merged, [](const auto& e) { return e.second.is_zero(); });
    col = std::move(merged);
  }
}

bool operator==(const GroupRingMatrix& a, const GroupRingMatrix& b) {
  return a.src_blocks == b.src_blocks && a.tgt_blocks == b.tgt_blocks && a.columns == b.columns;
}

namespace {

IntVector unit(std::size_t n, std::size_t i) {
  IntVector v(n);
  v[i] = Integer(1);
  return v;
}

GroupRingMatrix from_columns(const IntMatrix& m, std::size_t src_blocks, std::size_t tgt_blocks, std::size_t n,
                             std::size_t identity) {
  GroupRingMatrix out{src_blocks, tgt_blocks, std::vector<std::vector<std::pair<std::size_t, Integer>>>(src_blocks)};
  for (std::size_t i = 0; i < src_blocks; ++i)
    for (std::size_t r = 0; r < tgt_blocks * n; ++r)
      if (!m(r, i * n + identity).is_zero()) out.columns[i].emplace_back(r, m(r, i * n + identity));
  return out;
}

}  // namespace

CoverOf<GModuleContext> GModuleContext::epi_cover(const GModule& m, CoverOrder order) const {
  const std::size_t n = g_.order();
  const std::size_t gm = m.module().gens();
  // Keep a generator only when it is not already in the submodule spanned by the earlier ones.
  std::vector<IntVector> chosen;
  IntMatrix span = m.module().relations();
  for (std::size_t step = 0; step < gm; ++step) {
    const std::size_t j = order == CoverOrder::natural ? step : gm - 1 - step;
    IntVector e = unit(gm, j);
    if (span.cols() > 0 && ColumnEchelon(span, false).contains(e)) continue;
    IntMatrix orbit(gm, n);
    for (std::size_t h = 0; h < n; ++h) orbit.set_col(h, m.action(h).apply(e));
    span = IntMatrix::hcat(span, orbit);
    chosen.push_back(std::move(e));
  }
  const std::size_t r = chosen.size();
  IntMatrix mat(gm, r * n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t h = 0; h < n; ++h) mat.set_col(i * n + h, m.action(h).apply(chosen[i]));
  GModule f = free_object(r);
  return {r, GModuleHom::trusted(f, m, FpAbHom::trusted(f.module(), m.module(), std::move(mat)))};
}

KernelOf<GModuleContext> GModuleContext::kernel(const GModuleHom& f) const {
  Kernel k = yoneda::kernel(f.map());
  std::vector<FpAbHom> act;
  for (std::size_t g = 0; g < g_.order(); ++g) {
    auto a = factor_through(k.inclusion, yoneda::compose(f.src().action(g), k.inclusion));
    if (!a) throw InternalInvariant("kernel: submodule is not stable under the action");
    act.push_back(std::move(*a));
  }
  GModule obj = GModule::trusted(g_, k.group, std::move(act));
  return {obj, GModuleHom::trusted(obj, f.src(), k.inclusion)};
}

GModuleHom GModuleContext::compose(const GModuleHom& g, const GModuleHom& f) const {
  return GModuleHom::trusted(f.src(), g.tgt(), yoneda::compose(g.map(), f.map()));
}

GroupRingMatrix GModuleContext::as_free_map(const GModuleHom& f) const {
  const std::size_t n = g_.order();
  const std::size_t s = f.src().module().gens() / n;
  const std::size_t t = f.tgt().module().gens() / n;
  if (s * n != f.src().module().gens() || t * n != f.tgt().module().gens() ||
      !f.tgt().module().has_free_presentation())
    throw DimensionMismatch("as_free_map: endpoints are not free group-ring modules");
  return from_columns(f.map().matrix(), s, t, n, g_.identity());
}

GModuleHom GModuleContext::from_free(const GroupRingMatrix& m, std::size_t src, std::size_t tgt) const {
  if (m.src_blocks != src || m.tgt_blocks != tgt) throw DimensionMismatch("from_free: map has the wrong shape");
  GModule s = free_object(src), t = free_object(tgt);
  return GModuleHom::trusted(s, t, FpAbHom::trusted(s.module(), t.module(), expand(m)));
}

IntMatrix GModuleContext::expand(const GroupRingMatrix& m) const {
  const std::size_t n = g_.order();
  IntMatrix out(m.tgt_blocks * n, m.src_blocks * n);
  for (std::size_t i = 0; i < m.src_blocks; ++i)
    for (const auto& [idx, c] : m.columns[i])
      for (std::size_t h = 0; h < n; ++h) out((idx / n) * n + g_.mul(h, idx % n), i * n + h) += c;
  return out;
}

GroupRingMatrix GModuleContext::compose_free(const GroupRingMatrix& g, const GroupRingMatrix& f) const {
  if (f.tgt_blocks != g.src_blocks) throw DimensionMismatch("compose_free: inner target differs from outer source");
  const std::size_t n = g_.order();
  GroupRingMatrix out{f.src_blocks, g.tgt_blocks,
                      std::vector<std::vector<std::pair<std::size_t, Integer>>>(f.src_blocks)};
  for (std::size_t i = 0; i < f.src_blocks; ++i) {
    for (const auto& [idx, c] : f.columns[i])
      for (const auto& [idx2, c2] : g.columns[idx / n])
        out.columns[i].emplace_back((idx2 / n) * n + g_.mul(idx % n, idx2 % n), c * c2);
  }
  out.normalize();
  return out;
}

bool GModuleContext::is_zero_free(const GroupRingMatrix& m) const {
  GroupRingMatrix c = m;
  c.normalize();
  return std::all_of(c.columns.begin(), c.columns.end(), [](const auto& col) { return col.empty(); });
}

bool GModuleContext::equal_free(const GroupRingMatrix& a, const GroupRingMatrix& b) const {
  GroupRingMatrix x = a, y = b;
  x.normalize();
  y.normalize();
  return x == y;
}

IntMatrix GModuleContext::hom_precompose(const GroupRingMatrix& d, std::size_t src, std::size_t tgt,
                                         const GModule& m) const {
  if (d.src_blocks != src || d.tgt_blocks != tgt) throw DimensionMismatch("hom_precompose: map has the wrong shape");
  const std::size_t n = g_.order();
  const std::size_t gm = m.module().gens();
  IntMatrix out(src * gm, tgt * gm);
  for (std::size_t i = 0; i < src; ++i)
    for (const auto& [idx, c] : d.columns[i]) {
      const IntMatrix& a = m.action(idx % n).matrix();
      const std::size_t b = idx / n;
      for (std::size_t r = 0; r < gm; ++r)
        for (std::size_t k = 0; k < gm; ++k)
          if (!a(r, k).is_zero()) out(i * gm + r, b * gm + k) += c * a(r, k);
    }
  return out;
}

GroupRingMatrix GModuleContext::lift_free(const GroupRingMatrix& d, std::size_t src, const GroupRingMatrix& g) const {
  if (g.src_blocks != src || g.tgt_blocks != d.tgt_blocks) throw DimensionMismatch("lift_free: map has the wrong shape");
  const std::size_t n = g_.order();
  IntMatrix rhs(d.tgt_blocks * n, src);
  for (std::size_t i = 0; i < src; ++i)
    for (const auto& [idx, c] : g.columns[i]) rhs(idx, i) += c;
  auto h = solve_mod_columns(expand(d), rhs, IntMatrix(d.tgt_blocks * n, 0));
  if (!h) throw InternalInvariant("lift_free: map does not land in the image of the differential");
  GroupRingMatrix out{src, d.src_blocks, std::vector<std::vector<std::pair<std::size_t, Integer>>>(src)};
  for (std::size_t i = 0; i < src; ++i)
    for (std::size_t r = 0; r < h->rows(); ++r)
      if (!(*h)(r, i).is_zero()) out.columns[i].emplace_back(r, (*h)(r, i));
  return out;
}

GroupRingMatrix GModuleContext::lift_augmentation(const GModuleHom& eps, std::size_t src, const GModuleHom& g) const {
  const std::size_t n = g_.order();
  if (g.src().module().gens() != src * n) throw DimensionMismatch("lift_augmentation: map has the wrong source");
  const std::size_t t = eps.src().module().gens() / n;
  IntMatrix rhs = g.map().matrix().select_cols([&] {
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < src; ++i) cols.push_back(i * n + g_.identity());
    return cols;
  }());
  auto h = solve_mod_columns(eps.map().matrix(), rhs, eps.tgt().module().relations());
  if (!h) throw InternalInvariant("lift_augmentation: augmentation is not onto");
  GroupRingMatrix out{src, t, std::vector<std::vector<std::pair<std::size_t, Integer>>>(src)};
  for (std::size_t i = 0; i < src; ++i)
    for (std::size_t r = 0; r < h->rows(); ++r)
      if (!(*h)(r, i).is_zero()) out.columns[i].emplace_back(r, (*h)(r, i));
  return out;
}

// ---------------------------------------------------------------------------

FreeResolution<GModuleContext> bar_resolution(const FiniteGroup& g, std::size_t max_deg) {
  GModuleContext ctx(g);
  const std::size_t n = g.order();
  GModule z = trivial_module(g, FpAbGroup::free(1));
  GModule p0 = ctx.free_object(1);
  IntMatrix ones(1, n);
  for (std::size_t h = 0; h < n; ++h) ones(0, h) = Integer(1);
  FreeResolution<GModuleContext> r{z, {1}, {}, GModuleHom::trusted(p0, z, FpAbHom::trusted(p0.module(), z.module(), ones)),
                                   {}, {}};
  std::size_t blocks = 1;
  for (std::size_t k = 1; k <= max_deg; ++k) {
    const std::size_t lower = blocks;
    blocks *= n;
    GroupRingMatrix d{blocks, lower, std::vector<std::vector<std::pair<std::size_t, Integer>>>(blocks)};
    std::vector<std::size_t> t(k);
    for (std::size_t idx = 0; idx < blocks; ++idx) {
      for (std::size_t i = 0, rest = idx; i < k; ++i, rest /= n) t[k - 1 - i] = rest % n;
      auto& col = d.columns[idx];
      col.emplace_back((idx % lower) * n + t[0], Integer(1));
      for (std::size_t i = 0; i + 1 < k; ++i) {
        std::size_t face = 0;
        for (std::size_t j = 0; j < k; ++j) {
          if (j == i + 1) continue;
          face = face * n + (j == i ? g.mul(t[i], t[i + 1]) : t[j]);
        }
        col.emplace_back(face * n + g.identity(), Integer(i % 2 == 0 ? -1 : 1));
      }
      col.emplace_back((idx / n) * n + g.identity(), Integer(k % 2 == 0 ? 1 : -1));
    }
    d.normalize();
    r.differentials.push_back(std::move(d));
    r.terms.push_back(blocks);
  }
  return r;
}

FpAbGroup group_cohomology(const FiniteGroup& g, const GModule& m, std::size_t n) {
  GModuleContext ctx(g);
  return hom_complex(ctx, bar_resolution(g, n + 1), m).cohomology_group(n);
}

}  // namespace yoneda
