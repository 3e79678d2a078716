#include <algorithm>
#include <unordered_map>

#include "detail/navigation.hpp"
#include "lociso/symmetry.hpp"

namespace lociso {

namespace {

[[noreturn]] void conflict(const Structure& m, const detail::BfsTree& tree, ElementId at, const std::string& what) {
  Word w = tree.word_to(at);
  throw GluingError("gluing conflict at word [" + format_word(m.language(), w) + "]: " + what, std::move(w));
}

}  // namespace

NeighborMaps navigation_neighbors(const Structure& m, const Structure& n, const PartialIso& rho) {
  require_same_language(m.language(), n.language());
  const ElementId x = rho.anchor;
  const std::uint32_t r = rho.certified_radius;
  const auto tree = detail::bfs_tree(m, x, r + 1);
  const bool equational = equational_check(m).equational && equational_check(n).equational;
  NeighborMaps out;
  for (ElementId y : tree.order) {
    if (tree.dist[y] > r) break;
    auto yr = rho.image(y);
    if (!yr) conflict(m, tree, y, "rho is undefined at " + m.id(y));
    PartialIso local;
    local.anchor = y;
    local.certified_radius = 1;
    if (equational) {
      std::unordered_map<ElementId, ElementId> img{{y, *yr}};
      for (const Incidence& inc : m.incidences(y)) {
        auto args = m.tuple_args(inc.tuple);
        for (std::uint32_t j = 0; j < args.size(); ++j) {
          if (j == inc.position) continue;
          Step s{m.tuple_symbol(inc.tuple), inc.position, j};
          auto target = apply_step(n, *yr, s);
          if (!target) {
            Word w = tree.word_to(y);
            w.push_back(s);
            throw GluingError("gluing conflict at word [" + format_word(m.language(), w) + "]: no local extension at " +
                                  m.id(y),
                              std::move(w));
          }
          auto [it, fresh] = img.emplace(args[j], *target);
          if (!fresh && it->second != *target) conflict(m, tree, args[j], "navigation is inconsistent");
        }
      }
      local.pairs.assign(img.begin(), img.end());
      local.normalize();
      if (auto defect = partial_iso_defect(m, n, local))
        conflict(m, tree, y, "no local extension at " + m.id(y) + ": " + *defect);
    } else {
      auto maps = pointed_isos_unchecked(m, y, n, *yr, 1, 64);
      if (maps.empty()) conflict(m, tree, y, "no local extension at " + m.id(y));
      auto agrees = [&](const PartialIso& f) {
        return std::all_of(f.pairs.begin(), f.pairs.end(), [&](const auto& p) {
          auto q = rho.image(p.first);
          return !q || *q == p.second;
        });
      };
      auto it = std::find_if(maps.begin(), maps.end(), agrees);
      local = it != maps.end() ? *it : maps.front();
      local.anchor = y;
      local.certified_radius = 1;
    }
    out.push_back(std::move(local));
  }
  return out;
}

PartialIso extend_partial_iso(const Structure& m, const Structure& n, const PartialIso& rho,
                              const NeighborMaps& neighbors) {
  require_same_language(m.language(), n.language());
  const ElementId x = rho.anchor;
  const std::uint32_t r = rho.certified_radius;
  const auto tree = detail::bfs_tree(m, x, r + 1);
  std::unordered_map<ElementId, ElementId> glued;
  std::unordered_map<ElementId, ElementId> preimage;
  std::vector<std::uint8_t> covered_center(m.size(), 0);
  for (const PartialIso& local : neighbors) {
    const ElementId y = local.anchor;
    if (y >= m.size() || !tree.contains(y) || tree.dist[y] > r)
      fail(Errc::InvalidArgument, "neighbor map anchored outside B(x, r)");
    covered_center[y] = 1;
    auto yr = rho.image(y);
    auto yl = local.image(y);
    if (!yr || !yl || *yr != *yl) conflict(m, tree, y, "neighbor map disagrees with rho at its center");
    for (auto [z, t] : local.pairs) {
      if (!tree.contains(z) || tree.dist[z] > r + 1 || (tree.dist[z] > tree.dist[y] + 1))
        conflict(m, tree, y, "neighbor map leaves B(y, 1)");
      if (auto q = rho.image(z); q && *q != t)
        conflict(m, tree, z, m.id(z) + " sent to " + n.id(t) + " but rho gives " + n.id(*q));
      auto [it, fresh] = glued.emplace(z, t);
      if (!fresh && it->second != t)
        conflict(m, tree, z, m.id(z) + " sent to both " + n.id(it->second) + " and " + n.id(t));
      auto [jt, fresh_img] = preimage.emplace(t, z);
      if (!fresh_img && jt->second != z)
        conflict(m, tree, z, "not injective: " + m.id(z) + " and " + m.id(jt->second) + " both reach " + n.id(t));
    }
  }
  PartialIso out;
  out.anchor = x;
  out.certified_radius = r + 1;
  for (ElementId z : tree.order) {
    if (tree.dist[z] <= r && !covered_center[z]) conflict(m, tree, z, "no neighbor map at " + m.id(z));
    auto it = glued.find(z);
    if (it == glued.end()) conflict(m, tree, z, "no neighbor map covers " + m.id(z));
    out.pairs.emplace_back(z, it->second);
  }
  out.normalize();
  if (out.pairs.size() != glued.size()) fail(Errc::InvalidArgument, "neighbor maps reach beyond B(x, r+1)");
  if (auto defect = partial_iso_defect(m, n, out)) conflict(m, tree, x, "glued map fails verification: " + *defect);
  return out;
}

PartialIso extend_partial_iso(const Structure& m, const Structure& n, const PartialIso& rho) {
  return extend_partial_iso(m, n, rho, navigation_neighbors(m, n, rho));
}

}  // namespace lociso
