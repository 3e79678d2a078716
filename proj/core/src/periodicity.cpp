#include <algorithm>
#include <numeric>

#include "detail/navigation.hpp"
#include "lociso/ball.hpp"
#include "lociso/symmetry.hpp"

namespace lociso {

std::string_view search_outcome_name(SearchOutcome o) noexcept {
  switch (o) {
    case SearchOutcome::Found: return "found";
    case SearchOutcome::Absent: return "absent";
    case SearchOutcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

ElementId deepest(const Structure& m) {
  ElementId best = m.canonical_order().front();
  for (ElementId e : m.canonical_order())
    if (m.depth(e) > m.depth(best)) best = e;
  return best;
}

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Navigation map x -> y, accepted when it is a fixed-point-free partial
// isomorphism defined on the whole core.
std::optional<PartialIso> core_translation(const Structure& m, const detail::BfsTree& tree, ElementId y,
                                           const std::vector<ElementId>& core) {
  auto img = detail::navigate(m, tree, m, y);
  PartialIso f;
  f.anchor = tree.root;
  f.pairs.reserve(core.size());
  for (ElementId z : core) {
    if (img[z] == kInfinite || img[z] == z) return std::nullopt;
    f.pairs.emplace_back(z, img[z]);
  }
  f.normalize();
  if (partial_iso_defect(m, m, f)) return std::nullopt;
  return f;
}

bool weakly_connected(const Structure& m, const std::vector<ElementId>& set) {
  if (set.empty()) return false;
  std::vector<std::uint8_t> in(m.size(), 0), seen(m.size(), 0);
  for (ElementId e : set) in[e] = 1;
  std::vector<ElementId> stack{set.front()};
  seen[set.front()] = 1;
  std::size_t reached = 0;
  while (!stack.empty()) {
    ElementId e = stack.back();
    stack.pop_back();
    ++reached;
    for (ElementId f : m.neighbors(e))
      if (in[f] && !seen[f]) {
        seen[f] = 1;
        stack.push_back(f);
      }
  }
  return reached == set.size();
}

}  // namespace

PeriodReport detect_periodicity(const Structure& m, std::size_t rank_bound, const PeriodOptions& options) {
  if (rank_bound == 0) fail(Errc::InvalidArgument, "rank bound must be positive");
  if (m.size() == 0) fail(Errc::WindowExhausted, "empty structure");
  if (options.generators.empty()) require_equational(m);
  PeriodReport rep;
  rep.rank_bound = rank_bound;
  rep.anchor = options.anchor ? *options.anchor : deepest(m);
  const ElementId x = rep.anchor;
  rep.displacement_bound =
      options.displacement ? *options.displacement : static_cast<std::uint32_t>(std::max<std::size_t>(1, 3 * rank_bound - 2));
  rep.margin = options.margin ? *options.margin : (m.closed() ? 0 : rep.displacement_bound + 1);
  for (ElementId e : m.canonical_order())
    if (m.depth(e) >= rep.margin) rep.core.push_back(e);
  if (rep.core.empty() || m.depth(x) < rep.margin)
    fail(Errc::WindowExhausted, "no core of depth " + std::to_string(rep.margin) + " around the anchor");

  if (!options.generators.empty()) {
    for (const auto& g : options.generators) {
      if (auto defect = partial_iso_defect(m, m, g)) fail(Errc::VerificationFailed, "supplied generator: " + *defect);
      rep.generators.push_back(g);
    }
  } else {
    const auto tree = detail::bfs_tree(m, x);
    const auto dx = distances_from(m, x, rep.displacement_bound);
    const std::uint32_t probe = std::min(rep.displacement_bound, m.depth(x));
    for (ElementId y : m.canonical_order()) {
      if (y == x || dx[y] > rep.displacement_bound) continue;
      // Cheap rejection before the full navigation pass.
      if (pointed_isos_unchecked(m, x, m, y, std::min(probe, m.depth(y)), 1).empty()) continue;
      if (auto f = core_translation(m, tree, y, rep.core)) rep.generators.push_back(std::move(*f));
    }
  }

  std::vector<std::uint8_t> in_core(m.size(), 0);
  for (ElementId e : rep.core) in_core[e] = 1;
  UnionFind uf(m.size());
  for (const auto& g : rep.generators)
    for (auto [a, b] : g.pairs)
      if (in_core[a] && in_core[b]) uf.unite(a, b);
  std::vector<std::uint8_t> class_seen(m.size(), 0);
  for (ElementId e : rep.core) {
    auto c = uf.find(e);
    if (!class_seen[c]) {
      class_seen[c] = 1;
      ++rep.orbit_count;
    }
  }

  // Greedy weakly connected period: repeatedly add the least neighbor (in
  // canonical order) of A whose orbit is not yet represented.
  std::vector<std::int32_t> rep_of_class(m.size(), -1);
  std::vector<std::uint8_t> in_a(m.size(), 0);
  auto add = [&](ElementId e) {
    rep_of_class[uf.find(e)] = static_cast<std::int32_t>(rep.period.size());
    in_a[e] = 1;
    rep.period.push_back(e);
  };
  add(x);
  while (rep.period.size() < rep.orbit_count && rep.period.size() <= rank_bound) {
    std::optional<ElementId> best;
    for (ElementId a : rep.period)
      for (ElementId f : m.neighbors(a))
        if (in_core[f] && !in_a[f] && rep_of_class[uf.find(f)] < 0 &&
            (!best || m.canonical_rank(f) < m.canonical_rank(*best)))
          best = f;
    if (!best) break;
    add(*best);
  }

  rep.orbit_of.assign(m.size(), -1);
  for (ElementId e : rep.core) rep.orbit_of[e] = rep_of_class[uf.find(e)];
  rep.covering = rep.period.size() == rep.orbit_count;
  rep.disjoint = true;  // one representative per orbit by construction
  rep.weakly_connected = weakly_connected(m, rep.period);
  if (rep.covering && rep.period.size() <= rank_bound) rep.rank = rep.period.size();
  return rep;
}

PartialIso extend_to_automorphism(const Structure& m, const PeriodReport& period, const PartialIso& rho) {
  require_equational(m);
  if (!period.rank) fail(Errc::InvalidArgument, "the period report certifies no period");
  const ElementId x = rho.anchor;
  if (rho.certified_radius < *period.rank)
    fail(Errc::InvalidArgument, "rho must be defined on a ball of radius at least the rank");
  if (x >= m.size() || period.orbit_of[x] < 0)
    fail(Errc::NoOrbitRepresentative, "the orbit of the anchor misses the period");

  // Translate A so that it contains x.
  const ElementId a0 = period.period[static_cast<std::size_t>(period.orbit_of[x])];
  const auto tree_a0 = detail::bfs_tree(m, a0);
  const auto sigma = detail::navigate(m, tree_a0, m, x);
  std::vector<ElementId> shifted;
  std::vector<Word> words;
  for (ElementId a : period.period) {
    ElementId b = sigma[a];
    if (b == kInfinite) fail(Errc::NoOrbitRepresentative, "translated period leaves the window at " + m.id(a));
    auto br = rho.image(b);
    if (!br) fail(Errc::InvalidArgument, "rho is undefined on the translated period element " + m.id(b));
    auto tree_b = detail::bfs_tree(m, b);
    if (!tree_b.contains(*br)) fail(Errc::InvalidArgument, "image of " + m.id(b) + " is unreachable");
    shifted.push_back(b);
    words.push_back(tree_b.word_to(*br));
  }

  PartialIso out;
  out.anchor = x;
  out.certified_radius = rho.certified_radius;
  for (ElementId y : period.core) {
    std::int32_t k = period.orbit_of[y];
    if (k < 0) fail(Errc::NoOrbitRepresentative, "orbit of " + m.id(y) + " has no member in the period");
    if (auto z = apply_word(m, y, words[static_cast<std::size_t>(k)])) out.pairs.emplace_back(y, *z);
  }
  out.normalize();
  for (auto [a, b] : rho.pairs)
    if (auto c = out.image(a); c && *c != b)
      fail(Errc::VerificationFailed, "extension disagrees with rho at " + m.id(a));
  if (auto defect = partial_iso_defect(m, m, out)) fail(Errc::VerificationFailed, "extension: " + *defect);
  return out;
}

IsomorphismSearch periodic_isomorphism(const Structure& m, const Structure& n, const PeriodReport& n_period,
                                       const PeriodicIsoOptions& options) {
  require_same_language(m.language(), n.language());
  if (m.size() == 0) fail(Errc::WindowExhausted, "empty structure");
  IsomorphismSearch out;
  const std::uint32_t cap = options.radius_cap.value_or(kInfinite);
  auto limit_of = [&](const Structure& s, ElementId e) {
    return s.closed() ? static_cast<std::uint32_t>(s.size()) : s.depth(e);
  };

  if (options.seed) {
    PartialIso cur = *options.seed;
    out.source = cur.anchor;
    out.target_radius = std::min(cap, limit_of(m, cur.anchor));
    if (auto defect = partial_iso_defect(m, n, cur)) fail(Errc::VerificationFailed, "seed: " + *defect);
    while (cur.certified_radius < out.target_radius) {
      const bool room = std::all_of(cur.pairs.begin(), cur.pairs.end(),
                                    [&](const auto& p) { return n.closed() || n.depth(p.second) >= 1; });
      if (!room) {
        out.outcome = SearchOutcome::Inconclusive;
        out.target_radius = cur.certified_radius;
        out.iso = std::move(cur);
        return out;
      }
      cur = extend_partial_iso(m, n, cur);
    }
    out.outcome = SearchOutcome::Found;
    out.iso = std::move(cur);
    return out;
  }

  const ElementId w = deepest(m);
  out.source = w;
  out.target_radius = std::min(cap, limit_of(m, w));
  std::vector<ElementId> candidates = n_period.period;
  std::sort(candidates.begin(), candidates.end(),
            [&](ElementId a, ElementId b) { return n.canonical_rank(a) < n.canonical_rank(b); });
  std::vector<std::uint8_t> alive(candidates.size(), 1);
  out.candidates.resize(candidates.size());
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    out.candidates[k].target = candidates[k];
    out.candidates[k].distance = kInfinite;
    out.candidates[k].reachable_radius = std::min(out.target_radius, limit_of(n, candidates[k]));
  }
  for (std::uint32_t s = 0; s <= out.target_radius; ++s) {
    bool any = false;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      if (!alive[k] || s > out.candidates[k].reachable_radius) continue;
      if (pointed_isos_unchecked(m, w, n, candidates[k], s, 1).empty()) {
        alive[k] = 0;
        out.candidates[k].kill_radius = s;
      } else {
        any = true;
      }
    }
    if (!any) break;
  }

  std::optional<std::size_t> winner;
  bool edge = false;
  std::uint32_t death = 0;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (!alive[k]) {
      death = std::max(death, *out.candidates[k].kill_radius);
    } else if (out.candidates[k].reachable_radius == out.target_radius) {
      if (!winner) winner = k;
    } else {
      edge = true;
    }
  }
  if (winner) {
    auto maps = pointed_isos_unchecked(m, w, n, candidates[*winner], out.target_radius, 1);
    PartialIso f = std::move(maps.front());
    f.anchor = w;
    f.certified_radius = out.target_radius;
    if (auto defect = partial_iso_defect(m, n, f)) fail(Errc::VerificationFailed, "isomorphism: " + *defect);
    out.iso = std::move(f);
    out.outcome = SearchOutcome::Found;
    return out;
  }
  if (edge) {
    out.outcome = SearchOutcome::Inconclusive;
    return out;
  }
  out.outcome = SearchOutcome::Absent;
  for (std::uint32_t h = 0; h <= death; ++h) {
    if (m.max_depth() < h || n.max_depth() < h) break;
    auto cmp = extraction_compare(m, n, h);
    if (!cmp.m_in_n) {
      const auto& e = cmp.missing_in_n.front();
      out.witness = CensusMismatch{h, e.representative, e.signature};
      break;
    }
  }
  return out;
}

}  // namespace lociso
