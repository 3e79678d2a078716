#include "lociso/symmetry.hpp"

#include <algorithm>

#include "lociso/ball.hpp"
#include "lociso/error.hpp"
#include "lociso/parallel.hpp"

namespace lociso {

std::string_view symmetry_verdict_name(SymmetryVerdict v) noexcept {
  switch (v) {
    case SymmetryVerdict::NoneFound: return "none_found";
    case SymmetryVerdict::Found: return "found";
    case SymmetryVerdict::WindowExhausted: return "window_exhausted";
  }
  return "?";
}

namespace {

ElementId deepest_element(const Structure& m) {
  ElementId best = m.canonical_order().front();
  for (ElementId e : m.canonical_order())
    if (m.depth(e) > m.depth(best)) best = e;
  return best;
}

bool is_identity(const PartialIso& f) {
  return std::all_of(f.pairs.begin(), f.pairs.end(), [](const auto& p) { return p.first == p.second; });
}

PartialIso restrict_to(const PartialIso& f, const std::vector<std::uint32_t>& dist_from_anchor, std::uint32_t r) {
  PartialIso g;
  g.anchor = f.anchor;
  g.certified_radius = r;
  for (const auto& p : f.pairs)
    if (dist_from_anchor[p.first] <= r) g.pairs.push_back(p);
  g.normalize();
  return g;
}

struct CandidateWork {
  CandidateOutcome outcome;
  std::vector<Symmetry> found;
};

}  // namespace

SymmetryReport find_symmetries(const Structure& m, std::uint32_t d, std::uint32_t r, const SymmetryOptions& options) {
  if (m.size() == 0) fail(Errc::WindowExhausted, "empty structure");
  SymmetryReport rep;
  rep.anchor = options.anchor ? *options.anchor : deepest_element(m);
  if (rep.anchor >= m.size()) fail(Errc::UnknownElement, "anchor out of range");
  const ElementId x = rep.anchor;
  rep.anchor_depth = m.depth(x);
  rep.tested_radius = r;
  rep.displacement_bound = d;
  if (m.depth(x) < d)
    fail(Errc::WindowExhausted, "anchor " + m.id(x) + " has depth " + std::to_string(m.depth(x)) +
                                    " < displacement bound " + std::to_string(d));
  const bool equational = equational_check(m).equational;
  const std::uint32_t window_cap = m.closed() ? static_cast<std::uint32_t>(std::max<std::size_t>(m.size(), r)) : kInfinite;
  const std::uint32_t ext_cap = std::min(options.extension_limit.value_or(kInfinite), window_cap);

  std::vector<std::uint32_t> dx = distances_from(m, x, std::max(d, r));
  std::vector<ElementId> targets;
  for (ElementId e : m.canonical_order())
    if (dx[e] <= d) {
      // In an equational window a pointed map fixing x is the identity.
      if (e == x && options.exclude_identity && equational) continue;
      targets.push_back(e);
    }

  std::vector<CandidateWork> work(targets.size());
  parallel_chunks(targets.size(), [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const ElementId y = targets[k];
      CandidateWork& w = work[k];
      w.outcome.target = y;
      w.outcome.distance = dx[y];
      const std::uint32_t reach = std::min({r, m.depth(x), m.depth(y)});
      w.outcome.reachable_radius = reach;
      const bool drop_identity = y == x && options.exclude_identity;
      auto admissible = [&](std::uint32_t rho, std::size_t limit) {
        auto maps = pointed_isos_unchecked(m, x, m, y, rho, limit + (drop_identity ? 1 : 0));
        if (drop_identity) std::erase_if(maps, is_identity);
        return maps;
      };
      bool alive = true;
      if (y == x) {
        // Restrictions of a non-identity map may be the identity, so only
        // the reachable radius itself is tested.
        alive = !admissible(reach, 1).empty();
        if (!alive && reach == r) w.outcome.kill_radius = reach;
      } else {
        for (std::uint32_t rho = 0; rho <= reach; ++rho)
          if (admissible(rho, 1).empty()) {
            alive = false;
            w.outcome.kill_radius = rho;
            break;
          }
      }
      if (!alive || reach < r) continue;
      const std::uint32_t limit_radius = std::max(r, std::min({ext_cap, m.depth(x), m.depth(y)}));
      auto maps = admissible(limit_radius, options.maps_per_target);
      std::vector<PartialIso> restricted;
      for (const auto& f : maps) {
        PartialIso g = restrict_to(f, dx, r);
        g.anchor = x;
        if (std::find_if(restricted.begin(), restricted.end(), [&](const PartialIso& h) { return h.pairs == g.pairs; }) ==
            restricted.end())
          restricted.push_back(std::move(g));
      }
      if (restricted.empty()) {
        w.outcome.kill_radius = limit_radius;
        continue;
      }
      std::sort(restricted.begin(), restricted.end(),
                [](const PartialIso& a, const PartialIso& b) { return a.pairs < b.pairs; });
      for (auto& g : restricted) {
        if (auto defect = partial_iso_defect(m, m, g))
          fail(Errc::VerificationFailed, "symmetry " + m.id(x) + " -> " + m.id(y) + ": " + *defect);
        w.found.push_back(Symmetry{x, y, dx[y], limit_radius, std::move(g)});
      }
    }
  });

  bool unresolved = false;
  for (auto& w : work) {
    if (!w.found.empty()) {
      for (auto& s : w.found) rep.found.push_back(std::move(s));
    } else if (!w.outcome.kill_radius) {
      unresolved = true;
    }
    rep.candidates.push_back(w.outcome);
  }
  if (!rep.found.empty()) rep.verdict = SymmetryVerdict::Found;
  else if (unresolved) rep.verdict = SymmetryVerdict::WindowExhausted;
  else rep.verdict = SymmetryVerdict::NoneFound;
  return rep;
}

std::vector<std::size_t> isomorphism_classes(std::span<const Structure* const> family) {
  std::vector<std::size_t> cls(family.size());
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Structure& m = *family[i];
    if (!m.closed()) fail(Errc::NonClosedWindow, "isomorphism classes need closed structures");
    if (m.size() == 0 || !is_connected(m)) fail(Errc::InvalidArgument, "isomorphism classes need connected structures");
    const auto radius = static_cast<std::uint32_t>(m.size());
    const ElementId x = m.canonical_order().front();
    std::optional<std::size_t> match;
    for (std::size_t c = 0; c < reps.size() && !match; ++c) {
      const Structure& n = *family[reps[c]];
      if (n.size() != m.size() || n.tuple_count() != m.tuple_count() || !(n.language() == m.language())) continue;
      for (ElementId y = 0; y < n.size(); ++y)
        if (!pointed_isos_unchecked(m, x, n, y, radius, 1).empty()) {
          match = c;
          break;
        }
    }
    if (!match) {
      match = reps.size();
      reps.push_back(i);
    }
    cls[i] = *match;
  }
  return cls;
}

}  // namespace lociso
