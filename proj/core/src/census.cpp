#include "lociso/census.hpp"

#include <algorithm>
#include <unordered_map>

#include "detail/local_ball.hpp"
#include "detail/workspace_cache.hpp"
#include "lociso/ball.hpp"
#include "lociso/error.hpp"
#include "lociso/parallel.hpp"

namespace lociso {

std::string_view verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::HoldsUpToBounds: return "holds_up_to_bounds";
    case Verdict::FailsWithWitness: return "fails_with_witness";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::optional<std::size_t> CensusTable::find(const BallSignature& s) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), s,
                             [](const CensusEntry& e, const BallSignature& x) { return e.signature < x; });
  if (it == entries.end() || it->signature != s) return std::nullopt;
  return static_cast<std::size_t>(it - entries.begin());
}

CensusTable census(const Structure& m, std::uint32_t h) {
  CensusTable t;
  t.h = h;
  t.class_of.assign(m.size(), -1);
  std::vector<ElementId> faithful;
  for (ElementId e = 0; e < m.size(); ++e)
    if (m.depth(e) >= h) faithful.push_back(e);
  if (faithful.empty())
    fail(Errc::NoFaithfulElements, "no element has depth >= " + std::to_string(h));
  t.faithful_count = faithful.size();

  // Codes are interned block by block so that only one code per class is kept.
  std::unordered_map<std::string, std::int32_t> intern;
  std::vector<CensusEntry> provisional;
  constexpr std::size_t kBlock = 4096;
  std::vector<std::string> codes(kBlock);
  for (std::size_t base = 0; base < faithful.size(); base += kBlock) {
    const std::size_t len = std::min(kBlock, faithful.size() - base);
    parallel_chunks(len, [&](std::size_t, std::size_t begin, std::size_t end) {
      detail::LocalBall local;
      detail::CanonicalCoder coder;
      BallWorkspace& ws = detail::workspace_for(m);
      for (std::size_t i = begin; i < end; ++i) {
        detail::extract_local(m, faithful[base + i], h, ws, local);
        coder.code(local, codes[i]);
      }
    });
    for (std::size_t i = 0; i < len; ++i) {
      ElementId e = faithful[base + i];
      auto [it, fresh] = intern.emplace(codes[i], static_cast<std::int32_t>(provisional.size()));
      if (fresh) provisional.push_back(CensusEntry{BallSignature{codes[i]}, e, 0});
      CensusEntry& entry = provisional[it->second];
      ++entry.multiplicity;
      if (m.canonical_rank(e) < m.canonical_rank(entry.representative)) entry.representative = e;
      t.class_of[e] = it->second;
    }
  }
  std::vector<std::int32_t> order(provisional.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<std::int32_t>(i);
  std::sort(order.begin(), order.end(),
            [&](std::int32_t a, std::int32_t b) { return provisional[a].signature < provisional[b].signature; });
  std::vector<std::int32_t> remap(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) remap[order[i]] = static_cast<std::int32_t>(i);
  t.entries.reserve(order.size());
  for (auto i : order) t.entries.push_back(std::move(provisional[i]));
  for (auto& c : t.class_of)
    if (c >= 0) c = remap[c];
  return t;
}

std::uint32_t default_lip_bound(const Structure& m, std::uint32_t h) {
  if (m.max_depth() == kInfinite) return static_cast<std::uint32_t>(m.size());
  if (m.max_depth() <= h) return 0;
  return (m.max_depth() - h) / 3;
}

std::optional<std::uint32_t> recurrence_radius(const Structure& m, const CensusTable& table, std::size_t entry,
                                               std::uint32_t k_bound, std::optional<ElementId>* witness) {
  std::vector<ElementId> members;
  for (ElementId e = 0; e < m.size(); ++e)
    if (table.class_of[e] == static_cast<std::int32_t>(entry)) members.push_back(e);
  const std::uint32_t cap = k_bound == kInfinite ? kInfinite : k_bound + 1;
  auto dist = distances_from(m, members, cap);
  // v is a violator at k iff k <= depth(v)-h and k < dist(v,C); hence
  // k_C = max_v min(depth(v)-h+1, dist(v,C)) over v with depth(v) >= h.
  std::uint32_t k = 0;
  std::optional<ElementId> far;
  const std::uint32_t h = table.h;
  for (ElementId v = 0; v < m.size(); ++v) {
    std::uint32_t depth = m.depth(v);
    if (depth < h) continue;
    std::uint32_t slack = depth == kInfinite ? kInfinite : depth - h + 1;
    std::uint32_t need = std::min(slack, dist[v]);
    k = std::max(k, need);
    if (need > k_bound && (!far || m.canonical_rank(v) < m.canonical_rank(*far))) far = v;
  }
  if (witness) *witness = far;
  if (far) return std::nullopt;
  return k;
}

LipReport lip_check(const Structure& m, const CensusTable& table, std::optional<std::uint32_t> k_bound) {
  LipReport r;
  r.h = table.h;
  r.k_bound = k_bound ? *k_bound : default_lip_bound(m, table.h);
  r.class_count = table.entries.size();
  bool all_within = true;
  std::uint32_t k = 0;
  for (std::size_t c = 0; c < table.entries.size(); ++c) {
    LipClass lc;
    lc.entry = c;
    lc.representative = table.entries[c].representative;
    std::optional<ElementId> witness;
    auto kc = recurrence_radius(m, table, c, r.k_bound, &witness);
    if (kc) {
      lc.k = *kc;
      k = std::max(k, *kc);
    } else {
      lc.within_bound = false;
      lc.k = r.k_bound + 1;
      lc.witness = witness;
      all_within = false;
    }
    r.classes.push_back(lc);
  }
  if (all_within) {
    r.verdict = Verdict::HoldsUpToBounds;
    r.k = k;
  } else {
    if (r.k_bound == 0)
      fail(Errc::WindowExhausted, "window has no slack beyond h=" + std::to_string(r.h) + " to certify recurrence");
    r.verdict = Verdict::FailsWithWitness;
  }
  return r;
}

LipReport lip_check(const Structure& m, std::uint32_t h, std::optional<std::uint32_t> k_bound) {
  return lip_check(m, census(m, h), k_bound);
}

CompareReport extraction_compare(const CensusTable& cm, const CensusTable& cn) {
  if (cm.h != cn.h) fail(Errc::InvalidArgument, "census tables use different radii");
  CompareReport r;
  r.h = cm.h;
  std::size_t i = 0, j = 0;
  const auto& a = cm.entries;
  const auto& b = cn.entries;
  auto row = [&](const BallSignature& s, std::size_t x, std::size_t y) {
    r.rows.push_back(CompareRow{s, x, y, cm.faithful_count ? double(x) / double(cm.faithful_count) : 0.0,
                                cn.faithful_count ? double(y) / double(cn.faithful_count) : 0.0});
  };
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].signature < b[j].signature)) {
      r.missing_in_n.push_back(a[i]);
      row(a[i].signature, a[i].multiplicity, 0);
      ++i;
    } else if (i == a.size() || b[j].signature < a[i].signature) {
      r.missing_in_m.push_back(b[j]);
      row(b[j].signature, 0, b[j].multiplicity);
      ++j;
    } else {
      row(a[i].signature, a[i].multiplicity, b[j].multiplicity);
      ++i;
      ++j;
    }
  }
  r.m_in_n = r.missing_in_n.empty();
  r.n_in_m = r.missing_in_m.empty();
  return r;
}

CompareReport extraction_compare(const Structure& m, const Structure& n, std::uint32_t h) {
  require_same_language(m.language(), n.language());
  return extraction_compare(census(m, h), census(n, h));
}

LocalRule rule_from_census(const CensusTable& table) {
  LocalRule r;
  r.radius = table.h;
  for (const auto& e : table.entries) r.allowed.push_back(e.signature);
  return r;
}

std::optional<ElementId> rule_violation(const Structure& m, const LocalRule& rule) {
  for (ElementId e : m.canonical_order()) {
    if (m.depth(e) < rule.radius) continue;
    auto s = ball_signature(m, e, rule.radius);
    if (!std::binary_search(rule.allowed.begin(), rule.allowed.end(), s)) return e;
  }
  return std::nullopt;
}

}  // namespace lociso
