#include "lociso/rigidity.hpp"

#include <algorithm>
#include <map>

#include "lociso/ball.hpp"
#include "lociso/error.hpp"

namespace lociso {

std::string_view rigidity_verdict_name(RigidityVerdict v) noexcept {
  switch (v) {
    case RigidityVerdict::HoldsUpToBounds: return "characterization_holds_up_to_bounds";
    case RigidityVerdict::PropertyPDetected: return "property_P_detected";
    case RigidityVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::optional<std::uint32_t> separation_radius(const Structure& m, std::span<const ElementId> elements,
                                               std::uint32_t limit, PairWitness* stuck) {
  std::vector<std::vector<ElementId>> classes;
  if (elements.size() >= 2) classes.emplace_back(elements.begin(), elements.end());
  auto note_stuck = [&](std::uint32_t s) {
    if (stuck && !classes.empty()) *stuck = PairWitness{classes.front()[0], classes.front()[1], s};
  };
  for (std::uint32_t rho = 0;; ++rho) {
    if (classes.empty()) return rho;
    if (rho > limit) {
      note_stuck(limit);
      return std::nullopt;
    }
    std::vector<ElementId> active;
    for (const auto& c : classes) active.insert(active.end(), c.begin(), c.end());
    for (ElementId e : active)
      if (m.depth(e) < rho) {
        note_stuck(rho - 1);
        return std::nullopt;
      }
    auto sigs = ball_signatures(m, active, rho);
    std::map<ElementId, std::size_t> slot;
    for (std::size_t k = 0; k < active.size(); ++k) slot[active[k]] = k;
    std::vector<std::vector<ElementId>> next;
    for (auto& c : classes) {
      std::stable_sort(c.begin(), c.end(), [&](ElementId a, ElementId b) { return sigs[slot[a]] < sigs[slot[b]]; });
      std::size_t i = 0;
      while (i < c.size()) {
        std::size_t j = i + 1;
        while (j < c.size() && sigs[slot[c[j]]] == sigs[slot[c[i]]]) ++j;
        if (j - i >= 2) next.emplace_back(c.begin() + static_cast<std::ptrdiff_t>(i), c.begin() + static_cast<std::ptrdiff_t>(j));
        i = j;
      }
    }
    classes = std::move(next);
    if (classes.empty()) return rho;
  }
}

namespace {

std::vector<ElementId> ball_members(const Structure& m, ElementId x, std::uint32_t r) {
  BallWorkspace ws(m.size());
  ws.collect(m, x, r);
  std::vector<ElementId> out = ws.members();
  std::sort(out.begin(), out.end(), [&](ElementId a, ElementId b) { return m.canonical_rank(a) < m.canonical_rank(b); });
  return out;
}

}  // namespace

QReport property_Q_check(const Structure& m, std::uint32_t r, std::uint32_t s) {
  QReport q;
  q.r = r;
  q.s = s;
  std::vector<ElementId> anchors;
  for (ElementId e : m.canonical_order())
    if (m.depth(e) >= r + s) anchors.push_back(e);
  q.anchors = anchors.size();
  if (anchors.empty())
    fail(Errc::WindowExhausted, "no element of depth >= " + std::to_string(r + s) + " for property (Q)");
  const CensusTable table = census(m, s);
  BallWorkspace ws(m.size());
  std::vector<std::pair<std::int32_t, ElementId>> cls;
  q.holds = true;
  for (ElementId x : anchors) {
    ws.collect(m, x, r);
    cls.clear();
    for (ElementId e : ws.members()) cls.emplace_back(table.class_of[e], e);
    std::sort(cls.begin(), cls.end(), [&](const auto& a, const auto& b) {
      return a.first != b.first ? a.first < b.first : m.canonical_rank(a.second) < m.canonical_rank(b.second);
    });
    std::optional<PairWitness> pair;
    for (std::size_t k = 1; k < cls.size() && !pair; ++k)
      if (cls[k].first == cls[k - 1].first) pair = PairWitness{cls[k - 1].second, cls[k].second, s};
    if (x == anchors.front()) q.first_pair = pair;
    if (!pair) {
      q.holds = false;
      q.witness_anchor = x;
      break;
    }
  }
  return q;
}

RigidityReport rigidity_characterization(const Structure& m, std::span<const std::uint32_t> radii, std::uint32_t s,
                                         const RigidityOptions& options) {
  if (radii.empty()) fail(Errc::InvalidArgument, "no radii to test");
  RigidityReport rep;
  rep.radii.assign(radii.begin(), radii.end());
  rep.s = s;
  rep.lip_h = *std::max_element(radii.begin(), radii.end());
  if (options.check_lip) {
    LipReport lip = lip_check(m, rep.lip_h, options.lip_bound);
    if (lip.verdict != Verdict::HoldsUpToBounds)
      fail(Errc::HypothesisUnverified, "local isomorphism property not certified at h=" + std::to_string(rep.lip_h) +
                                           " with k <= " + std::to_string(lip.k_bound));
    rep.lip_k = lip.k;
  }

  std::vector<ElementId> anchors(m.canonical_order().begin(), m.canonical_order().end());
  std::stable_sort(anchors.begin(), anchors.end(), [&](ElementId a, ElementId b) { return m.depth(a) > m.depth(b); });

  bool all = true, p_detected = false;
  for (std::uint32_t r : radii) {
    RadiusResult res;
    res.r = r;
    for (ElementId x : anchors) {
      if (res.anchors_tried >= options.anchor_limit || m.depth(x) < r) break;
      ++res.anchors_tried;
      auto members = ball_members(m, x, r);
      if (auto sep = separation_radius(m, members, s)) {
        res.witness = x;
        res.certified_s = *sep;
        break;
      }
    }
    if (!res.witness) {
      try {
        QReport q = property_Q_check(m, r, s);
        if (!q.holds) {
          auto members = ball_members(m, *q.witness_anchor, r);
          res.witness = q.witness_anchor;
          res.certified_s = separation_radius(m, members, s);
          if (!res.certified_s) fail(Errc::VerificationFailed, "census witness anchor fails the pair scan");
        } else {
          res.q_holds = true;
          res.violation = q.first_pair;
          res.note = "property (Q) holds at every anchor";
        }
      } catch (const Error& e) {
        if (e.code() != Errc::WindowExhausted) throw;
        res.note = e.what();
      }
    }
    all = all && res.witness.has_value();
    p_detected = p_detected || res.q_holds;
    rep.results.push_back(std::move(res));
  }
  rep.verdict = all ? RigidityVerdict::HoldsUpToBounds
                    : (p_detected ? RigidityVerdict::PropertyPDetected : RigidityVerdict::Inconclusive);
  return rep;
}

namespace {

TraceStep make_step(const Structure& m, ElementId x, std::uint32_t r, std::uint32_t s, ElementId chosen) {
  TraceStep st;
  st.anchor = x;
  st.r = r;
  st.s = s;
  st.chosen_anchor = chosen;
  st.window = ball_window(m, x, r + s);
  st.window_center = *st.window.find(m.id(x));
  return st;
}

// Closest element of B(x, r) whose class in `table` is `entry`, ties by
// canonical order.
std::optional<ElementId> closest_copy(const Structure& m, const CensusTable& table, std::size_t entry, ElementId x,
                                      std::uint32_t r) {
  BallWorkspace ws(m.size());
  ws.collect(m, x, r);
  std::optional<ElementId> best;
  std::uint32_t best_d = kInfinite;
  for (std::size_t k = 0; k < ws.members().size(); ++k) {
    ElementId e = ws.members()[k];
    if (table.class_of[e] != static_cast<std::int32_t>(entry)) continue;
    std::uint32_t d = ws.distances()[k];
    if (d < best_d || (d == best_d && m.canonical_rank(e) < m.canonical_rank(*best))) {
      best = e;
      best_d = d;
    }
  }
  return best;
}

}  // namespace

RigidLimitTrace rigid_limit(const Structure& m, std::size_t steps, ElementId seed, const RigidLimitOptions& options) {
  if (seed >= m.size()) fail(Errc::UnknownElement, "seed out of range");
  RigidLimitTrace trace;
  trace.steps.push_back(make_step(m, seed, 0, 0, seed));
  for (std::size_t n = 0; n < steps; ++n) {
    const TraceStep& cur = trace.steps.back();
    const std::uint32_t h = cur.r + cur.s;
    // (a) a radius at which every ball carries a copy of the current one.
    const CensusTable table = census(m, h);
    const std::int32_t entry = table.class_of[cur.anchor];
    if (entry < 0) fail(Errc::VerificationFailed, "step ball is not faithful");
    const std::uint32_t kb = options.lip_bound.value_or(default_lip_bound(m, h));
    auto k = recurrence_radius(m, table, static_cast<std::size_t>(entry), kb);
    if (!k) {
      trace.truncated = "step " + std::to_string(n + 1) + ": recurrence of the h=" + std::to_string(h) +
                        " class not certified within k <= " + std::to_string(kb);
      break;
    }
    const std::uint32_t r = std::max(cur.r + 1, *k);
    const std::uint32_t s_cap = options.s_cap.value_or(std::max(cur.s + 1, 4 * r + 16));
    const std::uint32_t need = std::max(2 * r + s_cap, r + h);

    // (b) an anchor whose 2r-ball has no s-equivalent pair, least s first.
    struct Choice {
      std::uint32_t s;
      ElementId x;
      ElementId next;
    };
    std::optional<Choice> best;
    auto consider = [&](ElementId x) {
      auto members = ball_members(m, x, 2 * r);
      auto sep = separation_radius(m, members, s_cap);
      if (!sep) return;
      // (c) the copy of the current ball closest to x.
      auto next = closest_copy(m, table, static_cast<std::size_t>(entry), x, r);
      if (!next) return;
      if (!best || *sep < best->s || (*sep == best->s && m.canonical_rank(x) < m.canonical_rank(best->x)))
        best = Choice{*sep, x, *next};
    };
    std::size_t tried = 0;
    for (ElementId x : m.canonical_order()) {
      if (tried >= options.anchor_limit) break;
      if (m.depth(x) < need) continue;
      ++tried;
      consider(x);
    }
    if (tried == 0) {
      trace.truncated = "step " + std::to_string(n + 1) + ": no anchor of depth >= " + std::to_string(need);
      break;
    }
    if (!best) {
      QReport q;
      try {
        q = property_Q_check(m, 2 * r, s_cap);
      } catch (const Error& e) {
        if (e.code() != Errc::WindowExhausted) throw;
        trace.truncated = "step " + std::to_string(n + 1) + ": " + e.what();
        break;
      }
      if (q.holds)
        fail(Errc::CharacterizationFails, "step " + std::to_string(n + 1) + ": every anchor has an s-equivalent pair " +
                                              "within 2r=" + std::to_string(2 * r) + " at s=" + std::to_string(s_cap));
      consider(*q.witness_anchor);
      if (!best) {
        trace.truncated = "step " + std::to_string(n + 1) + ": no copy of the step ball near the census witness";
        break;
      }
    }
    const std::uint32_t s_next = std::max(cur.s + 1, best->s);
    auto theta = pointed_iso(m, cur.anchor, m, best->next, h);
    if (!theta) fail(Errc::VerificationFailed, "no isomorphism onto the chosen copy");
    theta->anchor = cur.anchor;
    theta->certified_radius = h;
    trace.steps.back().theta = std::move(*theta);
    if (m.depth(best->next) < r + s_next) {
      trace.truncated = "step " + std::to_string(n + 1) + ": next window not faithful";
      break;
    }
    trace.steps.push_back(make_step(m, best->next, r, s_next, best->x));
  }
  return trace;
}

StepCheck verify_trace_step(const Structure& m, const TraceStep& step) {
  StepCheck out;
  const Structure& w = step.window;
  try {
    auto cmp = extraction_compare(w, m, step.r);
    out.classes_present = cmp.m_in_n;
    if (!cmp.m_in_n) out.detail = "window class absent from M at h=" + std::to_string(step.r);
  } catch (const Error& e) {
    out.detail = e.what();
  }
  auto dist = distances_from(w, step.window_center, step.r);
  std::vector<ElementId> inner;
  for (ElementId e : w.canonical_order())
    if (dist[e] <= step.r) inner.push_back(e);
  PairWitness stuck;
  out.no_equivalent_pair = separation_radius(w, inner, step.s, &stuck).has_value();
  if (!out.no_equivalent_pair) {
    out.pair = stuck;
    if (out.detail.empty()) out.detail = "equivalent pair inside B(x_n, r_n)";
  }
  return out;
}

}  // namespace lociso
