#include "lociso/ball.hpp"

#include <string>

#include "lociso/error.hpp"

namespace lociso {

void BallWorkspace::reset(std::size_t n) {
  stamp_.assign(n, 0);
  slot_.assign(n, 0);
  epoch_ = 0;
}

void BallWorkspace::collect(const Structure& m, ElementId c, std::uint32_t radius) {
  if (stamp_.size() != m.size()) reset(m.size());
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  members_.clear();
  dist_.clear();
  members_.push_back(c);
  dist_.push_back(0);
  stamp_[c] = epoch_;
  slot_[c] = 0;
  for (std::size_t head = 0; head < members_.size(); ++head) {
    ElementId u = members_[head];
    std::uint32_t d = dist_[head];
    if (d == radius) continue;
    for (ElementId v : m.neighbors(u)) {
      if (stamp_[v] == epoch_) continue;
      stamp_[v] = epoch_;
      slot_[v] = static_cast<std::uint32_t>(members_.size());
      members_.push_back(v);
      dist_.push_back(d + 1);
    }
  }
}

std::vector<std::uint32_t> distances_from(const Structure& m, ElementId source, std::uint32_t limit) {
  ElementId s[1] = {source};
  return distances_from(m, std::span<const ElementId>(s, 1), limit);
}

std::vector<std::uint32_t> distances_from(const Structure& m, std::span<const ElementId> sources,
                                          std::uint32_t limit) {
  std::vector<std::uint32_t> dist(m.size(), kInfinite);
  std::vector<ElementId> queue;
  for (ElementId s : sources)
    if (dist[s] != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    ElementId u = queue[head];
    if (dist[u] >= limit) continue;
    for (ElementId v : m.neighbors(u))
      if (dist[v] == kInfinite) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
  }
  return dist;
}

std::uint32_t distance(const Structure& m, ElementId a, ElementId b) {
  if (a == b) return 0;
  std::vector<std::uint32_t> dist(m.size(), kInfinite);
  std::vector<ElementId> queue{a};
  dist[a] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    ElementId u = queue[head];
    for (ElementId v : m.neighbors(u))
      if (dist[v] == kInfinite) {
        dist[v] = dist[u] + 1;
        if (v == b) return dist[v];
        queue.push_back(v);
      }
  }
  return kInfinite;
}

namespace {

Structure extract(const Structure& m, const BallWorkspace& ws, bool sphere_frontier, std::uint32_t radius) {
  StructureBuilder b(m.language());
  const auto& members = ws.members();
  for (ElementId e : members) b.add_element(m.id(e));
  std::vector<ElementId> args;
  for (std::uint32_t i = 0; i < members.size(); ++i) {
    for (const Incidence& inc : m.incidences(members[i])) {
      if (inc.position != 0) continue;
      args.clear();
      bool inside = true;
      for (ElementId a : m.tuple_args(inc.tuple)) {
        std::uint32_t l = ws.local(a);
        if (l == kInfinite) {
          inside = false;
          break;
        }
        args.push_back(l);
      }
      if (inside) b.add_tuple(m.tuple_symbol(inc.tuple), args);
    }
    if (sphere_frontier && (ws.distances()[i] == radius || m.is_frontier(members[i]))) b.mark_frontier(i);
  }
  return std::move(b).build();
}

}  // namespace

PointedBall truncated_ball(const Structure& m, ElementId u, std::uint32_t radius) {
  BallWorkspace ws(m.size());
  ws.collect(m, u, radius);
  return PointedBall{extract(m, ws, false, radius), 0, radius};
}

PointedBall ball(const Structure& m, ElementId u, std::uint32_t radius) {
  if (m.depth(u) < radius)
    fail(Errc::UnfaithfulRadius, "B(" + m.id(u) + ", " + std::to_string(radius) + ") needs depth " +
                                     std::to_string(radius) + " but depth is " + std::to_string(m.depth(u)));
  return truncated_ball(m, u, radius);
}

Structure ball_window(const Structure& m, ElementId u, std::uint32_t radius) {
  BallWorkspace ws(m.size());
  ws.collect(m, u, radius);
  return extract(m, ws, true, radius);
}

}  // namespace lociso
