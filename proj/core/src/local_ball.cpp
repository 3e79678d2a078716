#include "detail/local_ball.hpp"

#include <algorithm>

namespace lociso::detail {

bool LocalBall::has_tuple(SymbolId s, std::span<const std::uint32_t> a) const {
  if (a.empty()) return false;
  for (const Incidence& i : incidences(a[0])) {
    if (i.position != 0 || tsym[i.tuple] != s) continue;
    auto have = args(i.tuple);
    if (std::equal(have.begin(), have.end(), a.begin(), a.end())) return true;
  }
  return false;
}

void build_incidence(LocalBall& out);
void renumber_by_internal_distance(LocalBall& out);

void extract_local(const Structure& m, ElementId center, std::uint32_t radius, BallWorkspace& ws,
                   LocalBall& out) {
  ws.collect(m, center, radius);
  const auto& members = ws.members();
  out.n = static_cast<std::uint32_t>(members.size());
  out.global.assign(members.begin(), members.end());
  out.dist.assign(ws.distances().begin(), ws.distances().end());
  out.tsym.clear();
  out.toff.assign(1, 0);
  out.targs.clear();
  for (std::uint32_t i = 0; i < out.n; ++i) {
    for (const Incidence& inc : m.incidences(members[i])) {
      if (inc.position != 0) continue;
      auto a = m.tuple_args(inc.tuple);
      std::size_t mark = out.targs.size();
      bool inside = true;
      for (ElementId g : a) {
        std::uint32_t l = ws.local(g);
        if (l == kInfinite) {
          inside = false;
          break;
        }
        out.targs.push_back(l);
      }
      if (!inside) {
        out.targs.resize(mark);
        continue;
      }
      out.tsym.push_back(m.tuple_symbol(inc.tuple));
      out.toff.push_back(static_cast<std::uint32_t>(out.targs.size()));
    }
  }
  build_incidence(out);

  // With tuples of arity > 2 the induced ball can be internally farther
  // apart than in the parent; distances must be those of the ball itself.
  std::uint32_t max_arity = 0;
  for (const Symbol& s : m.language().symbols()) max_arity = std::max(max_arity, s.arity);
  if (max_arity > 2) renumber_by_internal_distance(out);
}

void build_incidence(LocalBall& out) {
  out.ioff.assign(out.n + 1, 0);
  for (std::uint32_t a : out.targs) ++out.ioff[a + 1];
  for (std::uint32_t i = 0; i < out.n; ++i) out.ioff[i + 1] += out.ioff[i];
  out.inc.assign(out.targs.size(), Incidence{0, 0});
  std::vector<std::uint32_t> fill(out.ioff.begin(), out.ioff.end() - 1);
  for (std::uint32_t t = 0; t < out.tsym.size(); ++t)
    for (std::uint32_t p = out.toff[t]; p < out.toff[t + 1]; ++p)
      out.inc[fill[out.targs[p]]++] = Incidence{t, p - out.toff[t]};
}

void renumber_by_internal_distance(LocalBall& out) {
  const std::uint32_t n = out.n;
  std::vector<std::uint32_t> d(n, kInfinite), order;
  order.reserve(n);
  d[0] = 0;
  order.push_back(0);
  for (std::size_t h = 0; h < order.size(); ++h) {
    std::uint32_t u = order[h];
    for (const Incidence& i : out.incidences(u))
      for (std::uint32_t v : out.args(i.tuple))
        if (d[v] == kInfinite) {
          d[v] = d[u] + 1;
          order.push_back(v);
        }
  }
  // Unreachable elements go last with a common sentinel distance.
  for (std::uint32_t v = 0; v < n; ++v)
    if (d[v] == kInfinite) {
      d[v] = n + 1;
      order.push_back(v);
    }
  std::vector<std::uint32_t> pos(n);
  for (std::uint32_t i = 0; i < n; ++i) pos[order[i]] = i;
  std::vector<ElementId> global(n);
  std::vector<std::uint32_t> dist(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    global[i] = out.global[order[i]];
    dist[i] = d[order[i]];
  }
  out.global = std::move(global);
  out.dist = std::move(dist);
  for (auto& a : out.targs) a = pos[a];
  build_incidence(out);
}

void append_varint(std::string& out, std::uint32_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

}  // namespace lociso::detail
