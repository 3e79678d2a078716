#include "lociso/iso.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_map>

#include "detail/local_ball.hpp"
#include "detail/workspace_cache.hpp"
#include "lociso/error.hpp"
#include "lociso/parallel.hpp"

namespace lociso {

namespace detail {

BallWorkspace& workspace_for(const Structure& m) {
  thread_local BallWorkspace slots[2];
  thread_local std::size_t sizes[2] = {static_cast<std::size_t>(-1), static_cast<std::size_t>(-1)};
  thread_local int last = 0;
  for (int i = 0; i < 2; ++i)
    if (sizes[i] == m.size()) {
      last = i;
      return slots[i];
    }
  int victim = 1 - last;
  slots[victim].reset(m.size());
  sizes[victim] = m.size();
  last = victim;
  return slots[victim];
}

}  // namespace detail

std::optional<ElementId> PartialIso::image(ElementId source) const {
  auto it = std::lower_bound(pairs.begin(), pairs.end(), source,
                             [](const auto& p, ElementId s) { return p.first < s; });
  if (it == pairs.end() || it->first != source) return std::nullopt;
  return it->second;
}

std::optional<ElementId> PartialIso::preimage(ElementId target) const {
  for (const auto& p : pairs)
    if (p.second == target) return p.first;
  return std::nullopt;
}

void PartialIso::normalize() { std::sort(pairs.begin(), pairs.end()); }

std::optional<std::string> partial_iso_defect(const Structure& src, const Structure& dst, const PartialIso& iso) {
  require_same_language(src.language(), dst.language());
  std::unordered_map<ElementId, ElementId> fwd, back;
  fwd.reserve(iso.pairs.size() * 2);
  back.reserve(iso.pairs.size() * 2);
  for (auto [s, t] : iso.pairs) {
    if (s >= src.size() || t >= dst.size()) return "pair mentions an element outside the structures";
    if (!fwd.emplace(s, t).second) return "source element " + src.id(s) + " mapped twice";
    if (!back.emplace(t, s).second) return "not injective at target " + dst.id(t);
  }
  std::vector<ElementId> img;
  for (auto [s, t] : iso.pairs) {
    for (const Incidence& inc : src.incidences(s)) {
      if (inc.position != 0) continue;
      img.clear();
      bool all = true;
      for (ElementId a : src.tuple_args(inc.tuple)) {
        auto it = fwd.find(a);
        if (it == fwd.end()) {
          all = false;
          break;
        }
        img.push_back(it->second);
      }
      if (all && !dst.has_tuple(src.tuple_symbol(inc.tuple), img))
        return "tuple " + src.language()[src.tuple_symbol(inc.tuple)].name + " at " + src.id(s) +
               " has no image";
    }
    for (const Incidence& inc : dst.incidences(t)) {
      if (inc.position != 0) continue;
      img.clear();
      bool all = true;
      for (ElementId a : dst.tuple_args(inc.tuple)) {
        auto it = back.find(a);
        if (it == back.end()) {
          all = false;
          break;
        }
        img.push_back(it->second);
      }
      if (all && !src.has_tuple(dst.tuple_symbol(inc.tuple), img))
        return "tuple " + dst.language()[dst.tuple_symbol(inc.tuple)].name + " at " + dst.id(t) +
               " has no preimage";
    }
  }
  return std::nullopt;
}

namespace {

using detail::LocalBall;

std::vector<std::uint64_t> profiles(const LocalBall& b) {
  std::vector<std::uint64_t> out(b.n);
  std::vector<std::uint64_t> items;
  for (std::uint32_t v = 0; v < b.n; ++v) {
    items.clear();
    for (const Incidence& i : b.incidences(v))
      items.push_back((static_cast<std::uint64_t>(b.tsym[i.tuple]) << 32) | i.position);
    std::sort(items.begin(), items.end());
    std::uint64_t h = 1469598103934665603ull ^ b.dist[v];
    for (auto x : items) h = (h ^ x) * 1099511628211ull + (h >> 29);
    out[v] = h;
  }
  return out;
}

// Backtracking over A's BFS order. Each non-center element is placed next to
// the image of its BFS parent, and every tuple whose arguments are all
// placed is checked in both directions.
class IsoSearch {
 public:
  IsoSearch(const LocalBall& a, const LocalBall& b) : A(a), B(b) {}

  template <class Emit>
  void run(Emit&& emit) {
    if (A.n != B.n || A.tuple_count() != B.tuple_count() || A.n == 0) return;
    const std::uint32_t n = A.n;
    pa_ = profiles(A);
    pb_ = profiles(B);
    {
      auto x = pa_, y = pb_;
      std::sort(x.begin(), x.end());
      std::sort(y.begin(), y.end());
      if (x != y) return;
    }
    parent_.assign(n, kInfinite);
    for (std::uint32_t v = 1; v < n; ++v)
      for (const Incidence& i : A.incidences(v)) {
        for (std::uint32_t u : A.args(i.tuple))
          if (A.dist[u] + 1 == A.dist[v]) {
            parent_[v] = u;
            break;
          }
        if (parent_[v] != kInfinite) break;
      }
    f_.assign(n, kInfinite);
    finv_.assign(n, kInfinite);
    seen_.assign(n, 0);
    stamp_ = 0;
    pool_.clear();
    start_.assign(n + 1, 0);
    cursor_.assign(n, 0);

    std::uint32_t level = 0;
    candidates(level);
    while (true) {
      if (f_[level] != kInfinite) {
        finv_[f_[level]] = kInfinite;
        f_[level] = kInfinite;
      }
      if (cursor_[level] < start_[level + 1]) {
        std::uint32_t b = pool_[cursor_[level]++];
        if (finv_[b] != kInfinite || !consistent(level, b)) continue;
        f_[level] = b;
        finv_[b] = level;
        if (level + 1 == n) {
          if (!emit(f_)) return;
          continue;
        }
        ++level;
        candidates(level);
      } else {
        if (level == 0) return;
        --level;
        pool_.resize(start_[level + 1]);
      }
    }
  }

 private:
  void candidates(std::uint32_t level) {
    start_[level] = static_cast<std::uint32_t>(pool_.size());
    if (level == 0) {
      if (pa_[0] == pb_[0]) pool_.push_back(0);
    } else {
      std::uint32_t p = parent_[level];
      if (p == kInfinite) {
        for (std::uint32_t c = 0; c < B.n; ++c)
          if (pb_[c] == pa_[level] && finv_[c] == kInfinite) pool_.push_back(c);
      } else if (f_[p] != kInfinite) {
        if (++stamp_ == 0) {
          std::fill(seen_.begin(), seen_.end(), 0);
          stamp_ = 1;
        }
        for (const Incidence& i : B.incidences(f_[p]))
          for (std::uint32_t c : B.args(i.tuple))
            if (seen_[c] != stamp_) {
              seen_[c] = stamp_;
              if (pb_[c] == pa_[level] && finv_[c] == kInfinite) pool_.push_back(c);
            }
      }
    }
    start_[level + 1] = static_cast<std::uint32_t>(pool_.size());
    cursor_[level] = start_[level];
  }

  bool consistent(std::uint32_t a, std::uint32_t b) {
    for (const Incidence& i : A.incidences(a)) {
      buf_.clear();
      bool all = true;
      for (std::uint32_t x : A.args(i.tuple)) {
        std::uint32_t y = x == a ? b : f_[x];
        if (y == kInfinite) {
          all = false;
          break;
        }
        buf_.push_back(y);
      }
      if (all && !B.has_tuple(A.tsym[i.tuple], buf_)) return false;
    }
    for (const Incidence& i : B.incidences(b)) {
      buf_.clear();
      bool all = true;
      for (std::uint32_t y : B.args(i.tuple)) {
        std::uint32_t x = y == b ? a : finv_[y];
        if (x == kInfinite) {
          all = false;
          break;
        }
        buf_.push_back(x);
      }
      if (all && !A.has_tuple(B.tsym[i.tuple], buf_)) return false;
    }
    return true;
  }

  const LocalBall& A;
  const LocalBall& B;
  std::vector<std::uint64_t> pa_, pb_;
  std::vector<std::uint32_t> parent_, f_, finv_, seen_, pool_, start_, cursor_, buf_;
  std::uint32_t stamp_ = 0;
};

PartialIso to_partial_iso(const LocalBall& a, const LocalBall& b, const std::vector<std::uint32_t>& f,
                          std::uint32_t radius) {
  PartialIso iso;
  iso.anchor = a.global[0];
  iso.certified_radius = radius;
  iso.pairs.reserve(a.n);
  for (std::uint32_t v = 0; v < a.n; ++v) iso.pairs.emplace_back(a.global[v], b.global[f[v]]);
  iso.normalize();
  return iso;
}

void require_faithful(const Structure& m, ElementId x, std::uint32_t radius) {
  if (m.depth(x) < radius)
    fail(Errc::UnfaithfulRadius, "B(" + m.id(x) + ", " + std::to_string(radius) + ") is not faithful (depth " +
                                     std::to_string(m.depth(x)) + ")");
}

}  // namespace

std::vector<PartialIso> pointed_isos_unchecked(const Structure& m, ElementId x, const Structure& n, ElementId y,
                                               std::uint32_t radius, std::size_t limit) {
  require_same_language(m.language(), n.language());
  LocalBall a, b;
  detail::extract_local(m, x, radius, detail::workspace_for(m), a);
  detail::extract_local(n, y, radius, detail::workspace_for(n), b);
  std::vector<PartialIso> out;
  if (limit == 0) return out;
  IsoSearch search(a, b);
  search.run([&](const std::vector<std::uint32_t>& f) {
    out.push_back(to_partial_iso(a, b, f, radius));
    return out.size() < limit;
  });
  return out;
}

std::vector<PartialIso> pointed_isos(const Structure& m, ElementId x, const Structure& n, ElementId y,
                                     std::uint32_t radius, std::size_t limit) {
  require_faithful(m, x, radius);
  require_faithful(n, y, radius);
  return pointed_isos_unchecked(m, x, n, y, radius, limit);
}

std::optional<PartialIso> pointed_iso(const Structure& m, ElementId x, const Structure& n, ElementId y,
                                      std::uint32_t radius) {
  auto all = pointed_isos(m, x, n, y, radius, 1);
  if (all.empty()) return std::nullopt;
  if (auto defect = partial_iso_defect(m, n, all.front()))
    fail(Errc::VerificationFailed, "pointed isomorphism failed re-verification: " + *defect);
  return all.front();
}

std::optional<PartialIso> pointed_iso(const PointedBall& a, const PointedBall& b) {
  if (a.radius != b.radius) return std::nullopt;
  require_same_language(a.structure.language(), b.structure.language());
  auto all = pointed_isos_unchecked(a.structure, a.center, b.structure, b.center, a.radius, 1);
  if (all.empty()) return std::nullopt;
  if (all.front().size() != a.structure.size() || a.structure.size() != b.structure.size()) return std::nullopt;
  if (auto defect = partial_iso_defect(a.structure, b.structure, all.front()))
    fail(Errc::VerificationFailed, "pointed isomorphism failed re-verification: " + *defect);
  return all.front();
}

std::string BallSignature::digest() const {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : code) h = (h ^ c) * 1099511628211ull;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

BallSignature signature(const PointedBall& b) {
  LocalBall local;
  BallWorkspace ws(b.structure.size());
  detail::extract_local(b.structure, b.center, b.radius, ws, local);
  detail::CanonicalCoder coder;
  BallSignature s;
  coder.code(local, s.code);
  return s;
}

BallSignature ball_signature(const Structure& m, ElementId u, std::uint32_t h) {
  require_faithful(m, u, h);
  LocalBall local;
  detail::extract_local(m, u, h, detail::workspace_for(m), local);
  detail::CanonicalCoder coder;
  BallSignature s;
  coder.code(local, s.code);
  return s;
}

std::vector<BallSignature> ball_signatures(const Structure& m, std::span<const ElementId> centers, std::uint32_t h) {
  for (ElementId c : centers) require_faithful(m, c, h);
  std::vector<BallSignature> out(centers.size());
  parallel_chunks(centers.size(), [&](std::size_t, std::size_t begin, std::size_t end) {
    LocalBall local;
    detail::CanonicalCoder coder;
    BallWorkspace& ws = detail::workspace_for(m);
    for (std::size_t i = begin; i < end; ++i) {
      detail::extract_local(m, centers[i], h, ws, local);
      coder.code(local, out[i].code);
    }
  });
  return out;
}

std::optional<std::uint32_t> distinguishing_radius(const Structure& m, ElementId y, ElementId z,
                                                   std::uint32_t limit, std::uint32_t* checked) {
  std::uint32_t top = std::min({limit, m.depth(y), m.depth(z)});
  if (y == z) {
    if (checked) *checked = top;
    return std::nullopt;
  }
  for (std::uint32_t rho = 0; rho <= top; ++rho) {
    if (pointed_isos_unchecked(m, y, m, z, rho, 1).empty()) {
      if (checked) *checked = rho;
      return rho;
    }
  }
  if (checked) *checked = top;
  return std::nullopt;
}

}  // namespace lociso
