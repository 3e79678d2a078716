#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lociso/structure.hpp"

namespace lociso {

// (B(c, radius), c) as a standalone closed structure. Element ids are those
// of the parent window.
struct PointedBall {
  Structure structure;
  ElementId center = 0;
  std::uint32_t radius = 0;
};

// Reusable BFS scratch space sized to one structure. Not thread-safe; give
// each worker its own.
class BallWorkspace {
 public:
  explicit BallWorkspace(std::size_t n = 0) { reset(n); }
  void reset(std::size_t n);

  // Elements of B(c, radius) in BFS order (c first) with their distances.
  void collect(const Structure& m, ElementId c, std::uint32_t radius);
  const std::vector<ElementId>& members() const noexcept { return members_; }
  const std::vector<std::uint32_t>& distances() const noexcept { return dist_; }

  // Valid after collect(): local index of e, or kInfinite if outside.
  std::uint32_t local(ElementId e) const { return stamp_[e] == epoch_ ? slot_[e] : kInfinite; }

 private:
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint32_t> slot_;
  std::uint32_t epoch_ = 0;
  std::vector<ElementId> members_;
  std::vector<std::uint32_t> dist_;
};

// Single-source Gaifman distances; entries beyond `limit` stay kInfinite.
std::vector<std::uint32_t> distances_from(const Structure& m, ElementId source,
                                          std::uint32_t limit = kInfinite);

// Multi-source variant.
std::vector<std::uint32_t> distances_from(const Structure& m, std::span<const ElementId> sources,
                                          std::uint32_t limit = kInfinite);

std::uint32_t distance(const Structure& m, ElementId a, ElementId b);

inline std::uint32_t faithful_radius(const Structure& m, ElementId u) { return m.depth(u); }

// Throws UnfaithfulRadius unless radius <= depth(u).
PointedBall ball(const Structure& m, ElementId u, std::uint32_t radius);

// Same extraction without the faithfulness check; the result may be a
// truncation of the true ball.
PointedBall truncated_ball(const Structure& m, ElementId u, std::uint32_t radius);

// The ball as a window whose frontier is its outer sphere, so that depth
// inside it is a lower bound for depth in the true structure.
Structure ball_window(const Structure& m, ElementId u, std::uint32_t radius);

}  // namespace lociso
