#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lociso/ball.hpp"
#include "lociso/structure.hpp"

namespace lociso {

// Injective partial map between the elements of two structures that the
// caller keeps alongside it. Pairs are sorted by source element.
struct PartialIso {
  ElementId anchor = 0;
  std::uint32_t certified_radius = 0;
  std::vector<std::pair<ElementId, ElementId>> pairs;

  std::size_t size() const noexcept { return pairs.size(); }
  std::optional<ElementId> image(ElementId source) const;
  std::optional<ElementId> preimage(ElementId target) const;
  void normalize();  // sort pairs by source
};

// Empty when `iso` is a partial isomorphism from `src` to `dst`: injective,
// every tuple over the domain maps to a tuple, and every tuple over the image
// pulls back. Otherwise a description of the first defect.
std::optional<std::string> partial_iso_defect(const Structure& src, const Structure& dst, const PartialIso& iso);
inline bool verify_partial_iso(const Structure& src, const Structure& dst, const PartialIso& iso) {
  return !partial_iso_defect(src, dst, iso).has_value();
}

// Pointed isomorphism of two pointed balls, found by backtracking search.
// The returned map is re-verified before it is handed back.
std::optional<PartialIso> pointed_iso(const PointedBall& a, const PointedBall& b);

// Same test on balls taken inside windows, without materializing them.
// Throws UnfaithfulRadius unless both balls are faithful.
std::optional<PartialIso> pointed_iso(const Structure& m, ElementId x, const Structure& n, ElementId y,
                                      std::uint32_t radius);

// Every pointed isomorphism B_M(x,radius) -> B_N(y,radius), up to `limit`.
std::vector<PartialIso> pointed_isos(const Structure& m, ElementId x, const Structure& n, ElementId y,
                                     std::uint32_t radius, std::size_t limit = 1u << 16);

// Same, with no faithfulness check; used where truncation is handled by the caller.
std::vector<PartialIso> pointed_isos_unchecked(const Structure& m, ElementId x, const Structure& n, ElementId y,
                                               std::uint32_t radius, std::size_t limit);

// Isomorphism invariant of a pointed ball: equal iff pointed-isomorphic
// (for balls over the same language).
struct BallSignature {
  std::string code;

  auto operator<=>(const BallSignature&) const = default;
  bool operator==(const BallSignature&) const = default;
  // Short stable hex digest for reports.
  std::string digest() const;
};

BallSignature signature(const PointedBall& b);
// Throws UnfaithfulRadius unless depth(u) >= h.
BallSignature ball_signature(const Structure& m, ElementId u, std::uint32_t h);

// Signatures for many centers at once; parallel, output in input order.
std::vector<BallSignature> ball_signatures(const Structure& m, std::span<const ElementId> centers, std::uint32_t h);

// Least rho <= limit at which the pointed balls at y and z differ, using only
// radii at which both are faithful. nullopt when they agree up to the
// largest checkable radius; `checked` then holds that radius.
std::optional<std::uint32_t> distinguishing_radius(const Structure& m, ElementId y, ElementId z,
                                                   std::uint32_t limit, std::uint32_t* checked = nullptr);

}  // namespace lociso
