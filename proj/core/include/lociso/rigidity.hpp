#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lociso/census.hpp"
#include "lociso/iso.hpp"
#include "lociso/structure.hpp"

namespace lociso {

struct PairWitness {
  ElementId y = 0;
  ElementId z = 0;
  std::uint32_t s = 0;  // (B(y,s),y) and (B(z,s),z) are isomorphic
};

// Least rho <= limit at which the pointed rho-balls of `elements` are
// pairwise non-isomorphic. Empty when some pair still agrees at `limit` or
// at the largest radius where all of them are faithful; `stuck` then holds
// such a pair and the radius reached.
std::optional<std::uint32_t> separation_radius(const Structure& m, std::span<const ElementId> elements,
                                               std::uint32_t limit, PairWitness* stuck = nullptr);

struct QReport {
  std::uint32_t r = 0;
  std::uint32_t s = 0;
  bool holds = false;
  std::size_t anchors = 0;                 // elements with depth >= r + s
  std::optional<ElementId> witness_anchor;  // first anchor with no s-equivalent pair in B(x,r)
  std::optional<PairWitness> first_pair;    // an s-equivalent pair at the first anchor, when one exists
};

// Throws WindowExhausted when no element has depth >= r + s.
QReport property_Q_check(const Structure& m, std::uint32_t r, std::uint32_t s);

enum class RigidityVerdict { HoldsUpToBounds, PropertyPDetected, Inconclusive };
std::string_view rigidity_verdict_name(RigidityVerdict v) noexcept;

struct RadiusResult {
  std::uint32_t r = 0;
  std::optional<ElementId> witness;          // no s-equivalent pair in B(witness, r)
  std::optional<std::uint32_t> certified_s;  // separation radius at the witness
  std::optional<PairWitness> violation;      // when property (Q) holds at (r, s)
  bool q_holds = false;
  std::size_t anchors_tried = 0;
  std::string note;
};

struct RigidityReport {
  std::vector<std::uint32_t> radii;
  std::uint32_t s = 0;
  std::uint32_t lip_h = 0;
  std::optional<std::uint32_t> lip_k;
  std::vector<RadiusResult> results;
  RigidityVerdict verdict = RigidityVerdict::Inconclusive;
};

struct RigidityOptions {
  std::size_t anchor_limit = 64;  // anchors tried per radius before the census scan
  bool check_lip = true;
  std::optional<std::uint32_t> lip_bound;
};

// Throws HypothesisUnverified when the local isomorphism property is not
// certified at h = max radius.
RigidityReport rigidity_characterization(const Structure& m, std::span<const std::uint32_t> radii, std::uint32_t s,
                                         const RigidityOptions& options = {});

struct TraceStep {
  ElementId anchor = 0;  // x_n in M
  std::uint32_t r = 0;
  std::uint32_t s = 0;
  // (B(x_n, r_n + s_n), x_n) with its outer sphere as frontier; ids as in M.
  Structure window;
  // theta_n: B(x_n, r_n + s_n) -> B(x_{n+1}, r_n + s_n), as pairs of M
  // elements; absent on the last step.
  std::optional<PartialIso> theta;
  ElementId window_center = 0;  // x_n inside `window`
  ElementId chosen_anchor = 0;  // x of step (b) that produced this step
};

struct RigidLimitTrace {
  std::vector<TraceStep> steps;
  std::optional<std::string> truncated;  // reason when fewer steps than requested
};

struct RigidLimitOptions {
  std::optional<std::uint32_t> s_cap;  // default max(s_n + 1, 4 r + 16)
  std::size_t anchor_limit = 16;
  std::optional<std::uint32_t> lip_bound;
};

// Throws CharacterizationFails when property (Q) holds where step (b) needs
// an anchor, so that no rigid limit exists.
RigidLimitTrace rigid_limit(const Structure& m, std::size_t steps, ElementId seed, const RigidLimitOptions& options = {});

struct StepCheck {
  bool classes_present = false;  // every r_n-ball class of the window occurs in M
  bool no_equivalent_pair = false;
  std::optional<PairWitness> pair;
  std::string detail;
  bool ok() const { return classes_present && no_equivalent_pair; }
};

// Independent re-check of one trace step against M.
StepCheck verify_trace_step(const Structure& m, const TraceStep& step);

}  // namespace lociso
