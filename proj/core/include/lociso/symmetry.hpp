#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lociso/algebra.hpp"
#include "lociso/census.hpp"
#include "lociso/error.hpp"
#include "lociso/iso.hpp"
#include "lociso/structure.hpp"

namespace lociso {

// A pointed isomorphism (B(x,r),x) -> (B(y,r),y) inside one window that
// extends to every radius the window can certify.
struct Symmetry {
  ElementId source = 0;
  ElementId target = 0;
  std::uint32_t displacement = 0;     // dist(source, target)
  std::uint32_t verified_radius = 0;  // the map extends to this radius
  PartialIso map;                     // restricted to B(source, tested radius)
};

// Fate of one candidate target y of the anchor.
struct CandidateOutcome {
  ElementId target = 0;
  std::uint32_t distance = 0;
  std::uint32_t reachable_radius = 0;  // min(r, depth x, depth y)
  // Least radius with no admissible map; a map killed at rho is absent at
  // every larger radius.
  std::optional<std::uint32_t> kill_radius;
};

enum class SymmetryVerdict { NoneFound, Found, WindowExhausted };
std::string_view symmetry_verdict_name(SymmetryVerdict v) noexcept;

struct SymmetryReport {
  ElementId anchor = 0;
  std::uint32_t anchor_depth = 0;
  std::uint32_t tested_radius = 0;
  std::uint32_t displacement_bound = 0;
  std::vector<Symmetry> found;  // ordered by target canonical rank, then map
  std::vector<CandidateOutcome> candidates;
  SymmetryVerdict verdict = SymmetryVerdict::NoneFound;
};

struct SymmetryOptions {
  bool exclude_identity = true;
  std::optional<ElementId> anchor;  // default: deepest element
  // Radius up to which survivors are re-verified; default is the window limit.
  std::optional<std::uint32_t> extension_limit;
  std::size_t maps_per_target = 16;
};

// Candidates are the targets y in B(x, d) of a fixed deep anchor x. Throws
// WindowExhausted when depth(x) < d, so that the candidate set is complete.
SymmetryReport find_symmetries(const Structure& m, std::uint32_t d, std::uint32_t r,
                               const SymmetryOptions& options = {});

struct PeriodReport {
  ElementId anchor = 0;
  std::size_t rank_bound = 0;
  std::optional<std::size_t> rank;  // empty: no period of size <= rank_bound
  std::vector<ElementId> period;    // A, in insertion order, anchor first
  std::vector<PartialIso> generators;  // navigation maps valid on the core
  bool weakly_connected = false;
  std::uint32_t displacement_bound = 0;
  std::uint32_t margin = 0;     // core = elements with depth >= margin
  std::vector<ElementId> core;  // canonical order
  // Index into `period` of the orbit of each element, -1 off the core or
  // when the orbit has no member in A.
  std::vector<std::int32_t> orbit_of;
  std::size_t orbit_count = 0;  // orbits meeting the core
  bool disjoint = false;
  bool covering = false;
};

struct PeriodOptions {
  std::optional<ElementId> anchor;
  // Maximal dist(x, x sigma) of a generator; default 3 * rank_bound - 2.
  std::optional<std::uint32_t> displacement;
  // Core depth; default displacement + 1 (0 for closed structures).
  std::optional<std::uint32_t> margin;
  // Use these instead of searching navigation maps; each must be a partial
  // isomorphism of m defined on the core.
  std::vector<PartialIso> generators;
};

// Requires an equational structure unless generators are supplied. Throws
// WindowExhausted when the core is empty.
PeriodReport detect_periodicity(const Structure& m, std::size_t rank_bound, const PeriodOptions& options = {});

// GluingConflict carrying the word from the anchor to the element where the
// local pieces fail to glue.
class GluingError : public Error {
 public:
  GluingError(const std::string& message, Word witness)
      : Error(Errc::GluingConflict, message), witness_(std::move(witness)) {}
  const Word& witness() const noexcept { return witness_; }

 private:
  Word witness_;
};

// The partial map B(x,1) -> N that agrees with rho at y, as used to glue.
using NeighborMaps = std::vector<PartialIso>;

// One neighbor map per element of B(x, r) (in BFS order from x): the unique
// local extension for equational pairs, otherwise the first pointed
// isomorphism B_M(y,1) -> B_N(y rho,1) agreeing with rho on its domain.
// Throws GluingConflict when some y has none.
NeighborMaps navigation_neighbors(const Structure& m, const Structure& n, const PartialIso& rho);

// Glues the neighbor maps into a map on B(x, r+1), where r = rho's certified
// radius and x its anchor. Throws GluingConflict, naming the word from x at
// which the pieces disagree or the result fails verification.
PartialIso extend_partial_iso(const Structure& m, const Structure& n, const PartialIso& rho,
                              const NeighborMaps& neighbors);
PartialIso extend_partial_iso(const Structure& m, const Structure& n, const PartialIso& rho);

// Extends rho on B(x,s), s >= rank, to the whole core: y maps to y applied to
// the word from a to a rho, where a is the period element in y's orbit.
// Returns the map on every core element whose image lies in the window.
// Throws NoOrbitRepresentative, VerificationFailed, NotEquational.
PartialIso extend_to_automorphism(const Structure& m, const PeriodReport& period, const PartialIso& rho);

enum class SearchOutcome { Found, Absent, Inconclusive };
std::string_view search_outcome_name(SearchOutcome o) noexcept;

struct CensusMismatch {
  std::uint32_t h = 0;
  ElementId element = 0;  // in M
  BallSignature signature;
};

struct IsomorphismSearch {
  SearchOutcome outcome = SearchOutcome::Inconclusive;
  ElementId source = 0;  // deepest element of M, or the seed anchor
  std::uint32_t target_radius = 0;
  std::optional<PartialIso> iso;  // on B_M(source, target_radius)
  std::vector<CandidateOutcome> candidates;
  std::optional<CensusMismatch> witness;
};

struct PeriodicIsoOptions {
  std::optional<std::uint32_t> radius_cap;
  // Start from this partial isomorphism on B_M(anchor, certified radius) and
  // extend it layer by layer instead of searching.
  std::optional<PartialIso> seed;
};

// Layered search for an isomorphism M -> N, N periodic with the given report.
// Candidates for the image of M's deepest element are the period elements.
IsomorphismSearch periodic_isomorphism(const Structure& m, const Structure& n, const PeriodReport& n_period,
                                       const PeriodicIsoOptions& options = {});

// Class index (by first occurrence) of each closed connected structure.
std::vector<std::size_t> isomorphism_classes(std::span<const Structure* const> family);

}  // namespace lociso
