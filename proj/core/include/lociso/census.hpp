#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lociso/iso.hpp"
#include "lociso/structure.hpp"

namespace lociso {

enum class Verdict { HoldsUpToBounds, FailsWithWitness, Inconclusive };
std::string_view verdict_name(Verdict v) noexcept;

struct CensusEntry {
  BallSignature signature;
  ElementId representative = 0;  // least id in the class
  std::size_t multiplicity = 0;
};

// Pointed-isomorphism classes of (B(u,h),u) over all u with depth(u) >= h.
struct CensusTable {
  std::uint32_t h = 0;
  std::vector<CensusEntry> entries;  // sorted by signature
  std::vector<std::int32_t> class_of;  // entry index per element, -1 if unfaithful
  std::size_t faithful_count = 0;

  std::optional<std::size_t> find(const BallSignature& s) const;
};

// Throws NoFaithfulElements when no element has depth >= h.
CensusTable census(const Structure& m, std::uint32_t h);

struct LipClass {
  std::size_t entry = 0;
  ElementId representative = 0;
  // k_C: least k such that every v with depth(v) >= k+h lies within k of the class.
  std::uint32_t k = 0;
  bool within_bound = true;
  std::optional<ElementId> witness;  // a v with depth >= k_bound+h farther than k_bound
};

struct LipReport {
  std::uint32_t h = 0;
  std::uint32_t k_bound = 0;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<std::uint32_t> k;  // max k_C when every class is within bound
  std::vector<LipClass> classes;
  std::size_t class_count = 0;
};

// Default k_bound: a third of the slack (max depth - h), so that a certified k
// is backed by windows at least twice as deep as it. Closed structures use
// their element count.
std::uint32_t default_lip_bound(const Structure& m, std::uint32_t h);

LipReport lip_check(const Structure& m, std::uint32_t h, std::optional<std::uint32_t> k_bound = std::nullopt);
LipReport lip_check(const Structure& m, const CensusTable& table, std::optional<std::uint32_t> k_bound = std::nullopt);

// k_C for the class of one pointed ball only; nullopt if some v with
// depth >= k_bound+h is farther than k_bound, `witness` then names it.
std::optional<std::uint32_t> recurrence_radius(const Structure& m, const CensusTable& table, std::size_t entry,
                                               std::uint32_t k_bound, std::optional<ElementId>* witness = nullptr);

struct CompareRow {
  BallSignature signature;
  std::size_t count_m = 0;
  std::size_t count_n = 0;
  double freq_m = 0;
  double freq_n = 0;
};

struct CompareReport {
  std::uint32_t h = 0;
  bool m_in_n = false;  // every h-ball class of M occurs in N
  bool n_in_m = false;
  std::vector<CensusEntry> missing_in_n;  // representatives refer to M
  std::vector<CensusEntry> missing_in_m;  // representatives refer to N
  std::vector<CompareRow> rows;           // union of classes, by signature
  // Multiplicities depend on window shape and size; only presence is stable.
  bool multiplicities_window_sensitive = true;
};

CompareReport extraction_compare(const Structure& m, const Structure& n, std::uint32_t h);
CompareReport extraction_compare(const CensusTable& cm, const CensusTable& cn);

// Bounded-radius local rule: the admissible h-ball types.
struct LocalRule {
  std::uint32_t radius = 0;
  std::vector<BallSignature> allowed;  // sorted, unique
};

LocalRule rule_from_census(const CensusTable& table);
// First element (canonical order) whose faithful ball is not admissible.
std::optional<ElementId> rule_violation(const Structure& m, const LocalRule& rule);

}  // namespace lociso
