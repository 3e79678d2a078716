#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lociso/census.hpp"
#include "lociso/iso.hpp"
#include "lociso/structure.hpp"

namespace lociso {

// Move from argument position i to position j of a tuple of `symbol`.
// Positions are 0-based here; the text form `R:i>j` is 1-based.
struct Step {
  SymbolId symbol = 0;
  std::uint32_t i = 0;
  std::uint32_t j = 0;

  auto operator<=>(const Step&) const = default;
};

using Word = std::vector<Step>;

Step parse_step(const Language& lang, std::string_view text);
Word parse_word(const Language& lang, std::string_view text);  // comma-separated, "" is the empty word
std::string format_step(const Language& lang, const Step& s);
std::string format_word(const Language& lang, const Word& w);

Step inverse(const Step& s);
Word inverse(const Word& w);

// All valid steps (i != j) in (symbol, i, j) order.
std::vector<Step> all_steps(const Language& lang);
// Words of length <= max_len ordered by (length, step sequence).
std::vector<Word> all_words(const Language& lang, std::size_t max_len);

// x(R,i,j); nullopt when no tuple places x at position i. Throws
// NotFunctional when several distinct y qualify.
std::optional<ElementId> apply_step(const Structure& m, ElementId x, const Step& s);
std::optional<ElementId> apply_word(const Structure& m, ElementId x, const Word& w);

struct EquationalWitness {
  SymbolId symbol = 0;
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  TupleId first = 0;
  TupleId second = 0;
};

struct EquationalReport {
  bool equational = true;
  std::optional<EquationalWitness> witness;
};

EquationalReport equational_check(const Structure& m);
void require_equational(const Structure& m);  // throws NotEquational

struct CommutativityWitness {
  ElementId x = 0;
  Word v, w;
  ElementId xvw = 0;
  ElementId xwv = 0;
};

struct CommutativityReport {
  Verdict verdict = Verdict::HoldsUpToBounds;
  std::size_t max_len = 0;
  std::size_t anchors = 0;
  std::size_t pairs_tested = 0;
  std::optional<CommutativityWitness> witness;
};

// Tests xvw == xwv for |v|+|w| <= max_len from anchors with depth >= max_len,
// so that every application stays inside the faithful region. The first
// counterexample in (total length, v, w, anchor) order is returned, re-verified.
CommutativityReport strong_commutativity_check(const Structure& m, std::size_t max_len);

struct RegularityWitness {
  std::size_t fixed_structure = 0;
  ElementId fixed_anchor = 0;
  std::size_t moved_structure = 0;
  ElementId moved_anchor = 0;
  Word w;
};

struct RegularityReport {
  Verdict verdict = Verdict::HoldsUpToBounds;
  std::size_t max_len = 0;
  std::size_t words_tested = 0;
  std::optional<RegularityWitness> witness;
};

RegularityReport strong_regularity_check(const std::vector<const Structure*>& family, std::size_t max_len);

struct QuotientResult {
  Structure structure;
  std::vector<ElementId> projection;  // element of M -> element of M/H
  std::size_t group_order = 0;
};

// An automorphism given as a total map on the elements of m.
using ElementMap = std::vector<ElementId>;

// Throws NonClosedWindow, NotAutomorphism, GroupClosureExceedsBound.
QuotientResult quotient(const Structure& m, const std::vector<ElementMap>& generators,
                        std::size_t closure_bound = 1u << 16);

// Throws NotAutomorphism with a description unless `map` is a bijection
// preserving and reflecting every tuple of m.
void require_automorphism(const Structure& m, const ElementMap& map);

}  // namespace lociso
