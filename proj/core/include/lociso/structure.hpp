#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lociso/language.hpp"

namespace lociso {

using ElementId = std::uint32_t;
using TupleId = std::uint32_t;

// Distance and depth sentinel for "unbounded".
inline constexpr std::uint32_t kInfinite = std::numeric_limits<std::uint32_t>::max();

struct Incidence {
  TupleId tuple;
  std::uint32_t position;
};

// A finite window onto a relational structure. Elements carry opaque string
// ids; internally they are dense indices in insertion order. Tuples are a
// set (duplicates collapse) ordered by (symbol, argument indices). Frontier
// elements may have neighbors outside the window; every other element has its
// complete 1-neighborhood present. Immutable once built.
class Structure {
 public:
  Structure() = default;

  const Language& language() const noexcept { return language_; }
  std::size_t size() const noexcept { return ids_.size(); }
  std::size_t tuple_count() const noexcept { return tuple_symbol_.size(); }

  const std::string& id(ElementId e) const { return ids_.at(e); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  std::optional<ElementId> find(std::string_view id) const;
  ElementId require(std::string_view id) const;

  SymbolId tuple_symbol(TupleId t) const { return tuple_symbol_[t]; }
  std::span<const ElementId> tuple_args(TupleId t) const {
    return {tuple_args_.data() + tuple_offset_[t], tuple_offset_[t + 1] - tuple_offset_[t]};
  }
  std::optional<TupleId> find_tuple(SymbolId symbol, std::span<const ElementId> args) const;
  bool has_tuple(SymbolId symbol, std::span<const ElementId> args) const {
    return find_tuple(symbol, args).has_value();
  }

  std::span<const Incidence> incidences(ElementId e) const {
    return {incidence_.data() + incidence_offset_[e], incidence_offset_[e + 1] - incidence_offset_[e]};
  }
  // Gaifman neighbors, sorted, without e itself.
  std::span<const ElementId> neighbors(ElementId e) const {
    return {adjacency_.data() + adjacency_offset_[e], adjacency_offset_[e + 1] - adjacency_offset_[e]};
  }

  bool is_frontier(ElementId e) const { return frontier_flag_[e] != 0; }
  const std::vector<ElementId>& frontier() const noexcept { return frontier_; }
  bool closed() const noexcept { return frontier_.empty(); }

  // Gaifman distance to the nearest frontier element; kInfinite when none is reachable.
  std::uint32_t depth(ElementId e) const { return depth_[e]; }
  std::uint32_t max_depth() const noexcept { return max_depth_; }

  // Position of e in lexicographic id order.
  std::uint32_t canonical_rank(ElementId e) const { return rank_[e]; }
  const std::vector<ElementId>& canonical_order() const noexcept { return canonical_order_; }

 private:
  friend class StructureBuilder;

  Language language_;
  std::vector<std::string> ids_;
  std::unordered_map<std::string, ElementId> index_;
  std::vector<SymbolId> tuple_symbol_;
  std::vector<std::uint32_t> tuple_offset_{0};
  std::vector<ElementId> tuple_args_;
  std::vector<std::uint32_t> incidence_offset_{0};
  std::vector<Incidence> incidence_;
  std::vector<std::uint32_t> adjacency_offset_{0};
  std::vector<ElementId> adjacency_;
  std::vector<std::uint8_t> frontier_flag_;
  std::vector<ElementId> frontier_;
  std::vector<std::uint32_t> depth_;
  std::uint32_t max_depth_ = 0;
  std::vector<std::uint32_t> rank_;
  std::vector<ElementId> canonical_order_;
};

class StructureBuilder {
 public:
  explicit StructureBuilder(Language language);

  const Language& language() const noexcept { return s_.language_; }
  std::size_t size() const noexcept { return s_.ids_.size(); }

  ElementId add_element(std::string id);
  // Returns the existing element or adds it.
  ElementId ensure_element(const std::string& id);
  std::optional<ElementId> find(std::string_view id) const;

  void add_tuple(SymbolId symbol, std::span<const ElementId> args);
  void add_tuple(SymbolId symbol, std::initializer_list<ElementId> args) {
    add_tuple(symbol, std::span<const ElementId>(args.begin(), args.size()));
  }
  void mark_frontier(ElementId e);

  Structure build() &&;

 private:
  Structure s_;
  std::vector<std::uint8_t> frontier_mark_;
};

struct RawTuple {
  std::string symbol;
  std::vector<std::string> args;
};

// Unvalidated description, e.g. as parsed from text.
struct RawStructure {
  Language language;
  std::vector<std::string> elements;
  std::vector<RawTuple> tuples;
  std::vector<std::string> frontier;
};

Structure validate_structure(const RawStructure& raw);

// Structural equality on ids: same language, element ids, frontier and tuples.
bool same_structure(const Structure& a, const Structure& b);

// Sub-window induced by `keep`. The frontier is the old frontier restricted to
// `keep` plus every kept element with a neighbor outside `keep`.
Structure induced_window(const Structure& m, std::span<const ElementId> keep);

// Copy of `m` whose frontier is exactly `frontier`.
Structure with_frontier(const Structure& m, std::span<const ElementId> frontier);

bool is_connected(const Structure& m);

// max over non-frontier u of |B(u,1)|; 0 when every element is frontier.
std::size_t max_unit_ball_size(const Structure& m);

}  // namespace lociso
