#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lociso/ball.hpp"
#include "lociso/structure.hpp"

namespace lociso::detail {

// Compact copy of a pointed ball: local index 0 is the center, indices are in
// BFS order, tuples are those of the parent lying entirely inside the ball.
struct LocalBall {
  std::uint32_t n = 0;
  std::vector<ElementId> global;
  std::vector<std::uint32_t> dist;
  std::vector<SymbolId> tsym;
  std::vector<std::uint32_t> toff{0};
  std::vector<std::uint32_t> targs;
  std::vector<std::uint32_t> ioff{0};
  std::vector<Incidence> inc;

  std::uint32_t tuple_count() const { return static_cast<std::uint32_t>(tsym.size()); }
  std::span<const std::uint32_t> args(std::uint32_t t) const {
    return {targs.data() + toff[t], toff[t + 1] - toff[t]};
  }
  std::span<const Incidence> incidences(std::uint32_t v) const {
    return {inc.data() + ioff[v], ioff[v + 1] - ioff[v]};
  }
  bool has_tuple(SymbolId s, std::span<const std::uint32_t> a) const;
};

void extract_local(const Structure& m, ElementId center, std::uint32_t radius, BallWorkspace& ws,
                   LocalBall& out);

// Minimum leaf code over an exhaustive individualization-refinement search.
// Two pointed balls over the same language get equal codes iff they are
// isomorphic as pointed structures.
class CanonicalCoder {
 public:
  void code(const LocalBall& b, std::string& out);

 private:
  void refine(const LocalBall& b, std::vector<std::uint32_t>& cells);
  void search(const LocalBall& b, std::vector<std::uint32_t> cells);
  void leaf(const LocalBall& b, const std::vector<std::uint32_t>& labels);

  std::vector<std::uint32_t> keys_;
  std::vector<std::uint32_t> key_off_;
  std::vector<std::uint32_t> order_;
  std::vector<std::uint32_t> rec_;
  std::vector<std::uint32_t> rec_off_;
  std::vector<std::uint32_t> rec_order_;
  std::vector<std::uint32_t> next_;
  std::vector<std::uint32_t> leaf_buf_;
  std::vector<std::uint32_t> leaf_rec_;
  std::vector<std::uint32_t> leaf_off_;
  std::vector<std::uint32_t> best_;
  bool have_best_ = false;
};

void append_varint(std::string& out, std::uint32_t v);

}  // namespace lociso::detail
