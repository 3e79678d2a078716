#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lociso/address.hpp"
#include "lociso/quadratic.hpp"
#include "lociso/structure.hpp"

namespace lociso {

// Number of rows b whose half-open cell [a-1/2,a+1/2[ x [b-1/2,b+1/2[ meets
// the line y = r x + s. Exact.
std::uint32_t sturmian_column_count(const QuadraticIrrational& r, const QuadraticIrrational& s, std::int64_t a);

enum class SturmianOrientation {
  Directed,   // Succ(a, a+1): equational, no mirror automorphisms
  Symmetric,  // Adj(a, a+1) and Adj(a+1, a): admits mirrors
};

// Columns a in [-W, W] colored White (n+1 points) or Black (n+2 points) with
// n = floor(|r|). Frontier {-W, W}. Throws RationalSlope for rational r.
Structure gen_sturmian(const QuadraticIrrational& r, const QuadraticIrrational& s, std::int64_t half_width,
                       SturmianOrientation orientation = SturmianOrientation::Directed);

// k-ary functional tree: P_c(y, z) iff z is the c-th child of y. The window
// is the anchor's ancestor chain x_0..x_depth (x_{t-1} = x_t P_{a_t}), the
// children of every chain node, and the full ball of `ball_radius` around
// x_0 (default min(depth, 8)). Ids: "u<t>" for x_t, "u<t>.c1.c2..." below it.
Structure gen_kary_tree(std::uint32_t k, const AddressSequence& address, std::uint32_t depth,
                        std::optional<std::uint32_t> ball_radius = std::nullopt);

// Patch of the binary tiling. Tiles are (level, offset); the anchor column
// sits at offset 0 on every level, and
//   parent(l, o) = (l+1, floor((o + a_{l+1}) / 2))
// with a_n = 0 meaning U_{n-1} is the left child of U_n (a_n = 0 for n <= 0).
// Levels run from -below to levels-1-below; the anchor row spans offsets
// [-W, W], rows above are the parents of the row below, rows below the
// children of the row above. Above(child, parent), Right((l,o),(l,o+1)).
// Ids: "L<level>:<offset>".
Structure gen_binary_hyperbolic(const AddressSequence& address, std::uint32_t levels, std::uint32_t half_width,
                                std::optional<std::uint32_t> below = std::nullopt);

// Ball of radius R in the Cayley structure of the free group on k generators:
// R_i(y, y x_i). Ids are reduced words over a,b,c,... with inverses A,B,C,...;
// the identity is "1". Frontier = sphere of radius R.
Structure gen_cayley_free(std::uint32_t k, std::uint32_t radius);

struct GridColoring {
  // Colors repeat with these periods along each axis; pattern is row-major
  // over the period box, "" meaning uncolored.
  std::vector<std::uint32_t> period;
  std::vector<std::string> pattern;
  // Optional single cell at the origin with its own color.
  std::optional<std::string> origin_color;
  // Colors declared in the language even if unused (order kept).
  std::vector<std::string> palette;

  static GridColoring none(std::vector<std::string> palette = {});
  static GridColoring checkerboard(std::size_t dims, std::string even = "Black", std::string odd = "White");
  static GridColoring stripes(std::vector<std::string> pattern);  // period along axis 0 only
};

// Z^d window with coordinates in [-(n_i/2), n_i - 1 - n_i/2] (frontier on
// the boundary), or the torus (Z/n_i)^d with coordinates 0..n_i-1 (closed).
// Direction relations: "Succ" for d=1, "E","N" for d=2, "E1".."Ed" otherwise.
// Ids are coordinates joined by ':'.
Structure gen_grid(const std::vector<std::uint32_t>& sizes, bool torus, const GridColoring& coloring = GridColoring::none());

std::vector<std::string> grid_relation_names(std::size_t dims);

}  // namespace lociso
