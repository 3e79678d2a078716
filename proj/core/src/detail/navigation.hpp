#pragma once

#include <vector>

#include "lociso/algebra.hpp"
#include "lociso/structure.hpp"

namespace lociso::detail {

// BFS spanning tree from a root; via[z] is the step taking parent[z] to z.
struct BfsTree {
  ElementId root = 0;
  std::vector<ElementId> order;
  std::vector<ElementId> parent;  // kInfinite outside the tree
  std::vector<Step> via;
  std::vector<std::uint32_t> dist;

  bool contains(ElementId z) const { return dist[z] != kInfinite; }
  Word word_to(ElementId z) const;
};

BfsTree bfs_tree(const Structure& m, ElementId root, std::uint32_t limit = kInfinite);

// Image of every tree element under the navigation map root -> y of an
// equational pair (m, n): z goes to y applied to the tree word of z.
// kInfinite where the word leaves n.
std::vector<ElementId> navigate(const Structure& m, const BfsTree& tree, const Structure& n, ElementId y);

}  // namespace lociso::detail
