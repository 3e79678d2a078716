#include "detail/navigation.hpp"

#include <algorithm>

namespace lociso::detail {

Word BfsTree::word_to(ElementId z) const {
  Word w;
  while (z != root) {
    w.push_back(via[z]);
    z = parent[z];
  }
  std::reverse(w.begin(), w.end());
  return w;
}

BfsTree bfs_tree(const Structure& m, ElementId root, std::uint32_t limit) {
  BfsTree t;
  t.root = root;
  t.parent.assign(m.size(), kInfinite);
  t.via.assign(m.size(), Step{});
  t.dist.assign(m.size(), kInfinite);
  t.dist[root] = 0;
  t.order.push_back(root);
  for (std::size_t head = 0; head < t.order.size(); ++head) {
    ElementId z = t.order[head];
    if (t.dist[z] >= limit) continue;
    for (const Incidence& inc : m.incidences(z)) {
      auto args = m.tuple_args(inc.tuple);
      for (std::uint32_t j = 0; j < args.size(); ++j) {
        ElementId w = args[j];
        if (t.dist[w] != kInfinite) continue;
        t.dist[w] = t.dist[z] + 1;
        t.parent[w] = z;
        t.via[w] = Step{m.tuple_symbol(inc.tuple), inc.position, j};
        t.order.push_back(w);
      }
    }
  }
  return t;
}

std::vector<ElementId> navigate(const Structure& m, const BfsTree& tree, const Structure& n, ElementId y) {
  std::vector<ElementId> img(m.size(), kInfinite);
  img[tree.root] = y;
  for (std::size_t k = 1; k < tree.order.size(); ++k) {
    ElementId z = tree.order[k];
    ElementId p = img[tree.parent[z]];
    if (p == kInfinite) continue;
    if (auto next = apply_step(n, p, tree.via[z])) img[z] = *next;
  }
  return img;
}

}  // namespace lociso::detail
