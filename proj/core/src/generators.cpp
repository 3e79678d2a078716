#include "lociso/generators.hpp"

#include <algorithm>
#include <unordered_map>

#include "lociso/error.hpp"

namespace lociso {

namespace {

std::string i128_to_string(__int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  std::string s;
  while (v != 0) {
    int d = static_cast<int>(v % 10);
    s.push_back(static_cast<char>('0' + (d < 0 ? -d : d)));
    v /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

void require_compatible(const QuadraticIrrational& r, const QuadraticIrrational& s) {
  if (r.is_rational()) fail(Errc::RationalSlope, "slope " + r.to_string() + " is rational");
  if (!s.is_rational() && s.D != r.D)
    fail(Errc::InvalidArgument, "intercept must be rational or lie in the same quadratic field as the slope");
}

}  // namespace

std::uint32_t sturmian_column_count(const QuadraticIrrational& r, const QuadraticIrrational& s, std::int64_t a) {
  require_compatible(r, s);
  const std::int64_t D = r.D;
  // y((2a+e)/2) = (A + B sqrt(D)) / C.
  auto A = [&](int e) -> __int128 {
    return static_cast<__int128>(r.p) * (2 * static_cast<__int128>(a) + e) * s.u +
           2 * static_cast<__int128>(r.u) * s.p;
  };
  auto B = [&](int e) -> __int128 {
    return static_cast<__int128>(r.q) * (2 * static_cast<__int128>(a) + e) * s.u +
           2 * static_cast<__int128>(r.u) * s.q;
  };
  const __int128 C = 2 * static_cast<__int128>(r.u) * s.u;
  const __int128 half = static_cast<__int128>(r.u) * s.u;  // C/2
  __int128 count;
  if (sign_quadratic(r.p, r.q, D) > 0) {
    // rows b with y(a-1/2) - 1/2 < b < y(a+1/2) + 1/2
    __int128 lo_floor = floor_quadratic(A(-1) - half, B(-1), D, C);
    __int128 hi_ceil = -floor_quadratic(-(A(+1) + half), -B(+1), D, C);
    count = hi_ceil - lo_floor - 1;
  } else {
    // rows b with y(a+1/2) - 1/2 < b <= y(a-1/2) + 1/2
    __int128 hi_floor = floor_quadratic(A(-1) + half, B(-1), D, C);
    __int128 lo_floor = floor_quadratic(A(+1) - half, B(+1), D, C);
    count = hi_floor - lo_floor;
  }
  if (count < 0) fail(Errc::VerificationFailed, "negative column count " + i128_to_string(count));
  return static_cast<std::uint32_t>(count);
}

Structure gen_sturmian(const QuadraticIrrational& r, const QuadraticIrrational& s, std::int64_t half_width,
                       SturmianOrientation orientation) {
  require_compatible(r, s);
  if (half_width < 1) fail(Errc::InvalidArgument, "half-width must be at least 1");
  // n = floor(|r|)
  QuadraticIrrational abs_r = sign_quadratic(r.p, r.q, r.D) < 0 ? QuadraticIrrational{-r.p, -r.q, r.u, r.D} : r;
  const auto n = static_cast<std::uint32_t>(floor_quadratic(abs_r.p, abs_r.q, abs_r.D, abs_r.u));

  Language lang;
  SymbolId link = lang.add(orientation == SturmianOrientation::Directed ? "Succ" : "Adj", 2);
  SymbolId white = lang.add("White", 1);
  SymbolId black = lang.add("Black", 1);
  StructureBuilder b(lang);
  std::vector<ElementId> col;
  col.reserve(static_cast<std::size_t>(2 * half_width + 1));
  for (std::int64_t a = -half_width; a <= half_width; ++a) col.push_back(b.add_element(std::to_string(a)));
  for (std::int64_t a = -half_width; a <= half_width; ++a) {
    ElementId e = col[static_cast<std::size_t>(a + half_width)];
    std::uint32_t c = sturmian_column_count(r, s, a);
    if (c == n + 1) b.add_tuple(white, {e});
    else if (c == n + 2) b.add_tuple(black, {e});
    else
      fail(Errc::VerificationFailed, "column " + std::to_string(a) + " meets " + std::to_string(c) +
                                         " cells, expected " + std::to_string(n + 1) + " or " + std::to_string(n + 2));
    if (a < half_width) {
      ElementId f = col[static_cast<std::size_t>(a + half_width + 1)];
      b.add_tuple(link, {e, f});
      if (orientation == SturmianOrientation::Symmetric) b.add_tuple(link, {f, e});
    }
  }
  b.mark_frontier(col.front());
  b.mark_frontier(col.back());
  return std::move(b).build();
}

Structure gen_kary_tree(std::uint32_t k, const AddressSequence& address, std::uint32_t depth,
                        std::optional<std::uint32_t> ball_radius) {
  if (k < 2) fail(Errc::InvalidArgument, "branching must be at least 2");
  address.require_alphabet(1, static_cast<int>(k));
  const std::uint32_t radius = ball_radius ? *ball_radius : std::min<std::uint32_t>(depth, 8);
  Language lang;
  std::vector<SymbolId> P;
  for (std::uint32_t c = 1; c <= k; ++c) P.push_back(lang.add("P" + std::to_string(c), 2));
  StructureBuilder b(lang);

  std::vector<ElementId> chain(depth + 1);
  for (std::uint32_t t = 0; t <= depth; ++t) chain[t] = b.add_element("u" + std::to_string(t));
  for (std::uint32_t t = 1; t <= depth; ++t)
    b.add_tuple(P[static_cast<std::size_t>(address.at(t) - 1)], {chain[t], chain[t - 1]});
  b.mark_frontier(chain[depth]);

  // Off-chain subtrees: below x_t, every child except x_{t-1}, expanded while
  // the distance from x_0 stays within `radius`; a node not expanded is a leaf
  // of the window and thus frontier.
  struct Item {
    ElementId node;
    std::string id;
    std::uint32_t dist;
  };
  std::vector<Item> stack;
  for (std::uint32_t t = 0; t <= depth; ++t) {
    const bool chain_expanded = t < depth;  // x_depth's children are not included
    if (!chain_expanded) break;
    for (std::uint32_t c = 1; c <= k; ++c) {
      if (t >= 1 && static_cast<int>(c) == address.at(t)) continue;
      std::string id = "u" + std::to_string(t) + "." + std::to_string(c);
      ElementId e = b.add_element(id);
      b.add_tuple(P[c - 1], {chain[t], e});
      stack.push_back(Item{e, std::move(id), t + 1});
    }
    while (!stack.empty()) {
      Item it = std::move(stack.back());
      stack.pop_back();
      if (it.dist >= radius) {
        b.mark_frontier(it.node);
        continue;
      }
      for (std::uint32_t c = 1; c <= k; ++c) {
        std::string id = it.id + "." + std::to_string(c);
        ElementId e = b.add_element(id);
        b.add_tuple(P[c - 1], {it.node, e});
        stack.push_back(Item{e, std::move(id), it.dist + 1});
      }
    }
  }
  return std::move(b).build();
}

namespace {

std::int64_t floor_div2(std::int64_t v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

}  // namespace

Structure gen_binary_hyperbolic(const AddressSequence& address, std::uint32_t levels, std::uint32_t half_width,
                                std::optional<std::uint32_t> below_opt) {
  address.require_alphabet(0, 1);
  if (levels == 0) fail(Errc::InvalidArgument, "need at least one level");
  const std::int64_t below = below_opt ? *below_opt : std::min<std::uint32_t>(levels - 1, 8);
  if (below >= static_cast<std::int64_t>(levels)) fail(Errc::InvalidArgument, "'below' must be less than 'levels'");
  const std::int64_t top = static_cast<std::int64_t>(levels) - 1 - below;
  auto bit = [&](std::int64_t n) -> std::int64_t { return n >= 1 ? address.at(static_cast<std::uint64_t>(n)) : 0; };
  auto parent = [&](std::int64_t level, std::int64_t o) { return floor_div2(o + bit(level + 1)); };

  // Offset interval per level, index level + below.
  std::vector<std::pair<std::int64_t, std::int64_t>> rows(levels);
  rows[static_cast<std::size_t>(below)] = {-static_cast<std::int64_t>(half_width), half_width};
  for (std::int64_t l = 1; l <= top; ++l) {
    auto [lo, hi] = rows[static_cast<std::size_t>(l - 1 + below)];
    rows[static_cast<std::size_t>(l + below)] = {parent(l - 1, lo), parent(l - 1, hi)};
  }
  for (std::int64_t l = -1; l >= -below; --l) {
    auto [lo, hi] = rows[static_cast<std::size_t>(l + 1 + below)];
    rows[static_cast<std::size_t>(l + below)] = {2 * lo, 2 * hi + 1};
  }

  Language lang;
  SymbolId above = lang.add("Above", 2);
  SymbolId right = lang.add("Right", 2);
  StructureBuilder b(lang);
  std::vector<std::int64_t> first_id(levels);
  auto tile = [&](std::int64_t l, std::int64_t o) -> ElementId {
    return static_cast<ElementId>(first_id[static_cast<std::size_t>(l + below)] + (o - rows[static_cast<std::size_t>(l + below)].first));
  };
  auto inside = [&](std::int64_t l, std::int64_t o) {
    if (l < -below || l > top) return false;
    auto [lo, hi] = rows[static_cast<std::size_t>(l + below)];
    return o >= lo && o <= hi;
  };
  for (std::int64_t l = -below; l <= top; ++l) {
    first_id[static_cast<std::size_t>(l + below)] = static_cast<std::int64_t>(b.size());
    auto [lo, hi] = rows[static_cast<std::size_t>(l + below)];
    for (std::int64_t o = lo; o <= hi; ++o) b.add_element("L" + std::to_string(l) + ":" + std::to_string(o));
  }
  for (std::int64_t l = -below; l <= top; ++l) {
    auto [lo, hi] = rows[static_cast<std::size_t>(l + below)];
    for (std::int64_t o = lo; o <= hi; ++o) {
      ElementId e = tile(l, o);
      bool complete = true;
      std::int64_t po = parent(l, o);
      if (inside(l + 1, po)) b.add_tuple(above, {e, tile(l + 1, po)});
      else complete = false;
      if (inside(l, o + 1)) b.add_tuple(right, {e, tile(l, o + 1)});
      else complete = false;
      if (!inside(l, o - 1)) complete = false;
      // Children: the two offsets c at level l-1 with parent(l-1, c) == o.
      std::int64_t c0 = 2 * o - bit(l);
      if (!inside(l - 1, c0) || !inside(l - 1, c0 + 1)) complete = false;
      if (!complete) b.mark_frontier(e);
    }
  }
  return std::move(b).build();
}

Structure gen_cayley_free(std::uint32_t k, std::uint32_t radius) {
  if (k < 1 || k > 26) fail(Errc::InvalidArgument, "generator count must be in 1..26");
  Language lang;
  for (std::uint32_t i = 1; i <= k; ++i) lang.add("R" + std::to_string(i), 2);
  StructureBuilder b(lang);
  std::vector<std::string> words{""};
  std::unordered_map<std::string, ElementId> index;
  auto name = [](const std::string& w) { return w.empty() ? std::string("1") : w; };
  index.emplace("", b.add_element(name("")));
  std::size_t begin = 0;
  for (std::uint32_t len = 1; len <= radius; ++len) {
    std::size_t end = words.size();
    for (std::size_t w = begin; w < end; ++w)
      for (std::uint32_t i = 0; i < k; ++i)
        for (char letter : {static_cast<char>('a' + i), static_cast<char>('A' + i)}) {
          const std::string& base = words[w];
          if (!base.empty()) {
            char last = base.back();
            bool cancels = (last ^ letter) == ('a' ^ 'A') && std::tolower(last) == std::tolower(letter);
            if (cancels) continue;
          }
          std::string next = base + letter;
          index.emplace(next, b.add_element(name(next)));
          words.push_back(std::move(next));
        }
    begin = end;
  }
  auto times = [](const std::string& w, char letter) {
    if (!w.empty() && w.back() != letter && std::tolower(w.back()) == std::tolower(letter)) return w.substr(0, w.size() - 1);
    return w + letter;
  };
  for (const auto& w : words) {
    ElementId y = index.at(w);
    for (std::uint32_t i = 0; i < k; ++i) {
      auto it = index.find(times(w, static_cast<char>('a' + i)));
      if (it != index.end()) b.add_tuple(i, {y, it->second});
    }
    if (w.size() == radius) b.mark_frontier(y);
  }
  return std::move(b).build();
}

GridColoring GridColoring::none(std::vector<std::string> palette) {
  GridColoring c;
  c.palette = std::move(palette);
  return c;
}

GridColoring GridColoring::checkerboard(std::size_t dims, std::string even, std::string odd) {
  GridColoring c;
  c.period.assign(dims, 2);
  std::size_t cells = std::size_t{1} << dims;
  for (std::size_t i = 0; i < cells; ++i) c.pattern.push_back(__builtin_popcountll(i) % 2 == 0 ? even : odd);
  c.palette = {even, odd};
  return c;
}

GridColoring GridColoring::stripes(std::vector<std::string> pattern) {
  GridColoring c;
  c.period = {static_cast<std::uint32_t>(pattern.size())};
  c.pattern = std::move(pattern);
  return c;
}

std::vector<std::string> grid_relation_names(std::size_t dims) {
  if (dims == 1) return {"Succ"};
  if (dims == 2) return {"E", "N"};
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= dims; ++i) out.push_back("E" + std::to_string(i));
  return out;
}

Structure gen_grid(const std::vector<std::uint32_t>& sizes, bool torus, const GridColoring& coloring) {
  const std::size_t d = sizes.size();
  if (d == 0) fail(Errc::InvalidArgument, "grid needs at least one dimension");
  for (auto s : sizes)
    if (s == 0) fail(Errc::InvalidArgument, "grid sizes must be positive");
  Language lang;
  std::vector<SymbolId> dir;
  for (const auto& n : grid_relation_names(d)) dir.push_back(lang.add(n, 2));
  std::vector<std::string> colors = coloring.palette;
  auto note = [&](const std::string& c) {
    if (!c.empty() && std::find(colors.begin(), colors.end(), c) == colors.end()) colors.push_back(c);
  };
  for (const auto& c : coloring.pattern) note(c);
  if (coloring.origin_color) note(*coloring.origin_color);
  std::unordered_map<std::string, SymbolId> color_sym;
  for (const auto& c : colors) color_sym.emplace(c, lang.add(c, 1));

  std::vector<std::int64_t> lo(d);
  for (std::size_t i = 0; i < d; ++i) lo[i] = torus ? 0 : -static_cast<std::int64_t>(sizes[i] / 2);
  std::size_t total = 1;
  for (auto s : sizes) total *= s;
  if (!coloring.pattern.empty()) {
    std::size_t box = 1;
    if (coloring.period.size() != d) fail(Errc::InvalidArgument, "coloring period must match grid dimension");
    for (auto p : coloring.period) box *= p;
    if (box != coloring.pattern.size()) fail(Errc::InvalidArgument, "coloring pattern does not fill its period box");
  }

  StructureBuilder b(lang);
  auto coords_of = [&](std::size_t idx) {
    std::vector<std::int64_t> c(d);
    for (std::size_t i = d; i-- > 0;) {
      c[i] = lo[i] + static_cast<std::int64_t>(idx % sizes[i]);
      idx /= sizes[i];
    }
    return c;
  };
  auto index_of = [&](const std::vector<std::int64_t>& c) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < d; ++i) idx = idx * sizes[i] + static_cast<std::size_t>(c[i] - lo[i]);
    return idx;
  };
  for (std::size_t idx = 0; idx < total; ++idx) {
    auto c = coords_of(idx);
    std::string id;
    for (std::size_t i = 0; i < d; ++i) id += (i ? ":" : "") + std::to_string(c[i]);
    b.add_element(std::move(id));
  }
  for (std::size_t idx = 0; idx < total; ++idx) {
    auto c = coords_of(idx);
    bool boundary = false;
    for (std::size_t i = 0; i < d; ++i) {
      auto n = c;
      n[i] += 1;
      if (torus) {
        n[i] = (n[i] - lo[i]) % static_cast<std::int64_t>(sizes[i]) + lo[i];
        b.add_tuple(dir[i], {static_cast<ElementId>(idx), static_cast<ElementId>(index_of(n))});
      } else {
        if (n[i] < lo[i] + static_cast<std::int64_t>(sizes[i]))
          b.add_tuple(dir[i], {static_cast<ElementId>(idx), static_cast<ElementId>(index_of(n))});
        if (c[i] == lo[i] || c[i] == lo[i] + static_cast<std::int64_t>(sizes[i]) - 1) boundary = true;
      }
    }
    if (boundary) b.mark_frontier(static_cast<ElementId>(idx));
    std::string color;
    bool origin = std::all_of(c.begin(), c.end(), [](std::int64_t v) { return v == 0; });
    if (origin && coloring.origin_color) {
      color = *coloring.origin_color;
    } else if (!coloring.pattern.empty()) {
      std::size_t p = 0;
      for (std::size_t i = 0; i < d; ++i) {
        std::int64_t per = coloring.period[i];
        p = p * static_cast<std::size_t>(per) + static_cast<std::size_t>(((c[i] % per) + per) % per);
      }
      color = coloring.pattern[p];
    }
    if (!color.empty()) b.add_tuple(color_sym.at(color), {static_cast<ElementId>(idx)});
  }
  return std::move(b).build();
}

}  // namespace lociso
