#include "lociso/structure.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "lociso/error.hpp"

namespace lociso {

std::optional<ElementId> Structure::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ElementId Structure::require(std::string_view id) const {
  auto e = find(id);
  if (!e) fail(Errc::UnknownElement, "no element '" + std::string(id) + "'");
  return *e;
}

std::optional<TupleId> Structure::find_tuple(SymbolId symbol, std::span<const ElementId> args) const {
  if (args.empty() || args[0] >= size()) return std::nullopt;
  for (const Incidence& inc : incidences(args[0])) {
    if (inc.position != 0 || tuple_symbol_[inc.tuple] != symbol) continue;
    auto have = tuple_args(inc.tuple);
    if (std::equal(have.begin(), have.end(), args.begin(), args.end())) return inc.tuple;
  }
  return std::nullopt;
}

StructureBuilder::StructureBuilder(Language language) { s_.language_ = std::move(language); }

ElementId StructureBuilder::add_element(std::string id) {
  if (id.empty()) fail(Errc::InvalidArgument, "empty element id");
  for (char c : id)
    if (c <= ' ' || c == '(' || c == ')' || c == ',' || c == '#' || c == 0x7f)
      fail(Errc::InvalidArgument, "element id '" + id + "' contains a reserved character");
  auto e = static_cast<ElementId>(s_.ids_.size());
  auto [it, inserted] = s_.index_.emplace(id, e);
  if (!inserted) fail(Errc::DuplicateElement, "element '" + id + "' declared twice");
  s_.ids_.push_back(std::move(id));
  frontier_mark_.push_back(0);
  return e;
}

ElementId StructureBuilder::ensure_element(const std::string& id) {
  auto it = s_.index_.find(id);
  if (it != s_.index_.end()) return it->second;
  return add_element(id);
}

std::optional<ElementId> StructureBuilder::find(std::string_view id) const { return s_.find(id); }

void StructureBuilder::add_tuple(SymbolId symbol, std::span<const ElementId> args) {
  if (symbol >= s_.language_.size()) fail(Errc::UnknownSymbol, "symbol index out of range");
  const Symbol& sym = s_.language_[symbol];
  if (args.size() != sym.arity)
    fail(Errc::ArityMismatch, "symbol '" + sym.name + "' has arity " + std::to_string(sym.arity) +
                                  ", got " + std::to_string(args.size()) + " arguments");
  for (ElementId a : args)
    if (a >= s_.ids_.size()) fail(Errc::DanglingElement, "tuple argument is not an element");
  s_.tuple_symbol_.push_back(symbol);
  s_.tuple_args_.insert(s_.tuple_args_.end(), args.begin(), args.end());
  s_.tuple_offset_.push_back(static_cast<std::uint32_t>(s_.tuple_args_.size()));
}

void StructureBuilder::mark_frontier(ElementId e) {
  if (e >= s_.ids_.size()) fail(Errc::DanglingElement, "frontier entry is not an element");
  frontier_mark_[e] = 1;
}

Structure StructureBuilder::build() && {
  Structure s = std::move(s_);
  const std::size_t n = s.ids_.size();

  // Sort and deduplicate tuples.
  const std::size_t raw_count = s.tuple_symbol_.size();
  std::vector<TupleId> order(raw_count);
  std::iota(order.begin(), order.end(), 0);
  auto args_of = [&](TupleId t) {
    return std::span<const ElementId>(s.tuple_args_.data() + s.tuple_offset_[t],
                                      s.tuple_offset_[t + 1] - s.tuple_offset_[t]);
  };
  auto less = [&](TupleId a, TupleId b) {
    if (s.tuple_symbol_[a] != s.tuple_symbol_[b]) return s.tuple_symbol_[a] < s.tuple_symbol_[b];
    auto x = args_of(a), y = args_of(b);
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  };
  std::sort(order.begin(), order.end(), less);
  std::vector<SymbolId> symbols;
  std::vector<std::uint32_t> offsets{0};
  std::vector<ElementId> args;
  symbols.reserve(raw_count);
  offsets.reserve(raw_count + 1);
  args.reserve(s.tuple_args_.size());
  for (std::size_t i = 0; i < raw_count; ++i) {
    if (i > 0 && !less(order[i - 1], order[i])) continue;
    symbols.push_back(s.tuple_symbol_[order[i]]);
    auto a = args_of(order[i]);
    args.insert(args.end(), a.begin(), a.end());
    offsets.push_back(static_cast<std::uint32_t>(args.size()));
  }
  s.tuple_symbol_ = std::move(symbols);
  s.tuple_offset_ = std::move(offsets);
  s.tuple_args_ = std::move(args);

  // Incidence lists in CSR form.
  std::vector<std::uint32_t> count(n + 1, 0);
  for (ElementId a : s.tuple_args_) ++count[a + 1];
  for (std::size_t i = 0; i < n; ++i) count[i + 1] += count[i];
  s.incidence_offset_ = count;
  s.incidence_.assign(s.tuple_args_.size(), Incidence{0, 0});
  for (TupleId t = 0; t < s.tuple_symbol_.size(); ++t) {
    for (std::uint32_t p = s.tuple_offset_[t]; p < s.tuple_offset_[t + 1]; ++p) {
      ElementId a = s.tuple_args_[p];
      s.incidence_[count[a]++] = Incidence{t, p - s.tuple_offset_[t]};
    }
  }

  // Gaifman adjacency.
  s.adjacency_offset_.assign(n + 1, 0);
  s.adjacency_.clear();
  std::vector<ElementId> scratch;
  for (ElementId e = 0; e < n; ++e) {
    scratch.clear();
    for (const Incidence& inc : s.incidences(e))
      for (ElementId b : s.tuple_args(inc.tuple))
        if (b != e) scratch.push_back(b);
    std::sort(scratch.begin(), scratch.end());
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    s.adjacency_.insert(s.adjacency_.end(), scratch.begin(), scratch.end());
    s.adjacency_offset_[e + 1] = static_cast<std::uint32_t>(s.adjacency_.size());
  }

  // Frontier and depth by multi-source BFS.
  s.frontier_flag_ = std::move(frontier_mark_);
  s.frontier_.clear();
  s.depth_.assign(n, kInfinite);
  std::vector<ElementId> queue;
  queue.reserve(n);
  for (ElementId e = 0; e < n; ++e)
    if (s.frontier_flag_[e]) {
      s.frontier_.push_back(e);
      s.depth_[e] = 0;
      queue.push_back(e);
    }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    ElementId u = queue[head];
    for (ElementId v : s.neighbors(u))
      if (s.depth_[v] == kInfinite) {
        s.depth_[v] = s.depth_[u] + 1;
        queue.push_back(v);
      }
  }
  s.max_depth_ = 0;
  for (auto d : s.depth_) s.max_depth_ = std::max(s.max_depth_, d);

  s.canonical_order_.resize(n);
  std::iota(s.canonical_order_.begin(), s.canonical_order_.end(), 0);
  std::sort(s.canonical_order_.begin(), s.canonical_order_.end(),
            [&](ElementId a, ElementId b) { return s.ids_[a] < s.ids_[b]; });
  s.rank_.assign(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) s.rank_[s.canonical_order_[i]] = i;
  std::sort(s.frontier_.begin(), s.frontier_.end(),
            [&](ElementId a, ElementId b) { return s.rank_[a] < s.rank_[b]; });
  return s;
}

Structure validate_structure(const RawStructure& raw) {
  StructureBuilder b(raw.language);
  for (const auto& id : raw.elements) b.add_element(id);
  std::vector<ElementId> args;
  for (const RawTuple& t : raw.tuples) {
    auto text = [&] {
      std::string out = t.symbol + "(";
      for (std::size_t i = 0; i < t.args.size(); ++i) out += (i ? "," : "") + t.args[i];
      return out + ")";
    };
    auto sym = raw.language.find(t.symbol);
    if (!sym) fail(Errc::UnknownSymbol, "tuple " + text() + ": unknown symbol '" + t.symbol + "'");
    const auto arity = raw.language[*sym].arity;
    if (t.args.size() != arity)
      fail(Errc::ArityMismatch, "tuple " + text() + ": symbol '" + t.symbol + "' has arity " + std::to_string(arity) +
                                    ", got " + std::to_string(t.args.size()) + " arguments");
    args.clear();
    for (const auto& a : t.args) {
      auto e = b.find(a);
      if (!e) fail(Errc::DanglingElement, "tuple " + text() + " mentions undeclared element '" + a + "'");
      args.push_back(*e);
    }
    b.add_tuple(*sym, args);
  }
  for (const auto& f : raw.frontier) {
    auto e = b.find(f);
    if (!e) fail(Errc::DanglingElement, "frontier mentions undeclared element '" + f + "'");
    b.mark_frontier(*e);
  }
  return std::move(b).build();
}

namespace {

std::vector<std::vector<std::string>> tuple_keys(const Structure& m) {
  std::vector<std::vector<std::string>> keys;
  keys.reserve(m.tuple_count());
  for (TupleId t = 0; t < m.tuple_count(); ++t) {
    std::vector<std::string> k{m.language()[m.tuple_symbol(t)].name};
    for (ElementId a : m.tuple_args(t)) k.push_back(m.id(a));
    keys.push_back(std::move(k));
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace

bool same_structure(const Structure& a, const Structure& b) {
  if (!(a.language() == b.language()) || a.size() != b.size() || a.tuple_count() != b.tuple_count() ||
      a.frontier().size() != b.frontier().size())
    return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.id(a.canonical_order()[i]) != b.id(b.canonical_order()[i])) return false;
  for (std::size_t i = 0; i < a.frontier().size(); ++i)
    if (a.id(a.frontier()[i]) != b.id(b.frontier()[i])) return false;
  return tuple_keys(a) == tuple_keys(b);
}

Structure induced_window(const Structure& m, std::span<const ElementId> keep) {
  std::vector<ElementId> local(m.size(), kInfinite);
  StructureBuilder b(m.language());
  for (ElementId e : keep)
    if (local[e] == kInfinite) local[e] = b.add_element(m.id(e));
  std::vector<ElementId> args;
  for (ElementId e : keep) {
    for (const Incidence& inc : m.incidences(e)) {
      auto targs = m.tuple_args(inc.tuple);
      // Emit each tuple once, from its first kept argument.
      bool all_in = true, first = true;
      for (std::size_t p = 0; p < targs.size(); ++p) {
        if (local[targs[p]] == kInfinite) all_in = false;
        if (targs[p] == e && p < inc.position) first = false;
      }
      if (!all_in || !first) continue;
      args.clear();
      for (ElementId a : targs) args.push_back(local[a]);
      b.add_tuple(m.tuple_symbol(inc.tuple), args);
    }
    bool boundary = m.is_frontier(e);
    for (ElementId v : m.neighbors(e))
      if (local[v] == kInfinite) boundary = true;
    if (boundary) b.mark_frontier(local[e]);
  }
  return std::move(b).build();
}

Structure with_frontier(const Structure& m, std::span<const ElementId> frontier) {
  StructureBuilder b(m.language());
  for (ElementId e = 0; e < m.size(); ++e) b.add_element(m.id(e));
  for (TupleId t = 0; t < m.tuple_count(); ++t) b.add_tuple(m.tuple_symbol(t), m.tuple_args(t));
  for (ElementId f : frontier) b.mark_frontier(f);
  return std::move(b).build();
}

bool is_connected(const Structure& m) {
  if (m.size() == 0) return true;
  std::vector<std::uint8_t> seen(m.size(), 0);
  std::vector<ElementId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    ElementId u = stack.back();
    stack.pop_back();
    for (ElementId v : m.neighbors(u))
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
  }
  return reached == m.size();
}

std::size_t max_unit_ball_size(const Structure& m) {
  std::size_t best = 0;
  for (ElementId e = 0; e < m.size(); ++e)
    if (!m.is_frontier(e)) best = std::max(best, m.neighbors(e).size() + 1);
  return best;
}

}  // namespace lociso
