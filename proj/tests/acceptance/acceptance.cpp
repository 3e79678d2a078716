// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lociso/algebra.hpp"
#include "lociso/ball.hpp"
#include "lociso/census.hpp"
#include "lociso/error.hpp"
#include "lociso/generators.hpp"
#include "lociso/iso.hpp"
#include "lociso/rigidity.hpp"
#include "lociso/symmetry.hpp"
#include "oracles.hpp"

using namespace lociso;

namespace {

struct Result {
  bool ok = true;
  std::string detail;
  std::string first_failure;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      first_failure = what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int prec = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

QuadraticIrrational q(const char* text) { return parse_quadratic(text); }

std::vector<std::pair<ElementId, ElementId>> pairs_of(const PartialIso& f) { return f.pairs; }

// ---------------------------------------------------------------------------
// 1. Sturmian windows with the same slope are locally isomorphic.
Result sturmian_local_isomorphism() {
  Result res;
  auto t0 = std::chrono::steady_clock::now();
  const std::int64_t W = 10000;
  const char* intercepts[] = {"0", "1/3", "1/4"};
  std::vector<Structure> windows;
  std::vector<std::string> colors;
  for (const char* s : intercepts) {
    windows.push_back(gen_sturmian(q("sqrt(2)"), q(s), W));
    colors.push_back(oracle::sturmian_colors(q("sqrt(2)"), q(s), W));
    res.require(oracle::window_colors(windows.back(), W) == colors.back(),
                std::string("window colors differ from the interval-count oracle for s=") + s);
  }
  std::size_t comparisons = 0;
  for (std::uint32_t h = 0; h <= 8; ++h) {
    std::vector<CensusTable> tables;
    for (const auto& m : windows) tables.push_back(census(m, h));
    for (std::size_t i = 0; i < windows.size(); ++i) {
      // Directed colored path: h-ball classes are exactly the length-(2h+1)
      // factors centered at elements of depth >= h.
      auto f = oracle::factors(colors[i].substr(0), 2 * h + 1);
      res.require(tables[i].entries.size() == f.size(),
                  "census class count differs from factor count at h=" + std::to_string(h));
      for (std::size_t j = 0; j < windows.size(); ++j) {
        if (i == j) continue;
        auto rep = extraction_compare(tables[i], tables[j]);
        ++comparisons;
        res.require(rep.m_in_n && rep.n_in_m, "extraction_compare fails between s=" + std::string(intercepts[i]) +
                                                  " and s=" + intercepts[j] + " at h=" + std::to_string(h));
        res.require(f == oracle::factors(colors[j], 2 * h + 1), "factor sets differ at h=" + std::to_string(h));
      }
    }
  }
  double dt = seconds_since(t0);
  res.require(dt < 60.0, "runtime " + fmt(dt) + " s exceeds 60 s");
  res.note(std::to_string(comparisons) + " ordered comparisons over h=0..8, both directions hold");
  res.note("runtime " + fmt(dt) + " s");
  return res;
}

// ---------------------------------------------------------------------------
// 2. Mirror symmetry-approximants exist exactly for the three cosets.

// Colors preserved by a -> c - a (reflection) or a -> a + c (translation) on
// every a with |a| <= radius.
bool preserves(const std::string& colors, std::int64_t W, std::int64_t c, bool reflection, std::int64_t radius) {
  for (std::int64_t a = -radius; a <= radius; ++a) {
    std::int64_t b = reflection ? c - a : a + c;
    if (std::llabs(b) > W) return false;
    if (colors[static_cast<std::size_t>(a + W)] != colors[static_cast<std::size_t>(b + W)]) return false;
  }
  return true;
}

Result sturmian_trichotomy() {
  Result res;
  const std::int64_t W = 10000;
  const std::uint32_t d = 4, r = 50;
  struct Case {
    const char* s;
    bool expect;
  };
  const Case cases[] = {{"0", true}, {"sqrt(2)/2", true}, {"1/2", true}, {"1/4", false}};
  std::string summary;
  for (const auto& c : cases) {
    auto m = gen_sturmian(q("sqrt(2)"), q(c.s), W, SturmianOrientation::Symmetric);
    auto colors = oracle::sturmian_colors(q("sqrt(2)"), q(c.s), W);
    SymmetryOptions opts;
    opts.anchor = m.require("0");
    auto rep = find_symmetries(m, d, r, opts);
    bool found = rep.verdict == SymmetryVerdict::Found;
    // Exhaustive oracle: every pointed isomorphism of balls of a symmetric
    // colored path is a translation or a reflection of the coordinates.
    bool oracle_mirror = false;
    for (std::int64_t t = -static_cast<std::int64_t>(d); t <= static_cast<std::int64_t>(d); ++t)
      if (preserves(colors, W, t, true, r)) oracle_mirror = true;
    bool oracle_translation = false;
    for (std::int64_t t = -static_cast<std::int64_t>(d); t <= static_cast<std::int64_t>(d); ++t)
      if (t != 0 && preserves(colors, W, t, false, r)) oracle_translation = true;
    res.require(!oracle_translation, std::string("oracle finds a translation for s=") + c.s);
    res.require(found == c.expect, std::string("verdict for s=") + c.s + " is " +
                                       std::string(symmetry_verdict_name(rep.verdict)));
    res.require(oracle_mirror == c.expect, std::string("oracle mirror existence disagrees for s=") + c.s);
    std::string centers;
    for (const auto& sym : rep.found) {
      res.require(oracle::is_partial_iso(m, m, pairs_of(sym.map)), "reported map fails oracle re-verification");
      res.require(sym.verified_radius >= r, "reported map verified below r");
      // Mirror: a + image(a) constant over the domain, and the domain covers B(0, r).
      std::set<std::int64_t> sums;
      for (auto [a, b] : sym.map.pairs) sums.insert(std::stoll(m.id(a)) + std::stoll(m.id(b)));
      res.require(sums.size() == 1, "found map is not a reflection");
      res.require(sym.map.size() >= 2 * r + 1, "found map does not cover B(0, r)");
      if (sums.size() == 1) {
        std::int64_t center = *sums.begin();
        res.require(preserves(colors, W, center, true, r), "reflection does not preserve the oracle colors");
        centers += (centers.empty() ? "" : ",") + std::to_string(center);
      }
    }
    summary += std::string(c.s) + ":" + std::string(symmetry_verdict_name(rep.verdict)) +
               (centers.empty() ? "" : "(a->" + centers + "-a)") + " ";
  }
  res.note(summary + "at d=4, r=50");
  return res;
}

// ---------------------------------------------------------------------------
// 3. Black-column frequency.
Result sturmian_frequency() {
  Result res;
  const std::int64_t W = 10000;
  auto m = gen_sturmian(q("sqrt(2)"), q("0"), W);
  auto colors = oracle::window_colors(m, W);
  auto direct = oracle::sturmian_colors(q("sqrt(2)"), q("0"), W);
  res.require(colors == direct, "window colors differ from the interval-count oracle");
  double freq = static_cast<double>(std::count(direct.begin(), direct.end(), 'B')) / static_cast<double>(direct.size());
  double target = std::sqrt(2.0) - 1.0;
  res.require(std::fabs(freq - target) <= 0.01, "frequency " + fmt(freq, 5) + " off target");
  res.note("Black frequency " + fmt(freq, 5) + " vs " + fmt(target, 5) + " (|diff| " + fmt(std::fabs(freq - target), 5) + ")");
  return res;
}

// ---------------------------------------------------------------------------
// 4. Trees: periodic address has a translation, Thue-Morse is rigid.

int tm_label(std::uint64_t n) { return (__builtin_popcountll(n - 1) & 1) ? 2 : 1; }  // a_n over {1,2}

// Child labels read upwards from element id "u<t>.c1...cm": c_m..c_1 then a_{t+1}, ...
std::vector<int> upward_labels(const std::string& id, std::size_t len, const std::function<int(std::uint64_t)>& a) {
  std::vector<std::string> parts;
  std::size_t p = 0;
  while (true) {
    auto dot = id.find('.', p);
    parts.push_back(id.substr(p, dot == std::string::npos ? std::string::npos : dot - p));
    if (dot == std::string::npos) break;
    p = dot + 1;
  }
  std::uint64_t t = std::stoull(parts[0].substr(1));
  std::vector<int> out;
  for (std::size_t i = parts.size(); i-- > 1 && out.size() < len;) out.push_back(std::stoi(parts[i]));
  for (std::uint64_t n = t + 1; out.size() < len; ++n) out.push_back(a(n));
  return out;
}

Result tree_dichotomy() {
  Result res;
  auto t0 = std::chrono::steady_clock::now();
  {
    auto addr = AddressSequence::parse("(121)", 1, 2);
    auto m = gen_kary_tree(2, addr, 2000, 14);
    auto rep = find_symmetries(m, 3, 10);
    res.require(rep.verdict == SymmetryVerdict::Found, "periodic address: no symmetry found");
    bool shift3 = false;
    for (const auto& sym : rep.found) {
      res.require(oracle::is_partial_iso(m, m, pairs_of(sym.map)), "periodic address: map fails oracle");
      if (sym.displacement == 3 && m.id(sym.source) == "u0" && m.id(sym.target) == "u3") {
        // Chain coherence: u_t -> u_{t+3} wherever defined.
        bool coherent = true;
        for (auto [a, b] : sym.map.pairs) {
          const auto& ia = m.id(a);
          if (ia.find('.') == std::string::npos)
            coherent &= m.id(b) == "u" + std::to_string(std::stoul(ia.substr(1)) + 3);
        }
        res.require(coherent, "periodic address: map is not the chain shift by 3");
        shift3 = true;
      }
    }
    res.require(shift3, "periodic address: no symmetry u0 -> u3 at displacement 3");
    res.note("period-3 address: " + std::string(symmetry_verdict_name(rep.verdict)) + " u0->u3 (displacement 3)");
  }
  {
    auto addr = AddressSequence::parse("tm", 1, 2);
    auto m = gen_kary_tree(2, addr, 2000, 18);
    auto rep = find_symmetries(m, 8, 50);
    res.require(rep.verdict == SymmetryVerdict::NoneFound,
                "Thue-Morse address: verdict " + std::string(symmetry_verdict_name(rep.verdict)));
    // Address oracle: no shift p <= 8 makes the address eventually periodic
    // over the tested range.
    for (std::uint64_t p = 1; p <= 8; ++p) {
      bool differs = false;
      for (std::uint64_t n = 1; n <= 50 && !differs; ++n) differs = tm_label(n) != tm_label(n + p);
      res.require(differs, "Thue-Morse oracle: shift " + std::to_string(p) + " preserves the address");
    }
    res.note("Thue-Morse address: " + std::string(symmetry_verdict_name(rep.verdict)) + " at d=8, r=50");
  }
  {
    auto addr = AddressSequence::parse("tm", 1, 2);
    auto m = gen_kary_tree(2, addr, 2000, 17);
    std::vector<std::uint32_t> radii{1, 2, 3, 4};
    auto rep = rigidity_characterization(m, radii, 20);
    res.require(rep.verdict == RigidityVerdict::HoldsUpToBounds,
                "Thue-Morse rigidity: " + std::string(rigidity_verdict_name(rep.verdict)));
    std::string ss;
    for (const auto& rr : rep.results) {
      res.require(rr.witness && rr.certified_s && *rr.certified_s <= 20, "rigidity: radius without certified witness");
      if (!rr.witness || !rr.certified_s) continue;
      // Address-word oracle: pointed s-balls in the tree are classified by
      // the s child labels read upwards; all of B(x, r) must be pairwise distinct.
      auto dist = oracle::bfs(m, *rr.witness);
      std::set<std::vector<int>> seen;
      std::size_t members = 0;
      for (ElementId e = 0; e < m.size(); ++e)
        if (dist[e] <= rr.r) {
          ++members;
          seen.insert(upward_labels(m.id(e), *rr.certified_s, tm_label));
        }
      res.require(seen.size() == members, "rigidity witness at r=" + std::to_string(rr.r) + " has an equivalent pair");
      ss += (ss.empty() ? "" : ",") + std::to_string(*rr.certified_s);
    }
    res.note("rigidity radii 1..4 s=20: " + std::string(rigidity_verdict_name(rep.verdict)) + " (certified s " + ss + ")");
  }
  res.note("runtime " + fmt(seconds_since(t0)) + " s");
  return res;
}

// ---------------------------------------------------------------------------
// 5. Binary tiling patches along eventually periodic vs Thue-Morse addresses.
Result hyperbolic_dichotomy() {
  Result res;
  auto t0 = std::chrono::steady_clock::now();
  struct Case {
    const char* address;
    const char* anchor;
    std::uint32_t d;
    std::size_t period;  // 0: aperiodic
  };
  const Case cases[] = {{"0(011)", "L1:0", 3, 3}, {"(01)", "L1:0", 3, 2}, {"(001)", "L1:0", 3, 3},
                        {"1(0)", "L1:0", 3, 1},   {"tm", "L1:0", 3, 0},   {"tm", "L0:0", 2, 0}};
  const std::uint32_t r = 5;
  std::string summary;
  for (const auto& c : cases) {
    auto addr = AddressSequence::parse(c.address, 0, 1);
    auto m = gen_binary_hyperbolic(addr, 40, 64, 8);
    SymmetryOptions opts;
    opts.anchor = m.require(c.anchor);
    auto rep = find_symmetries(m, c.d, r, opts);
    for (const auto& sym : rep.found)
      res.require(oracle::is_partial_iso(m, m, pairs_of(sym.map)), std::string("map fails oracle for ") + c.address);
    if (c.period) {
      res.require(rep.verdict == SymmetryVerdict::Found, std::string("no symmetry for periodic ") + c.address);
      // Tile oracle: (l, o) is the (o + a_{l+1}) mod 2 child of its parent
      // (l+1, floor((o + a_{l+1}) / 2)). A symmetry must move the anchor by a
      // nonzero multiple of the period in level and keep the upward child bits.
      auto upward_bits = [&](std::vector<std::int64_t> t) {
        std::vector<int> bits;
        for (std::uint32_t i = 0; i <= r; ++i) {
          std::int64_t a = t[0] + 1 >= 1 ? addr.at(static_cast<std::uint64_t>(t[0] + 1)) : 0;
          std::int64_t sum = t[1] + a;
          bits.push_back(static_cast<int>(((sum % 2) + 2) % 2));
          t = {t[0] + 1, (sum - (((sum % 2) + 2) % 2)) / 2};
        }
        return bits;
      };
      auto base = oracle::coords(std::string(c.anchor).substr(1));
      bool column_shift = false;
      for (const auto& sym : rep.found) {
        auto tc = oracle::coords(m.id(sym.target).substr(1));
        std::int64_t dl = tc[0] - base[0];
        if (dl != 0 && dl % static_cast<std::int64_t>(c.period) == 0 && upward_bits(tc) == upward_bits(base))
          column_shift = true;
      }
      res.require(column_shift, std::string("no column shift by the period for ") + c.address);
    } else {
      res.require(rep.verdict == SymmetryVerdict::NoneFound,
                  std::string("Thue-Morse verdict ") + std::string(symmetry_verdict_name(rep.verdict)));
      // Address oracle: a_n = a_{n+k} fails for every k <= d over the levels.
      for (std::uint64_t k = 1; k <= c.d; ++k) {
        bool differs = false;
        for (std::uint64_t n = 2; n + k < 40 && !differs; ++n)
          differs = (__builtin_popcountll(n - 1) & 1) != (__builtin_popcountll(n + k - 1) & 1);
        res.require(differs, "Thue-Morse oracle: level shift preserves the address");
      }
    }
    summary += std::string(c.address) + "@" + c.anchor + "/d" + std::to_string(c.d) + ":" +
               std::string(symmetry_verdict_name(rep.verdict)) + " ";
  }
  res.note(summary + "r=5, 40 levels, half-width 64");
  res.note("runtime " + fmt(seconds_since(t0)) + " s");
  return res;
}

// ---------------------------------------------------------------------------
// 6. Algebra suite.

bool oracle_equational(const Structure& m) {
  auto ts = oracle::tuples(m);
  for (std::size_t a = 0; a < ts.size(); ++a)
    for (std::size_t b = a + 1; b < ts.size(); ++b) {
      if (ts[a].first != ts[b].first) continue;
      const auto& x = ts[a].second;
      const auto& y = ts[b].second;
      for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
          if (i != j && x[i] == y[i] && x[j] != y[j]) return false;
    }
  return true;
}

// Equational scan restricted to tuple pairs sharing an element (linear time
// for the large windows).
bool oracle_equational_local(const Structure& m) {
  auto ts = oracle::tuples(m);
  std::map<std::tuple<std::uint32_t, std::size_t, ElementId>, std::set<std::vector<ElementId>>> by_pos;
  for (const auto& [sym, args] : ts)
    for (std::size_t i = 0; i < args.size(); ++i) by_pos[{sym, i, args[i]}].insert(args);
  for (const auto& [key, group] : by_pos) {
    if (group.size() < 2) continue;
    const auto& first = *group.begin();
    for (const auto& other : group)
      for (std::size_t j = 0; j < first.size(); ++j)
        if (j != std::get<1>(key) && first[j] != other[j]) return false;
  }
  return true;
}

std::string free_reduce(const std::string& w) {
  std::string out;
  for (char c : w) {
    if (c == '1') continue;
    if (!out.empty() && out.back() != c && std::tolower(out.back()) == std::tolower(c)) out.pop_back();
    else out.push_back(c);
  }
  return out.empty() ? "1" : out;
}

Result algebra_suite() {
  Result res;
  // Equational windows.
  std::vector<std::pair<std::string, Structure>> eq;
  eq.emplace_back("tree k=2 periodic", gen_kary_tree(2, AddressSequence::parse("(12)", 1, 2), 200, 6));
  eq.emplace_back("tree k=2 Thue-Morse", gen_kary_tree(2, AddressSequence::parse("tm", 1, 2), 200, 6));
  eq.emplace_back("tree k=3", gen_kary_tree(3, AddressSequence::parse("3(123)", 1, 2), 100, 4));
  eq.emplace_back("sturmian s=0", gen_sturmian(q("sqrt(2)"), q("0"), 2000));
  eq.emplace_back("sturmian s=1/3", gen_sturmian(q("sqrt(2)"), q("1/3"), 2000));
  for (const auto& [name, m] : eq) {
    res.require(equational_check(m).equational, name + " fails equational_check");
    res.require(oracle_equational_local(m), name + " fails the tuple-pair oracle");
  }
  // A non-equational control for the oracle itself.
  {
    Language lang;
    lang.add("R", 2);
    auto bad = oracle::make_closed(lang, 3, {{0, {0, 1}}, {0, {0, 2}}});
    res.require(!equational_check(bad).equational && !oracle_equational(bad), "R(0,1),R(0,2) accepted as equational");
  }

  // Free group: generators do not commute.
  {
    auto m = gen_cayley_free(2, 6);
    auto rep = strong_commutativity_check(m, 4);
    res.require(rep.verdict == Verdict::FailsWithWitness && rep.witness.has_value(), "Cayley k=2 passes commutativity");
    if (rep.witness) {
      const auto& w = *rep.witness;
      // Free-group oracle: R_i(y, y x_i); step (R_i,1,2) appends x_i, (R_i,2,1) appends x_i^-1.
      auto apply = [&](std::string x, const Word& word) {
        for (const auto& st : word) {
          char g = static_cast<char>('a' + st.symbol);
          x = free_reduce(x + (st.i == 0 ? g : static_cast<char>(std::toupper(g))));
        }
        return x;
      };
      std::string x = m.id(w.x);
      Word vw = w.v, wv = w.w;
      vw.insert(vw.end(), w.w.begin(), w.w.end());
      wv.insert(wv.end(), w.v.begin(), w.v.end());
      res.require(apply(x, vw) == m.id(w.xvw) && apply(x, wv) == m.id(w.xwv), "witness disagrees with free-group oracle");
      res.require(w.xvw != w.xwv && w.v.size() + w.w.size() <= 4, "witness does not separate xvw and xwv");
      res.note("Cayley k=2 R=6: witness x=" + x + " v=" + format_word(m.language(), w.v) +
               " w=" + format_word(m.language(), w.w));
    }
  }

  // Z^2: commutativity and regularity at length 6 with a coordinate oracle.
  {
    auto g1 = gen_grid({15, 15}, false);
    auto comm = strong_commutativity_check(g1, 6);
    res.require(comm.verdict == Verdict::HoldsUpToBounds, "Z^2 fails strong commutativity at 6");
    auto g2u = gen_grid({17, 17}, false);
    std::vector<const Structure*> fam_plain{&g1, &g2u};
    auto reg = strong_regularity_check(fam_plain, 6);
    res.require(reg.verdict == Verdict::HoldsUpToBounds, "Z^2 family fails strong regularity at 6");

    // Coordinate oracle: every word of length <= 6 from every anchor of depth
    // >= 6 lands at the coordinate sum of its steps, so xvw = xwv and xw = x
    // iff the steps cancel.
    std::size_t checked = 0;
    auto words = all_words(g1.language(), 6);
    for (ElementId x = 0; x < g1.size(); ++x) {
      if (oracle::depth(g1, x) < 6) continue;
      auto base = oracle::coords(g1.id(x));
      for (const auto& w : words) {
        auto c = base;
        for (const auto& st : w) {
          std::size_t axis = st.symbol;  // E, N
          c[axis] += st.i == 0 ? 1 : -1;
        }
        auto y = apply_word(g1, x, w);
        res.require(y && g1.id(*y) == oracle::coord_id(c), "apply_word disagrees with coordinate arithmetic");
        ++checked;
      }
    }
    res.note("Z^2 commutativity+regularity hold at 6; " + std::to_string(checked) + " word applications match coordinates");
  }
  return res;
}

// ---------------------------------------------------------------------------
// 7. Periodicity suite.
Result periodicity_suite() {
  Result res;
  // Checkerboard torus 8x8.
  {
    auto m = gen_grid({8, 8}, true, GridColoring::checkerboard(2));
    auto rep = detect_periodicity(m, 2);
    res.require(rep.rank && *rep.rank == 2, "checkerboard torus rank is not 2");
    res.require(rep.disjoint && rep.covering, "orbits not reported disjoint and covering");
    res.require(rep.weakly_connected, "period not weakly connected");
    // Orbit oracle: translation lattice from the generators' anchor images.
    auto a0 = oracle::coords(m.id(rep.anchor));
    std::set<std::pair<std::int64_t, std::int64_t>> lattice{{0, 0}}, frontier{{0, 0}};
    std::vector<std::pair<std::int64_t, std::int64_t>> gens;
    for (const auto& g : rep.generators) {
      auto img = g.image(rep.anchor);
      if (!img) continue;
      auto c = oracle::coords(m.id(*img));
      gens.emplace_back(((c[0] - a0[0]) % 8 + 8) % 8, ((c[1] - a0[1]) % 8 + 8) % 8);
    }
    while (!frontier.empty()) {
      std::set<std::pair<std::int64_t, std::int64_t>> next;
      for (auto [x, y] : frontier)
        for (auto [gx, gy] : gens) {
          std::pair<std::int64_t, std::int64_t> z{(x + gx) % 8, (y + gy) % 8};
          if (lattice.insert(z).second) next.insert(z);
        }
      frontier = std::move(next);
    }
    std::map<std::pair<std::int64_t, std::int64_t>, int> hits;
    for (ElementId a : rep.period) {
      auto c = oracle::coords(m.id(a));
      for (auto [x, y] : lattice) ++hits[{(c[0] + x) % 8, (c[1] + y) % 8}];
    }
    bool exact = hits.size() == 64 && std::all_of(hits.begin(), hits.end(), [](auto& kv) { return kv.second == 1; });
    res.require(exact, "orbit oracle: translates of A do not tile the torus exactly once");
    res.note("8x8 checkerboard torus rank " + (rep.rank ? std::to_string(*rep.rank) : std::string("-")) +
             ", lattice index " + std::to_string(lattice.size()) + ", oracle tiling exact");
  }
  // Quotient of the 12-cycle by rotation by 4.
  {
    auto m = gen_grid({12}, true);
    ElementMap rot(m.size());
    for (ElementId e = 0; e < m.size(); ++e) rot[e] = m.require(std::to_string((std::stoi(m.id(e)) + 4) % 12));
    auto qr = quotient(m, {rot});
    const auto& qs = qr.structure;
    res.require(qs.size() == 4 && qr.group_order == 3, "quotient is not 4 elements under a group of order 3");
    // Homomorphism oracle: every tuple of M projects to a tuple of M/H.
    auto qt = oracle::tuples(qs);
    std::set<std::pair<std::uint32_t, std::vector<ElementId>>> qset(qt.begin(), qt.end());
    for (const auto& [sym, args] : oracle::tuples(m)) {
      std::vector<ElementId> img;
      for (ElementId a : args) img.push_back(qr.projection[a]);
      res.require(qset.count({sym, img}) == 1, "projection is not a homomorphism");
    }
    // 4-cycle oracle: four Succ tuples, each element once as source and target, connected.
    std::map<ElementId, int> out_deg, in_deg;
    for (const auto& [sym, args] : qt) {
      ++out_deg[args[0]];
      ++in_deg[args[1]];
    }
    bool cycle = qt.size() == 4 && out_deg.size() == 4 && in_deg.size() == 4 && oracle::connected(qs);
    res.require(cycle, "quotient is not a 4-cycle");
    res.note("Z/12 by rotation 4: " + std::to_string(qs.size()) + "-cycle, surjection verified");
  }
  // Extension to the global diagonal shift.
  {
    auto m = gen_grid({21, 21}, false, GridColoring::checkerboard(2));
    auto rep = detect_periodicity(m, 2);
    res.require(rep.rank && *rep.rank == 2, "checkerboard window rank is not 2");
    ElementId x = m.require("0:0");
    PartialIso rho;
    rho.anchor = x;
    rho.certified_radius = 2;
    auto dist = oracle::bfs(m, x);
    for (ElementId e = 0; e < m.size(); ++e)
      if (dist[e] <= 2) {
        auto c = oracle::coords(m.id(e));
        rho.pairs.emplace_back(e, m.require(oracle::coord_id({c[0] + 1, c[1] + 1})));
      }
    rho.normalize();
    auto ext = extend_to_automorphism(m, rep, rho);
    std::size_t expected = 0;
    std::set<ElementId> core(rep.core.begin(), rep.core.end());
    for (ElementId e : rep.core) {
      auto c = oracle::coords(m.id(e));
      if (m.find(oracle::coord_id({c[0] + 1, c[1] + 1}))) ++expected;
    }
    bool exact = ext.size() == expected;
    for (auto [a, b] : ext.pairs) {
      auto ca = oracle::coords(m.id(a)), cb = oracle::coords(m.id(b));
      exact &= core.count(a) && cb[0] == ca[0] + 1 && cb[1] == ca[1] + 1;
    }
    res.require(exact, "extension differs from the coordinate shift by (1,1)");
    res.require(oracle::is_partial_iso(m, m, ext.pairs), "extension fails oracle re-verification");
    res.note("shift (1,1) from B(x,2) extended to " + std::to_string(ext.size()) + " core elements, matches coordinates");
  }
  return res;
}

// ---------------------------------------------------------------------------
// 8. Rigid limit.
Result rigid_limit_suite() {
  Result res;
  auto t0 = std::chrono::steady_clock::now();
  const std::int64_t W = 100000;
  auto m = gen_sturmian(q("sqrt(2)"), q("0"), W);
  auto colors = oracle::sturmian_colors(q("sqrt(2)"), q("0"), W);
  auto trace = rigid_limit(m, 2, m.require("0"));
  res.require(trace.steps.size() >= 3, "trace has " + std::to_string(trace.steps.size()) + " steps");
  std::string steps;
  std::uint32_t prev_r = 0, prev_s = 0;
  for (std::size_t n = 0; n < trace.steps.size(); ++n) {
    const auto& st = trace.steps[n];
    if (n > 0) res.require(st.r > prev_r && st.s > prev_s, "r_n, s_n not strictly increasing");
    prev_r = st.r;
    prev_s = st.s;
    std::int64_t x = std::stoll(m.id(st.anchor));
    auto factor = [&](std::int64_t c, std::uint32_t h) {
      return colors.substr(static_cast<std::size_t>(c - h + W), 2 * h + 1);
    };
    // No s_n-equivalent distinct pair in B(x_n, r_n): centered factors distinct.
    std::set<std::string> seen;
    for (std::int64_t y = x - st.r; y <= x + st.r; ++y) seen.insert(factor(y, st.s));
    res.require(seen.size() == 2 * st.r + 1, "step " + std::to_string(n) + " has an s_n-equivalent pair");
    // Every r_n-ball class of the step window occurs in M: centered factors
    // of the window's faithful elements appear in M's color string.
    auto all = oracle::factors(colors, 2 * st.r + 1);
    auto wcolors = oracle::window_colors(st.window, W);
    std::uint32_t R = st.r + st.s;
    bool present = true;
    for (std::int64_t y = x - R + st.r; y <= x + R - st.r; ++y)
      present &= all.count(wcolors.substr(static_cast<std::size_t>(y - st.r + W), 2 * st.r + 1)) == 1;
    res.require(present, "step " + std::to_string(n) + " window has a class absent from M");
    res.require(st.window.size() == 2 * R + 1, "step window is not B(x_n, r_n + s_n)");
    // Library re-check as a second opinion.
    res.require(verify_trace_step(m, st).ok(), "verify_trace_step rejects step " + std::to_string(n));
    if (st.theta) res.require(oracle::is_partial_iso(m, m, st.theta->pairs), "theta fails oracle re-verification");
    steps += "(x=" + m.id(st.anchor) + ",r=" + std::to_string(st.r) + ",s=" + std::to_string(st.s) + ")";
  }
  double dt = seconds_since(t0);
  res.require(dt < 300, "runtime over 5 min");
  res.note("T(sqrt2,0) W=1e5: " + std::to_string(trace.steps.size()) + " steps " + steps);

  auto p2 = gen_grid({400}, false, GridColoring::stripes({"Black", "White"}));
  bool fails = false;
  try {
    rigid_limit(p2, 2, p2.require("0"));
  } catch (const Error& e) {
    fails = e.code() == Errc::CharacterizationFails;
  }
  res.require(fails, "period-2 coloring does not raise CharacterizationFails");
  res.note(std::string("period-2 Z: ") + (fails ? "CharacterizationFails" : "no error"));
  res.note("runtime " + fmt(seconds_since(t0)) + " s");
  return res;
}

// ---------------------------------------------------------------------------
// 9. Exhaustive oracle equivalence on small closed structures.
//
// Every pointed ball of a closed structure is (at full radius) its center's
// connected component, so the corpus is every connected closed structure up
// to isomorphism, in the language {E/2, C/1}:
//   n <= 4: arbitrary E (directed, loops allowed) and C;
//   n <= 6: symmetric loop-free E with arbitrary C;
//   n <= 8: symmetric loop-free E without C.
// Classes are built by adding one element to every class of size n-1 (a
// connected structure always has an element whose removal keeps it
// connected) and deduplicated by the brute-force canonical code.

std::vector<oracle::Small> grow_graphs(const std::vector<oracle::Small>& prev, bool colors) {
  std::set<oracle::SmallCode> seen;
  std::vector<oracle::Small> out;
  for (const auto& g : prev) {
    const int n = g.n;
    for (std::uint32_t nb = 1; nb < (1u << n); ++nb)
      for (int c = 0; c < (colors ? 2 : 1); ++c) {
        oracle::Small h = g;
        h.n = n + 1;
        for (int v = 0; v < n; ++v)
          if ((nb >> v) & 1) {
            h.adj[v] |= static_cast<std::uint8_t>(1u << n);
            h.adj[n] |= static_cast<std::uint8_t>(1u << v);
          }
        if (c) h.color |= static_cast<std::uint8_t>(1u << n);
        if (seen.insert(oracle::small_canonical(h, -1)).second) out.push_back(h);
      }
  }
  return out;
}

std::vector<oracle::Small> all_connected_structures(int n) {
  std::set<oracle::SmallCode> seen;
  std::vector<oracle::Small> out;
  const int bits = n * n + n;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
    oracle::Small s;
    s.n = n;
    for (int i = 0; i < n; ++i) s.adj[i] = static_cast<std::uint8_t>((mask >> (i * n)) & ((1u << n) - 1));
    s.color = static_cast<std::uint8_t>(mask >> (n * n));
    if (!oracle::small_connected(s)) continue;
    if (seen.insert(oracle::small_canonical(s, -1)).second) out.push_back(s);
  }
  return out;
}

Result oracle_equivalence() {
  Result res;
  auto t0 = std::chrono::steady_clock::now();
  std::vector<oracle::Small> corpus;
  std::string sizes;
  for (int n = 1; n <= 4; ++n) {
    auto level = all_connected_structures(n);
    sizes += "n=" + std::to_string(n) + " general:" + std::to_string(level.size()) + " ";
    corpus.insert(corpus.end(), level.begin(), level.end());
  }
  {
    oracle::Small one;
    one.n = 1;
    std::vector<oracle::Small> colored{one}, plain{one};
    one.color = 1;
    colored.push_back(one);
    for (int n = 2; n <= 8; ++n) {
      if (n <= 6) {
        colored = grow_graphs(colored, true);
        if (n >= 5) {
          sizes += "n=" + std::to_string(n) + " colored graphs:" + std::to_string(colored.size()) + " ";
          corpus.insert(corpus.end(), colored.begin(), colored.end());
        }
      }
      plain = grow_graphs(plain, false);
      if (n >= 7) {
        sizes += "n=" + std::to_string(n) + " graphs:" + std::to_string(plain.size()) + " ";
        corpus.insert(corpus.end(), plain.begin(), plain.end());
      }
    }
  }

  std::mt19937_64 rng(20260916);
  std::size_t pointed = 0, sig_mismatch = 0, iso_checks = 0, iso_mismatch = 0;
  std::map<oracle::SmallCode, std::string> canon_to_sig;
  std::map<std::string, oracle::SmallCode> sig_to_canon;
  // Pointed classes with the oracle structure of one representative.
  std::map<oracle::SmallCode, std::pair<oracle::Small, int>> rep_of;
  std::map<std::pair<int, int>, std::vector<oracle::SmallCode>> by_shape;

  auto check_pair = [&](const PointedBall& a, const PointedBall& b) {
    auto lib = pointed_iso(a, b);
    auto sa = oracle::small_from_structure(a.structure), sb = oracle::small_from_structure(b.structure);
    auto brute = oracle::small_iso(sa, static_cast<int>(a.center), sb, static_cast<int>(b.center));
    ++iso_checks;
    if (lib.has_value() != brute.has_value()) ++iso_mismatch;
    else if (lib && (lib->pairs.size() != a.structure.size() ||
                     !oracle::is_partial_iso(a.structure, b.structure, lib->pairs)))
      ++iso_mismatch;
  };
  auto full_ball = [](const Structure& m, int c) {
    return ball(m, static_cast<ElementId>(c), static_cast<std::uint32_t>(m.size()));
  };

  for (const auto& s : corpus) {
    auto m = oracle::small_to_structure(s);
    int edges = 0;
    for (int v = 0; v < s.n; ++v) edges += __builtin_popcount(s.adj[v]);
    for (int c = 0; c < s.n; ++c) {
      ++pointed;
      auto b = full_ball(m, c);
      auto canon = oracle::small_canonical(s, c);
      auto code = signature(b).code;
      auto [x, ins_x] = canon_to_sig.emplace(canon, code);
      auto [y, ins_y] = sig_to_canon.emplace(code, canon);
      if (x->second != code || y->second != canon) ++sig_mismatch;
      if (rep_of.emplace(canon, std::make_pair(s, c)).second) by_shape[{s.n, edges}].push_back(canon);

      // (a) random relabeling of itself.
      std::vector<int> perm(s.n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      auto moved = oracle::small_permute(s, perm);
      check_pair(b, full_ball(oracle::small_to_structure(moved), perm[c]));
      // (b) the class representative.
      const auto& [rs, rc] = rep_of.at(canon);
      check_pair(b, full_ball(oracle::small_to_structure(rs), rc));
    }
  }
  // (c) non-isomorphic pointed classes of equal size and tuple count,
  // sampled: up to 4 partners per class.
  for (const auto& [shape, codes] : by_shape) {
    if (codes.size() < 2) continue;
    for (const auto& code : codes) {
      const auto& [s, c] = rep_of.at(code);
      auto b = full_ball(oracle::small_to_structure(s), c);
      for (int t = 0; t < 4; ++t) {
        const auto& [s2, c2] = rep_of.at(codes[rng() % codes.size()]);
        check_pair(b, full_ball(oracle::small_to_structure(s2), c2));
      }
    }
  }
  res.require(sig_mismatch == 0, std::to_string(sig_mismatch) + " signature/oracle disagreements");
  res.require(iso_mismatch == 0, std::to_string(iso_mismatch) + " pointed_iso/oracle disagreements");
  res.note(std::to_string(corpus.size()) + " connected structures (" + sizes + "), " + std::to_string(pointed) +
           " pointed balls, " + std::to_string(rep_of.size()) + " pointed classes; " + std::to_string(iso_checks) +
           " pointed_iso checks; agreement " + (sig_mismatch + iso_mismatch == 0 ? "100%" : "below 100%"));
  res.note("runtime " + fmt(seconds_since(t0)) + " s");
  return res;
}

// ---------------------------------------------------------------------------
// 10. Isomorphism of periodic windows.
Result periodic_isomorphism_suite() {
  Result res;
  {
    // Same checkerboard, the smaller window centered on a cell of the other color.
    auto n = gen_grid({25, 25}, false, GridColoring::checkerboard(2));
    GridColoring swapped = GridColoring::checkerboard(2);
    swapped.pattern = {"White", "Black", "Black", "White"};
    auto m = gen_grid({11, 11}, false, swapped);
    auto period = detect_periodicity(n, 2);
    res.require(period.rank && *period.rank == 2, "checkerboard window rank is not 2");
    auto s = periodic_isomorphism(m, n, period);
    res.require(s.outcome == SearchOutcome::Found && s.iso.has_value(), "checkerboard windows: no isomorphism");
    if (s.iso) {
      res.require(s.target_radius == m.depth(s.source), "isomorphism not certified to the window limit");
      res.require(s.iso->pairs.size() == oracle::ball_size(m, s.source, s.target_radius),
                  "isomorphism does not cover B(source, certified radius)");
      res.require(oracle::is_partial_iso(m, n, s.iso->pairs), "isomorphism fails oracle re-verification");
      // Coordinate oracle: a color-swapping translation by an odd vector
      // (or an odd-vector composition with a symmetry of the square lattice).
      auto [a0, b0] = s.iso->pairs.front();
      auto c0 = oracle::coords(m.id(a0)), d0 = oracle::coords(n.id(b0));
      res.require(((d0[0] + d0[1]) - (c0[0] + c0[1])) % 2 != 0, "isomorphism does not shift parity");
      res.note("checkerboard 11x11 -> 25x25 (swapped colors): found, certified radius " +
               std::to_string(s.target_radius));
    }
  }
  {
    auto m = gen_grid({60}, false, GridColoring::stripes({"Black", "White"}));
    auto n = gen_grid({60}, false, GridColoring::stripes({"Black", "White", "White"}));
    auto period = detect_periodicity(n, 3);
    res.require(period.rank && *period.rank == 3, "period-3 coloring rank is not 3");
    auto s = periodic_isomorphism(m, n, period);
    res.require(s.outcome == SearchOutcome::Absent, "period-2 vs period-3: not absent");
    res.require(s.witness && s.witness->h == 1, "absent without an h=1 census mismatch");
    if (s.witness) {
      // Factor oracle: the witness's centered length-3 word never occurs in N.
      std::string mc, nc;
      auto word = [](const Structure& st, std::int64_t lo, std::int64_t hi) {
        std::string out;
        for (std::int64_t a = lo; a <= hi; ++a) {
          auto e = st.require(std::to_string(a));
          bool black = false;
          for (const auto& inc : st.incidences(e))
            if (st.tuple_args(inc.tuple).size() == 1) black = st.language()[st.tuple_symbol(inc.tuple)].name == "Black";
          out.push_back(black ? 'B' : 'W');
        }
        return out;
      };
      std::int64_t w = std::stoll(m.id(s.witness->element));
      auto nf = oracle::factors(word(n, -30, 29), 3);
      res.require(!nf.count(word(m, w - 1, w + 1)), "witness ball occurs in N after all");
      res.note("period-2 vs period-3: absent, h=1 witness at " + m.id(s.witness->element) + " (" +
               word(m, w - 1, w + 1) + ")");
    }
  }
  return res;
}

}  // namespace

// Optional arguments select criteria by number.
int main(int argc, char** argv) {
  struct Criterion {
    const char* name;
    std::function<Result()> run;
  };
  const std::vector<Criterion> criteria = {
      {"sturmian windows locally isomorphic (h<=8, both directions)", sturmian_local_isomorphism},
      {"sturmian mirror trichotomy (d=4, r=50)", sturmian_trichotomy},
      {"sturmian black frequency", sturmian_frequency},
      {"tree rigidity dichotomy", tree_dichotomy},
      {"binary tiling dichotomy", hyperbolic_dichotomy},
      {"algebra suite", algebra_suite},
      {"periodicity suite", periodicity_suite},
      {"rigid limit construction", rigid_limit_suite},
      {"oracle equivalence on small closed structures", oracle_equivalence},
      {"isomorphism of periodic windows", periodic_isomorphism_suite},
  };
  std::set<std::size_t> only;
  for (int a = 1; a < argc; ++a) only.insert(std::stoul(argv[a]));
  int failed = 0;
  std::size_t ran = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && !only.count(i + 1)) continue;
    ++ran;
    Result r;
    try {
      r = criteria[i].run();
    } catch (const std::exception& e) {
      r.ok = false;
      r.first_failure = std::string("exception: ") + e.what();
    }
    if (!r.ok) ++failed;
    std::printf("%s criterion %zu: %s | %s%s\n", r.ok ? "PASS" : "FAIL", i + 1, criteria[i].name, r.detail.c_str(),
                r.ok ? "" : (" | first failure: " + r.first_failure).c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", ran - failed, ran);
  return failed;
}
