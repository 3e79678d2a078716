#include "commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "lociso/address.hpp"
#include "lociso/ball.hpp"
#include "lociso/error.hpp"
#include "lociso/generators.hpp"
#include "lociso/io.hpp"
#include "lociso/parallel.hpp"
#include "lociso/quadratic.hpp"
#include "report.hpp"

namespace lociso::cli {
namespace {

struct Outcome {
  Verdict verdict = Verdict::Inconclusive;
  std::string outcome;
  Json result = Json::object();
};

struct Invocation {
  std::string command;
  Json input = Json::object();
  Json bounds = Json::object();
};

using Body = std::function<Outcome(Invocation&)>;

// Every option of every subcommand; CLI11 binds into these.
struct Args {
  std::string report_path;
  std::size_t threads = 0;

  std::string file, file2, output;
  std::vector<std::string> family;

  // generators
  std::string r_text, s_text = "0";
  std::int64_t width = 1000;
  bool symmetric = false;
  std::uint32_t k = 2;
  std::string address;
  std::uint32_t depth = 64;
  std::optional<std::uint32_t> ball_radius;
  std::uint32_t levels = 40;
  std::uint32_t half_width = 64;
  std::optional<std::uint32_t> below;
  std::uint32_t radius = 6;
  std::string sizes = "8x8";
  bool torus = false;
  std::string coloring = "none";
  std::optional<std::string> origin_color;

  // analyses
  std::string center;
  std::uint32_t h = 1;
  std::optional<std::uint32_t> k_bound;
  bool isomorphism = false;
  std::size_t rank_bound = 2;
  std::optional<std::uint32_t> radius_cap;
  std::size_t max_len = 4;
  std::uint32_t d = 3;
  std::uint32_t sym_r = 5;
  std::string anchor;
  bool include_identity = false;
  std::optional<std::uint32_t> extension_limit;
  std::optional<std::uint32_t> displacement;
  std::optional<std::uint32_t> margin;
  std::string radii = "1..3";
  std::uint32_t s = 10;
  std::optional<std::size_t> anchor_limit;
  std::optional<std::uint32_t> lip_bound;
  bool no_lip = false;
  std::size_t steps = 2;
  std::string seed;
  std::string trace_dir;
  std::optional<std::uint32_t> s_cap;
  std::vector<std::string> words;
};

std::vector<std::uint32_t> parse_radii(const std::string& text) {
  std::vector<std::uint32_t> out;
  auto num = [&](const std::string& t) -> std::uint32_t {
    try {
      std::size_t used = 0;
      unsigned long v = std::stoul(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return static_cast<std::uint32_t>(v);
    } catch (const std::exception&) {
      fail(Errc::InvalidArgument, "bad radius '" + t + "'");
    }
  };
  if (auto dots = text.find(".."); dots != std::string::npos) {
    std::uint32_t lo = num(text.substr(0, dots)), hi = num(text.substr(dots + 2));
    if (lo > hi) fail(Errc::InvalidArgument, "empty radius range '" + text + "'");
    for (std::uint32_t r = lo; r <= hi; ++r) out.push_back(r);
  } else {
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) out.push_back(num(part));
  }
  if (out.empty()) fail(Errc::InvalidArgument, "no radii given");
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, sep)) out.push_back(part);
  return out;
}

ElementId deepest(const Structure& m) {
  ElementId best = m.canonical_order().front();
  for (ElementId e : m.canonical_order())
    if (m.depth(e) > m.depth(best)) best = e;
  return best;
}

std::optional<ElementId> element_option(const Structure& m, const std::string& id) {
  if (id.empty()) return std::nullopt;
  return m.require(id);
}

Json optional_json(const auto& v) { return v ? Json(*v) : Json(nullptr); }

void emit_structure(const Structure& m, const std::string& path) {
  if (path.empty() || path == "-") {
    write_structure(std::cout, m);
    std::cout.flush();
  } else {
    save_structure(path, m);
  }
}

Json loaded(const Structure& m, const std::string& path) { return Json{{"structure", window_json(m, path)}}; }

// ---- generators ----

Outcome finish_gen(Invocation& inv, const Structure& m, const Args& a) {
  emit_structure(m, a.output);
  inv.input = Json::object();
  Json result = window_json(m, a.output.empty() ? "-" : a.output);
  return {Verdict::HoldsUpToBounds, "generated", std::move(result)};
}

Body gen_sturmian_body(const Args& a) {
  return [&a](Invocation& inv) {
    auto r = parse_quadratic(a.r_text), s = parse_quadratic(a.s_text);
    inv.bounds = Json{{"r", r.to_string()}, {"s", s.to_string()}, {"width", a.width}, {"symmetric", a.symmetric}};
    auto m = gen_sturmian(r, s, a.width, a.symmetric ? SturmianOrientation::Symmetric : SturmianOrientation::Directed);
    return finish_gen(inv, m, a);
  };
}

Body gen_tree_body(const Args& a) {
  return [&a](Invocation& inv) {
    auto addr = AddressSequence::parse(a.address, 1, 2);
    inv.bounds = Json{{"k", a.k}, {"address", addr.to_string()}, {"depth", a.depth}, {"ball_radius", optional_json(a.ball_radius)}};
    return finish_gen(inv, gen_kary_tree(a.k, addr, a.depth, a.ball_radius), a);
  };
}

Body gen_hyperbolic_body(const Args& a) {
  return [&a](Invocation& inv) {
    auto addr = AddressSequence::parse(a.address, 0, 1);
    inv.bounds = Json{{"address", addr.to_string()}, {"levels", a.levels}, {"width", a.half_width}, {"below", optional_json(a.below)}};
    return finish_gen(inv, gen_binary_hyperbolic(addr, a.levels, a.half_width, a.below), a);
  };
}

Body gen_cayley_body(const Args& a) {
  return [&a](Invocation& inv) {
    inv.bounds = Json{{"k", a.k}, {"radius", a.radius}};
    return finish_gen(inv, gen_cayley_free(a.k, a.radius), a);
  };
}

GridColoring parse_coloring(const std::string& text, std::size_t dims) {
  if (text == "none") return GridColoring::none();
  if (text == "checkerboard") return GridColoring::checkerboard(dims);
  if (text.rfind("stripes:", 0) == 0) {
    auto colors = split(text.substr(8), ',');
    if (colors.empty()) fail(Errc::InvalidArgument, "stripes need at least one color");
    return GridColoring::stripes(colors);
  }
  fail(Errc::InvalidArgument, "unknown coloring '" + text + "' (none, checkerboard, stripes:A,B,...)");
}

Body gen_grid_body(const Args& a) {
  return [&a](Invocation& inv) {
    std::vector<std::uint32_t> sizes;
    for (const auto& part : split(a.sizes, 'x')) {
      auto v = parse_radii(part);
      if (v.size() != 1 || v[0] == 0) fail(Errc::InvalidArgument, "bad grid size '" + a.sizes + "'");
      sizes.push_back(v[0]);
    }
    auto coloring = parse_coloring(a.coloring, sizes.size());
    if (a.origin_color) coloring.origin_color = *a.origin_color;
    inv.bounds = Json{{"sizes", sizes}, {"torus", a.torus}, {"coloring", a.coloring}, {"origin_color", optional_json(a.origin_color)}};
    return finish_gen(inv, gen_grid(sizes, a.torus, coloring), a);
  };
}

// ---- analyses ----

Body validate_body(const Args& a) {
  return [&a](Invocation& inv) {
    auto m = load_structure(a.file);
    inv.input = loaded(m, a.file);
    auto eq = equational_check(m);
    Json result{{"connected", is_connected(m)}, {"equational", eq.equational}, {"max_unit_ball", max_unit_ball_size(m)}};
    return Outcome{Verdict::HoldsUpToBounds, "valid", std::move(result)};
  };
}

Body ball_body(const Args& a) {
  return [&a](Invocation& inv) {
    auto m = load_structure(a.file);
    inv.input = loaded(m, a.file);
    ElementId c = a.center.empty() ? deepest(m) : m.require(a.center);
    inv.bounds = Json{{"center", m.id(c)}, {"radius", a.radius}, {"center_depth", m.depth(c) == kInfinite ? Json(nullptr) : Json(m.depth(c))}};
    auto b = ball(m, c, a.radius);
    if (!a.output.empty()) save_structure(a.output, b.structure);
    Json result{{"elements", b.structure.size()},
                {"tuples", b.structure.tuple_count()},
                {"signature", ball_signature(m, c, a.radius).digest()},
                {"output", a.output.empty() ? Json(nullptr) : Json(a.output)}};
    return Outcome{Verdict::HoldsUpToBounds, "faithful_ball", std::move(result)};
  };
}

Body census_body(const Args& a) {
  return [&a](Invocation& inv) {
    auto m = load_structure(a.file);
    inv.input = loaded(m, a.file);
    inv.bounds = Json{{"h", a.h}};
    auto t = census(m, a.h);
    return Outcome{Verdict::HoldsUpToBounds, "census", census_json(m, t)};
  };
}

Body lip_body(const Args& a) {
  return [&a](Invocation& inv) {
    auto m = load_structure(a.file);
    inv.input = loaded(m, a.file);
    std::uint32_t bound = a.k_bound ? *a.k_bound : default_lip_bound(m, a.h);
    inv.bounds = Json{{"h", a.h}, {"k_bound", bound}};
    auto rep = lip_check(m, a.h, bound);
    std::string name = rep.verdict == Verdict::HoldsUpToBounds ? "lip_within_bound" : "lip_counterexample";
    return Outcome{rep.verdict, name, lip_json(m, rep)};
  };
}

Body compare_body(const Args& a) {
  return [&a](Invocation& inv) {
    auto m = load_structure(a.file);
    auto n = load_structure(a.file2);
    inv.input = Json{{"m", window_json(m, a.file)}, {"n", window_json(n, a.file2)}};
    if (!a.isomorphism) {
      inv.bounds = Json{{"h", a.h}};
      auto rep = extraction_compare(m, n, a.h);
      bool same = rep.m_in_n && rep.n_in_m;
      return Outcome{same ? Verdict::HoldsUpToBounds : Verdict::FailsWithWitness,
                     same ? "same_ball_classes" : "class_missing", compare_json(m, n, rep)};
    }
    inv.bounds = Json{{"rank_bound", a.rank_bound}, {"radius_cap", optional_json(a.radius_cap)}};
    auto period = detect_periodicity(n, a.rank_bound);
    if (!period.rank) {
      Json result{{"period_of_n", period_json(n, period)}};
      return Outcome{Verdict::Inconclusive, "n_has_no_period_within_bound", std::move(result)};
    }
    PeriodicIsoOptions opts;
    opts.radius_cap = a.radius_cap;
    auto search = periodic_isomorphism(m, n, period, opts);
    inv.bounds["target_radius"] = search.target_radius;
    Verdict v = search.outcome == SearchOutcome::Found    ? Verdict::HoldsUpToBounds
                : search.outcome == SearchOutcome::Absent ? Verdict::FailsWithWitness
                                                          : Verdict::Inconclusive;
    Json result{{"period_of_n", period_json(n, period)}, {"search", search_json(m, n, search)}};
    return Outcome{v, std::string(search_outcome_name(search.outcome)), std::move(result)};
  };
}

Body algebra_body(const Args& a) {
  return [&a](Invocation& inv) {
    auto m = load_structure(a.file);
    std::vector<Structure> extra;
    for (const auto& p : a.family) extra.push_back(load_structure(p));
    inv.input = loaded(m, a.file);
    Json fam = Json::array();
    for (std::size_t i = 0; i < extra.size(); ++i) fam.push_back(window_json(extra[i], a.family[i]));
    inv.input["family"] = std::move(fam);
    inv.bounds = Json{{"max_len", a.max_len}};

    Json result;
    auto eq = equational_check(m);
    Json eqj{{"equational", eq.equational}};
    if (eq.witness) {
      const auto& w = *eq.witness;
      eqj["witness"] = Json{{"symbol", m.language()[w.symbol].name}, {"from", w.i + 1}, {"to", w.j + 1},
                            {"first", w.first}, {"second", w.second}};
    }
    result["equational"] = std::move(eqj);
    if (!eq.equational) return Outcome{Verdict::FailsWithWitness, "not_equational", std::move(result)};

    auto comm = strong_commutativity_check(m, a.max_len);
    Json cj{{"verdict", std::string(verdict_name(comm.verdict))}, {"anchors", comm.anchors}, {"pairs_tested", comm.pairs_tested}};
    if (comm.witness) {
      const auto& w = *comm.witness;
      const auto& lang = m.language();
      cj["witness"] = Json{{"x", m.id(w.x)}, {"v", format_word(lang, w.v)}, {"w", format_word(lang, w.w)},
                           {"xvw", m.id(w.xvw)}, {"xwv", m.id(w.xwv)}};
    }
    result["strong_commutativity"] = std::move(cj);

    std::vector<const Structure*> family{&m};
    for (const auto& e : extra) family.push_back(&e);
    auto reg = strong_regularity_check(family, a.max_len);
    Json rj{{"verdict", std::string(verdict_name(reg.verdict))}, {"words_tested", reg.words_tested}};
    if (reg.witness) {
      const auto& w = *reg.witness;
      rj["witness"] = Json{{"fixed_structure", w.fixed_structure}, {"fixed_anchor", family[w.fixed_structure]->id(w.fixed_anchor)},
                           {"moved_structure", w.moved_structure}, {"moved_anchor", family[w.moved_structure]->id(w.moved_anchor)},
                           {"word", format_word(m.language(), w.w)}};
    }
    result["strong_regularity"] = std::move(rj);

    Verdict v = Verdict::HoldsUpToBounds;
    for (Verdict part : {comm.verdict, reg.verdict}) {
      if (part == Verdict::FailsWithWitness) v = Verdict::FailsWithWitness;
      else if (part == Verdict::Inconclusive && v == Verdict::HoldsUpToBounds) v = Verdict::Inconclusive;
    }
    std::string name = v == Verdict::HoldsUpToBounds ? "algebraic_properties_hold" : v == Verdict::FailsWithWitness ? "property_fails" : "inconclusive";
    return Outcome{v, name, std::move(result)};
  };
}

Body symmetries_body(const Args& a) {
  return [&a](Invocation& inv) {
    auto m = load_structure(a.file);
    inv.input = loaded(m, a.file);
    SymmetryOptions opts;
    opts.exclude_identity = !a.include_identity;
    opts.anchor = element_option(m, a.anchor);
    opts.extension_limit = a.extension_limit;
    inv.bounds = Json{{"d", a.d}, {"r", a.sym_r}, {"extension_limit", optional_json(a.extension_limit)}};
    auto rep = find_symmetries(m, a.d, a.sym_r, opts);
    inv.bounds["tested_radius"] = rep.tested_radius;
    Verdict v = rep.verdict == SymmetryVerdict::Found       ? Verdict::HoldsUpToBounds
                : rep.verdict == SymmetryVerdict::NoneFound ? Verdict::FailsWithWitness
                                                            : Verdict::Inconclusive;
    return Outcome{v, std::string(symmetry_verdict_name(rep.verdict)), symmetry_json(m, rep)};
  };
}

Body periods_body(const Args& a) {
  return [&a](Invocation& inv) {
    auto m = load_structure(a.file);
    inv.input = loaded(m, a.file);
    PeriodOptions opts;
    opts.anchor = element_option(m, a.anchor);
    opts.displacement = a.displacement;
    opts.margin = a.margin;
    auto rep = detect_periodicity(m, a.rank_bound, opts);
    inv.bounds = Json{{"rank_bound", a.rank_bound}, {"displacement", rep.displacement_bound}, {"margin", rep.margin}};
    bool ok = rep.rank.has_value();
    return Outcome{ok ? Verdict::HoldsUpToBounds : Verdict::FailsWithWitness,
                   ok ? "period_found" : "no_period_within_bound", period_json(m, rep)};
  };
}

Body rigidity_body(const Args& a) {
  return [&a](Invocation& inv) {
    auto m = load_structure(a.file);
    inv.input = loaded(m, a.file);
    auto radii = parse_radii(a.radii);
    RigidityOptions opts;
    if (a.anchor_limit) opts.anchor_limit = *a.anchor_limit;
    opts.check_lip = !a.no_lip;
    opts.lip_bound = a.lip_bound;
    inv.bounds = Json{{"radii", radii}, {"s", a.s}, {"anchor_limit", opts.anchor_limit}, {"lip_bound", optional_json(a.lip_bound)}};
    auto rep = rigidity_characterization(m, radii, a.s, opts);
    Verdict v = rep.verdict == RigidityVerdict::HoldsUpToBounds     ? Verdict::HoldsUpToBounds
                : rep.verdict == RigidityVerdict::PropertyPDetected ? Verdict::FailsWithWitness
                                                                    : Verdict::Inconclusive;
    return Outcome{v, std::string(rigidity_verdict_name(rep.verdict)), rigidity_json(m, rep)};
  };
}

Body rigid_limit_body(const Args& a) {
  return [&a](Invocation& inv) {
    auto m = load_structure(a.file);
    inv.input = loaded(m, a.file);
    ElementId seed = a.seed.empty() ? deepest(m) : m.require(a.seed);
    RigidLimitOptions opts;
    opts.s_cap = a.s_cap;
    if (a.anchor_limit) opts.anchor_limit = *a.anchor_limit;
    opts.lip_bound = a.lip_bound;
    inv.bounds = Json{{"steps", a.steps}, {"seed", m.id(seed)}, {"s_cap", optional_json(a.s_cap)}, {"anchor_limit", opts.anchor_limit}};
    auto trace = rigid_limit(m, a.steps, seed, opts);
    Json checks = Json::array();
    for (std::size_t n = 0; n < trace.steps.size(); ++n) {
      auto c = verify_trace_step(m, trace.steps[n]);
      if (!c.ok()) fail(Errc::VerificationFailed, "trace step " + std::to_string(n) + " failed re-check: " + c.detail);
      checks.push_back(Json{{"n", n}, {"classes_present", c.classes_present}, {"no_equivalent_pair", c.no_equivalent_pair}});
    }
    if (!a.trace_dir.empty()) write_trace_directory(a.trace_dir, m, trace);
    Json result = trace_json(m, trace);
    result["checks"] = std::move(checks);
    result["trace_dir"] = a.trace_dir.empty() ? Json(nullptr) : Json(a.trace_dir);
    bool truncated = trace.truncated.has_value();
    return Outcome{truncated ? Verdict::Inconclusive : Verdict::HoldsUpToBounds,
                   truncated ? "trace_truncated" : "trace_complete", std::move(result)};
  };
}

Body quotient_body(const Args& a) {
  return [&a](Invocation& inv) {
    auto m = load_structure(a.file);
    inv.input = loaded(m, a.file);
    inv.bounds = Json{{"words", a.words}};
    std::vector<ElementMap> gens;
    for (const auto& text : a.words) {
      Word w = parse_word(m.language(), text);
      ElementMap map(m.size());
      for (ElementId e = 0; e < m.size(); ++e) {
        auto img = apply_word(m, e, w);
        if (!img) fail(Errc::NotAutomorphism, "word '" + text + "' is undefined at " + m.id(e));
        map[e] = *img;
      }
      gens.push_back(std::move(map));
    }
    auto q = quotient(m, gens);
    if (!a.output.empty()) save_structure(a.output, q.structure);
    Json projection = Json::object();
    for (ElementId e : m.canonical_order()) projection[m.id(e)] = q.structure.id(q.projection[e]);
    Json result{{"group_order", q.group_order},
                {"elements", q.structure.size()},
                {"tuples", q.structure.tuple_count()},
                {"projection", std::move(projection)},
                {"output", a.output.empty() ? Json(nullptr) : Json(a.output)}};
    return Outcome{Verdict::HoldsUpToBounds, "quotient", std::move(result)};
  };
}

// Conditions where the window, not the structure, limits the answer.
bool window_limited(Errc c) {
  return c == Errc::WindowExhausted || c == Errc::HypothesisUnverified || c == Errc::NoFaithfulElements ||
         c == Errc::UnfaithfulRadius;
}

void write_report(const Json& report, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << report.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) fail(Errc::InvalidArgument, "cannot write report to " + path);
  out << report.dump(2) << '\n';
}

}  // namespace

int run(int argc, char** argv) {
  Args a;
  CLI::App app{"Local isomorphism analysis of relational structure windows"};
  app.set_help_flag("--help", "Print this help and exit");  // -h would clash with --h
  app.require_subcommand(1);
  app.add_option("--report", a.report_path, "Write the JSON report here (default: stdout)");
  app.add_option("--threads", a.threads, "Worker threads, 0 = hardware concurrency")->check(CLI::NonNegativeNumber);

  std::vector<std::pair<CLI::App*, Body>> bodies;
  auto input = [&](CLI::App* sub) { sub->add_option("file", a.file, "Structure file")->required()->check(CLI::ExistingFile); };

  auto* gen = app.add_subcommand("gen", "Generate a structure window");
  gen->require_subcommand(1);
  auto gen_output = [&](CLI::App* sub) { sub->add_option("-o,--output", a.output, "Structure file (default: stdout)"); };
  {
    auto* s = gen->add_subcommand("sturmian", "Cut-and-project coloring of Z");
    s->add_option("--r", a.r_text, "Slope (p+q*sqrt(D))/u")->required();
    s->add_option("--s", a.s_text, "Intercept")->capture_default_str();
    s->add_option("--width", a.width, "Half-width W: columns -W..W")->capture_default_str()->check(CLI::PositiveNumber);
    s->add_flag("--symmetric", a.symmetric, "Undirected adjacency, so mirrors are automorphisms");
    gen_output(s);
    bodies.emplace_back(s, gen_sturmian_body(a));
  }
  {
    auto* s = gen->add_subcommand("tree", "Pointed k-ary functional tree along an address");
    s->add_option("--k", a.k, "Arity")->capture_default_str()->check(CLI::PositiveNumber);
    s->add_option("--address", a.address, "Address: digits, (period) or tm")->required();
    s->add_option("--depth", a.depth, "Length of the ancestor chain")->capture_default_str();
    s->add_option("--ball-radius", a.ball_radius, "Full ball around the anchor");
    gen_output(s);
    bodies.emplace_back(s, gen_tree_body(a));
  }
  {
    auto* s = gen->add_subcommand("hyperbolic", "Binary tiling patch along an address");
    s->add_option("--address", a.address, "Address bits: digits, (period) or tm")->required();
    s->add_option("--levels", a.levels, "Number of levels")->capture_default_str()->check(CLI::PositiveNumber);
    s->add_option("--width", a.half_width, "Half-width of the anchor row")->capture_default_str();
    s->add_option("--below", a.below, "Levels below the anchor");
    gen_output(s);
    bodies.emplace_back(s, gen_hyperbolic_body(a));
  }
  {
    auto* s = gen->add_subcommand("cayley", "Ball in the free group Cayley structure");
    s->add_option("--k", a.k, "Generators")->capture_default_str()->check(CLI::PositiveNumber);
    s->add_option("--radius", a.radius, "Ball radius")->capture_default_str();
    gen_output(s);
    bodies.emplace_back(s, gen_cayley_body(a));
  }
  {
    auto* s = gen->add_subcommand("grid", "Z^d box or torus");
    s->add_option("--sizes", a.sizes, "Side lengths, e.g. 8x8")->capture_default_str();
    s->add_flag("--torus", a.torus, "Wrap around (closed window)");
    s->add_option("--coloring", a.coloring, "none | checkerboard | stripes:A,B,...")->capture_default_str();
    s->add_option("--origin-color", a.origin_color, "Extra color at the origin only");
    gen_output(s);
    bodies.emplace_back(s, gen_grid_body(a));
  }

  {
    auto* s = app.add_subcommand("validate", "Parse and check a structure file");
    input(s);
    bodies.emplace_back(s, validate_body(a));
  }
  {
    auto* s = app.add_subcommand("ball", "Extract a faithful pointed ball");
    input(s);
    s->add_option("--center", a.center, "Center id (default: deepest element)");
    s->add_option("--radius", a.radius, "Radius")->capture_default_str();
    s->add_option("-o,--output", a.output, "Write the ball as a structure file");
    bodies.emplace_back(s, ball_body(a));
  }
  {
    auto* s = app.add_subcommand("census", "Classes of faithful h-balls");
    input(s);
    s->add_option("--h", a.h, "Ball radius")->capture_default_str();
    bodies.emplace_back(s, census_body(a));
  }
  {
    auto* s = app.add_subcommand("lip", "Local isomorphism property check");
    input(s);
    s->add_option("--h", a.h, "Ball radius")->capture_default_str();
    s->add_option("--k-bound", a.k_bound, "Largest recurrence radius accepted");
    bodies.emplace_back(s, lip_body(a));
  }
  {
    auto* s = app.add_subcommand("compare", "Compare ball classes of two windows");
    input(s);
    s->add_option("other", a.file2, "Second structure file")->required()->check(CLI::ExistingFile);
    s->add_option("--h", a.h, "Ball radius")->capture_default_str();
    s->add_flag("--isomorphism", a.isomorphism, "Search an isomorphism onto the (periodic) second window");
    s->add_option("--rank-bound", a.rank_bound, "Period size bound for the second window")->capture_default_str();
    s->add_option("--radius-cap", a.radius_cap, "Largest radius of the isomorphism search");
    bodies.emplace_back(s, compare_body(a));
  }
  {
    auto* s = app.add_subcommand("algebra", "Equational, commutativity and regularity checks");
    input(s);
    s->add_option("--max-len", a.max_len, "Word length bound")->capture_default_str();
    s->add_option("--family", a.family, "Further structures for the regularity check")->check(CLI::ExistingFile);
    bodies.emplace_back(s, algebra_body(a));
  }
  {
    auto* s = app.add_subcommand("symmetries", "Local symmetries of a deep anchor");
    input(s);
    s->add_option("--d", a.d, "Displacement bound")->capture_default_str();
    s->add_option("--r", a.sym_r, "Radius")->capture_default_str();
    s->add_option("--anchor", a.anchor, "Anchor id (default: deepest element)");
    s->add_flag("--include-identity", a.include_identity, "Also report the identity at the anchor");
    s->add_option("--extension-limit", a.extension_limit, "Radius to which survivors are re-verified");
    bodies.emplace_back(s, symmetries_body(a));
  }
  {
    auto* s = app.add_subcommand("periods", "Period detection for equational structures");
    input(s);
    s->add_option("--rank-bound", a.rank_bound, "Largest period size")->capture_default_str();
    s->add_option("--anchor", a.anchor, "Anchor id");
    s->add_option("--displacement", a.displacement, "Largest generator displacement");
    s->add_option("--margin", a.margin, "Core depth");
    bodies.emplace_back(s, periods_body(a));
  }
  {
    auto* s = app.add_subcommand("rigidity", "Rigidity characterization over a radius range");
    input(s);
    s->add_option("--radii", a.radii, "Radii: a..b or a,b,c")->capture_default_str();
    s->add_option("--s", a.s, "Separation radius")->capture_default_str();
    s->add_option("--anchor-limit", a.anchor_limit, "Anchors tried per radius");
    s->add_option("--lip-bound", a.lip_bound, "k bound for the local isomorphism pre-check");
    s->add_flag("--no-lip", a.no_lip, "Skip the local isomorphism pre-check");
    bodies.emplace_back(s, rigidity_body(a));
  }
  {
    auto* s = app.add_subcommand("rigid-limit", "Build and re-check a rigid-limit trace");
    input(s);
    s->add_option("--steps", a.steps, "Trace length")->capture_default_str();
    s->add_option("--seed", a.seed, "Seed element (default: deepest element)");
    s->add_option("--trace-dir", a.trace_dir, "Write step windows and manifest.json here");
    s->add_option("--s-cap", a.s_cap, "Largest separation radius tried");
    s->add_option("--anchor-limit", a.anchor_limit, "Anchors tried per step");
    s->add_option("--lip-bound", a.lip_bound, "k bound for the recurrence radius");
    bodies.emplace_back(s, rigid_limit_body(a));
  }
  {
    auto* s = app.add_subcommand("quotient", "Quotient of a closed window by navigation automorphisms");
    input(s);
    s->add_option("--word", a.words, "Generator word R:i>j,... (repeatable)")->required();
    s->add_option("-o,--output", a.output, "Write the quotient as a structure file");
    bodies.emplace_back(s, quotient_body(a));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(Status::Error);
  }

  set_worker_count(a.threads);

  const Body* body = nullptr;
  Invocation inv;
  for (const auto& [sub, b] : bodies)
    if (sub->parsed()) {
      body = &b;
      inv.command = sub->get_parent() == gen ? "gen " + sub->get_name() : sub->get_name();
    }
  if (!body) return static_cast<int>(Status::Error);

  bool structure_to_stdout = inv.command.rfind("gen ", 0) == 0 && (a.output.empty() || a.output == "-");
  try {
    Outcome out;
    try {
      out = (*body)(inv);
    } catch (const Error& e) {
      if (window_limited(e.code())) {
        out = {Verdict::Inconclusive, std::string(errc_name(e.code())), Json{{"reason", e.what()}}};
      } else if (e.code() == Errc::CharacterizationFails) {
        out = {Verdict::FailsWithWitness, std::string(errc_name(e.code())), Json{{"reason", e.what()}}};
      } else {
        throw;
      }
    }
    Json report = make_report(inv.command, inv.input, inv.bounds, out.verdict, out.outcome, out.result);
    if (!structure_to_stdout || !a.report_path.empty()) write_report(report, a.report_path);
    return exit_code(out.verdict);
  } catch (const std::exception& e) {
    std::cerr << "lociso: " << e.what() << '\n';
    return static_cast<int>(Status::Error);
  }
}

}  // namespace lociso::cli
