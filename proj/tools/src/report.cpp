#include "report.hpp"

#include <filesystem>
#include <fstream>

#include "lociso/error.hpp"
#include "lociso/io.hpp"

namespace lociso::cli {

Json make_report(const std::string& command, Json input, Json bounds, Verdict verdict, const std::string& outcome,
                 Json result) {
  Json j;
  j["format"] = "lociso-report";
  j["version"] = kReportVersion;
  j["command"] = command;
  j["input"] = std::move(input);
  j["bounds"] = std::move(bounds);
  j["verdict"] = std::string(verdict_name(verdict));
  j["outcome"] = outcome;
  j["result"] = std::move(result);
  return j;
}

int exit_code(Verdict v) { return v == Verdict::Inconclusive ? 2 : 0; }

Json window_json(const Structure& m, const std::string& path) {
  Json j;
  j["path"] = path;
  j["elements"] = m.size();
  j["tuples"] = m.tuple_count();
  j["frontier"] = m.frontier().size();
  j["closed"] = m.closed();
  if (m.closed()) j["max_depth"] = nullptr;
  else j["max_depth"] = m.max_depth();
  return j;
}

Json ids_json(const Structure& m, std::span<const ElementId> elements) {
  Json a = Json::array();
  for (ElementId e : elements) a.push_back(m.id(e));
  return a;
}

Json map_json(const Structure& src, const Structure& dst, const PartialIso& f) {
  Json pairs = Json::array();
  for (auto [a, b] : f.pairs) pairs.push_back(Json::array({src.id(a), dst.id(b)}));
  return pairs;
}

static Json opt_id(const Structure& m, const std::optional<ElementId>& e) {
  return e ? Json(m.id(*e)) : Json(nullptr);
}

template <class T>
static Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json census_json(const Structure& m, const CensusTable& t) {
  Json j;
  j["h"] = t.h;
  j["faithful_elements"] = t.faithful_count;
  j["class_count"] = t.entries.size();
  Json classes = Json::array();
  for (const auto& e : t.entries) {
    Json c;
    c["signature"] = e.signature.digest();
    c["representative"] = m.id(e.representative);
    c["multiplicity"] = e.multiplicity;
    classes.push_back(std::move(c));
  }
  j["classes"] = std::move(classes);
  return j;
}

Json lip_json(const Structure& m, const LipReport& r) {
  Json j;
  j["h"] = r.h;
  j["k_bound"] = r.k_bound;
  j["k"] = opt(r.k);
  j["class_count"] = r.class_count;
  Json counter = Json::array();
  for (const auto& c : r.classes)
    if (!c.within_bound) {
      Json w;
      w["representative"] = m.id(c.representative);
      w["far_element"] = opt_id(m, c.witness);
      counter.push_back(std::move(w));
    }
  j["counterexamples"] = std::move(counter);
  return j;
}

Json compare_json(const Structure& m, const Structure& n, const CompareReport& r) {
  Json j;
  j["h"] = r.h;
  j["m_in_n"] = r.m_in_n;
  j["n_in_m"] = r.n_in_m;
  j["multiplicities_window_sensitive"] = r.multiplicities_window_sensitive;
  auto missing = [](const Structure& s, const std::vector<CensusEntry>& v) {
    Json a = Json::array();
    for (const auto& e : v) a.push_back(Json{{"signature", e.signature.digest()}, {"representative", s.id(e.representative)}});
    return a;
  };
  j["missing_in_n"] = missing(m, r.missing_in_n);
  j["missing_in_m"] = missing(n, r.missing_in_m);
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back(Json{{"signature", row.signature.digest()}, {"count_m", row.count_m}, {"count_n", row.count_n}});
  j["rows"] = std::move(rows);
  return j;
}

Json symmetry_json(const Structure& m, const SymmetryReport& r) {
  Json j;
  j["outcome"] = std::string(symmetry_verdict_name(r.verdict));
  j["anchor"] = m.id(r.anchor);
  j["anchor_depth"] = r.anchor_depth;
  Json found = Json::array();
  for (const auto& s : r.found) {
    Json f;
    f["target"] = m.id(s.target);
    f["displacement"] = s.displacement;
    f["verified_radius"] = s.verified_radius;
    f["map"] = map_json(m, m, s.map);
    found.push_back(std::move(f));
  }
  j["found"] = std::move(found);
  Json cands = Json::array();
  for (const auto& c : r.candidates)
    cands.push_back(Json{{"target", m.id(c.target)},
                         {"distance", c.distance},
                         {"reachable_radius", c.reachable_radius},
                         {"kill_radius", opt(c.kill_radius)}});
  j["candidates"] = std::move(cands);
  return j;
}

Json period_json(const Structure& m, const PeriodReport& r) {
  Json j;
  j["anchor"] = m.id(r.anchor);
  j["rank"] = opt(r.rank);
  j["period"] = ids_json(m, r.period);
  j["weakly_connected"] = r.weakly_connected;
  j["disjoint"] = r.disjoint;
  j["covering"] = r.covering;
  j["core_size"] = r.core.size();
  j["orbit_count"] = r.orbit_count;
  Json gens = Json::array();
  for (const auto& g : r.generators) {
    auto img = g.image(r.anchor);
    gens.push_back(Json{{"anchor_image", opt_id(m, img)}, {"domain_size", g.size()}});
  }
  j["generators"] = std::move(gens);
  return j;
}

Json search_json(const Structure& m, const Structure& n, const IsomorphismSearch& s) {
  Json j;
  j["outcome"] = std::string(search_outcome_name(s.outcome));
  j["source"] = m.id(s.source);
  j["target_radius"] = s.target_radius;
  j["isomorphism"] = s.iso ? map_json(m, n, *s.iso) : Json(nullptr);
  Json cands = Json::array();
  for (const auto& c : s.candidates)
    cands.push_back(Json{{"target", n.id(c.target)},
                         {"reachable_radius", c.reachable_radius},
                         {"death_radius", opt(c.kill_radius)}});
  j["candidates"] = std::move(cands);
  if (s.witness)
    j["census_mismatch"] = Json{{"h", s.witness->h},
                                {"element", m.id(s.witness->element)},
                                {"signature", s.witness->signature.digest()}};
  else
    j["census_mismatch"] = nullptr;
  return j;
}

Json rigidity_json(const Structure& m, const RigidityReport& r) {
  Json j;
  j["outcome"] = std::string(rigidity_verdict_name(r.verdict));
  j["lip"] = Json{{"h", r.lip_h}, {"k", opt(r.lip_k)}};
  Json per = Json::array();
  for (const auto& res : r.results) {
    Json e;
    e["r"] = res.r;
    e["witness"] = opt_id(m, res.witness);
    e["certified_s"] = opt(res.certified_s);
    e["q_holds"] = res.q_holds;
    if (res.violation)
      e["violation"] = Json{{"y", m.id(res.violation->y)}, {"z", m.id(res.violation->z)}, {"s", res.violation->s}};
    else
      e["violation"] = nullptr;
    e["anchors_tried"] = res.anchors_tried;
    e["note"] = res.note;
    per.push_back(std::move(e));
  }
  j["radii"] = std::move(per);
  return j;
}

Json trace_json(const Structure& m, const RigidLimitTrace& t) {
  Json j;
  Json steps = Json::array();
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    const auto& st = t.steps[k];
    Json e;
    e["n"] = k;
    e["anchor"] = m.id(st.anchor);
    e["r"] = st.r;
    e["s"] = st.s;
    e["window"] = "step_" + std::to_string(k) + ".lis";
    e["window_elements"] = st.window.size();
    e["chosen_anchor"] = m.id(st.chosen_anchor);
    e["theta"] = st.theta ? map_json(m, m, *st.theta) : Json(nullptr);
    steps.push_back(std::move(e));
  }
  j["steps"] = std::move(steps);
  j["truncated"] = t.truncated ? Json(*t.truncated) : Json(nullptr);
  return j;
}

void write_trace_directory(const std::string& dir, const Structure& m, const RigidLimitTrace& t) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  for (std::size_t k = 0; k < t.steps.size(); ++k)
    save_structure((fs::path(dir) / ("step_" + std::to_string(k) + ".lis")).string(), t.steps[k].window);
  Json manifest;
  manifest["format"] = "lociso-trace";
  manifest["version"] = kReportVersion;
  manifest["trace"] = trace_json(m, t);
  std::ofstream out(fs::path(dir) / "manifest.json");
  if (!out) fail(Errc::InvalidArgument, "cannot write " + dir + "/manifest.json");
  out << manifest.dump(2) << '\n';
}

}  // namespace lociso::cli
