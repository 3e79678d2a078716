#pragma once

#include <string>

#include <json.hpp>

#include "lociso/algebra.hpp"
#include "lociso/census.hpp"
#include "lociso/rigidity.hpp"
#include "lociso/symmetry.hpp"

namespace lociso::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kReportVersion = 1;

enum class Status { Verdict = 0, Error = 1, Inconclusive = 2 };

// Keys in fixed order: format, version, command, input, bounds, verdict,
// outcome, result. "verdict" is one of holds_up_to_bounds,
// fails_with_witness, inconclusive; "outcome" is the analysis-specific name.
Json make_report(const std::string& command, Json input, Json bounds, Verdict verdict, const std::string& outcome,
                 Json result);
int exit_code(Verdict v);

Json window_json(const Structure& m, const std::string& path);
Json ids_json(const Structure& m, std::span<const ElementId> elements);
Json map_json(const Structure& src, const Structure& dst, const PartialIso& f);

Json census_json(const Structure& m, const CensusTable& t);
Json lip_json(const Structure& m, const LipReport& r);
Json compare_json(const Structure& m, const Structure& n, const CompareReport& r);
Json symmetry_json(const Structure& m, const SymmetryReport& r);
Json period_json(const Structure& m, const PeriodReport& r);
Json search_json(const Structure& m, const Structure& n, const IsomorphismSearch& s);
Json rigidity_json(const Structure& m, const RigidityReport& r);
Json trace_json(const Structure& m, const RigidLimitTrace& t);

// Step windows as step_<n>.lis plus manifest.json.
void write_trace_directory(const std::string& dir, const Structure& m, const RigidLimitTrace& t);

}  // namespace lociso::cli
