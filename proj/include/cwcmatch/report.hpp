#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cwcmatch/bounds.hpp"
#include "cwcmatch/exact.hpp"
#include "cwcmatch/hyper.hpp"
#include "cwcmatch/matcher.hpp"
#include "cwcmatch/sweep.hpp"
#include "cwcmatch/word.hpp"

// JSON renderings of the result types. Exact integers are decimal strings;
// ratios appear as "p/q" next to a float rounded to 6 decimals. Nothing here
// reads the clock, so equal inputs give byte-identical output.

namespace cwcmatch {

using Json = nlohmann::ordered_json;

/// "p/q", or "p" when the denominator is 1.
std::string rational_string(const BigRational& r);
/// Non-negative r rounded half-up to `places` decimals, e.g. "0.950000".
std::string fixed_decimal(const BigRational& r, int places = 6);
double rounded_decimal(const BigRational& r, int places = 6);

/// q, n, d, kind, w or wbar, t.
Json spec_json(const CodeSpec& spec);
Json bound_json(const CodeSpec& spec, const BoundReport& report);
Json config_json(const MatchConfig& config);
/// Leaves out wall time.
Json run_report_json(const RunReport& report);
Json verify_json(const Code& code, const Verdict& verdict);
Json stats_json(const CodeSpec& spec, const DegreeStats& stats,
                const std::optional<ConflictDiagnostics>& diagnostics);
Json exact_json(const ExactResult& result, const std::optional<std::string>& witness_file);
/// Leaves out wall times.
Json sweep_json(const SweepPlan& plan, const std::vector<SweepRow>& rows);

/// Header line plus one row.
std::string bound_csv(const CodeSpec& spec, const BoundReport& report);

/// Two-space indented JSON with a trailing newline, as written by the CLI.
std::string json_text(const Json& j);

}  // namespace cwcmatch
