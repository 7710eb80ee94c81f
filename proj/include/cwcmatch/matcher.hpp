#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cwcmatch/bounds.hpp"
#include "cwcmatch/hyper.hpp"
#include "cwcmatch/word.hpp"

namespace cwcmatch {

enum class Algorithm { greedy, nibble };

std::string to_string(Algorithm a);
/// Throws std::invalid_argument on anything but "greedy" or "nibble".
Algorithm parse_algorithm(const std::string& name);

struct MatchConfig {
    Algorithm algorithm = Algorithm::greedy;
    std::uint64_t seed = 0;
    double bite_fraction = 0.1;  ///< nibble: expected bite per auxiliary vertex, in (0, 1]
    int max_rounds = 200;        ///< nibble
    bool completion = true;      ///< nibble: finish with a greedy pass
    /// Word spaces up to this size are enumerated in full; larger ones are
    /// sampled, with at most this many draws per run.
    std::uint64_t sample_budget = 10'000'000;

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

struct RunReport {
    CodeSpec spec;
    MatchConfig config;
    std::size_t code_size = 0;
    BigCount bound{};
    BigRational ratio{};   ///< code_size / bound
    bool maximal = false;  ///< no word of the full space can be added
    bool sampled = false;  ///< candidates came from random draws, not full enumeration
    double wall_time_ms = 0.0;
    int rounds_executed = 0;
    std::uint64_t candidates_examined = 0;
};

struct Construction {
    Code code;
    RunReport report;
};

/// Randomised greedy: scan candidates in seeded random order (a full shuffle
/// of the enumerated space, or uniform draws once the space exceeds the sample
/// budget) and keep every word compatible with all words kept so far.
/// Throws Unsupported for even d.
Construction greedy_construct(const CodeSpec& spec, const MatchConfig& config);

/// Semi-random nibble: each round keeps every surviving word independently with
/// probability bite_fraction / Delta, drops bite members that conflict with
/// each other or with accepted words, and accepts the rest. Stops after
/// max_rounds rounds or two consecutive rounds without acceptances, then
/// optionally completes greedily. Throws Unsupported for even d.
Construction nibble_construct(const CodeSpec& spec, const MatchConfig& config);

/// Dispatches on config.algorithm.
Construction construct(const CodeSpec& spec, const MatchConfig& config);

/// Numeric counterparts of the conflict-free matching conditions for a CCC
/// spec: D, the auxiliary codegree, the conflict degree Delta_2, and their
/// ratios to D^(1 - beta) with beta = 1 / (2 (w - t)).
struct ConflictDiagnostics {
    DegreeMode mode = DegreeMode::closed_form;
    BigCount D;
    BigCount codegree;
    BigCount codegree_envelope;
    BigCount delta2;
    BigCount delta2_envelope;
    std::optional<double> beta;        ///< unset when t = w
    std::optional<double> d_power;     ///< D^(1 - beta)
    std::optional<double> delta2_ratio;
    std::optional<double> codegree_ratio;
};

/// Throws std::invalid_argument for CWC specs; in empirical mode throws
/// BudgetExceeded when exhaustive enumeration is over budget.
ConflictDiagnostics conflict_diagnostics(const CodeSpec& spec, DegreeMode mode,
                                         std::uint64_t budget = kDefaultStatsBudget);

}  // namespace cwcmatch
