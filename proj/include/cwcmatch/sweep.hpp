#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cwcmatch/bounds.hpp"
#include "cwcmatch/matcher.hpp"
#include "cwcmatch/word.hpp"

namespace cwcmatch {

/// A family of constructions over growing n with q, d and w (or wbar) fixed.
struct SweepPlan {
    int q = 3;
    int d = 3;
    std::variant<int, Composition> weight = 2;
    std::vector<int> n_values;  ///< strictly increasing
    std::vector<std::uint64_t> seeds;
    MatchConfig config;  ///< template; the seed field is overwritten per cell

    /// Throws std::invalid_argument for even d, non-increasing n values or an
    /// empty seed list.
    void validate() const;
    CodeSpec spec_for(int n) const;
};

struct SweepRow {
    int n = 0;
    BigCount bound{};
    std::vector<std::size_t> sizes;  ///< per seed, in plan order (0 for failed cells)
    std::size_t best_size = 0;
    BigRational ratio{};       ///< best_size / bound
    BigRational mean_size{};   ///< over successful cells
    double wall_time_ms = 0.0;  ///< summed over cells
    std::optional<std::string> error;  ///< first failure in the row, if any
};

/// Runs every (n, seed) cell on up to `threads` workers, verifies every code,
/// and assembles rows in n order. A failing cell records its error in the row
/// and the sweep carries on. Apart from wall times, the result depends only on
/// the plan.
std::vector<SweepRow> run_sweep(const SweepPlan& plan, unsigned threads = 1);

/// Fixed column order: n,bound,best_size,mean_size,ratio,ratio_decimal,sizes,error
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace cwcmatch
