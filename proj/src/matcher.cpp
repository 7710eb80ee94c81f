#include "cwcmatch/matcher.hpp"

#include <absl/container/flat_hash_set.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "conflict_index.hpp"
#include "cwcmatch/errors.hpp"
#include "random.hpp"

namespace cwcmatch {

std::string to_string(Algorithm a) { return a == Algorithm::greedy ? "greedy" : "nibble"; }

Algorithm parse_algorithm(const std::string& name) {
    if (name == "greedy") return Algorithm::greedy;
    if (name == "nibble") return Algorithm::nibble;
    throw std::invalid_argument("unknown algorithm '" + name + "'");
}

void MatchConfig::validate() const {
    if (!(bite_fraction > 0.0 && bite_fraction <= 1.0))
        throw std::invalid_argument("bite fraction must lie in (0, 1]");
    if (max_rounds < 0) throw std::invalid_argument("max rounds must be non-negative");
    if (sample_budget == 0) throw std::invalid_argument("sample budget must be positive");
}

namespace {

using detail::ConflictIndex;
using detail::Engine;

// Stream ids: greedy uses 0, nibble round r uses r (>= 1), completion its own.
constexpr std::uint64_t kCompletionStream = 0xC0FFEEULL;

/// Scratch buffers for one packed candidate.
struct Candidate {
    std::vector<std::uint16_t> coords;
    std::vector<std::uint8_t> symbols;
    explicit Candidate(int w) : coords(static_cast<std::size_t>(w)), symbols(static_cast<std::size_t>(w)) {}
};

/// Uniform word of the space: Floyd's sampling for the support, then uniform
/// symbols (CWC) or a uniform arrangement of the composition (CCC).
void random_word(const WordSpace& space, Engine& eng, Candidate& out) {
    const int w = space.weight();
    auto& coords = out.coords;
    int filled = 0;
    for (int j = space.n - w; j < space.n; ++j) {
        const auto r = static_cast<std::uint16_t>(detail::uniform_below(eng, static_cast<std::uint64_t>(j) + 1));
        const bool taken = std::find(coords.begin(), coords.begin() + filled, r) != coords.begin() + filled;
        coords[filled++] = taken ? static_cast<std::uint16_t>(j) : r;
    }
    std::sort(coords.begin(), coords.end());
    if (!space.is_composition()) {
        for (auto& s : out.symbols)
            s = static_cast<std::uint8_t>(1 + detail::uniform_below(eng, static_cast<std::uint64_t>(space.q - 1)));
        return;
    }
    std::size_t k = 0;
    const auto counts = space.composition().counts();
    for (std::size_t j = 0; j < counts.size(); ++j)
        for (int c = 0; c < counts[j]; ++c) out.symbols[k++] = static_cast<std::uint8_t>(j + 1);
    detail::shuffle(std::span<std::uint8_t>(out.symbols), eng);
}

/// 64-bit fingerprint of a packed word, used only to skip repeated draws.
std::uint64_t fingerprint(const Candidate& c) {
    std::uint64_t h = 0x84222325cbf29ce4ULL;
    for (std::size_t k = 0; k < c.coords.size(); ++k)
        h = detail::splitmix64(h ^ (static_cast<std::uint64_t>(c.coords[k]) << 8 | c.symbols[k]));
    return h;
}

class Run {
public:
    Run(const CodeSpec& spec, const MatchConfig& config)
        : spec_(spec), config_(config), w_(spec.w()),
          accepted_(spec.n(), spec.w(), spec.t(), spec.kind()),
          start_(std::chrono::steady_clock::now()) {
            if (!spec.odd_distance()) throw Unsupported("even d unsupported by constructor");
            config.validate();
            const BigCount total = space_size(spec.space());
            enumerated_ = total <= config.sample_budget;
            if (enumerated_) indexer_.emplace(spec.space());
            space_size_ = total;
        }

    bool enumerated() const noexcept { return enumerated_; }

    /// Greedy over every surviving rank in `ranks`, in seeded random order.
    void greedy_over(std::vector<std::uint64_t>& ranks, std::uint64_t stream) {
        Engine eng = detail::make_stream(config_.seed, stream);
        detail::shuffle(std::span<std::uint64_t>(ranks), eng);
        Candidate c(w_);
        for (const auto r : ranks) {
            indexer_->unrank(r, c.coords, c.symbols);
            ++examined_;
            if (accepted_.compatible(c.coords, c.symbols)) accepted_.add(c.coords, c.symbols);
        }
    }

    /// Greedy over uniform draws until the remaining draw budget is spent.
    void greedy_sampled(std::uint64_t stream) {
        Engine eng = detail::make_stream(config_.seed, stream);
        absl::flat_hash_set<std::uint64_t> seen;
        Candidate c(w_);
        while (draws_ < config_.sample_budget) {
            random_word(spec_.space(), eng, c);
            ++draws_;
            if (!seen.insert(fingerprint(c)).second) continue;
            ++examined_;
            if (accepted_.compatible(c.coords, c.symbols)) accepted_.add(c.coords, c.symbols);
        }
    }

    std::vector<std::uint64_t> all_ranks() const {
        std::vector<std::uint64_t> ranks(indexer_->size());
        std::iota(ranks.begin(), ranks.end(), std::uint64_t{0});
        return ranks;
    }

    /// Intra-bite resolution: keep members that conflict with no other member
    /// and accept them in bite order. Returns which members were accepted.
    std::vector<char> accept_isolated(const std::vector<Candidate>& bite) {
        ConflictIndex local(spec_.n(), w_, spec_.t(), spec_.kind());
        for (const auto& b : bite) local.add(b.coords, b.symbols);
        std::vector<char> took(bite.size(), 0);
        for (std::uint32_t i = 0; i < bite.size(); ++i) {
            if (local.compatible(bite[i].coords, bite[i].symbols, i)) {
                accepted_.add(bite[i].coords, bite[i].symbols);
                took[i] = 1;
            }
        }
        return took;
    }

    void nibble() {
        const double delta = static_cast<double>(closed_form_degree(spec_));
        const double p = config_.bite_fraction / delta;
        int zero_streak = 0;
        std::vector<std::uint64_t> alive;
        if (enumerated_) alive = all_ranks();
        const std::uint64_t threshold = detail::probability_threshold(p);
        const double expected_bite = static_cast<double>(space_size_) * p;
        const auto sampled_bite = static_cast<std::uint64_t>(std::max(1.0, std::floor(expected_bite + 0.5)));

        for (int round = 1; round <= config_.max_rounds; ++round) {
            if (enumerated_ && alive.empty()) break;
            if (!enumerated_ && draws_ >= config_.sample_budget) break;
            Engine eng = detail::make_stream(config_.seed, static_cast<std::uint64_t>(round));
            ++rounds_;

            std::vector<Candidate> bite;
            std::size_t gained = 0;
            if (enumerated_) {
                std::vector<char> drop(alive.size(), 0);
                std::vector<std::size_t> slots;
                for (std::size_t i = 0; i < alive.size(); ++i) {
                    if (eng() >= threshold) continue;
                    Candidate c(w_);
                    indexer_->unrank(alive[i], c.coords, c.symbols);
                    ++examined_;
                    drop[i] = 1;  // dead already, unless it survives below
                    if (!accepted_.compatible(c.coords, c.symbols)) continue;
                    bite.push_back(std::move(c));
                    slots.push_back(i);
                }
                const auto took = accept_isolated(bite);
                // Members that lost only to other bite members stay alive.
                for (std::size_t b = 0; b < bite.size(); ++b) {
                    if (took[b]) ++gained;
                    else drop[slots[b]] = 0;
                }
                std::size_t out = 0;
                for (std::size_t i = 0; i < alive.size(); ++i)
                    if (!drop[i]) alive[out++] = alive[i];
                alive.resize(out);
            } else {
                absl::flat_hash_set<std::uint64_t> seen;
                Candidate c(w_);
                for (std::uint64_t k = 0; k < sampled_bite && draws_ < config_.sample_budget; ++k) {
                    random_word(spec_.space(), eng, c);
                    ++draws_;
                    if (!seen.insert(fingerprint(c)).second) continue;
                    ++examined_;
                    if (accepted_.compatible(c.coords, c.symbols)) bite.push_back(c);
                }
                const auto took = accept_isolated(bite);
                gained = static_cast<std::size_t>(std::count(took.begin(), took.end(), 1));
            }
            zero_streak = gained == 0 ? zero_streak + 1 : 0;
            if (zero_streak >= 2) break;
        }

        if (!config_.completion) return;
        if (enumerated_) {
            greedy_over(alive, kCompletionStream);
            maximal_ = true;
        } else {
            greedy_sampled(kCompletionStream);
        }
    }

    void greedy() {
        if (enumerated_) {
            auto ranks = all_ranks();
            greedy_over(ranks, 0);
            maximal_ = true;
        } else {
            greedy_sampled(0);
        }
    }

    Construction finish() {
        std::vector<Word> words;
        words.reserve(accepted_.size());
        for (std::uint32_t i = 0; i < accepted_.size(); ++i) words.push_back(accepted_.word(i, spec_.q()));

        RunReport report{spec_, config_};
        report.code_size = words.size();
        report.bound = upper_bound(spec_).bound;
        report.ratio = report.bound == 0 ? BigRational(0) : BigRational(BigCount(report.code_size), report.bound);
        report.maximal = maximal_;
        report.sampled = !enumerated_;
        report.rounds_executed = rounds_;
        report.candidates_examined = examined_;
        report.wall_time_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
        return Construction{Code(spec_, std::move(words)), std::move(report)};
    }

private:
    const CodeSpec& spec_;
    const MatchConfig& config_;
    int w_;
    ConflictIndex accepted_;
    std::optional<WordIndexer> indexer_;
    BigCount space_size_;
    bool enumerated_ = false;
    bool maximal_ = false;
    int rounds_ = 0;
    std::uint64_t examined_ = 0;
    std::uint64_t draws_ = 0;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace

Construction greedy_construct(const CodeSpec& spec, const MatchConfig& config) {
    Run run(spec, config);
    run.greedy();
    return run.finish();
}

Construction nibble_construct(const CodeSpec& spec, const MatchConfig& config) {
    Run run(spec, config);
    run.nibble();
    return run.finish();
}

Construction construct(const CodeSpec& spec, const MatchConfig& config) {
    return config.algorithm == Algorithm::greedy ? greedy_construct(spec, config)
                                                 : nibble_construct(spec, config);
}

ConflictDiagnostics conflict_diagnostics(const CodeSpec& spec, DegreeMode mode, std::uint64_t budget) {
    if (spec.kind() != CodeKind::ccc) throw std::invalid_argument("conflict diagnostics need a CCC spec");
    const DegreeStats stats = degree_stats(spec, mode, budget);
    ConflictDiagnostics out;
    out.mode = mode;
    out.D = stats.closed_form;
    out.codegree = stats.max_codegree;
    out.codegree_envelope = stats.codegree_envelope;
    out.delta2 = *stats.conflict_degree_max;
    out.delta2_envelope = *stats.conflict_degree_envelope;
    const int gap = spec.w() - spec.t();
    if (gap > 0) {
        const double beta = 1.0 / (2.0 * gap);
        const double power = std::pow(static_cast<double>(out.D), 1.0 - beta);
        out.beta = beta;
        out.d_power = power;
        out.delta2_ratio = static_cast<double>(out.delta2) / power;
        out.codegree_ratio = static_cast<double>(out.codegree) / power;
    }
    return out;
}

}  // namespace cwcmatch
