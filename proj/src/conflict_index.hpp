#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "cwcmatch/word.hpp"

namespace cwcmatch::detail {

/// Packed words (0-based ascending support plus symbols) with an inverted
/// index by support coordinate. Two words can only conflict if their supports
/// meet, so a compatibility query touches only words sharing a coordinate.
class ConflictIndex {
public:
    static constexpr std::uint32_t npos = std::numeric_limits<std::uint32_t>::max();

    ConflictIndex(int n, int w, int t, CodeKind kind);

    /// True iff the candidate passes the pairwise predicate against every
    /// stored word other than `skip`.
    bool compatible(std::span<const std::uint16_t> coords, std::span<const std::uint8_t> symbols,
                    std::uint32_t skip = npos);
    std::uint32_t add(std::span<const std::uint16_t> coords, std::span<const std::uint8_t> symbols);

    std::size_t size() const noexcept { return count_; }
    std::span<const std::uint16_t> coords(std::uint32_t id) const noexcept {
        return {coords_.data() + static_cast<std::size_t>(id) * w_, static_cast<std::size_t>(w_)};
    }
    std::span<const std::uint8_t> symbols(std::uint32_t id) const noexcept {
        return {symbols_.data() + static_cast<std::size_t>(id) * w_, static_cast<std::size_t>(w_)};
    }

    /// Rebuilds the stored word as a full-length Word.
    Word word(std::uint32_t id, int q) const;

private:
    bool allowed(int shared_pairs, int shared_support) const noexcept {
        return kind_ == CodeKind::cwc ? shared_pairs + shared_support <= 2 * t_ - 1
                                      : shared_pairs <= t_ - 1 && shared_support <= t_;
    }

    int n_;
    int w_;
    int t_;
    CodeKind kind_;
    std::size_t count_ = 0;
    std::vector<std::uint16_t> coords_;
    std::vector<std::uint8_t> symbols_;
    std::vector<std::vector<std::uint32_t>> by_coord_;
    std::vector<std::uint8_t> symbol_at_;  // scratch, all zero between queries
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
};

}  // namespace cwcmatch::detail
