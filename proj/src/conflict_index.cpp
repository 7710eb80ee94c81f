#include "conflict_index.hpp"

#include <algorithm>

namespace cwcmatch::detail {

ConflictIndex::ConflictIndex(int n, int w, int t, CodeKind kind)
    : n_(n), w_(w), t_(t), kind_(kind),
      by_coord_(static_cast<std::size_t>(n)),
      symbol_at_(static_cast<std::size_t>(n), 0) {}

bool ConflictIndex::compatible(std::span<const std::uint16_t> coords,
                               std::span<const std::uint8_t> symbols, std::uint32_t skip) {
    if (++epoch_ == 0) {
        std::fill(stamp_.begin(), stamp_.end(), 0);
        epoch_ = 1;
    }
    for (int k = 0; k < w_; ++k) symbol_at_[coords[k]] = symbols[k];

    bool ok = true;
    for (int k = 0; k < w_ && ok; ++k) {
        for (const std::uint32_t id : by_coord_[coords[k]]) {
            if (id == skip || stamp_[id] == epoch_) continue;
            stamp_[id] = epoch_;
            const std::uint16_t* oc = coords_.data() + static_cast<std::size_t>(id) * w_;
            const std::uint8_t* os = symbols_.data() + static_cast<std::size_t>(id) * w_;
            int shared_support = 0, shared_pairs = 0;
            for (int j = 0; j < w_; ++j) {
                const std::uint8_t s = symbol_at_[oc[j]];
                if (s != 0) {
                    ++shared_support;
                    shared_pairs += s == os[j];
                }
            }
            if (!allowed(shared_pairs, shared_support)) {
                ok = false;
                break;
            }
        }
    }

    for (int k = 0; k < w_; ++k) symbol_at_[coords[k]] = 0;
    return ok;
}

std::uint32_t ConflictIndex::add(std::span<const std::uint16_t> coords,
                                 std::span<const std::uint8_t> symbols) {
    const auto id = static_cast<std::uint32_t>(count_++);
    coords_.insert(coords_.end(), coords.begin(), coords.begin() + w_);
    symbols_.insert(symbols_.end(), symbols.begin(), symbols.begin() + w_);
    for (int k = 0; k < w_; ++k) by_coord_[coords[k]].push_back(id);
    stamp_.push_back(0);
    return id;
}

Word ConflictIndex::word(std::uint32_t id, int q) const {
    std::vector<std::uint8_t> full(static_cast<std::size_t>(n_), 0);
    const auto c = coords(id);
    const auto s = symbols(id);
    for (int k = 0; k < w_; ++k) full[c[k]] = s[k];
    return Word(q, std::move(full));
}

}  // namespace cwcmatch::detail
