#include "cwcmatch/hyper.hpp"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>
#include <string>

#include "cwcmatch/errors.hpp"

namespace cwcmatch {

bool PartiteEdge::is_partite() const noexcept {
    int prev = 0;
    for (const auto& [coord, symbol] : pairs) {
        if (coord <= prev || coord > n || symbol < 1 || symbol >= q) return false;
        prev = coord;
    }
    return true;
}

PartiteEdge pi(const Word& x) {
    PartiteEdge e{x.q(), x.n(), {}};
    for (int i = 0; i < x.n(); ++i)
        if (x[i] != 0) e.pairs.push_back({i + 1, x[i]});
    return e;
}

Word pi_inv(const PartiteEdge& e) {
    PartiteEdge sorted = e;
    std::sort(sorted.pairs.begin(), sorted.pairs.end());
    if (!sorted.is_partite())
        throw std::invalid_argument("pi_inv: pair set is not a partite edge");
    std::vector<std::uint8_t> symbols(static_cast<std::size_t>(e.n), 0);
    for (const auto& [coord, symbol] : sorted.pairs) symbols[coord - 1u] = static_cast<std::uint8_t>(symbol);
    return Word(e.q, std::move(symbols));
}

std::vector<int> edge_support(std::span<const VertexPair> pairs) {
    std::vector<int> coords;
    for (const auto& p : pairs) coords.push_back(p.coord);
    std::sort(coords.begin(), coords.end());
    if (std::adjacent_find(coords.begin(), coords.end()) != coords.end())
        throw std::invalid_argument("edge_support: two pairs share a coordinate");
    return coords;
}

namespace {

struct Overlap {
    int pairs = 0;    // |pi(x) & pi(y)|
    int support = 0;  // |supp(x) & supp(y)|
};

Overlap overlap(const Word& x, const Word& y) {
    Overlap o;
    for (int i = 0; i < x.n(); ++i) {
        if (x[i] != 0 && y[i] != 0) {
            ++o.support;
            o.pairs += x[i] == y[i];
        }
    }
    return o;
}

void require_same_shape(const Word& x, const Word& y) {
    if (x.q() != y.q() || x.n() != y.n())
        throw std::invalid_argument("words differ in q or n");
}

}  // namespace

DistanceIdentity distance_identity(const Word& x, const Word& y) {
    require_same_shape(x, y);
    const int w = weight(x);
    if (weight(y) != w) throw std::invalid_argument("distance_identity: weights differ");
    const Overlap o = overlap(x, y);
    return {hamming_distance(x, y), 2 * w - o.pairs - o.support};
}

bool cwc_compatible(const Word& x, const Word& y, int t) {
    require_same_shape(x, y);
    const Overlap o = overlap(x, y);
    return o.pairs + o.support <= 2 * t - 1;
}

bool ccc_compatible(const Word& x, const Word& y, int t) {
    require_same_shape(x, y);
    const Overlap o = overlap(x, y);
    return o.pairs <= t - 1 && o.support <= t;
}

BigCount space_size(const WordSpace& space) {
    space.validate();
    const int w = space.weight();
    if (!space.is_composition())
        return binom(space.n, w) * boost::multiprecision::pow(BigCount(space.q - 1), w);
    std::vector<int> parts{space.n - w};
    for (int c : space.composition().counts()) parts.push_back(c);
    return multinom(space.n, parts);
}

// ---------------------------------------------------------------------------
// WordEnumerator

WordEnumerator::WordEnumerator(WordSpace space) : space_(std::move(space)) {
    space_.validate();
    w_ = space_.weight();
    reset();
}

void WordEnumerator::reset() {
    support_.resize(static_cast<std::size_t>(w_));
    for (int k = 0; k < w_; ++k) support_[k] = k;
    assign_.assign(static_cast<std::size_t>(w_), 1);
    if (space_.is_composition()) {
        // The reversed assignment (last position first) starts sorted ascending.
        std::vector<std::uint8_t> rev;
        const auto counts = space_.composition().counts();
        for (std::size_t j = 0; j < counts.size(); ++j)
            rev.insert(rev.end(), static_cast<std::size_t>(counts[j]), static_cast<std::uint8_t>(j + 1));
        std::copy(rev.rbegin(), rev.rend(), assign_.begin());
    }
    started_ = false;
    done_ = false;
}

bool WordEnumerator::advance() {
    if (space_.is_composition()) {
        if (std::next_permutation(assign_.rbegin(), assign_.rend())) return true;
    } else {
        for (int i = 0; i < w_; ++i) {
            if (assign_[i] + 1 < space_.q) {
                ++assign_[i];
                return true;
            }
            assign_[i] = 1;
        }
    }
    // Next support in colex order; assignment has already wrapped to its first value.
    int j = 0;
    while (j < w_ && support_[j] + 1 == (j + 1 < w_ ? support_[j + 1] : space_.n)) ++j;
    if (j == w_) return false;
    ++support_[j];
    for (int k = 0; k < j; ++k) support_[k] = k;
    return true;
}

bool WordEnumerator::next(std::span<std::uint16_t> coords, std::span<std::uint8_t> symbols) {
    if (done_) return false;
    if (started_ && !advance()) {
        done_ = true;
        return false;
    }
    started_ = true;
    for (int k = 0; k < w_; ++k) {
        coords[k] = static_cast<std::uint16_t>(support_[k]);
        symbols[k] = assign_[k];
    }
    return true;
}

std::optional<Word> WordEnumerator::next() {
    std::vector<std::uint16_t> coords(static_cast<std::size_t>(w_));
    std::vector<std::uint8_t> symbols(static_cast<std::size_t>(w_));
    if (!next(coords, symbols)) return std::nullopt;
    std::vector<std::uint8_t> full(static_cast<std::size_t>(space_.n), 0);
    for (int k = 0; k < w_; ++k) full[coords[k]] = symbols[k];
    return Word(space_.q, std::move(full));
}

std::vector<Word> enumerate_words(const WordSpace& space) {
    WordEnumerator it(space);
    std::vector<Word> out;
    while (auto x = it.next()) out.push_back(std::move(*x));
    return out;
}

// ---------------------------------------------------------------------------
// WordIndexer

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint64_t kMaxIndexable = std::uint64_t{1} << 63;

}  // namespace

WordIndexer::WordIndexer(WordSpace space) : space_(std::move(space)) {
    const BigCount total = space_size(space_);
    if (total >= kMaxIndexable) throw BudgetExceeded("word space too large to index by rank");
    w_ = space_.weight();
    size_ = static_cast<std::uint64_t>(total);
    const BigCount supports = binom(space_.n, w_);
    assignments_ = size_ == 0 ? 0 : static_cast<std::uint64_t>(total / supports);

    pascal_.assign(static_cast<std::size_t>(space_.n) + 1,
                   std::vector<std::uint64_t>(static_cast<std::size_t>(w_) + 1, 0));
    for (int m = 0; m <= space_.n; ++m) {
        pascal_[m][0] = 1;
        for (int k = 1; k <= std::min(m, w_); ++k) {
            const std::uint64_t a = pascal_[m - 1][k - 1];
            const std::uint64_t b = k <= m - 1 ? pascal_[m - 1][k] : 0;
            pascal_[m][k] = (a > kSaturated - b) ? kSaturated : a + b;
        }
    }
}

std::uint64_t WordIndexer::choose(int n, int k) const noexcept {
    if (n < 0 || k < 0 || k > n) return 0;
    return pascal_[n][k];
}

void WordIndexer::unrank(std::uint64_t rank, std::span<std::uint16_t> coords,
                         std::span<std::uint8_t> symbols) const {
    if (rank >= size_) throw std::out_of_range("WordIndexer::unrank: rank out of range");
    std::uint64_t srank = rank / assignments_;
    std::uint64_t arank = rank % assignments_;

    // Colex unranking: the k-th smallest coordinate c is the largest with C(c, k) <= remaining rank.
    int hi = space_.n - 1;
    for (int k = w_; k >= 1; --k) {
        int lo = k - 1;
        int top = hi;
        while (lo < top) {
            const int mid = lo + (top - lo + 1) / 2;
            if (choose(mid, k) <= srank) lo = mid;
            else top = mid - 1;
        }
        coords[k - 1] = static_cast<std::uint16_t>(lo);
        srank -= choose(lo, k);
        hi = lo - 1;
    }

    if (!space_.is_composition()) {
        const auto base = static_cast<std::uint64_t>(space_.q - 1);
        for (int i = 0; i < w_; ++i) {
            symbols[i] = static_cast<std::uint8_t>(1 + arank % base);
            arank /= base;
        }
        return;
    }

    std::vector<int> counts(space_.composition().counts().begin(), space_.composition().counts().end());
    auto arrangements = [&](int total) {
        std::uint64_t r = 1;
        for (int c : counts) {
            r *= choose(total, c);
            total -= c;
        }
        return r;
    };
    for (int k = 0; k < w_; ++k) {
        for (std::size_t s = 0; s < counts.size(); ++s) {
            if (counts[s] == 0) continue;
            --counts[s];
            const std::uint64_t num = arrangements(w_ - k - 1);
            if (arank < num) {
                symbols[w_ - 1 - k] = static_cast<std::uint8_t>(s + 1);
                break;
            }
            arank -= num;
            ++counts[s];
        }
    }
}

Word WordIndexer::word_at(std::uint64_t rank) const {
    std::vector<std::uint16_t> coords(static_cast<std::size_t>(w_));
    std::vector<std::uint8_t> symbols(static_cast<std::size_t>(w_));
    unrank(rank, coords, symbols);
    std::vector<std::uint8_t> full(static_cast<std::size_t>(space_.n), 0);
    for (int k = 0; k < w_; ++k) full[coords[k]] = symbols[k];
    return Word(space_.q, std::move(full));
}

// ---------------------------------------------------------------------------
// Degree statistics

BigCount closed_form_degree(const CodeSpec& spec) {
    const int n = spec.n(), w = spec.w(), t = spec.t();
    if (spec.kind() == CodeKind::cwc)
        return binom(n - t, w - t) * boost::multiprecision::pow(BigCount(spec.q() - 1), w - t);
    return binom(n - t, w - t) * f_max(spec.composition(), w - t).value;
}

BigCount conflict_degree_envelope(const CodeSpec& spec) {
    if (spec.kind() != CodeKind::ccc) throw std::invalid_argument("conflict degree needs a CCC spec");
    const int n = spec.n(), w = spec.w(), t = spec.t();
    const BigCount arrangements = multinom(w, spec.composition().counts());
    BigCount sum = 0;
    for (int i = t + 1; i <= w; ++i) sum += binom_or_zero(w, i) * binom_or_zero(n - w, w - i);
    return sum * arrangements;
}

namespace {

BigCount codegree_envelope(const CodeSpec& spec) {
    const int n = spec.n(), w = spec.w(), t = spec.t();
    const BigCount per_support =
        spec.kind() == CodeKind::cwc ? BigCount(boost::multiprecision::pow(BigCount(spec.q() - 1), w))
                                     : multinom(w, spec.composition().counts());
    return binom_or_zero(n - t - 1, w - t - 1) * per_support;
}

// Counts, for every k-subset of every word's footprint, how many footprints
// contain it, and returns the largest count.
std::uint64_t max_subset_count(const WordSpace& space, bool with_bare, int k) {
    const int w = space.weight();
    const int footprint = with_bare ? 2 * w : w;
    if (k > footprint || k <= 0) return 0;
    const auto q1 = static_cast<std::uint16_t>(space.q - 1);
    const auto bare_base = static_cast<std::uint16_t>(space.n * q1);

    absl::flat_hash_map<std::string, std::uint64_t> counts;
    WordEnumerator it(space);
    std::vector<std::uint16_t> coords(static_cast<std::size_t>(w));
    std::vector<std::uint8_t> symbols(static_cast<std::size_t>(w));
    std::vector<std::uint16_t> elems(static_cast<std::size_t>(footprint));
    std::vector<int> pick(static_cast<std::size_t>(k));
    std::string key(static_cast<std::size_t>(2 * k), '\0');
    std::uint64_t best = 0;

    while (it.next(coords, symbols)) {
        for (int i = 0; i < w; ++i) {
            elems[i] = static_cast<std::uint16_t>(coords[i] * q1 + symbols[i] - 1);
            if (with_bare) elems[w + i] = static_cast<std::uint16_t>(bare_base + coords[i]);
        }
        for (int i = 0; i < k; ++i) pick[i] = i;
        while (true) {
            for (int i = 0; i < k; ++i) {
                key[2 * i] = static_cast<char>(elems[pick[i]] & 0xff);
                key[2 * i + 1] = static_cast<char>(elems[pick[i]] >> 8);
            }
            best = std::max(best, ++counts[key]);
            int i = k - 1;
            while (i >= 0 && pick[i] == footprint - k + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return best;
}

std::uint64_t max_conflict_degree(const WordSpace& space, int t) {
    const auto words = enumerate_words(space);
    const std::size_t blocks = (static_cast<std::size_t>(space.n) + 63) / 64;
    std::vector<std::uint64_t> masks(words.size() * blocks, 0);
    for (std::size_t a = 0; a < words.size(); ++a)
        for (int i = 0; i < space.n; ++i)
            if (words[a][i] != 0) masks[a * blocks + i / 64] |= std::uint64_t{1} << (i % 64);
    std::uint64_t best = 0;
    for (std::size_t a = 0; a < words.size(); ++a) {
        std::uint64_t deg = 0;
        for (std::size_t b = 0; b < words.size(); ++b) {
            if (a == b) continue;
            int shared = 0;
            for (std::size_t k = 0; k < blocks; ++k)
                shared += std::popcount(masks[a * blocks + k] & masks[b * blocks + k]);
            deg += shared > t;
        }
        best = std::max(best, deg);
    }
    return best;
}

}  // namespace

DegreeStats degree_stats(const CodeSpec& spec, DegreeMode mode, std::uint64_t budget) {
    DegreeStats s;
    s.mode = mode;
    s.closed_form = closed_form_degree(spec);
    s.codegree_envelope = codegree_envelope(spec);
    const bool ccc = spec.kind() == CodeKind::ccc;
    if (ccc) s.conflict_degree_envelope = conflict_degree_envelope(spec);

    if (mode == DegreeMode::closed_form) {
        s.max_degree = s.closed_form;
        s.max_codegree = s.codegree_envelope;
        s.conflict_degree_max = s.conflict_degree_envelope;
    } else {
        const int w = spec.w(), t = spec.t();
        const int footprint = ccc ? w : 2 * w;
        const int k = ccc ? t : 2 * t;
        const BigCount words = space_size(spec.space());
        BigCount work = words * (binom_or_zero(footprint, k) + binom_or_zero(footprint, k + 1));
        if (ccc) work += words * words;
        if (work > budget)
            throw BudgetExceeded("empirical degree statistics need " + work.str() +
                                 " steps, budget is " + std::to_string(budget));
        s.max_degree = max_subset_count(spec.space(), !ccc, k);
        s.max_codegree = max_subset_count(spec.space(), !ccc, k + 1);
        if (ccc) s.conflict_degree_max = max_conflict_degree(spec.space(), t);
    }
    s.alpha_fc = s.max_degree == 0 ? BigRational(0) : BigRational(s.max_codegree, s.max_degree);
    return s;
}

}  // namespace cwcmatch
