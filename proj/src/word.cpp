#include "cwcmatch/word.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cwcmatch/bounds.hpp"

namespace cwcmatch {

Word::Word(int q, std::vector<std::uint8_t> symbols) : q_(q), symbols_(std::move(symbols)) {
    if (q < 2 || q > kMaxAlphabet)
        throw std::invalid_argument("alphabet size q=" + std::to_string(q) + " outside [2, 36]");
    if (symbols_.empty() || symbols_.size() > static_cast<std::size_t>(kMaxLength))
        throw std::invalid_argument("word length outside [1, 65535]");
    for (auto s : symbols_)
        if (s >= q)
            throw std::invalid_argument("symbol " + std::to_string(s) + " not below q=" +
                                        std::to_string(q));
}

Word Word::zero(int q, int n) {
    return Word(q, std::vector<std::uint8_t>(static_cast<std::size_t>(std::max(n, 0)), 0));
}

Composition::Composition(std::vector<int> counts) : counts_(std::move(counts)) {
    for (int c : counts_)
        if (c < 0) throw std::invalid_argument("composition counts must be non-negative");
    weight_ = std::accumulate(counts_.begin(), counts_.end(), 0);
}

int WordSpace::weight() const noexcept {
    if (const auto* w = std::get_if<int>(&constraint)) return *w;
    return std::get<Composition>(constraint).weight();
}

bool WordSpace::contains(const Word& x) const noexcept {
    if (x.q() != q || x.n() != n) return false;
    if (!is_composition()) return cwcmatch::weight(x) == weight();
    const auto& target = composition();
    std::vector<int> counts(static_cast<std::size_t>(q - 1), 0);
    for (auto s : x.symbols())
        if (s != 0) ++counts[s - 1u];
    return std::equal(counts.begin(), counts.end(), target.counts().begin(), target.counts().end());
}

void WordSpace::validate() const {
    if (q < 2 || q > kMaxAlphabet)
        throw std::invalid_argument("q must lie in [2, 36], got " + std::to_string(q));
    if (n < 1 || n > kMaxLength)
        throw std::invalid_argument("n must lie in [1, 65535], got " + std::to_string(n));
    if (is_composition() && composition().size() != static_cast<std::size_t>(q - 1))
        throw std::invalid_argument("composition needs q-1=" + std::to_string(q - 1) +
                                    " parts, got " + std::to_string(composition().size()));
    const int w = weight();
    if (w < 0 || w > n)
        throw std::invalid_argument("weight must lie in [0, n], got " + std::to_string(w));
}

CodeSpec CodeSpec::cwc(int q, int n, int d, int w) { return CodeSpec(WordSpace{q, n, w}, d); }

CodeSpec CodeSpec::ccc(int q, int n, int d, Composition wbar) {
    return CodeSpec(WordSpace{q, n, std::move(wbar)}, d);
}

CodeSpec::CodeSpec(WordSpace space, int d) : space_(std::move(space)), d_(d) {
    space_.validate();
    const int w = space_.weight();
    if (d < 1 || d > 2 * w)
        throw std::invalid_argument("d must lie in [1, 2w] = [1, " + std::to_string(2 * w) +
                                    "], got " + std::to_string(d));
    t_ = threshold_t(d, w);
}

std::string CodeSpec::describe() const {
    std::ostringstream os;
    os << (kind() == CodeKind::cwc ? "cwc" : "ccc") << " q=" << q() << " n=" << n() << " d=" << d();
    if (kind() == CodeKind::cwc) {
        os << " w=" << w();
    } else {
        os << " wbar=";
        const auto c = composition().counts();
        for (std::size_t j = 0; j < c.size(); ++j) os << (j ? "," : "") << c[j];
    }
    return os.str();
}

Code::Code(CodeSpec spec, std::vector<Word> words) : spec_(std::move(spec)), words_(std::move(words)) {
    std::set<std::span<const std::uint8_t>,
             decltype([](auto a, auto b) {
                 return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
             })>
        seen;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        const auto& x = words_[i];
        if (x.q() != spec_.q() || x.n() != spec_.n())
            throw std::invalid_argument("word " + std::to_string(i + 1) +
                                        " does not match the code's q and n");
        if (!seen.insert(x.symbols()).second)
            throw std::invalid_argument("duplicate word at position " + std::to_string(i + 1));
    }
}

int weight(const Word& x) noexcept {
    return static_cast<int>(std::count_if(x.symbols().begin(), x.symbols().end(),
                                          [](std::uint8_t s) { return s != 0; }));
}

Composition composition(const Word& x) {
    std::vector<int> counts(static_cast<std::size_t>(x.q() - 1), 0);
    for (auto s : x.symbols())
        if (s != 0) ++counts[s - 1u];
    return Composition(std::move(counts));
}

int hamming_distance(const Word& x, const Word& y) {
    if (x.q() != y.q() || x.n() != y.n())
        throw std::invalid_argument("hamming_distance: words differ in q or n");
    int dist = 0;
    for (int i = 0; i < x.n(); ++i) dist += x[i] != y[i];
    return dist;
}

std::vector<int> support(const Word& x) {
    std::vector<int> out;
    for (int i = 0; i < x.n(); ++i)
        if (x[i] != 0) out.push_back(i + 1);
    return out;
}

Verdict verify(const Code& code) {
    const auto& spec = code.spec();
    const auto words = code.words();

    for (std::size_t i = 0; i < words.size(); ++i) {
        if (spec.kind() == CodeKind::cwc) {
            if (int wt = weight(words[i]); wt != spec.w())
                return {Violation{Violation::Kind::weight, i, std::nullopt, wt,
                                  "word " + std::to_string(i + 1) + " has weight " +
                                      std::to_string(wt) + ", expected " + std::to_string(spec.w())}};
        } else if (!spec.space().contains(words[i])) {
            return {Violation{Violation::Kind::composition, i, std::nullopt, weight(words[i]),
                              "word " + std::to_string(i + 1) + " has the wrong composition"}};
        }
    }

    // All words now share weight w, so two words with disjoint supports are at
    // distance 2w >= d. Only pairs meeting on some coordinate need a check.
    std::vector<std::vector<std::uint32_t>> by_coord(static_cast<std::size_t>(spec.n()));
    for (std::size_t i = 0; i < words.size(); ++i)
        for (int c = 0; c < spec.n(); ++c)
            if (words[i][c] != 0) by_coord[c].push_back(static_cast<std::uint32_t>(i));

    for (std::size_t i = 0; i < words.size(); ++i) {
        std::optional<std::size_t> first_bad;
        int bad_dist = 0;
        for (int c = 0; c < spec.n(); ++c) {
            if (words[i][c] == 0) continue;
            const auto& bucket = by_coord[c];
            for (auto it = std::upper_bound(bucket.begin(), bucket.end(), i); it != bucket.end(); ++it) {
                if (first_bad && *it >= *first_bad) break;
                const int dist = hamming_distance(words[i], words[*it]);
                if (dist < spec.d()) {
                    first_bad = *it;
                    bad_dist = dist;
                    break;
                }
            }
        }
        if (first_bad)
            return {Violation{Violation::Kind::distance, i, first_bad, bad_dist,
                              "words " + std::to_string(i + 1) + " and " +
                                  std::to_string(*first_bad + 1) + " are at distance " +
                                  std::to_string(bad_dist) + " < d=" + std::to_string(spec.d())}};
    }
    return {};
}

}  // namespace cwcmatch
