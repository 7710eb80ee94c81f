#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace cwcmatch {

/// Largest supported alphabet. Keeps every symbol printable as one base-36 digit.
inline constexpr int kMaxAlphabet = 36;
inline constexpr int kMaxLength = 65535;

/// A length-n vector over {0, ..., q-1}. Immutable once built.
class Word {
public:
    /// Throws std::invalid_argument if q is out of range or a symbol is >= q.
    Word(int q, std::vector<std::uint8_t> symbols);

    static Word zero(int q, int n);

    int q() const noexcept { return q_; }
    int n() const noexcept { return static_cast<int>(symbols_.size()); }
    std::span<const std::uint8_t> symbols() const noexcept { return symbols_; }
    std::uint8_t operator[](std::size_t i) const noexcept { return symbols_[i]; }

    friend bool operator==(const Word&, const Word&) = default;
    friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
        if (auto c = a.q_ <=> b.q_; c != 0) return c;
        return a.symbols_ <=> b.symbols_;
    }

private:
    int q_;
    std::vector<std::uint8_t> symbols_;
};

/// Multiplicities (w_1, ..., w_{q-1}) of the nonzero symbols.
class Composition {
public:
    Composition() = default;
    /// Throws std::invalid_argument on a negative count.
    explicit Composition(std::vector<int> counts);

    std::span<const int> counts() const noexcept { return counts_; }
    int operator[](std::size_t j) const noexcept { return counts_[j]; }
    std::size_t size() const noexcept { return counts_.size(); }
    int weight() const noexcept { return weight_; }

    friend bool operator==(const Composition& a, const Composition& b) {
        return a.counts_ == b.counts_;
    }

private:
    std::vector<int> counts_;
    int weight_ = 0;
};

/// The ambient word set J_q(n, w) or J_q(n, wbar) a code is drawn from.
struct WordSpace {
    int q = 2;
    int n = 0;
    std::variant<int, Composition> constraint = 0;

    bool is_composition() const noexcept { return std::holds_alternative<Composition>(constraint); }
    int weight() const noexcept;
    const Composition& composition() const { return std::get<Composition>(constraint); }

    /// Whether x belongs to this space (matching q, n, and weight or composition).
    bool contains(const Word& x) const noexcept;

    /// Throws std::invalid_argument unless 2 <= q <= 36, 1 <= n, 0 <= w <= n and a
    /// composition has exactly q-1 parts.
    void validate() const;

    friend bool operator==(const WordSpace&, const WordSpace&) = default;
};

enum class CodeKind { cwc, ccc };

/// Problem parameters: the word space, minimum distance d and threshold t.
class CodeSpec {
public:
    static CodeSpec cwc(int q, int n, int d, int w);
    static CodeSpec ccc(int q, int n, int d, Composition wbar);
    /// Throws std::invalid_argument unless the space is valid and 1 <= d <= 2w.
    CodeSpec(WordSpace space, int d);

    const WordSpace& space() const noexcept { return space_; }
    CodeKind kind() const noexcept {
        return space_.is_composition() ? CodeKind::ccc : CodeKind::cwc;
    }
    int q() const noexcept { return space_.q; }
    int n() const noexcept { return space_.n; }
    int d() const noexcept { return d_; }
    int w() const noexcept { return space_.weight(); }
    int t() const noexcept { return t_; }
    bool odd_distance() const noexcept { return d_ % 2 == 1; }
    const Composition& composition() const { return space_.composition(); }

    /// Short human-readable form, e.g. "cwc q=3 n=4 d=3 w=2".
    std::string describe() const;

    friend bool operator==(const CodeSpec&, const CodeSpec&) = default;

private:
    WordSpace space_;
    int d_;
    int t_;
};

/// A duplicate-free list of words sharing the alphabet and length of its CodeSpec.
/// Weight, composition and distance constraints are checked by verify(), not here.
class Code {
public:
    explicit Code(CodeSpec spec, std::vector<Word> words = {});

    const CodeSpec& spec() const noexcept { return spec_; }
    std::span<const Word> words() const noexcept { return words_; }
    std::size_t size() const noexcept { return words_.size(); }
    bool empty() const noexcept { return words_.empty(); }

private:
    CodeSpec spec_;
    std::vector<Word> words_;
};

int weight(const Word& x) noexcept;
Composition composition(const Word& x);
/// Throws std::invalid_argument when q or n differ.
int hamming_distance(const Word& x, const Word& y);
/// Nonzero coordinates, 1-based and ascending.
std::vector<int> support(const Word& x);

struct Violation {
    enum class Kind { weight, composition, distance };
    Kind kind;
    std::size_t first;                  ///< 0-based index into the code
    std::optional<std::size_t> second;  ///< set for distance violations
    int observed;                       ///< offending weight or distance
    std::string reason;
};

struct Verdict {
    std::optional<Violation> violation;
    bool ok() const noexcept { return !violation.has_value(); }
};

/// Checks every word's weight (or composition) in code order, then every pair
/// (i, j), i < j, in lexicographic order; reports the first failure found.
Verdict verify(const Code& code);

}  // namespace cwcmatch
