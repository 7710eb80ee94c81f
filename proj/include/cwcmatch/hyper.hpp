#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cwcmatch/bounds.hpp"
#include "cwcmatch/word.hpp"

namespace cwcmatch {

// ---------------------------------------------------------------------------
// Words as edges of the complete n-partite hypergraph with parts
// V_i = {(i, a) : a in [q-1]}. Coordinates here are 1-based.
// ---------------------------------------------------------------------------

struct VertexPair {
    int coord;
    int symbol;
    friend auto operator<=>(const VertexPair&, const VertexPair&) = default;
};

/// A set of (coordinate, nonzero symbol) pairs, sorted by coordinate.
struct PartiteEdge {
    int q = 2;
    int n = 0;
    std::vector<VertexPair> pairs;

    /// At most one pair per coordinate, coordinates in [1, n], symbols in [1, q-1].
    bool is_partite() const noexcept;
    friend bool operator==(const PartiteEdge&, const PartiteEdge&) = default;
};

/// {(i, x_i) : x_i != 0}.
PartiteEdge pi(const Word& x);
/// Inverse of pi. Throws std::invalid_argument if the edge is not partite.
Word pi_inv(const PartiteEdge& e);
/// Coordinates touched by a partite pair set. Throws if two pairs share a coordinate.
std::vector<int> edge_support(std::span<const VertexPair> pairs);

struct DistanceIdentity {
    int lhs;  ///< hamming distance
    int rhs;  ///< 2w - |pi(x) & pi(y)| - |supp(x) & supp(y)|
};

/// Both sides of the distance identity for two words of equal weight.
/// Throws std::invalid_argument on weight (or q, n) mismatch.
DistanceIdentity distance_identity(const Word& x, const Word& y);

/// |pi(x) & pi(y)| + |supp(x) & supp(y)| <= 2t - 1, i.e. the footprints of the
/// two words share no 2t-subset.
bool cwc_compatible(const Word& x, const Word& y, int t);
/// |pi(x) & pi(y)| <= t - 1 and |supp(x) & supp(y)| <= t: disjoint t-subsets and
/// not a forbidden configuration.
bool ccc_compatible(const Word& x, const Word& y, int t);

// ---------------------------------------------------------------------------
// Enumeration of J_q(n, w) and J_q(n, wbar).
//
// Order: supports in colexicographic order; within a support, symbol
// assignments in base-(q-1) counting order with the lowest support coordinate
// as the least significant digit (for compositions, the same order restricted
// to assignments with the right composition).
// ---------------------------------------------------------------------------

/// |J_q(n,w)| = C(n,w) (q-1)^w or |J_q(n,wbar)| = C(n; n-w, w_1, ...).
BigCount space_size(const WordSpace& space);

/// Streams every word of the space in the documented order. Restartable.
class WordEnumerator {
public:
    explicit WordEnumerator(WordSpace space);

    /// Next word, or nullopt once exhausted.
    std::optional<Word> next();
    /// Allocation-free variant: fills 0-based ascending support coordinates and
    /// the matching symbols (both of length w). Returns false once exhausted.
    bool next(std::span<std::uint16_t> coords, std::span<std::uint8_t> symbols);
    void reset();

    const WordSpace& space() const noexcept { return space_; }

private:
    bool advance();

    WordSpace space_;
    int w_;
    std::vector<int> support_;
    std::vector<std::uint8_t> assign_;  // indexed by support position
    bool started_ = false;
    bool done_ = false;
};

std::vector<Word> enumerate_words(const WordSpace& space);

/// Random access into the enumeration order by rank. Requires the space size
/// to fit in 63 bits (throws BudgetExceeded otherwise).
class WordIndexer {
public:
    explicit WordIndexer(WordSpace space);

    std::uint64_t size() const noexcept { return size_; }
    int weight() const noexcept { return w_; }
    void unrank(std::uint64_t rank, std::span<std::uint16_t> coords,
                std::span<std::uint8_t> symbols) const;
    Word word_at(std::uint64_t rank) const;
    const WordSpace& space() const noexcept { return space_; }

private:
    std::uint64_t choose(int n, int k) const noexcept;

    WordSpace space_;
    int w_;
    std::uint64_t assignments_;  // symbol assignments per support
    std::uint64_t size_;
    std::vector<std::vector<std::uint64_t>> pascal_;  // saturating, [n+1][w+1]
};

// ---------------------------------------------------------------------------
// Degree statistics of the auxiliary hypergraphs.
//
// CWC: vertices are 2t-subsets of (pairs) u [n]; each word x contributes the
// edge of all 2t-subsets of pi(x) u supp(x).
// CCC: vertices are t-subsets of pairs; each word contributes all t-subsets
// of pi(x).
// ---------------------------------------------------------------------------

enum class DegreeMode { closed_form, empirical };

inline constexpr std::uint64_t kDefaultStatsBudget = 50'000'000;

struct DegreeStats {
    DegreeMode mode = DegreeMode::closed_form;
    BigCount max_degree;          ///< empirical maximum, or the closed form
    BigCount closed_form;         ///< C(n-t,w-t)(q-1)^(w-t), or D = C(n-t,w-t) f(wbar,w-t)
    BigCount max_codegree;        ///< empirical maximum, or the envelope
    BigCount codegree_envelope;   ///< C(n-t-1,w-t-1)(q-1)^w, or C(n-t-1,w-t-1) C(w; wbar)
    BigRational alpha_fc;         ///< max_codegree / max_degree
    std::optional<BigCount> conflict_degree_max;       ///< CCC: max conflict-graph degree
    std::optional<BigCount> conflict_degree_envelope;  ///< CCC: sum_{i>t} C(w,i)C(n-w,w-i)C(w; wbar)
};

/// Closed-form mode never throws for a valid spec. Empirical mode enumerates
/// every word and every subset of its footprint; throws BudgetExceeded when
/// that work exceeds the budget.
DegreeStats degree_stats(const CodeSpec& spec, DegreeMode mode,
                         std::uint64_t budget = kDefaultStatsBudget);

/// sum_{i=t+1}^{w} C(w,i) C(n-w,w-i) C(w; w_1..w_{q-1}). Requires a CCC spec.
BigCount conflict_degree_envelope(const CodeSpec& spec);

/// Closed-form max degree: C(n-t,w-t)(q-1)^(w-t) for CWC, D for CCC.
BigCount closed_form_degree(const CodeSpec& spec);

}  // namespace cwcmatch
