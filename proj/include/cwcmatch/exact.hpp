#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cwcmatch/bounds.hpp"
#include "cwcmatch/word.hpp"

namespace cwcmatch {

inline constexpr std::size_t kDefaultVertexCap = 50'000;

/// Simple undirected graph with one adjacency bitset per vertex.
class BitGraph {
public:
    explicit BitGraph(std::size_t vertices = 0);

    std::size_t size() const noexcept { return size_; }
    std::size_t row_words() const noexcept { return row_words_; }
    void add_edge(std::size_t u, std::size_t v);
    bool has_edge(std::size_t u, std::size_t v) const noexcept {
        return (rows_[u * row_words_ + v / 64] >> (v % 64)) & 1U;
    }
    std::span<const std::uint64_t> row(std::size_t v) const noexcept {
        return {rows_.data() + v * row_words_, row_words_};
    }
    std::size_t degree(std::size_t v) const noexcept;
    std::uint64_t edge_count() const noexcept;

    /// Subgraph induced by `keep`, vertex i of the result being keep[i].
    BitGraph induced(std::span<const std::size_t> keep) const;

private:
    std::size_t size_;
    std::size_t row_words_;
    std::vector<std::uint64_t> rows_;
};

/// Words of a spec joined whenever their Hamming distance is at least d.
/// Cliques are exactly the codes with these parameters.
struct CompatGraph {
    CodeSpec spec;
    std::vector<Word> vertices;  ///< enumeration order of the word space
    BitGraph graph;

    std::size_t vertex_count() const noexcept { return vertices.size(); }
    std::uint64_t edge_count() const noexcept { return graph.edge_count(); }
};

/// Throws BudgetExceeded when the word space has more than `vertex_cap` words.
CompatGraph build_compat_graph(const CodeSpec& spec, std::size_t vertex_cap = kDefaultVertexCap);

enum class SearchStatus { exact, timeout };

std::string to_string(SearchStatus s);

struct CliqueResult {
    std::vector<std::size_t> clique;  ///< ascending vertex ids
    std::size_t upper_bound = 0;      ///< equals clique.size() when exact
    SearchStatus status = SearchStatus::exact;
};

/// Maximum clique by bitset branch and bound with greedy colouring bounds over
/// a degeneracy ordering. Deterministic for a given graph unless the time limit
/// cuts the search short, in which case the best clique found so far is
/// returned together with the colouring bound of the root.
CliqueResult max_clique(const BitGraph& graph,
                        std::optional<std::chrono::milliseconds> time_limit = std::nullopt);

struct ExactResult {
    std::size_t value = 0;  ///< size of the witness (A itself when exact)
    std::size_t upper = 0;  ///< proven upper bound from the search
    Code witness;
    BigCount bound;         ///< closed-form upper bound for these parameters
    SearchStatus status = SearchStatus::exact;

    bool tight() const { return status == SearchStatus::exact && BigCount(value) == bound; }
};

/// A_q(n,d,w) or A_q(n,d,wbar) by maximum clique, branching on orbits of the
/// coordinate and symbol permutations near the root and pruning with colouring
/// and footprint packing bounds. On timeout, `upper` is the root bound.
ExactResult exact_A(const CodeSpec& spec,
                    std::optional<std::chrono::milliseconds> time_limit = std::nullopt,
                    std::size_t vertex_cap = kDefaultVertexCap);

}  // namespace cwcmatch
