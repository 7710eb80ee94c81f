#pragma once

// Brute-force reference implementations used only by the tests. They share no
// code with the library beyond the value types.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "cwcmatch/bounds.hpp"
#include "cwcmatch/word.hpp"

namespace oracle {

using cwcmatch::BigCount;
using cwcmatch::BigRational;

using Symbols = std::vector<std::uint8_t>;

BigCount factorial(int n);
BigCount binom(int n, int k);
BigCount multinom(const std::vector<int>& parts);

/// Every one of the q^n words.
std::vector<Symbols> all_words(int q, int n);

/// The word space by filtering all q^n words, sorted by (support bitmask,
/// base-(q-1) value with the lowest support coordinate least significant).
std::vector<cwcmatch::Word> space_words(const cwcmatch::WordSpace& space);

int distance(const cwcmatch::Word& x, const cwcmatch::Word& y);

/// Membership in the space plus pairwise distance >= d.
bool is_valid_code(const cwcmatch::Code& code);

/// Largest clique by trying every vertex subset (at most 20 vertices).
std::size_t clique_number(const std::vector<std::vector<bool>>& adjacency);

struct FMax {
    BigCount value;
    std::vector<int> witness;
};
/// max over 0 <= t_i <= w_i, sum t, of t!/(prod t_i!) by plain recursion.
std::optional<FMax> f_max(const std::vector<int>& wbar, int t);

/// floor((q-1)^t n!(w-t)! / ((n-t)! w!)) with the even-d exponent t-1.
BigCount cwc_bound(int q, int n, int d, int w);
/// floor(n!/((n-w)! prod w_i!) / (C(n-t, w-t) f(wbar, e))) with e = w-t (odd d)
/// or w-t+1 (even d).
BigCount ccc_bound(int n, int d, const std::vector<int>& wbar);

/// Uniform random word of weight w (or composition wbar when non-empty).
cwcmatch::Word random_word(std::mt19937_64& rng, int q, int n, int w, const std::vector<int>& wbar = {});

}  // namespace oracle
