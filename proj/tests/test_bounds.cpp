#include <doctest.h>

#include "cwcmatch/bounds.hpp"
#include "cwcmatch/word.hpp"
#include "oracles.hpp"

using namespace cwcmatch;

namespace {

/// All compositions of total weight <= max_w into `parts` non-negative parts.
std::vector<std::vector<int>> compositions(int parts, int max_w) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(parts), 0);
    while (true) {
        int sum = 0;
        for (int c : cur) sum += c;
        if (sum <= max_w) out.push_back(cur);
        int i = 0;
        while (i < parts && cur[i] == max_w) cur[i++] = 0;
        if (i == parts) break;
        ++cur[i];
    }
    return out;
}

}  // namespace

TEST_CASE("binomial and multinomial coefficients") {
    for (int n = 0; n <= 40; ++n)
        for (int k = 0; k <= n; ++k) CHECK(binom(n, k) == oracle::binom(n, k));
    CHECK(binom(100, 50).str() == "100891344545564193334812497256");
    CHECK_THROWS_AS(binom(3, 4), std::invalid_argument);
    CHECK_THROWS_AS(binom(3, -1), std::invalid_argument);
    CHECK(binom_or_zero(3, 4) == 0);
    CHECK(binom_or_zero(-1, 0) == 0);
    const std::vector<int> parts{3, 2, 2};
    CHECK(multinom(7, parts) == 210);
    const std::vector<int> bad{3, 2};
    CHECK_THROWS_AS(multinom(6, bad), std::invalid_argument);
    const std::vector<int> neg{3, -1, 4};
    CHECK_THROWS_AS(multinom(6, neg), std::invalid_argument);
    for (const auto& c : compositions(3, 8)) {
        int n = 0;
        for (int x : c) n += x;
        CHECK(multinom(n, c) == oracle::multinom(c));
    }
}

TEST_CASE("threshold t") {
    CHECK(threshold_t(3, 2) == 1);
    CHECK(threshold_t(3, 3) == 2);
    CHECK(threshold_t(4, 3) == 2);
    CHECK(threshold_t(5, 3) == 1);
    CHECK(threshold_t(1, 1) == 1);
    CHECK(threshold_t(2, 1) == 1);
    for (int w = 1; w <= 10; ++w)
        for (int d = 1; d <= 2 * w; ++d) {
            const int t = threshold_t(d, w);
            CHECK(2 * t >= 2 * w - d + 1);
            CHECK(2 * (t - 1) < 2 * w - d + 1);
        }
    CHECK_THROWS_AS(threshold_t(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(threshold_t(5, 2), std::invalid_argument);
}

TEST_CASE("admissible vectors are listed in lexicographic order") {
    const auto v = admissible_vectors(Composition({2, 1}), 2);
    CHECK(v == std::vector<std::vector<int>>{{1, 1}, {2, 0}});
    CHECK(admissible_vectors(Composition({1, 1}), 3).empty());
    CHECK(admissible_vectors(Composition({0, 0}), 0) == std::vector<std::vector<int>>{{0, 0}});
}

TEST_CASE("f_max matches composition enumeration") {
    for (int q = 2; q <= 4; ++q) {
        for (const auto& wbar : compositions(q - 1, 6)) {
            int w = 0;
            for (int c : wbar) w += c;
            for (int t = 0; t <= w; ++t) {
                const auto expected = oracle::f_max(wbar, t);
                REQUIRE(expected.has_value());
                const auto got = f_max(Composition(wbar), t);
                CHECK(got.value == expected->value);
                CHECK(got.witness == expected->witness);
            }
            CHECK_THROWS_AS(f_max(Composition(wbar), w + 1), std::invalid_argument);
        }
    }
    CHECK(f_max(Composition({1, 1}), 1).value == 1);
    CHECK(f_max(Composition({2, 1}), 2).value == 2);
    CHECK(f_max(Composition({3, 3}), 4).value == 6);
}

TEST_CASE("closed-form bounds, documented values") {
    CHECK(upper_bound(CodeSpec::cwc(3, 4, 3, 2)).bound == 4);
    CHECK(upper_bound(CodeSpec::cwc(3, 3, 3, 2)).bound == 3);
    CHECK(upper_bound(CodeSpec::cwc(2, 7, 3, 3)).bound == 7);
    CHECK(upper_bound(CodeSpec::cwc(3, 60, 5, 3)).bound == 40);
    CHECK(upper_bound(CodeSpec::cwc(3, 8, 3, 3)).bound == 37);
    const BoundReport c = upper_bound(CodeSpec::ccc(3, 4, 3, Composition({1, 1})));
    CHECK(c.bound == 4);
    CHECK(c.formula == BoundFormula::ccc_closed_form);
    CHECK(c.f_value == BigCount(1));
    const BoundReport e = upper_bound(CodeSpec::cwc(3, 6, 4, 3));
    CHECK(e.parity == Parity::even);
    CHECK(e.t == 2);
    CHECK(e.bound == 10);  // (q-1)^(t-1) C(6,2)/C(3,2) = 2 * 15 / 3
    CHECK(to_string(BoundFormula::johnson_step) == "johnson-step");
}

TEST_CASE("closed-form bounds equal the rational oracle") {
    for (int q = 2; q <= 5; ++q)
        for (int n = 1; n <= 16; ++n)
            for (int w = 1; w <= std::min(n, 6); ++w)
                for (int d = 1; d <= 2 * w; ++d) {
                    const BoundReport r = cwc_upper_bound(CodeSpec::cwc(q, n, d, w));
                    CHECK(r.bound == oracle::cwc_bound(q, n, d, w));
                    CHECK(r.formula == BoundFormula::cwc_closed_form);
                }
    for (int q = 2; q <= 4; ++q)
        for (const auto& wbar : compositions(q - 1, 5)) {
            int w = 0;
            for (int c : wbar) w += c;
            if (w == 0) continue;
            for (int n = w; n <= 14; ++n)
                for (int d = 1; d <= 2 * w; ++d) {
                    const BoundReport r = ccc_upper_bound(CodeSpec::ccc(q, n, d, Composition(wbar)));
                    CHECK(r.bound == oracle::ccc_bound(n, d, wbar));
                    const int e = d % 2 == 1 ? w - r.t : w - r.t + 1;
                    CHECK(r.f_value == oracle::f_max(wbar, e)->value);
                }
        }
    CHECK_THROWS_AS(cwc_upper_bound(CodeSpec::ccc(3, 4, 3, Composition({1, 1}))), std::invalid_argument);
    CHECK_THROWS_AS(ccc_upper_bound(CodeSpec::cwc(3, 4, 3, 2)), std::invalid_argument);
}

TEST_CASE("Johnson step") {
    // floor((q-1) n / w * A)
    CHECK(johnson_step(CodeSpec::cwc(3, 8, 3, 3), 7) == 37);
    CHECK(johnson_step(CodeSpec::cwc(2, 7, 3, 3), 3) == 7);
    // floor(n / w_1 * A)
    CHECK(johnson_step(CodeSpec::ccc(3, 4, 3, Composition({1, 1})), 1) == 4);
    CHECK_THROWS_AS(johnson_step(CodeSpec::ccc(3, 4, 1, Composition({0, 2})), 1), std::invalid_argument);

    // Iterating the floored step t times from the trivial base never exceeds
    // the odd-d closed form, and without the floors it reproduces it exactly.
    for (int q = 2; q <= 4; ++q)
        for (int w = 1; w <= 5; ++w)
            for (int n = w; n <= 14; ++n)
                for (int d = 1; d <= 2 * w - 1; d += 2) {
                    const int t = threshold_t(d, w);
                    BigCount iterated = 1;
                    BigRational exact = 1;
                    for (int k = t - 1; k >= 0; --k) {
                        const auto step = CodeSpec::cwc(q, n - k, d, w - k);
                        iterated = johnson_step(step, iterated);
                        exact *= BigRational((q - 1) * (n - k), w - k);
                    }
                    const BigCount closed = cwc_upper_bound(CodeSpec::cwc(q, n, d, w)).bound;
                    CHECK(iterated <= closed);
                    CHECK(floor_of(exact) == closed);
                }
}
