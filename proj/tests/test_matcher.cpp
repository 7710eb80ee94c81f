#include <doctest.h>

#include <random>

#include "cwcmatch/code_file.hpp"
#include "cwcmatch/errors.hpp"
#include "cwcmatch/matcher.hpp"
#include "oracles.hpp"

using namespace cwcmatch;

namespace {

MatchConfig greedy(std::uint64_t seed) {
    MatchConfig c;
    c.seed = seed;
    return c;
}

MatchConfig nibble(std::uint64_t seed, double bite = 0.1) {
    MatchConfig c;
    c.algorithm = Algorithm::nibble;
    c.seed = seed;
    c.bite_fraction = bite;
    return c;
}

int overlap_pairs(const Word& x, const Word& y) {
    int c = 0;
    for (int i = 0; i < x.n(); ++i) c += x[i] != 0 && x[i] == y[i];
    return c;
}

int overlap_support(const Word& x, const Word& y) {
    int c = 0;
    for (int i = 0; i < x.n(); ++i) c += x[i] != 0 && y[i] != 0;
    return c;
}

// The constructor predicate, written out from the overlap counts.
bool fits(const CodeSpec& spec, const Word& x, const Word& y) {
    const int t = spec.t();
    if (spec.kind() == CodeKind::cwc) return oracle::distance(x, y) >= spec.d();
    return overlap_pairs(x, y) <= t - 1 && overlap_support(x, y) <= t;
}

bool is_maximal(const Code& code) {
    for (const Word& x : oracle::space_words(code.spec().space())) {
        bool blocked = false;
        for (const Word& c : code.words())
            if (c == x || !fits(code.spec(), x, c)) {
                blocked = true;
                break;
            }
        if (!blocked) return false;
    }
    return true;
}

std::vector<CodeSpec> small_specs() {
    return {CodeSpec::cwc(3, 4, 3, 2),  CodeSpec::cwc(3, 7, 3, 2),  CodeSpec::cwc(2, 9, 3, 3),
            CodeSpec::cwc(3, 8, 3, 3),  CodeSpec::cwc(4, 6, 5, 3),  CodeSpec::cwc(3, 10, 5, 3),
            CodeSpec::cwc(3, 6, 1, 2),  CodeSpec::ccc(3, 6, 3, Composition({1, 1})),
            CodeSpec::ccc(3, 8, 3, Composition({2, 1})), CodeSpec::ccc(4, 7, 5, Composition({1, 1, 1})),
            CodeSpec::ccc(3, 9, 5, Composition({1, 2}))};
}

}  // namespace

TEST_CASE("config validation") {
    MatchConfig c;
    CHECK_NOTHROW(c.validate());
    c.bite_fraction = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.bite_fraction = 1.5;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.bite_fraction = 1.0;
    c.max_rounds = -1;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.max_rounds = 0;
    c.sample_budget = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    CHECK(parse_algorithm("nibble") == Algorithm::nibble);
    CHECK(to_string(Algorithm::greedy) == "greedy");
    CHECK_THROWS_AS(parse_algorithm("annealing"), std::invalid_argument);
}

TEST_CASE("constructions verify, are maximal and repeat exactly") {
    for (const auto& spec : small_specs())
        for (std::uint64_t seed : {0ULL, 1ULL, 99ULL, 0xFFFFFFFFFFFFFFFFULL})
            for (const auto& config : {greedy(seed), nibble(seed), nibble(seed, 1.0)}) {
                CAPTURE(spec.describe());
                CAPTURE(seed);
                const Construction a = construct(spec, config);
                CHECK(verify(a.code).ok());
                CHECK(oracle::is_valid_code(a.code));
                CHECK(is_maximal(a.code));
                CHECK(a.report.maximal);
                CHECK_FALSE(a.report.sampled);
                CHECK(BigCount(a.report.code_size) <= a.report.bound);
                CHECK(a.report.code_size == a.code.size());
                CHECK(a.report.ratio == BigRational(BigCount(a.code.size()), a.report.bound));
                const Construction b = construct(spec, config);
                CHECK(format_code(a.code) == format_code(b.code));
                CHECK(a.report.candidates_examined == b.report.candidates_examined);
            }
}

TEST_CASE("greedy reaches the optimum of the smallest Johnson-tight case") {
    const auto spec = CodeSpec::cwc(3, 4, 3, 2);
    std::size_t best = 0;
    for (std::uint64_t seed = 0; seed < 32; ++seed) best = std::max(best, greedy_construct(spec, greedy(seed)).code.size());
    CHECK(best == 4);
}

TEST_CASE("full-support spaces give a single word") {
    const auto spec = CodeSpec::cwc(3, 3, 5, 3);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const auto r = greedy_construct(spec, greedy(seed));
        CHECK(r.code.size() == 1);
        CHECK(r.report.ratio == BigRational(1, 2));
    }
}

TEST_CASE("nibble with no rounds and no completion is empty") {
    MatchConfig c = nibble(3);
    c.max_rounds = 0;
    c.completion = false;
    const auto r = nibble_construct(CodeSpec::cwc(3, 20, 3, 2), c);
    CHECK(r.code.empty());
    CHECK(r.report.ratio == 0);
    CHECK(r.report.rounds_executed == 0);
    CHECK_FALSE(r.report.maximal);
}

TEST_CASE("maximality floor n-1 for q=3 d=3 w=2") {
    for (int n : {20, 40, 80})
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto spec = CodeSpec::cwc(3, n, 3, 2);
            const auto g = greedy_construct(spec, greedy(seed));
            CHECK(g.code.size() + 1 >= static_cast<std::size_t>(n));
            CHECK(g.code.size() <= static_cast<std::size_t>(n));
            const auto b = nibble_construct(spec, nibble(seed));
            CHECK(b.code.size() + 1 >= static_cast<std::size_t>(n));
            CHECK(verify(b.code).ok());
        }
}

TEST_CASE("maximality floor (q-1)n/w^2 - w for t=1") {
    for (int wt : {2, 3})
        for (int n : {30, 60}) {
            const auto spec = CodeSpec::cwc(3, n, 2 * wt - 1, wt);
            REQUIRE(spec.t() == 1);
            const BigRational floor = BigRational(2 * n, wt * wt) - wt;
            for (std::uint64_t seed = 0; seed < 3; ++seed) {
                CHECK(BigRational(greedy_construct(spec, greedy(seed)).code.size()) >= floor);
                CHECK(BigRational(nibble_construct(spec, nibble(seed)).code.size()) >= floor);
            }
        }
}

TEST_CASE("single full bite behaves like greedy") {
    const auto spec = CodeSpec::cwc(3, 30, 3, 2);
    double greedy_total = 0, bite_total = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        greedy_total += static_cast<double>(greedy_construct(spec, greedy(seed)).code.size());
        MatchConfig c = nibble(seed, 1.0);
        c.max_rounds = 1;
        bite_total += static_cast<double>(nibble_construct(spec, c).code.size());
    }
    CHECK(std::abs(bite_total - greedy_total) <= 0.1 * greedy_total);
}

TEST_CASE("sampled regime") {
    const auto spec = CodeSpec::cwc(3, 30, 3, 2);  // 1740 words
    for (const auto algo : {Algorithm::greedy, Algorithm::nibble}) {
        MatchConfig c;
        c.algorithm = algo;
        c.seed = 5;
        c.sample_budget = 500;
        const auto a = construct(spec, c);
        CHECK(a.report.sampled);
        CHECK(a.report.candidates_examined <= 500 + (algo == Algorithm::nibble ? 500 : 0));
        CHECK(verify(a.code).ok());
        CHECK(format_code(a.code) == format_code(construct(spec, c).code));
    }
    // a space far beyond any enumeration
    MatchConfig c;
    c.sample_budget = 20'000;
    const auto big = greedy_construct(CodeSpec::cwc(3, 300, 5, 3), c);
    CHECK(big.report.sampled);
    CHECK(big.code.size() > 0);
    CHECK(verify(big.code).ok());
    const auto bigc = greedy_construct(CodeSpec::ccc(4, 200, 5, Composition({1, 1, 1})), c);
    CHECK(verify(bigc.code).ok());
    CHECK(bigc.code.size() > 0);
}

TEST_CASE("random specs construct valid codes") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const int q = 2 + static_cast<int>(rng() % 3);
        const int n = 3 + static_cast<int>(rng() % 10);
        const int wt = 1 + static_cast<int>(rng() % std::min(n, 4));
        const int d = 1 + 2 * static_cast<int>(rng() % wt);
        const auto spec = CodeSpec::cwc(q, n, d, wt);
        MatchConfig c = rng() % 2 ? greedy(rng()) : nibble(rng());
        const auto r = construct(spec, c);
        CAPTURE(spec.describe());
        CHECK(oracle::is_valid_code(r.code));
        CHECK(BigCount(r.code.size()) <= r.report.bound);
    }
}

TEST_CASE("even distance is refused") {
    CHECK_THROWS_AS(greedy_construct(CodeSpec::cwc(3, 6, 4, 3), MatchConfig{}), Unsupported);
    CHECK_THROWS_AS(nibble_construct(CodeSpec::cwc(3, 6, 4, 3), nibble(0)), Unsupported);
    CHECK_THROWS_AS(construct(CodeSpec::ccc(3, 6, 2, Composition({1, 1})), MatchConfig{}), Unsupported);
}

TEST_CASE("conflict diagnostics") {
    const auto a = conflict_diagnostics(CodeSpec::ccc(3, 8, 3, Composition({1, 1})), DegreeMode::closed_form);
    CHECK(a.delta2_envelope == 2);
    REQUIRE(a.beta.has_value());
    CHECK(*a.beta == doctest::Approx(0.5));
    const auto b = conflict_diagnostics(CodeSpec::ccc(3, 10, 3, Composition({2, 1})), DegreeMode::closed_form);
    CHECK(b.delta2_envelope == 3);
    const auto c = conflict_diagnostics(CodeSpec::ccc(3, 10, 1, Composition({2, 1})), DegreeMode::closed_form);
    CHECK(c.delta2_envelope == 0);
    CHECK_FALSE(c.beta.has_value());
    const auto e = conflict_diagnostics(CodeSpec::ccc(3, 8, 3, Composition({1, 1})), DegreeMode::empirical);
    CHECK(e.delta2 <= e.delta2_envelope);
    CHECK(e.codegree <= e.codegree_envelope);
    CHECK_THROWS_AS(conflict_diagnostics(CodeSpec::cwc(3, 8, 3, 2), DegreeMode::closed_form), std::invalid_argument);
}
