#include "cwcmatch/bounds.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "cwcmatch/word.hpp"

namespace cwcmatch {

BigCount binom(int n, int k) {
    if (n < 0 || k < 0 || k > n)
        throw std::invalid_argument("binom(" + std::to_string(n) + ", " + std::to_string(k) +
                                    ") requires 0 <= k <= n");
    k = std::min(k, n - k);
    BigCount r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

BigCount binom_or_zero(int n, int k) {
    if (n < 0 || k < 0 || k > n) return 0;
    return binom(n, k);
}

BigCount multinom(int n, std::span<const int> parts) {
    int total = 0;
    for (int p : parts) {
        if (p < 0) throw std::invalid_argument("multinom: negative part");
        total += p;
    }
    if (total != n) throw std::invalid_argument("multinom: parts do not sum to n");
    BigCount r = 1;
    int remaining = n;
    for (int p : parts) {
        r *= binom(remaining, p);
        remaining -= p;
    }
    return r;
}

int threshold_t(int d, int w) {
    if (d < 1 || d > 2 * w)
        throw std::invalid_argument("threshold_t requires 1 <= d <= 2w, got d=" + std::to_string(d) +
                                    ", w=" + std::to_string(w));
    return (2 * w - d + 2) / 2;
}

namespace {

void admissible_rec(std::span<const int> caps, int remaining, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
    const std::size_t i = cur.size();
    if (i == caps.size()) {
        if (remaining == 0) out.push_back(cur);
        return;
    }
    int tail_cap = 0;
    for (std::size_t j = i + 1; j < caps.size(); ++j) tail_cap += caps[j];
    const int lo = std::max(0, remaining - tail_cap);
    const int hi = std::min(caps[i], remaining);
    for (int v = lo; v <= hi; ++v) {
        cur.push_back(v);
        admissible_rec(caps, remaining - v, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<std::vector<int>> admissible_vectors(const Composition& wbar, int t) {
    std::vector<std::vector<int>> out;
    if (t < 0 || t > wbar.weight()) return out;
    std::vector<int> cur;
    admissible_rec(wbar.counts(), t, cur, out);
    return out;
}

AdmissibleMax f_max(const Composition& wbar, int t) {
    const auto vectors = admissible_vectors(wbar, t);
    if (vectors.empty())
        throw std::invalid_argument("f_max: no (wbar, t)-admissible vector for t=" +
                                    std::to_string(t));
    AdmissibleMax best{multinom(t, vectors.front()), vectors.front()};
    for (std::size_t i = 1; i < vectors.size(); ++i) {
        BigCount v = multinom(t, vectors[i]);
        if (v > best.value) best = {std::move(v), vectors[i]};
    }
    return best;
}

std::string to_string(Parity p) { return p == Parity::odd ? "odd" : "even"; }

std::string to_string(BoundFormula f) {
    switch (f) {
        case BoundFormula::cwc_closed_form: return "cwc-closed-form";
        case BoundFormula::ccc_closed_form: return "ccc-closed-form";
        case BoundFormula::johnson_step: return "johnson-step";
    }
    return "unknown";
}

BigCount floor_of(const BigRational& r) {
    return boost::multiprecision::numerator(r) / boost::multiprecision::denominator(r);
}

BoundReport cwc_upper_bound(const CodeSpec& spec) {
    if (spec.kind() != CodeKind::cwc) throw std::invalid_argument("cwc_upper_bound needs a CWC spec");
    const int t = spec.t();
    const bool odd = spec.odd_distance();
    BigCount scale = boost::multiprecision::pow(BigCount(spec.q() - 1), odd ? t : t - 1);
    BigRational value(scale * binom(spec.n(), t), binom(spec.w(), t));
    return BoundReport{floor_of(value), t, odd ? Parity::odd : Parity::even,
                       BoundFormula::cwc_closed_form, std::nullopt, std::nullopt};
}

BoundReport ccc_upper_bound(const CodeSpec& spec) {
    if (spec.kind() != CodeKind::ccc) throw std::invalid_argument("ccc_upper_bound needs a CCC spec");
    const int n = spec.n(), w = spec.w(), t = spec.t();
    const bool odd = spec.odd_distance();
    std::vector<int> parts{n - w};
    for (int c : spec.composition().counts()) parts.push_back(c);
    const BigCount words = multinom(n, parts);
    AdmissibleMax f = f_max(spec.composition(), odd ? w - t : w - t + 1);
    BigRational value(words, binom(n - t, w - t) * f.value);
    return BoundReport{floor_of(value), t, odd ? Parity::odd : Parity::even,
                       BoundFormula::ccc_closed_form, std::move(f.value), std::move(f.witness)};
}

BoundReport upper_bound(const CodeSpec& spec) {
    return spec.kind() == CodeKind::cwc ? cwc_upper_bound(spec) : ccc_upper_bound(spec);
}

BigCount johnson_step(const CodeSpec& spec, const BigCount& smaller_value) {
    if (smaller_value < 0) throw std::invalid_argument("johnson_step: negative input bound");
    if (spec.kind() == CodeKind::cwc) {
        if (spec.w() == 0) throw std::invalid_argument("johnson_step: w must be positive");
        return floor_of(BigRational(BigCount(spec.q() - 1) * spec.n() * smaller_value, spec.w()));
    }
    const int w1 = spec.composition()[0];
    if (w1 == 0) throw std::invalid_argument("johnson_step: w_1 must be positive");
    return floor_of(BigRational(BigCount(spec.n()) * smaller_value, w1));
}

}  // namespace cwcmatch
