#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cwcmatch {

class CodeSpec;
class Composition;

using BigCount = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact binomial coefficient. Throws std::invalid_argument unless 0 <= k <= n.
BigCount binom(int n, int k);
/// Binomial coefficient extended by zero outside 0 <= k <= n (and for n < 0).
BigCount binom_or_zero(int n, int k);
/// Exact multinomial n! / (p_1! ... p_m!). Throws unless the parts are
/// non-negative and sum to n.
BigCount multinom(int n, std::span<const int> parts);

/// ceil((2w - d + 1) / 2). Throws std::invalid_argument unless 1 <= d <= 2w.
int threshold_t(int d, int w);

/// All t-bar with sum t and 0 <= t_i <= w_i, in lexicographic order.
std::vector<std::vector<int>> admissible_vectors(const Composition& wbar, int t);

struct AdmissibleMax {
    BigCount value;
    std::vector<int> witness;  ///< lexicographically smallest maximiser
};

/// max over admissible t-bar of t! / (t_1! ... t_{q-1}!). Throws
/// std::invalid_argument when no admissible vector exists.
AdmissibleMax f_max(const Composition& wbar, int t);

enum class Parity { odd, even };
enum class BoundFormula { cwc_closed_form, ccc_closed_form, johnson_step };

std::string to_string(Parity p);
std::string to_string(BoundFormula f);

struct BoundReport {
    BigCount bound;
    int t = 0;
    Parity parity = Parity::odd;
    BoundFormula formula = BoundFormula::cwc_closed_form;
    std::optional<BigCount> f_value;        ///< CCC only
    std::optional<std::vector<int>> witness;  ///< CCC only
};

/// floor((q-1)^t C(n,t) / C(w,t)) for odd d, floor((q-1)^(t-1) C(n,t) / C(w,t))
/// for even d. Requires a CWC spec.
BoundReport cwc_upper_bound(const CodeSpec& spec);

/// floor(C(n; n-w, w_1..w_{q-1}) / (C(n-t, w-t) f(wbar, w-t))) for odd d; the
/// even case uses f(wbar, w-t+1). Requires a CCC spec.
BoundReport ccc_upper_bound(const CodeSpec& spec);

/// Dispatches on CWC versus CCC.
BoundReport upper_bound(const CodeSpec& spec);

/// One floored step of the Johnson recursion: given an upper bound for the
/// problem with one coordinate and one unit of weight removed (for CCCs, one
/// unit of w_1), returns floor((q-1) n / w * smaller) for CWCs and
/// floor(n / w_1 * smaller) for CCCs. Throws when w = 0 (resp. w_1 = 0).
BigCount johnson_step(const CodeSpec& spec, const BigCount& smaller_value);

/// Floor of a non-negative rational.
BigCount floor_of(const BigRational& r);

}  // namespace cwcmatch
