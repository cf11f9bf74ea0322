#pragma once

#include <kdfkit/compensated.hpp>
#include <kdfkit/gamma.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

namespace kdfkit {

/// coefficient * 2^power_of_two * prod Gamma(numerator) / prod Gamma(denominator).
struct GammaTerm {
    double coefficient = 1.0;
    double power_of_two = 0.0;
    std::vector<double> numerator;
    std::vector<double> denominator;
};

/// A finite sum of Gamma-quotient terms; the common shape of every closed form.
using GammaSum = std::vector<GammaTerm>;

inline double evaluate_term(const GammaTerm& term)
{
    if (term.coefficient == 0.0) {
        return 0.0;
    }
    SignedLogValue v = gamma_ratio({term.numerator, term.denominator});
    if (v.sign == 0) {
        return 0.0;
    }
    v *= SignedLogValue::from_real(term.coefficient);
    v.log_abs += term.power_of_two * std::numbers::ln2;
    return v.to_real();
}

/// Throws UncancelledPoleError when any term has an unmatched numerator pole.
inline double evaluate(const GammaSum& sum)
{
    CompensatedSum<double> acc;
    for (const GammaTerm& term : sum) {
        acc.add(evaluate_term(term));
    }
    return acc.value();
}

using GammaArgLists = std::pair<std::vector<double>, std::vector<double>>;

/// sum_{r=0}^{i} s_r binom(i,r) coeff 2^pow2 Gamma(pre_num, num(r)) / Gamma(pre_den, den(r)),
/// where s_r = (-1)^r when alternating and 1 otherwise; term_args(r) yields (num(r), den(r)).
template <class TermArgs>
GammaSum binomial_gamma_sum(int i, bool alternating, double coeff, double pow2, const std::vector<double>& pre_num,
                            const std::vector<double>& pre_den, TermArgs term_args)
{
    if (i < 0) {
        throw RangeError("summation index bound must be non-negative");
    }
    GammaSum out;
    for (int r = 0; r <= i; ++r) {
        const double sign = (alternating && r % 2 != 0) ? -1.0 : 1.0;
        auto [num, den] = term_args(static_cast<double>(r));
        GammaTerm t{coeff * sign * binomial(i, r), pow2, pre_num, pre_den};
        t.numerator.insert(t.numerator.end(), num.begin(), num.end());
        t.denominator.insert(t.denominator.end(), den.begin(), den.end());
        out.push_back(std::move(t));
    }
    return out;
}

/// Smallest pole_distance over every Gamma argument of every term.
inline double pole_clearance(const GammaSum& sum)
{
    double d = std::numeric_limits<double>::infinity();
    for (const GammaTerm& term : sum) {
        for (double x : term.numerator) {
            d = std::min(d, pole_distance(x));
        }
        for (double x : term.denominator) {
            d = std::min(d, pole_distance(x));
        }
    }
    return d;
}

} // namespace kdfkit
