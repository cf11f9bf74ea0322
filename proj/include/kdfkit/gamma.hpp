#pragma once

#include <kdfkit/errors.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

namespace kdfkit {

/// A real number stored as (ln|v|, sign). sign == 0 means exactly zero and
/// log_abs is then meaningless.
struct SignedLogValue {
    double log_abs = 0.0;
    int sign = 1;

    static SignedLogValue zero() { return {0.0, 0}; }

    static SignedLogValue from_real(double v)
    {
        if (v == 0.0) {
            return zero();
        }
        return {std::log(std::abs(v)), v < 0.0 ? -1 : 1};
    }

    double to_real() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

    SignedLogValue& operator*=(const SignedLogValue& o)
    {
        sign *= o.sign;
        log_abs += o.log_abs;
        return *this;
    }

    SignedLogValue& operator/=(const SignedLogValue& o)
    {
        if (o.sign == 0) {
            throw RangeError("division of SignedLogValue by zero");
        }
        sign *= o.sign;
        log_abs -= o.log_abs;
        return *this;
    }
};

inline SignedLogValue operator*(SignedLogValue l, const SignedLogValue& r) { return l *= r; }
inline SignedLogValue operator/(SignedLogValue l, const SignedLogValue& r) { return l /= r; }

/// Arguments closer than this to a non-positive integer are that integer.
inline constexpr double pole_tolerance = 1e-12;

inline bool is_nonpositive_integer(double x)
{
    if (!(x < 0.5)) {
        return false;
    }
    const double n = std::nearbyint(x);
    return n <= 0.0 && std::abs(x - n) <= pole_tolerance;
}

/// Replaces x by the exact integer when it sits within pole tolerance of a
/// non-positive integer; other values pass through unchanged.
inline double snap_to_pole(double x) { return is_nonpositive_integer(x) ? std::nearbyint(x) : x; }

/// Distance from x to the nearest non-positive integer.
inline double pole_distance(double x)
{
    if (x >= 0.0) {
        return x;
    }
    return std::abs(x - std::nearbyint(x));
}

namespace detail {

// sin(pi x) with the argument reduced before scaling, so integers give exact 0.
inline double sin_pi(double x)
{
    const double n = std::nearbyint(x);
    const double s = std::sin(std::numbers::pi * (x - n));
    return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

// Lanczos g = 7, nine coefficients; ln Gamma for x >= 0.5.
inline double lanczos_log_gamma(double x)
{
    static constexpr std::array<double, 9> coeff = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
    };
    constexpr double g = 7.0;
    const double xm1 = x - 1.0;
    double series = coeff[0];
    for (std::size_t k = 1; k < coeff.size(); ++k) {
        series += coeff[k] / (xm1 + static_cast<double>(k));
    }
    const double t = xm1 + g + 0.5;
    constexpr double half_log_two_pi = 0.91893853320467274178;
    return half_log_two_pi + (xm1 + 0.5) * std::log(t) - t + std::log(series);
}

} // namespace detail

/// (ln|Gamma(x)|, sign Gamma(x)).
inline SignedLogValue log_gamma_signed(double x)
{
    if (!std::isfinite(x)) {
        throw RangeError("log_gamma_signed: non-finite argument");
    }
    if (is_nonpositive_integer(x)) {
        throw PoleError("Gamma pole at " + std::to_string(x));
    }
    if (x >= 0.5) {
        return {detail::lanczos_log_gamma(x), 1};
    }
    // Gamma(x) Gamma(1-x) = pi / sin(pi x), and Gamma(1-x) > 0 here.
    const double s = detail::sin_pi(x);
    return {std::log(std::numbers::pi) - std::log(std::abs(s)) - detail::lanczos_log_gamma(1.0 - x),
            s < 0.0 ? -1 : 1};
}

/// Rising factorial by direct product; negative-integer lambda gives exact zeros.
inline double pochhammer(double lambda, unsigned n)
{
    double p = 1.0;
    for (unsigned k = 0; k < n; ++k) {
        p *= lambda + static_cast<double>(k);
    }
    return p;
}

/// binom(i, r) for r <= i <= 60, exact in 64-bit integers before rounding to double.
inline double binomial(int i, int r)
{
    if (i < 0 || r < 0 || r > i || i > 60) {
        throw RangeError("binomial(" + std::to_string(i) + ", " + std::to_string(r) + ") out of range");
    }
    r = std::min(r, i - r);
    std::uint64_t c = 1;
    for (int k = 0; k < r; ++k) {
        c = c * static_cast<std::uint64_t>(i - k) / static_cast<std::uint64_t>(k + 1);
    }
    return static_cast<double>(c);
}

/// Product of Gamma(numerator_args) over product of Gamma(denominator_args).
struct GammaRatioSpec {
    std::vector<double> numerator_args;
    std::vector<double> denominator_args;
};

/// Evaluates a Gamma quotient with pole cancellation. A numerator pole at -m
/// paired with a denominator pole at -k contributes (-1)^(m-k) k!/m!; the
/// product over pairs does not depend on which poles are paired.
inline SignedLogValue gamma_ratio(const GammaRatioSpec& spec)
{
    SignedLogValue acc{0.0, 1};
    std::vector<int> numerator_poles;
    std::vector<int> denominator_poles;
    for (double x : spec.numerator_args) {
        if (is_nonpositive_integer(x)) {
            numerator_poles.push_back(static_cast<int>(-std::nearbyint(x)));
        } else {
            acc *= log_gamma_signed(x);
        }
    }
    for (double x : spec.denominator_args) {
        if (is_nonpositive_integer(x)) {
            denominator_poles.push_back(static_cast<int>(-std::nearbyint(x)));
        } else {
            acc /= log_gamma_signed(x);
        }
    }
    if (numerator_poles.size() > denominator_poles.size()) {
        throw UncancelledPoleError("Gamma quotient has " + std::to_string(numerator_poles.size())
                                   + " numerator poles but only " + std::to_string(denominator_poles.size())
                                   + " denominator poles");
    }
    if (denominator_poles.size() > numerator_poles.size()) {
        return SignedLogValue::zero();
    }
    std::sort(numerator_poles.begin(), numerator_poles.end());
    std::sort(denominator_poles.begin(), denominator_poles.end());
    for (std::size_t j = 0; j < numerator_poles.size(); ++j) {
        const int m = numerator_poles[j];
        const int k = denominator_poles[j];
        acc.log_abs += detail::lanczos_log_gamma(k + 1.0) - detail::lanczos_log_gamma(m + 1.0);
        if ((m - k) % 2 != 0) {
            acc.sign = -acc.sign;
        }
    }
    return acc;
}

} // namespace kdfkit
