#pragma once

namespace kdfkit {

/// Scalar used where partial sums cancel heavily (diagonal double-series sums).
#if defined(__SIZEOF_FLOAT128__) && !defined(KDFKIT_NO_FLOAT128)
using wide_t = __float128;
inline constexpr double wide_epsilon = 1.9259299443872359e-34; // 2^-112
#else
using wide_t = long double;
inline constexpr double wide_epsilon = static_cast<double>(__LDBL_EPSILON__);
#endif

template <class T>
constexpr T wide_abs(T x)
{
    return x < T(0) ? -x : x;
}

template <class T>
constexpr T wide_max(T a, T b)
{
    return a < b ? b : a;
}

/// False for infinities and NaN, for any arithmetic-like type.
template <class T>
constexpr bool wide_isfinite(T x)
{
    return (x - x) == T(0);
}

} // namespace kdfkit
