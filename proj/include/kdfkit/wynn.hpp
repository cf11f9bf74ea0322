#pragma once

#include <kdfkit/errors.hpp>
#include <kdfkit/wide.hpp>

#include <span>
#include <vector>

namespace kdfkit {

template <class T>
struct WynnEstimate {
    T value;
    T error_estimate;
};

/// Epsilon-table extrapolation of a sequence of partial sums. The estimate is
/// the last entry of the highest even column that could be built; its error
/// is the larger of the jumps to the previous even column and to the
/// neighbouring entry of the same column. A sequence whose last two entries
/// coincide is treated as converged with zero error.
template <class T>
WynnEstimate<T> wynn_epsilon_generic(std::span<const T> sums)
{
    const std::size_t n = sums.size();
    if (n < 5) {
        throw RangeError("wynn_epsilon needs at least 5 partial sums");
    }
    for (const T& s : sums) {
        if (!wide_isfinite(s)) {
            throw AccelerationFailure("non-finite partial sum");
        }
    }
    if (sums[n - 1] == sums[n - 2]) {
        return {sums[n - 1], T(0)};
    }

    std::vector<T> previous(n + 1, T(0));
    std::vector<T> current(sums.begin(), sums.end());
    T last_even = current.back();
    bool have_even = false;
    WynnEstimate<T> best{current.back(), wide_abs(current[n - 1] - current[n - 2])};

    for (std::size_t column = 1; current.size() >= 2; ++column) {
        std::vector<T> next(current.size() - 1);
        bool broke = false;
        for (std::size_t j = 0; j + 1 < current.size(); ++j) {
            const T diff = current[j + 1] - current[j];
            if (diff == T(0)) {
                broke = true;
                break;
            }
            next[j] = previous[j + 1] + T(1) / diff;
            if (!wide_isfinite(next[j])) {
                broke = true;
                break;
            }
        }
        if (broke) {
            break;
        }
        if (column % 2 == 0) {
            const T estimate = next.back();
            T error = wide_abs(estimate - last_even);
            if (next.size() >= 2) {
                error = wide_max(error, wide_abs(estimate - next[next.size() - 2]));
            }
            best = {estimate, error};
            last_even = estimate;
            have_even = true;
            if (error == T(0)) {
                break;
            }
        }
        previous = std::move(current);
        current = std::move(next);
    }
    if (!have_even) {
        throw AccelerationFailure("epsilon table broke down before the first even column");
    }
    return best;
}

struct WynnResult {
    double value;
    double error_estimate;
};

inline WynnResult wynn_epsilon(std::span<const double> partial_sums)
{
    const auto r = wynn_epsilon_generic<double>(partial_sums);
    return {r.value, r.error_estimate};
}

} // namespace kdfkit
