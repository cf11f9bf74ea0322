#pragma once

#include <kdfkit/compensated.hpp>
#include <kdfkit/errors.hpp>
#include <kdfkit/gamma.hpp>
#include <kdfkit/wide.hpp>
#include <kdfkit/wynn.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kdfkit {

enum class EvalStatus { converged, terminated, accelerated, inconclusive };

inline std::string_view to_string(EvalStatus s)
{
    switch (s) {
    case EvalStatus::converged: return "converged";
    case EvalStatus::terminated: return "terminated";
    case EvalStatus::accelerated: return "accelerated";
    case EvalStatus::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

inline std::optional<EvalStatus> eval_status_from_string(std::string_view s)
{
    for (EvalStatus v : {EvalStatus::converged, EvalStatus::terminated, EvalStatus::accelerated,
                         EvalStatus::inconclusive}) {
        if (to_string(v) == s) {
            return v;
        }
    }
    return std::nullopt;
}

struct EvalResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::size_t terms_used = 0;
    EvalStatus status = EvalStatus::inconclusive;
    /// Why the result is inconclusive; empty otherwise.
    std::string detail;

    bool trusted() const { return status != EvalStatus::inconclusive && std::isfinite(value); }
};

/// pFq(numerator_params; denominator_params; argument).
struct PFQSpec {
    std::vector<double> numerator_params;
    std::vector<double> denominator_params;
    double argument = 0.0;

    bool operator==(const PFQSpec&) const = default;
};

/// Kampe de Feriet double series; Term(m,n) couples h/g to m+n, a/c to m and b/d to n.
struct KdFSpec {
    std::vector<double> h_params;
    std::vector<double> g_params;
    std::vector<double> a_params;
    std::vector<double> b_params;
    std::vector<double> c_params;
    std::vector<double> d_params;
    double x = 0.0;
    double y = 0.0;

    bool operator==(const KdFSpec&) const = default;

    /// The same series with the roles of m and n exchanged.
    KdFSpec transposed() const { return {h_params, g_params, b_params, a_params, d_params, c_params, y, x}; }
};

/// Appell F3(a, a2 : b, b2 ; c ; x, y).
struct F3Args {
    double a = 0.0;
    double a2 = 0.0;
    double b = 0.0;
    double b2 = 0.0;
    double c = 0.0;
    double x = 0.0;
    double y = 0.0;

    bool operator==(const F3Args&) const = default;

    KdFSpec to_kdf() const { return {{}, {c}, {a, b}, {a2, b2}, {}, {}, x, y}; }
};

inline constexpr double default_rel_tol = 1e-10;
inline constexpr std::size_t default_max_index = 2000;
inline constexpr std::size_t default_max_terms = 20000;

namespace detail {

inline std::vector<double> snapped(const std::vector<double>& v)
{
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), snap_to_pole);
    return out;
}

inline bool any_nonpositive_integer(const std::vector<double>& v)
{
    return std::any_of(v.begin(), v.end(), is_nonpositive_integer);
}

inline double shifted_product(const std::vector<double>& params, double shift)
{
    double p = 1.0;
    for (double v : params) {
        p *= v + shift;
    }
    return p;
}

template <class T>
T shifted_product_as(const std::vector<double>& params, double shift)
{
    T p(1);
    for (double v : params) {
        p *= T(v) + T(shift);
    }
    return p;
}

inline std::vector<double> concat(const std::vector<double>& l, const std::vector<double>& r)
{
    std::vector<double> out(l);
    out.insert(out.end(), r.begin(), r.end());
    return out;
}

/// Bound on |next| + |next r| + ... when the term ratio stays below |r|; infinite for |r| >= 1.
inline double geometric_tail(double next, double r)
{
    return std::abs(r) < 1.0 ? std::abs(next) / (1.0 - std::abs(r)) : std::numeric_limits<double>::infinity();
}

inline EvalResult inconclusive(std::string why, std::size_t terms = 0, double value = 0.0)
{
    return {value, std::abs(value), terms, EvalStatus::inconclusive, std::move(why)};
}

inline void check_tolerance(double rel_tol)
{
    if (!(rel_tol >= 1e-15)) {
        throw RangeError("rel_tol must be at least 1e-15");
    }
}

} // namespace detail

/// Predicts divergence of a single pFq-type series from parameter counts and,
/// at |z| = 1 with p = q + 1, from the excess s = sum(den) - sum(num):
/// z = 1 needs s > 0 and z = -1 needs s > -1. Returns the reason on failure.
inline std::optional<std::string> series_convergence_issue(const std::vector<double>& numerator,
                                                           const std::vector<double>& denominator, double z)
{
    if (z == 0.0 || detail::any_nonpositive_integer(numerator)) {
        return std::nullopt;
    }
    const std::size_t p = numerator.size();
    const std::size_t q = denominator.size();
    const double mag = std::abs(z);
    if (p > q + 1) {
        return "series with p=" + std::to_string(p) + " > q+1=" + std::to_string(q + 1) + " diverges";
    }
    if (p < q + 1 || mag < 1.0) {
        return std::nullopt;
    }
    if (mag > 1.0) {
        return "argument outside the unit disc";
    }
    const double excess = std::accumulate(denominator.begin(), denominator.end(), 0.0)
                          - std::accumulate(numerator.begin(), numerator.end(), 0.0);
    const double needed = z > 0.0 ? 0.0 : -1.0;
    if (!(excess > needed)) {
        return "parameter excess " + std::to_string(excess) + " at z=" + std::to_string(z) + " predicts divergence";
    }
    return std::nullopt;
}

/// Applies series_convergence_issue to both axis series (n = 0 column at x,
/// m = 0 row at y) of a Kampe de Feriet function.
inline std::optional<std::string> kdf_convergence_issue(const KdFSpec& spec)
{
    const auto h = detail::snapped(spec.h_params);
    if (detail::any_nonpositive_integer(h)) {
        return std::nullopt;
    }
    if (auto issue = series_convergence_issue(detail::concat(h, detail::snapped(spec.a_params)),
                                              detail::concat(spec.g_params, spec.c_params), spec.x)) {
        return "x-axis: " + *issue;
    }
    if (auto issue = series_convergence_issue(detail::concat(h, detail::snapped(spec.b_params)),
                                              detail::concat(spec.g_params, spec.d_params), spec.y)) {
        return "y-axis: " + *issue;
    }
    return std::nullopt;
}

inline std::optional<std::string> f3_convergence_issue(const F3Args& f3)
{
    if (std::abs(f3.x) >= 1.0 && std::abs(f3.y) >= 1.0) {
        return "F3 needs at least one argument inside the unit disc";
    }
    return kdf_convergence_issue(f3.to_kdf());
}

/// Sums a pFq series by its term recurrence with compensated accumulation.
/// Stops on three consecutive terms below rel_tol relative to the sum (while
/// the term ratio is below one), on an exact zero numerator factor, or at
/// max_terms. Unit arguments are resummed with the epsilon algorithm.
inline EvalResult eval_pfq(const PFQSpec& spec, double rel_tol = default_rel_tol,
                           std::size_t max_terms = default_max_terms)
{
    detail::check_tolerance(rel_tol);
    if (max_terms == 0 || max_terms > 1000000) {
        throw RangeError("max_terms must lie in [1, 1e6]");
    }
    const double z = spec.argument;
    if (!std::isfinite(z)) {
        throw RangeError("eval_pfq: non-finite argument");
    }
    const auto num = detail::snapped(spec.numerator_params);
    const auto den = detail::snapped(spec.denominator_params);
    if (auto issue = series_convergence_issue(num, den, z)) {
        return detail::inconclusive(*issue);
    }
    if (z == 0.0) {
        return {1.0, 0.0, 1, EvalStatus::converged, {}};
    }

    constexpr std::size_t window = 60;
    const bool unit = std::abs(z) >= 1.0;
    CompensatedSum<double> sum;
    std::deque<double> recent;
    double term = 1.0;
    int small_run = 0;
    std::optional<double> last_estimate;

    // Accepts an epsilon estimate whose own error is below rel_tol; while
    // still summing it must also agree with the previous attempt.
    auto try_wynn = [&](std::size_t used, bool need_agreement) -> std::optional<EvalResult> {
        if (recent.size() < 8) {
            return std::nullopt;
        }
        std::vector<wide_t> seq(recent.begin(), recent.end());
        try {
            const auto w = wynn_epsilon_generic<wide_t>(seq);
            const double est = static_cast<double>(w.value);
            const double err = static_cast<double>(w.error_estimate);
            const double jump = last_estimate ? std::abs(est - *last_estimate) : 0.0;
            const bool agrees = last_estimate && jump <= rel_tol * std::abs(est);
            last_estimate = est;
            if (std::isfinite(est) && err <= rel_tol * std::abs(est) && (agrees || !need_agreement)) {
                return EvalResult{est, std::max(err, jump), used, EvalStatus::accelerated, {}};
            }
        } catch (const AccelerationFailure&) {
            last_estimate.reset();
        }
        return std::nullopt;
    };

    for (std::size_t n = 0; n < max_terms; ++n) {
        sum.add(term);
        recent.push_back(sum.value());
        if (recent.size() > window) {
            recent.pop_front();
        }
        const double shift = static_cast<double>(n);
        const double num_factor = detail::shifted_product(num, shift);
        if (num_factor == 0.0) {
            return {sum.value(), 0.0, n + 1, EvalStatus::terminated, {}};
        }
        const double den_factor = detail::shifted_product(den, shift);
        if (den_factor == 0.0) {
            throw DenominatorPoleError("pFq denominator Pochhammer vanishes at n=" + std::to_string(n + 1));
        }
        const double ratio = num_factor / den_factor * z / (shift + 1.0);
        const double next = term * ratio;
        const double s = std::abs(sum.value());
        const double tail = detail::geometric_tail(next, ratio);
        if (std::abs(term) <= rel_tol * s && tail <= rel_tol * s) {
            if (++small_run >= 3) {
                return {sum.value(), tail, n + 1, EvalStatus::converged, {}};
            }
        } else {
            small_run = 0;
        }
        if (!std::isfinite(next)) {
            return detail::inconclusive("pFq term overflow", n + 1, sum.value());
        }
        if (unit && n >= 20 && n % 10 == 0) {
            if (auto r = try_wynn(n + 1, true)) {
                return *r;
            }
        }
        term = next;
    }
    if (auto r = try_wynn(max_terms, false)) {
        return *r;
    }
    return detail::inconclusive("pFq series did not converge within max_terms", max_terms, sum.value());
}

/// Gauss 2F1 on [-1, 1). Arguments in (-1, -1/2), and z = -1 when the direct
/// series diverges there, go through the Pfaff transformation
/// (1-z)^(-a) 2F1(a, c-b; c; z/(z-1)).
inline EvalResult eval_2f1(double a, double b, double c, double z, double rel_tol = default_rel_tol)
{
    detail::check_tolerance(rel_tol);
    a = snap_to_pole(a);
    b = snap_to_pole(b);
    c = snap_to_pole(c);
    const bool terminating = is_nonpositive_integer(a) || is_nonpositive_integer(b);
    // A terminating series is a polynomial, so any finite z is admissible.
    if (!(terminating ? std::isfinite(z) : z >= -1.0 && z < 1.0)) {
        throw RangeError("eval_2f1 requires z in [-1, 1) unless the series terminates");
    }
    const bool direct_diverges_at_minus_one = !(c - a - b > -1.0);
    const bool pfaff = !terminating && (z < -0.5) && (z > -1.0 || direct_diverges_at_minus_one);
    if (!pfaff) {
        return eval_pfq({{a, b}, {c}, z}, rel_tol);
    }
    if (is_nonpositive_integer(c)) {
        throw DenominatorPoleError("2F1 with non-positive integer c");
    }
    // Keep the transformed series terminating when c-a or c-b allows it.
    if (is_nonpositive_integer(snap_to_pole(c - a)) && !is_nonpositive_integer(snap_to_pole(c - b))) {
        std::swap(a, b);
    }
    const double w = z / (z - 1.0);
    EvalResult inner = eval_pfq({{a, snap_to_pole(c - b)}, {c}, w}, rel_tol);
    const double scale = std::pow(1.0 - z, -a);
    inner.value *= scale;
    inner.abs_error_estimate *= std::abs(scale);
    return inner;
}

namespace detail {

enum class KdfOrder { rows, diagonal };

inline KdfOrder choose_order(const KdFSpec& s)
{
    const double ax = std::abs(s.x);
    const double ay = std::abs(s.y);
    const auto h = s.h_params.size();
    const auto g = s.g_params.size();
    if (ax < 1.0 && ay < 1.0) {
        if (h <= g) {
            return KdfOrder::rows;
        }
        if (h == g + 1 && ax + ay < 0.75) {
            return KdfOrder::rows;
        }
    }
    return KdfOrder::diagonal;
}

inline EvalResult kdf_rows(const KdFSpec& s, double rel_tol, std::size_t max_index)
{
    const double inner_tol = rel_tol / 4.0;
    CompensatedSum<double> total;
    double prefix = 1.0;
    std::size_t terms = 0;
    int small_run = 0;
    bool all_rows_exact = true;
    double inner_error = 0.0;

    for (std::size_t m = 0; m <= max_index; ++m) {
        const double dm = static_cast<double>(m);
        CompensatedSum<double> row;
        double u = 1.0;
        bool row_done = false;
        int row_small = 0;
        for (std::size_t n = 0; n <= max_index; ++n) {
            row.add(u);
            ++terms;
            const double dn = static_cast<double>(n);
            const double nf = shifted_product(s.h_params, dm + dn) * shifted_product(s.b_params, dn) * s.y;
            if (nf == 0.0) {
                row_done = true;
                break;
            }
            const double df = shifted_product(s.g_params, dm + dn) * shifted_product(s.d_params, dn);
            if (df == 0.0) {
                throw DenominatorPoleError("KdF denominator vanishes at (m,n)=(" + std::to_string(m) + ","
                                           + std::to_string(n + 1) + ")");
            }
            const double r = nf / df / (dn + 1.0);
            const double next = u * r;
            const double tail = geometric_tail(next, r);
            const double row_scale = inner_tol * std::abs(row.value());
            if (std::abs(u) <= row_scale && tail <= row_scale) {
                if (++row_small >= 3) {
                    all_rows_exact = false;
                    inner_error += std::abs(prefix) * tail;
                    row_done = true;
                    break;
                }
            } else {
                row_small = 0;
            }
            if (!std::isfinite(next)) {
                return inconclusive("KdF inner series overflow", terms, total.value());
            }
            u = next;
        }
        if (!row_done) {
            return inconclusive("KdF inner series did not converge within max_index", terms, total.value());
        }
        const double row_value = prefix * row.value();
        total.add(row_value);

        const double nf = shifted_product(s.h_params, dm) * shifted_product(s.a_params, dm) * s.x;
        if (nf == 0.0) {
            const EvalStatus st = all_rows_exact ? EvalStatus::terminated : EvalStatus::converged;
            return {total.value(), all_rows_exact ? 0.0 : inner_error, terms, st, {}};
        }
        const double df = shifted_product(s.g_params, dm) * shifted_product(s.c_params, dm);
        if (df == 0.0) {
            throw DenominatorPoleError("KdF denominator vanishes at row m=" + std::to_string(m + 1));
        }
        const double ratio = nf / df / (dm + 1.0);
        const double tail = detail::geometric_tail(row_value * ratio, ratio);
        const double scale = rel_tol * std::abs(total.value());
        if (std::abs(row_value) <= scale && tail <= scale) {
            if (++small_run >= 3) {
                return {total.value(), tail + inner_error, terms, EvalStatus::converged, {}};
            }
        } else {
            small_run = 0;
        }
        prefix *= ratio;
        if (!std::isfinite(prefix)) {
            return inconclusive("KdF row prefactor overflow", terms, total.value());
        }
    }
    return inconclusive("KdF outer series did not converge within max_index", terms, total.value());
}

/// Diagonal partial sums S_N = sum over m+n <= N, built in wide precision.
/// Each diagonal is H_N * sum_m A_m B_(N-m) with H the coupled (h)/(g) factor
/// and A, B the separate factors including powers and factorials.
inline EvalResult kdf_diagonal(const KdFSpec& s, double rel_tol, std::size_t max_index)
{
    constexpr std::size_t diagonal_cap = 600;
    constexpr std::size_t wynn_window = 40;
    const std::size_t limit = std::min(max_index, diagonal_cap);

    std::vector<wide_t> a_terms{wide_t(1)};
    std::vector<wide_t> b_terms{wide_t(1)};
    std::optional<std::size_t> a_end;
    std::optional<std::size_t> b_end;
    if (s.x == 0.0) {
        a_end = 0;
    }
    if (s.y == 0.0) {
        b_end = 0;
    }
    wide_t coupled(1);
    bool coupled_zero = false;
    wide_t sum(0);
    double rounding = 0.0;
    std::vector<double> diag_mag;
    std::vector<wide_t> partial;
    std::size_t terms = 0;
    int small_run = 0;
    // NaN until a first estimate exists.
    double last_estimate = std::numeric_limits<double>::quiet_NaN();

    auto grow = [](std::vector<wide_t>& t, std::optional<std::size_t>& end, const std::vector<double>& num,
                   const std::vector<double>& den, double arg, const char* axis) {
        const std::size_t k = t.size() - 1;
        if (end) {
            t.push_back(wide_t(0));
            return;
        }
        const double dk = static_cast<double>(k);
        const wide_t nf = shifted_product_as<wide_t>(num, dk);
        if (nf == wide_t(0)) {
            end = k;
            t.push_back(wide_t(0));
            return;
        }
        const wide_t df = shifted_product_as<wide_t>(den, dk);
        if (df == wide_t(0)) {
            throw DenominatorPoleError(std::string("KdF ") + axis + " denominator vanishes at index "
                                       + std::to_string(k + 1));
        }
        t.push_back(t.back() * nf / df * wide_t(arg) / wide_t(dk + 1.0));
    };

    // The late half of the diagonals must not outgrow the preceding quarter.
    auto decay_ok = [&](std::size_t n, double s_abs) {
        const std::size_t q1 = n / 4;
        const std::size_t q2 = n / 2;
        double early = 0.0;
        double late = 0.0;
        for (std::size_t k = q1; k < q2; ++k) {
            early = std::max(early, diag_mag[k]);
        }
        for (std::size_t k = q2; k <= n; ++k) {
            late = std::max(late, diag_mag[k]);
        }
        return late <= std::max(early, rel_tol * s_abs);
    };

    for (std::size_t n = 0; n <= limit; ++n) {
        if (n > 0) {
            grow(a_terms, a_end, s.a_params, s.c_params, s.x, "a/c");
            grow(b_terms, b_end, s.b_params, s.d_params, s.y, "b/d");
            if (!coupled_zero) {
                const double dn = static_cast<double>(n - 1);
                const wide_t nf = shifted_product_as<wide_t>(s.h_params, dn);
                if (nf == wide_t(0)) {
                    coupled_zero = true;
                    coupled = wide_t(0);
                } else {
                    const wide_t df = shifted_product_as<wide_t>(s.g_params, dn);
                    if (df == wide_t(0)) {
                        throw DenominatorPoleError("KdF coupled denominator vanishes at m+n="
                                                   + std::to_string(n));
                    }
                    coupled *= nf / df;
                }
            }
        }
        const bool exhausted = coupled_zero || (a_end && b_end && n > *a_end + *b_end);
        if (exhausted) {
            return {static_cast<double>(sum), 0.0, terms, EvalStatus::terminated, {}};
        }
        wide_t inner(0);
        wide_t inner_abs(0);
        for (std::size_t m = 0; m <= n; ++m) {
            const wide_t t = a_terms[m] * b_terms[n - m];
            inner += t;
            inner_abs += wide_abs(t);
        }
        terms += n + 1;
        const wide_t diag = coupled * inner;
        sum += diag;
        partial.push_back(sum);
        diag_mag.push_back(static_cast<double>(wide_abs(diag)));
        rounding += wide_epsilon * static_cast<double>(wide_abs(coupled) * inner_abs) * static_cast<double>(n + 1);

        if (!wide_isfinite(sum)) {
            return inconclusive("KdF diagonal sum overflow", terms);
        }
        const double s_abs = std::abs(static_cast<double>(sum));
        if (rounding > 0.1 * rel_tol * s_abs && n > 0) {
            return inconclusive("KdF diagonal cancellation exhausted working precision", terms,
                                static_cast<double>(sum));
        }
        if (diag_mag.back() <= rel_tol * s_abs) {
            ++small_run;
            if (small_run >= 3 && n >= 8 && decay_ok(n, s_abs)) {
                return {static_cast<double>(sum), diag_mag.back() + rounding, terms, EvalStatus::converged, {}};
            }
        } else {
            small_run = 0;
        }
        if (n >= 12 && n % 3 == 0 && decay_ok(n, s_abs)) {
            const std::size_t w = std::min(partial.size(), wynn_window);
            std::span<const wide_t> seq(partial.data() + partial.size() - w, w);
            try {
                const auto est = wynn_epsilon_generic<wide_t>(seq);
                const double value = static_cast<double>(est.value);
                const double err = static_cast<double>(est.error_estimate);
                const double jump = std::isnan(last_estimate) ? std::numeric_limits<double>::infinity()
                                                              : std::abs(value - last_estimate);
                last_estimate = value;
                if (std::isfinite(value) && err <= rel_tol * std::abs(value) && jump <= rel_tol * std::abs(value)) {
                    return {value, std::max(err, jump) + rounding, terms, EvalStatus::accelerated, {}};
                }
            } catch (const AccelerationFailure&) {
                last_estimate = std::numeric_limits<double>::quiet_NaN();
            }
        }
    }
    if (!decay_ok(diag_mag.size() - 1, std::abs(static_cast<double>(sum)))) {
        return inconclusive("KdF diagonal terms are not decaying", terms, static_cast<double>(sum));
    }
    return inconclusive("KdF diagonal sums did not converge within the index limit", terms,
                        static_cast<double>(sum));
}

} // namespace detail

/// Kampe de Feriet double series for real |x|, |y| <= 1. Inside the region of
/// absolute convergence rows are summed with inner tolerance rel_tol/4;
/// otherwise, and at unit arguments, diagonal partial sums are built in wide
/// precision and resummed with the epsilon algorithm when needed. Predicted
/// divergence of either axis series at a unit argument gives Inconclusive.
inline EvalResult eval_kdf(const KdFSpec& spec, double rel_tol = default_rel_tol,
                           std::size_t max_index = default_max_index)
{
    detail::check_tolerance(rel_tol);
    if (max_index > 4000) {
        throw RangeError("max_index must not exceed 4000");
    }
    if (!(std::abs(spec.x) <= 1.0 && std::abs(spec.y) <= 1.0)) {
        throw RangeError("eval_kdf requires |x| <= 1 and |y| <= 1");
    }
    KdFSpec s{detail::snapped(spec.h_params), detail::snapped(spec.g_params), detail::snapped(spec.a_params),
              detail::snapped(spec.b_params), detail::snapped(spec.c_params), detail::snapped(spec.d_params),
              spec.x, spec.y};
    if (auto issue = kdf_convergence_issue(s)) {
        return detail::inconclusive(*issue);
    }
    if (detail::choose_order(s) == detail::KdfOrder::rows) {
        return detail::kdf_rows(s, rel_tol, max_index);
    }
    return detail::kdf_diagonal(s, rel_tol, max_index);
}

/// Appell F3 by rows: sum_m (a)_m (b)_m / (c)_m x^m/m! 2F1(a2, b2; c+m; y).
/// When only |x| reaches 1 the symmetric roles are exchanged so the unit
/// argument sits in the inner 2F1.
inline EvalResult eval_appell_f3(double a, double a2, double b, double b2, double c, double x, double y,
                                 double rel_tol = default_rel_tol)
{
    detail::check_tolerance(rel_tol);
    if (!(std::abs(x) <= 1.0 && std::abs(y) <= 1.0)) {
        throw RangeError("eval_appell_f3 requires |x|, |y| <= 1");
    }
    if (std::abs(x) >= 1.0 && std::abs(y) < 1.0) {
        std::swap(a, a2);
        std::swap(b, b2);
        std::swap(x, y);
    }
    if (std::abs(x) >= 1.0) {
        return detail::inconclusive("F3 needs one argument strictly inside the unit disc");
    }
    a = snap_to_pole(a);
    b = snap_to_pole(b);
    a2 = snap_to_pole(a2);
    b2 = snap_to_pole(b2);
    c = snap_to_pole(c);
    if (auto issue = f3_convergence_issue({a, a2, b, b2, c, x, y})) {
        return detail::inconclusive(*issue);
    }

    const double inner_tol = std::max(rel_tol / 4.0, 1e-15);
    CompensatedSum<double> total;
    double prefix = 1.0;
    double error = 0.0;
    std::size_t terms = 0;
    int small_run = 0;
    bool all_exact = true;
    bool any_accelerated = false;

    for (std::size_t m = 0; m <= default_max_index; ++m) {
        const double dm = static_cast<double>(m);
        EvalResult row;
        if (y == 1.0) {
            row = eval_pfq({{a2, b2}, {c + dm}, 1.0}, inner_tol);
        } else {
            row = eval_2f1(a2, b2, c + dm, y, inner_tol);
        }
        if (row.status == EvalStatus::inconclusive) {
            return detail::inconclusive("F3 inner 2F1 at row " + std::to_string(m) + ": " + row.detail, terms,
                                        total.value());
        }
        all_exact = all_exact && row.status == EvalStatus::terminated;
        any_accelerated = any_accelerated || row.status == EvalStatus::accelerated;
        terms += row.terms_used;
        const double row_value = prefix * row.value;
        total.add(row_value);
        error += std::abs(prefix) * row.abs_error_estimate;

        const double nf = (a + dm) * (b + dm) * x;
        if (nf == 0.0) {
            const EvalStatus st = all_exact ? EvalStatus::terminated
                                  : any_accelerated ? EvalStatus::accelerated
                                                    : EvalStatus::converged;
            return {total.value(), all_exact ? 0.0 : error, terms, st, {}};
        }
        if (c + dm == 0.0) {
            throw DenominatorPoleError("F3 denominator (c)_m vanishes at m=" + std::to_string(m + 1));
        }
        const double ratio = nf / (c + dm) / (dm + 1.0);
        const double tail = detail::geometric_tail(row_value * ratio, ratio);
        const double scale = rel_tol * std::abs(total.value());
        if (std::abs(row_value) <= scale && tail <= scale) {
            if (++small_run >= 3) {
                return {total.value(), error + tail, terms,
                        any_accelerated ? EvalStatus::accelerated : EvalStatus::converged, {}};
            }
        } else {
            small_run = 0;
        }
        prefix *= ratio;
    }
    return detail::inconclusive("F3 outer series did not converge", terms, total.value());
}

inline EvalResult eval_appell_f3(const F3Args& f, double rel_tol = default_rel_tol)
{
    return eval_appell_f3(f.a, f.a2, f.b, f.b2, f.c, f.x, f.y, rel_tol);
}

} // namespace kdfkit
