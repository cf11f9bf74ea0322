#pragma once

#include <kdfkit/errors.hpp>
#include <kdfkit/gamma.hpp>
#include <kdfkit/gamma_sum.hpp>

#include <array>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>

namespace kdfkit {

enum class TheoremFamily { kummer, gauss2, bailey };
enum class Variant { plus, minus };

/// Family plus the sign of the integer offset.
struct TheoremKind {
    TheoremFamily family;
    Variant variant;

    bool operator==(const TheoremKind&) const = default;
};

inline std::string_view to_string(TheoremFamily f)
{
    switch (f) {
    case TheoremFamily::kummer: return "kummer";
    case TheoremFamily::gauss2: return "gauss2";
    case TheoremFamily::bailey: return "bailey";
    }
    return "kummer";
}

/// Arguments of the 2F1 that a generalized theorem sums in closed form.
struct HypergeometricArgs {
    double a;
    double b;
    double c;
    double z;
};

/// The summed series for signed offset k (k = +i for Plus, -i for Minus):
/// Kummer 2F1(a, b; 1+a-b+k; -1), Gauss second 2F1(a, b; (a+b+k+1)/2; 1/2),
/// Bailey 2F1(a, 1-a+k; b; 1/2).
inline HypergeometricArgs theorem_series(TheoremFamily family, double a, double b, int offset)
{
    const double k = offset;
    switch (family) {
    case TheoremFamily::kummer: return {a, b, 1.0 + a - b + k, -1.0};
    case TheoremFamily::gauss2: return {a, b, 0.5 * (a + b + k + 1.0), 0.5};
    case TheoremFamily::bailey: return {a, 1.0 - a + k, b, 0.5};
    }
    return {a, b, 0.0, 0.0};
}

/// Generalized Kummer theorem terms for 2F1(a, b; 1+a-b+-i; -1).
inline GammaSum kummer_gen_terms(double a, double b, int i, Variant v)
{
    const double di = i;
    if (v == Variant::plus) {
        return binomial_gamma_sum(i, true, 1.0, di - 2.0 * b, {b - di, 1.0 + a - b + di}, {b, a - 2.0 * b + di + 1.0},
                                    [&](double r) -> GammaArgLists {
                                        return {{0.5 * (a + r + di + 1.0) - b}, {0.5 * (a + r - di + 1.0)}};
                                    });
    }
    return binomial_gamma_sum(i, false, 1.0, -di - 2.0 * b, {1.0 + a - b - di}, {a - 2.0 * b - di + 1.0},
                                [&](double r) -> GammaArgLists {
                                    return {{0.5 * (a + r - di + 1.0) - b}, {0.5 * (a + r - di + 1.0)}};
                                });
}

/// Generalized Gauss second theorem terms for 2F1(a, b; (a+b+-i+1)/2; 1/2).
inline GammaSum gauss2_gen_terms(double a, double b, int i, Variant v)
{
    const double di = i;
    if (v == Variant::plus) {
        return binomial_gamma_sum(
            i, true, 1.0, b - 1.0, {0.5 * (a + b + di + 1.0), 0.5 * (a - b - di + 1.0)}, {b, 0.5 * (a - b + di + 1.0)},
            [&](double r) -> GammaArgLists { return {{0.5 * (b + r)}, {0.5 * (a + r - di + 1.0)}}; });
    }
    return binomial_gamma_sum(i, false, 1.0, b - 1.0, {0.5 * (a + b - di + 1.0)}, {b},
                                [&](double r) -> GammaArgLists {
                                    return {{0.5 * (b + r)}, {0.5 * (a + r - di + 1.0)}};
                                });
}

/// Generalized Bailey theorem terms for 2F1(a, 1-a+-i; b; 1/2).
inline GammaSum bailey_gen_terms(double a, double b, int i, Variant v)
{
    const double di = i;
    if (v == Variant::plus) {
        return binomial_gamma_sum(i, true, 1.0, di - a, {a - di, b}, {a, b - a},
                                    [&](double r) -> GammaArgLists {
                                        return {{0.5 * (b - a + r)}, {0.5 * (b + a + r) - di}};
                                    });
    }
    return binomial_gamma_sum(i, false, 1.0, -di - a, {b}, {b - a},
                                [&](double r) -> GammaArgLists {
                                    return {{0.5 * (b - a + r)}, {0.5 * (b + a + r)}};
                                });
}

inline GammaSum generalized_terms(TheoremKind kind, double a, double b, int i)
{
    switch (kind.family) {
    case TheoremFamily::kummer: return kummer_gen_terms(a, b, i, kind.variant);
    case TheoremFamily::gauss2: return gauss2_gen_terms(a, b, i, kind.variant);
    case TheoremFamily::bailey: return bailey_gen_terms(a, b, i, kind.variant);
    }
    return {};
}

inline double kummer_gen(double a, double b, int i, Variant v) { return evaluate(kummer_gen_terms(a, b, i, v)); }
inline double gauss2_gen(double a, double b, int i, Variant v) { return evaluate(gauss2_gen_terms(a, b, i, v)); }
inline double bailey_gen(double a, double b, int i, Variant v) { return evaluate(bailey_gen_terms(a, b, i, v)); }

inline double generalized(TheoremKind kind, double a, double b, int i)
{
    return evaluate(generalized_terms(kind, a, b, i));
}

/// Polynomial coefficient pair of one table row, as functions of (a, b).
struct LavoieRow {
    int i;
    double (*first)(double a, double b);
    double (*second)(double a, double b);
};

using LavoieTable = std::array<LavoieRow, 11>;

/// Coefficients A_i, B_i of the compact Kummer form, rows i = -5..5.
inline const LavoieTable& kummer_table()
{
    static const LavoieTable table = {{
        {-5,
         [](double a, double b) {
             const double u = a - b - 4.0;
             return 4.0 * u * u - 2.0 * b * u - b * b - 8.0 * u - 7.0 * b;
         },
         [](double a, double b) {
             const double u = a - b - 4.0;
             return 4.0 * u * u + 2.0 * b * u - b * b + 16.0 * u - b + 12.0;
         }},
        {-4, [](double a, double b) { return 2.0 * (a - b - 3.0) * (a - b - 1.0) - b * (b + 3.0); },
         [](double a, double b) { return 4.0 * (a - b - 2.0); }},
        {-3, [](double a, double b) { return 2.0 * a - 3.0 * b - 4.0; },
         [](double a, double b) { return 2.0 * a - b - 2.0; }},
        {-2, [](double a, double b) { return a - b - 1.0; }, [](double, double) { return 2.0; }},
        {-1, [](double, double) { return 1.0; }, [](double, double) { return 1.0; }},
        {0, [](double, double) { return 1.0; }, [](double, double) { return 0.0; }},
        {1, [](double, double) { return -1.0; }, [](double, double) { return 1.0; }},
        {2, [](double a, double b) { return 1.0 + a - b; }, [](double, double) { return -2.0; }},
        {3, [](double a, double b) { return 3.0 * b - 2.0 * a - 5.0; },
         [](double a, double b) { return 2.0 * a - b + 1.0; }},
        {4, [](double a, double b) { return 2.0 * (a - b + 3.0) * (1.0 + a - b) - (b - 1.0) * (b - 4.0); },
         [](double a, double b) { return -4.0 * (a - b + 2.0); }},
        {5,
         [](double a, double b) {
             const double v = 6.0 + a - b;
             return -4.0 * v * v + 2.0 * b * v + b * b + 22.0 * v - 13.0 * b - 22.0;
         },
         [](double a, double b) {
             const double v = 6.0 + a - b;
             return 4.0 * v * v + 2.0 * b * v - b * b - 34.0 * v - b + 62.0;
         }},
    }};
    return table;
}

/// Coefficients C_i, D_i of the compact Gauss second form; p = b+a, q = b-a.
inline const LavoieTable& gauss2_table()
{
    static const LavoieTable table = {{
        {-5,
         [](double a, double b) {
             const double p = b + a - 4.0;
             const double q = b - a - 4.0;
             return p * p - 0.25 * q * q - 0.5 * p * q + 4.0 * p - 3.5 * q;
         },
         [](double a, double b) {
             const double p = b + a - 4.0;
             const double q = b - a - 4.0;
             return p * p - 0.25 * q * q + 0.5 * p * q + 8.0 * p - 0.5 * q + 12.0;
         }},
        {-4,
         [](double a, double b) {
             const double p = b + a;
             const double q = b - a;
             return 0.5 * (p - 3.0) * (p + 1.0) - 0.25 * (q - 3.0) * (q + 3.0);
         },
         [](double a, double b) { return 2.0 * (b + a - 1.0); }},
        {-3, [](double a, double b) { return 0.5 * (3.0 * a + b - 2.0); },
         [](double a, double b) { return 0.5 * (3.0 * b + a - 2.0); }},
        {-2, [](double a, double b) { return 0.5 * (b + a - 1.0); }, [](double, double) { return 2.0; }},
        {-1, [](double, double) { return 1.0; }, [](double, double) { return 1.0; }},
        {0, [](double, double) { return 1.0; }, [](double, double) { return 0.0; }},
        {1, [](double, double) { return -1.0; }, [](double, double) { return 1.0; }},
        {2, [](double a, double b) { return 0.5 * (b + a - 1.0); }, [](double, double) { return -2.0; }},
        {3, [](double a, double b) { return -0.5 * (3.0 * a + b - 2.0); },
         [](double a, double b) { return 0.5 * (a + 3.0 * b - 2.0); }},
        {4,
         [](double a, double b) {
             const double p = b + a;
             const double q = b - a;
             return 0.5 * (p - 3.0) * (p + 1.0) - 0.25 * (q + 3.0) * (q - 3.0);
         },
         [](double a, double b) { return 2.0 * (b + a - 1.0); }},
        {5,
         [](double a, double b) {
             const double p = b + a + 6.0;
             const double q = b - a + 6.0;
             return -p * p + 0.25 * q * q + 0.5 * q * p + 11.0 * p - 6.5 * q - 20.0;
         },
         [](double a, double b) {
             const double p = b + a + 6.0;
             const double q = b - a + 6.0;
             return p * p - 0.25 * q * q + 0.5 * p * q - 17.0 * p - 0.5 * q + 62.0;
         }},
    }};
    return table;
}

/// Coefficients E_i, F_i of the compact Bailey form.
inline const LavoieTable& bailey_table()
{
    static const LavoieTable table = {{
        {-5, [](double a, double b) { return 4.0 * b * b - 2.0 * a * b - a * a + 8.0 * b - 7.0 * a; },
         [](double a, double b) { return 4.0 * b * b + 2.0 * a * b - a * a + 16.0 * b - a + 12.0; }},
        {-4, [](double a, double b) { return 2.0 * b * b - a * a + 4.0 * b - 6.0 * a; },
         [](double, double b) { return 4.0 * (b + 1.0); }},
        {-3, [](double a, double b) { return 2.0 * b - a; }, [](double a, double b) { return a + 2.0 * b + 2.0; }},
        {-2, [](double, double b) { return b; }, [](double, double) { return 2.0; }},
        {-1, [](double, double) { return 1.0; }, [](double, double) { return 1.0; }},
        {0, [](double, double) { return 1.0; }, [](double, double) { return 0.0; }},
        {1, [](double, double) { return -1.0; }, [](double, double) { return 1.0; }},
        {2, [](double, double b) { return b - 2.0; }, [](double, double) { return -2.0; }},
        {3, [](double a, double b) { return a - 2.0 * b - 3.0; }, [](double a, double b) { return a + 2.0 * b - 7.0; }},
        {4, [](double a, double b) { return 2.0 * b * b - a * a - 12.0 * b + 5.0 * a + 12.0; },
         [](double, double b) { return -4.0 * b + 12.0; }},
        {5, [](double a, double b) { return -4.0 * b * b + 2.0 * a * b + a * a + 22.0 * b - 13.0 * a - 20.0; },
         [](double a, double b) { return 4.0 * b * b + 2.0 * a * b - a * a - 34.0 * b - a + 62.0; }},
    }};
    return table;
}

inline const LavoieTable& lavoie_table(TheoremFamily family)
{
    switch (family) {
    case TheoremFamily::kummer: return kummer_table();
    case TheoremFamily::gauss2: return gauss2_table();
    case TheoremFamily::bailey: return bailey_table();
    }
    return kummer_table();
}

inline const LavoieRow& lavoie_row(TheoremFamily family, int i)
{
    if (i < -5 || i > 5) {
        throw RangeError("table rows cover i in [-5, 5], got " + std::to_string(i));
    }
    return lavoie_table(family)[static_cast<std::size_t>(i + 5)];
}

/// Value of one printed table column ('A'..'F') at (a, b) for row i.
inline double table_value(char column, int i, double a, double b)
{
    const TheoremFamily family = column == 'A' || column == 'B'   ? TheoremFamily::kummer
                                 : column == 'C' || column == 'D' ? TheoremFamily::gauss2
                                 : column == 'E' || column == 'F' ? TheoremFamily::bailey
                                                                  : throw RangeError("table column must be A..F");
    const LavoieRow& row = lavoie_row(family, i);
    const bool first = column == 'A' || column == 'C' || column == 'E';
    return first ? row.first(a, b) : row.second(a, b);
}

/// The two-term compact form for signed offset i in [-5, 5]; [x] is floor.
inline GammaSum lavoie_compact_terms(TheoremFamily family, double a, double b, int i)
{
    const LavoieRow& row = lavoie_row(family, i);
    const double di = i;
    const double half_abs = 0.5 * (di + std::abs(di));
    const double fl_odd = std::floor((di + 1.0) / 2.0);
    const double fl_even = std::floor(di / 2.0);
    const double c1 = row.first(a, b);
    const double c2 = row.second(a, b);
    switch (family) {
    case TheoremFamily::kummer: {
        const std::vector<double> num{0.5, 1.0 + a - b + di, 1.0 - b};
        const double common = 1.0 - b + half_abs;
        return {
            {c1, -a, num, {common, a / 2.0 - b + di / 2.0 + 1.0, a / 2.0 + 0.5 + di / 2.0 - fl_odd}},
            {c2, -a, num, {common, a / 2.0 - b + di / 2.0 + 0.5, a / 2.0 + di / 2.0 - fl_even}},
        };
    }
    case TheoremFamily::gauss2: {
        const std::vector<double> num{0.5, a / 2.0 + b / 2.0 + di / 2.0 + 0.5, a / 2.0 - b / 2.0 - di / 2.0 + 0.5};
        const double common = a / 2.0 - b / 2.0 + 0.5 + std::abs(di) / 2.0;
        return {
            {c1, 0.0, num, {common, a / 2.0 + 0.5, b / 2.0 + di / 2.0 + 0.5 - fl_odd}},
            {c2, 0.0, num, {common, a / 2.0, b / 2.0 + di / 2.0 - fl_even}},
        };
    }
    case TheoremFamily::bailey: {
        const std::vector<double> num{0.5, b, 1.0 - a};
        const double common = 1.0 - a + half_abs;
        return {
            {c1, 1.0 + di - b, num, {common, b / 2.0 - a / 2.0 + 0.5, b / 2.0 + a / 2.0 - fl_odd}},
            {c2, 1.0 + di - b, num, {common, b / 2.0 - a / 2.0, b / 2.0 + a / 2.0 - 0.5 - fl_even}},
        };
    }
    }
    return {};
}

inline double lavoie_compact(TheoremFamily family, double a, double b, int i)
{
    return evaluate(lavoie_compact_terms(family, a, b, i));
}

inline GammaSum classical_terms(TheoremFamily family, double a, double b)
{
    switch (family) {
    case TheoremFamily::kummer: return {{1.0, 0.0, {1.0 + a / 2.0, 1.0 + a - b}, {1.0 + a, 1.0 + a / 2.0 - b}}};
    case TheoremFamily::gauss2:
        return {{1.0, 0.0, {0.5, 0.5 * (a + b + 1.0)}, {0.5 * (a + 1.0), 0.5 * (b + 1.0)}}};
    case TheoremFamily::bailey:
        return {{1.0, 0.0, {b / 2.0, b / 2.0 + 0.5}, {b / 2.0 + a / 2.0, b / 2.0 - a / 2.0 + 0.5}}};
    }
    return {};
}

/// Kummer 2F1(a,b;1+a-b;-1), Gauss second 2F1(a,b;(a+b+1)/2;1/2), Bailey 2F1(a,1-a;b;1/2).
inline double classical(TheoremFamily family, double a, double b) { return evaluate(classical_terms(family, a, b)); }

} // namespace kdfkit
