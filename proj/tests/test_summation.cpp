#include "theorem_samples.hpp"

#include <kdfkit/series.hpp>
#include <kdfkit/summation.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <utility>

namespace {

using namespace kdfkit;
using kdfkit::testing::theorem_samples;

constexpr TheoremFamily families[] = {TheoremFamily::kummer, TheoremFamily::gauss2, TheoremFamily::bailey};
constexpr Variant variants[] = {Variant::plus, Variant::minus};

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

/// Table rows whose printed coefficients disagree with the explicit sums.
const std::set<std::pair<TheoremFamily, int>> misprinted_rows = {
    {TheoremFamily::kummer, -5}, {TheoremFamily::kummer, 5},  {TheoremFamily::gauss2, 4},
    {TheoremFamily::bailey, 3},  {TheoremFamily::bailey, -4},
};

TEST(Tables, PrintedSpotValues)
{
    EXPECT_DOUBLE_EQ(table_value('A', 2, 0.0, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(table_value('E', 3, 1.0, 2.0), -6.0);
    EXPECT_DOUBLE_EQ(table_value('D', 0, 0.0, 0.0), 0.0);
    EXPECT_DOUBLE_EQ(table_value('A', 0, 0.7, 1.3), 1.0);
    EXPECT_DOUBLE_EQ(table_value('B', 0, 0.7, 1.3), 0.0);
}

TEST(Tables, RangeChecks)
{
    EXPECT_THROW(lavoie_row(TheoremFamily::kummer, 6), RangeError);
    EXPECT_THROW(lavoie_row(TheoremFamily::bailey, -6), RangeError);
    EXPECT_THROW(table_value('G', 0, 0.0, 0.0), RangeError);
    for (TheoremFamily f : families) {
        for (int i = -5; i <= 5; ++i) {
            EXPECT_EQ(lavoie_row(f, i).i, i);
        }
    }
}

TEST(TheoremSeries, ArgumentsPerFamily)
{
    const HypergeometricArgs k = theorem_series(TheoremFamily::kummer, 1.2, 0.7, -2);
    EXPECT_DOUBLE_EQ(k.c, 1.0 + 1.2 - 0.7 - 2.0);
    EXPECT_EQ(k.z, -1.0);
    const HypergeometricArgs g = theorem_series(TheoremFamily::gauss2, 1.2, 0.7, 3);
    EXPECT_DOUBLE_EQ(g.c, 0.5 * (1.2 + 0.7 + 3.0 + 1.0));
    EXPECT_EQ(g.z, 0.5);
    const HypergeometricArgs b = theorem_series(TheoremFamily::bailey, 1.2, 0.7, 1);
    EXPECT_DOUBLE_EQ(b.b, 1.0 - 1.2 + 1.0);
    EXPECT_DOUBLE_EQ(b.c, 0.7);
}

TEST(Classical, KnownClosedValues)
{
    // Kummer with b = 1: 2F1(a, 1; a; -1) = 1/2.
    EXPECT_NEAR(classical(TheoremFamily::kummer, 0.8, 1.0), 0.5, 1e-14);
    // Gauss second with a = 1, b = 1: 2F1(1, 1; 3/2; 1/2) = pi/2.
    EXPECT_NEAR(classical(TheoremFamily::gauss2, 1.0, 1.0), std::numbers::pi / 2.0, 1e-14);
    // Bailey with a = 1/2, b = 1: 2F1(1/2, 1/2; 1; 1/2) = sqrt(pi) / Gamma(3/4)^2.
    const double gamma_three_quarters = std::tgamma(0.75);
    EXPECT_NEAR(classical(TheoremFamily::bailey, 0.5, 1.0),
                std::sqrt(std::numbers::pi) / (gamma_three_quarters * gamma_three_quarters), 1e-13);
}

TEST(Generalized, ZeroOffsetCollapsesToClassical)
{
    for (TheoremFamily f : families) {
        for (Variant v : variants) {
            for (auto [a, b] : theorem_samples({f, v}, 0, 50, 500)) {
                EXPECT_LE(rel_err(generalized({f, v}, a, b, 0), classical(f, a, b)), 1e-12) << to_string(f);
            }
        }
    }
}

TEST(Generalized, MatchesDirectSeries)
{
    for (TheoremFamily f : families) {
        for (Variant v : variants) {
            for (int i = 0; i <= 5; ++i) {
                const int k = v == Variant::plus ? i : -i;
                for (auto [a, b] : theorem_samples({f, v}, i, 25, 600 + i)) {
                    const HypergeometricArgs s = theorem_series(f, a, b, k);
                    const EvalResult r = eval_2f1(s.a, s.b, s.c, s.z);
                    ASSERT_TRUE(r.trusted()) << r.detail;
                    EXPECT_LE(rel_err(r.value, generalized({f, v}, a, b, i)), 1e-8)
                        << to_string(f) << " k=" << k << " a=" << a << " b=" << b;
                }
            }
        }
    }
}

TEST(Compact, AgreesWithGeneralizedOnCorrectRows)
{
    for (TheoremFamily f : families) {
        for (int k = -5; k <= 5; ++k) {
            if (misprinted_rows.count({f, k}) > 0) {
                continue;
            }
            const int i = std::abs(k);
            const Variant v = k >= 0 ? Variant::plus : Variant::minus;
            for (auto [a, b] : theorem_samples({f, v}, i, 25, 700 + i)) {
                EXPECT_LE(rel_err(lavoie_compact(f, a, b, k), generalized({f, v}, a, b, i)), 1e-9)
                    << to_string(f) << " k=" << k;
            }
        }
    }
}

TEST(Compact, PrintedMisprintsAreDetectable)
{
    for (auto [f, k] : misprinted_rows) {
        const int i = std::abs(k);
        const Variant v = k >= 0 ? Variant::plus : Variant::minus;
        int disagreements = 0;
        const auto samples = theorem_samples({f, v}, i, 20, 800);
        for (auto [a, b] : samples) {
            disagreements += rel_err(lavoie_compact(f, a, b, k), generalized({f, v}, a, b, i)) > 1e-6 ? 1 : 0;
        }
        EXPECT_GE(disagreements, 18) << to_string(f) << " k=" << k;
    }
}

TEST(Generalized, PlusAndMinusDifferForNonzeroOffset)
{
    for (TheoremFamily f : families) {
        const double a = 1.3, b = 0.45;
        EXPECT_GT(std::abs(generalized({f, Variant::plus}, a, b, 2) - generalized({f, Variant::minus}, a, b, 2)),
                  1e-6);
    }
}

} // namespace
