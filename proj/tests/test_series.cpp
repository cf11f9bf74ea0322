#include <kdfkit/series.hpp>
#include <kdfkit/wynn.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace {

using namespace kdfkit;

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

/// Brute-force Appell F3 over an n x n block of the double series in long double.
long double f3_brute(double a, double a2, double b, double b2, double c, double x, double y, int n = 200)
{
    long double total = 0.0L;
    long double row = 1.0L; // (a)_m (b)_m / (c)_m x^m / m!
    for (int m = 0; m < n; ++m) {
        long double term = row;
        long double inner = 0.0L;
        for (int k = 0; k < n; ++k) {
            inner += term;
            term *= (a2 + k) * (b2 + k) / ((c + m + k) * (k + 1.0L)) * y;
        }
        total += inner;
        row *= (a + m) * (b + m) / ((c + m) * (m + 1.0L)) * x;
    }
    return total;
}

TEST(Pfq, FrozenReferenceValues)
{
    // Reference values from a 40-digit evaluation.
    struct Case {
        PFQSpec spec;
        double expected;
    };
    const Case cases[] = {
        {{{0.5, 0.7, 1.1}, {1.9, 2.3}, -1.0}, 0.92965437891610456957},
        {{{1.5}, {2.5}, -3.0}, 0.22727824593178743203},
        {{{}, {1.5}, 2.0}, 2.9804061035351677345},
        {{{1.0}, {}, 0.5}, 2.0},
    };
    for (const Case& c : cases) {
        const EvalResult r = eval_pfq(c.spec);
        EXPECT_TRUE(r.trusted());
        EXPECT_LE(rel_err(r.value, c.expected), 1e-10) << r.value;
    }
}

TEST(Gauss2F1, ClassicalClosedForms)
{
    EXPECT_LE(rel_err(eval_2f1(1.0, 1.0, 1.5, 0.5).value, std::numbers::pi / 2.0), 1e-10);
    EXPECT_LE(rel_err(eval_2f1(1.0, 0.5, 1.5, -1.0).value, std::numbers::pi / 4.0), 1e-10);
    EXPECT_LE(rel_err(eval_2f1(1.0, 1.0, 2.0, -1.0).value, std::numbers::ln2), 1e-10);
}

TEST(Gauss2F1, FrozenReferenceValues)
{
    // Reference values from a 40-digit evaluation; z = -0.8 and the last two
    // unit-argument cases go through the Pfaff transformation.
    struct Case {
        double a, b, c, z, expected;
    };
    const Case cases[] = {
        {0.3, 0.7, 1.9, 0.8, 1.1407258143087786623},    {1.5, -0.25, 2.2, -0.9, 1.124662597863416807},
        {0.5, 0.5, 1.5, 0.99, 1.4780376623747748025},   {0.4, 0.9, 1.1, -1.0, 0.79332167478094783281},
        {0.4, 0.9, 1.1, -0.8, 0.82222445515739827519},  {1.5, 1.2, 0.6, -1.0, 0.025558384681446611859},
        {2.5, 1.5, 0.7, -1.0, -0.11691167336330048136},
    };
    for (const Case& c : cases) {
        const EvalResult r = eval_2f1(c.a, c.b, c.c, c.z);
        ASSERT_TRUE(r.trusted()) << r.detail;
        EXPECT_LE(rel_err(r.value, c.expected), 1e-10) << c.a << ' ' << c.b << ' ' << c.c << ' ' << c.z;
        EXPECT_LE(std::abs(r.value - c.expected), 2.0 * r.abs_error_estimate + 1e-15);
    }
}

TEST(Gauss2F1, TerminatingSeriesIsExactPolynomial)
{
    // 2F1(-4, b; c; z) = sum_{k<=4} (-4)_k (b)_k / (c)_k z^k / k!
    std::mt19937_64 gen(21);
    std::uniform_real_distribution<double> dist(0.2, 3.0);
    for (int s = 0; s < 50; ++s) {
        const double b = dist(gen), c = dist(gen), z = dist(gen) - 1.6;
        double term = 1.0, poly = 1.0;
        for (int k = 0; k < 4; ++k) {
            term *= (-4.0 + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
            poly += term;
        }
        const EvalResult r = eval_2f1(-4.0, b, c, z);
        EXPECT_EQ(r.status, EvalStatus::terminated);
        EXPECT_NEAR(r.value, poly, 1e-13 * std::max(1.0, std::abs(poly)));
        EXPECT_EQ(r.terms_used, 5u);
    }
}

TEST(Pfq, DenominatorPoleAndTermination)
{
    EXPECT_THROW(eval_pfq({{1.0}, {-2.0}, 0.5}), DenominatorPoleError);
    // The numerator vanishes first: 1 + (-1)/(-2) * 0.5 = 1.25.
    const EvalResult r = eval_pfq({{-1.0}, {-2.0}, 0.5});
    EXPECT_EQ(r.status, EvalStatus::terminated);
    EXPECT_DOUBLE_EQ(r.value, 1.25);
}

TEST(Pfq, DivergentInputsAreInconclusive)
{
    EXPECT_EQ(eval_pfq({{1.0, 1.0}, {2.0}, 1.0}).status, EvalStatus::inconclusive);
    EXPECT_EQ(eval_pfq({{1.0, 1.0}, {2.0}, 1.5}).status, EvalStatus::inconclusive);
    EXPECT_EQ(eval_pfq({{1.0, 1.0, 1.0}, {2.0}, 0.1}).status, EvalStatus::inconclusive);
    // zeta(2) converges too slowly for the term budget; it must not be claimed.
    const EvalResult zeta = eval_pfq({{1.0, 1.0, 1.0}, {2.0, 2.0}, 1.0});
    if (zeta.trusted()) {
        EXPECT_LE(rel_err(zeta.value, std::numbers::pi * std::numbers::pi / 6.0), 1e-9);
    }
}

TEST(ConvergenceCheck, ExcessRules)
{
    EXPECT_FALSE(series_convergence_issue({1.0, 1.0}, {2.5}, 1.0));
    EXPECT_TRUE(series_convergence_issue({1.0, 1.0}, {2.0}, 1.0));
    EXPECT_FALSE(series_convergence_issue({1.0, 1.0}, {1.5}, -1.0));
    EXPECT_TRUE(series_convergence_issue({1.0, 1.0}, {1.0}, -1.0));
    EXPECT_FALSE(series_convergence_issue({-3.0, 5.0, 5.0}, {1.0}, 2.0));
    EXPECT_TRUE(series_convergence_issue({1.0, 1.0, 1.0}, {1.0}, 0.01));
    EXPECT_FALSE(series_convergence_issue({1.0, 2.0}, {3.0}, 0.99));
}

TEST(KdF, FrozenReferenceValues)
{
    // Brute-force 40-digit double sums.
    const EvalResult r1 = eval_kdf({{0.3}, {1.2}, {0.4}, {0.8, 1.3}, {}, {2.5}, 0.5, 0.5});
    EXPECT_LE(rel_err(r1.value, 1.1402670738973319383), 1e-10);
    const EvalResult r2 = eval_kdf({{0.7, 1.1}, {2.3}, {0.5}, {1.4}, {1.6}, {0.9}, 0.3, -0.4});
    EXPECT_LE(rel_err(r2.value, 0.85393552815757506244), 1e-10);
}

TEST(KdF, ExponentialProduct)
{
    // With no parameters the double series is exp(x + y).
    const EvalResult r = eval_kdf({{}, {}, {}, {}, {}, {}, 0.4, 0.3});
    EXPECT_LE(rel_err(r.value, std::exp(0.7)), 1e-10);
}

TEST(KdF, SymmetryUnderTransposition)
{
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> par(0.2, 2.5);
    std::uniform_real_distribution<double> arg(-0.6, 0.6);
    for (int s = 0; s < 40; ++s) {
        const KdFSpec spec{{par(gen)}, {par(gen) + 1.0}, {par(gen)}, {par(gen), par(gen)}, {par(gen)}, {par(gen)},
                           arg(gen),   arg(gen)};
        const EvalResult direct = eval_kdf(spec);
        const EvalResult swapped = eval_kdf(spec.transposed());
        ASSERT_TRUE(direct.trusted() && swapped.trusted());
        EXPECT_LE(rel_err(direct.value, swapped.value), 1e-9);
    }
}

TEST(KdF, ZeroSecondArgumentReducesToPfq)
{
    std::mt19937_64 gen(32);
    std::uniform_real_distribution<double> par(0.2, 2.5);
    std::uniform_real_distribution<double> arg(-0.9, 0.9);
    for (int s = 0; s < 40; ++s) {
        const double h = par(gen), g = par(gen), a = par(gen), c = par(gen), x = arg(gen);
        const EvalResult kdf = eval_kdf({{h}, {g}, {a}, {par(gen)}, {c}, {par(gen)}, x, 0.0});
        const EvalResult pfq = eval_pfq({{h, a}, {g, c}, x});
        ASSERT_TRUE(kdf.trusted() && pfq.trusted());
        EXPECT_LE(rel_err(kdf.value, pfq.value), 1e-9);
    }
}

TEST(KdF, DiagonalOrderAtUnitArguments)
{
    // With no parameters the series at (-1, 1) is exp(0) = 1.
    const EvalResult r = eval_kdf({{}, {}, {}, {}, {}, {}, -1.0, 1.0});
    ASSERT_TRUE(r.trusted());
    EXPECT_NEAR(r.value, 1.0, 1e-10);
}

TEST(KdF, RejectsArgumentsOutsideUnitDisc)
{
    EXPECT_THROW(eval_kdf({{}, {}, {}, {}, {}, {}, 1.5, 0.0}), RangeError);
    EXPECT_THROW(eval_kdf({{}, {}, {}, {}, {}, {}, 0.1, 0.1}, 1e-10, 5000), RangeError);
}

TEST(KdF, AxisDivergenceIsInconclusive)
{
    // y-axis series 2F1(1, 1; 1.5; 1) diverges.
    const EvalResult r = eval_kdf({{1.0}, {1.5}, {}, {1.0}, {}, {}, 0.2, 1.0});
    EXPECT_EQ(r.status, EvalStatus::inconclusive);
    EXPECT_FALSE(r.detail.empty());
}

TEST(AppellF3, FrozenReferenceValues)
{
    EXPECT_LE(rel_err(eval_appell_f3(1, 1, 1, 1, 3, 0.2, 0.3).value, 1.1988523717872801028), 1e-10);
    EXPECT_LE(rel_err(eval_appell_f3(0.6, 1.3, 0.8, 0.4, 2.1, 0.5, -1.0).value, 0.96735232680684216496), 1e-10);
}

TEST(AppellF3, RowFormMatchesBruteForceDoubleSum)
{
    std::mt19937_64 gen(41);
    std::uniform_real_distribution<double> par(0.1, 2.5);
    std::uniform_real_distribution<double> arg(-0.5, 0.5);
    for (int s = 0; s < 50; ++s) {
        const double a = par(gen), a2 = par(gen), b = par(gen), b2 = par(gen), c = par(gen) + 0.5;
        const double x = arg(gen), y = arg(gen);
        const EvalResult r = eval_appell_f3(a, a2, b, b2, c, x, y);
        ASSERT_TRUE(r.trusted());
        const double brute = static_cast<double>(f3_brute(a, a2, b, b2, c, x, y));
        EXPECT_LE(rel_err(r.value, brute), 1e-9) << a << ' ' << a2 << ' ' << b << ' ' << b2 << ' ' << c;
    }
}

TEST(AppellF3, AgreesWithKdfEmbedding)
{
    const F3Args f{0.7, 1.2, 0.4, 0.9, 2.2, 0.3, -0.4};
    EXPECT_LE(rel_err(eval_appell_f3(f).value, eval_kdf(f.to_kdf()).value), 1e-9);
}

TEST(AppellF3, SwapsRolesWhenFirstArgumentIsUnit)
{
    const EvalResult direct = eval_appell_f3(0.6, 1.3, 0.8, 0.4, 2.1, 0.5, -1.0);
    const EvalResult swapped = eval_appell_f3(1.3, 0.6, 0.4, 0.8, 2.1, -1.0, 0.5);
    EXPECT_LE(rel_err(direct.value, swapped.value), 1e-12);
}

TEST(Wynn, LogTwoFromTwelvePartialSums)
{
    std::vector<double> sums;
    double s = 0.0;
    for (int k = 1; k <= 12; ++k) {
        s += (k % 2 != 0 ? 1.0 : -1.0) / k;
        sums.push_back(s);
    }
    const WynnResult w = wynn_epsilon(sums);
    EXPECT_NEAR(w.value, std::numbers::ln2, 1e-8);
    EXPECT_GE(w.error_estimate, std::abs(w.value - std::numbers::ln2));
}

TEST(Wynn, HarmonicSeriesIsNotClaimedConvergent)
{
    std::vector<double> sums;
    double s = 0.0;
    for (int k = 1; k <= 12; ++k) {
        s += 1.0 / k;
        sums.push_back(s);
    }
    const WynnResult w = wynn_epsilon(sums);
    EXPECT_GT(w.error_estimate, 1e-8 * std::abs(w.value));
}

TEST(Wynn, GeometricSeriesIsExactAfterOneColumnPair)
{
    std::vector<double> sums;
    double s = 0.0, t = 1.0;
    for (int k = 0; k < 8; ++k) {
        s += t;
        t *= -0.5;
        sums.push_back(s);
    }
    EXPECT_NEAR(wynn_epsilon(sums).value, 2.0 / 3.0, 1e-14);
}

TEST(Wynn, RejectsShortOrNonFiniteInput)
{
    const std::vector<double> short_seq{1.0, 2.0, 3.0, 4.0};
    EXPECT_THROW(wynn_epsilon(short_seq), RangeError);
    const std::vector<double> bad{1.0, 2.0, NAN, 4.0, 5.0};
    EXPECT_THROW(wynn_epsilon(bad), AccelerationFailure);
    const std::vector<double> flat{1.0, 1.5, 1.75, 2.0, 2.0};
    EXPECT_EQ(wynn_epsilon(flat).error_estimate, 0.0);
}

TEST(Status, StringRoundTrip)
{
    for (EvalStatus s : {EvalStatus::converged, EvalStatus::terminated, EvalStatus::accelerated,
                         EvalStatus::inconclusive}) {
        EXPECT_EQ(eval_status_from_string(to_string(s)), s);
    }
    EXPECT_FALSE(eval_status_from_string("bogus"));
}

TEST(Determinism, RepeatedEvaluationIsBitIdentical)
{
    const KdFSpec spec{{0.3}, {1.2}, {0.4}, {0.8, 1.3}, {}, {2.5}, -1.0, -1.0};
    const EvalResult a = eval_kdf(spec);
    const EvalResult b = eval_kdf(spec);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.terms_used, b.terms_used);
}

TEST(Tolerance, TighterToleranceDoesNotLoseAccuracy)
{
    const double ref = 1.4780376623747748025;
    const double loose = rel_err(eval_2f1(0.5, 0.5, 1.5, 0.99, 1e-6).value, ref);
    const double tight = rel_err(eval_2f1(0.5, 0.5, 1.5, 0.99, 1e-12).value, ref);
    EXPECT_LE(loose, 1e-6);
    EXPECT_LE(tight, 1e-12);
    EXPECT_THROW(eval_2f1(0.5, 0.5, 1.5, 0.5, 1e-17), RangeError);
}

TEST(Gauss2F1, DomainOutsideUnitIntervalNeedsTermination)
{
    EXPECT_THROW(eval_2f1(0.5, 0.5, 1.5, 1.0), RangeError);
    EXPECT_THROW(eval_2f1(0.5, 0.5, 1.5, -1.2), RangeError);
    EXPECT_EQ(eval_2f1(0.0, 0.7, 1.9, 3.5).value, 1.0);
    // 2F1(-1, b; c; z) = 1 - b z / c
    EXPECT_NEAR(eval_2f1(-1.0, 2.0, 4.0, 3.0).value, -0.5, 1e-15);
}

} // namespace
