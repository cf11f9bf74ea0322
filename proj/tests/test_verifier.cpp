#include <kdfkit/verifier.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <string>

namespace {

using namespace kdfkit;
using S = Symbol;

const ParamMap thm1_params{{S::alpha, 0.3}, {S::beta, 1.2}, {S::epsilon, 0.4}};

TEST(VerifyOne, TheoremTwoPasses)
{
    const VerificationRecord rec = verify_one({"thm3.2a", 0, thm1_params});
    EXPECT_EQ(rec.verdict, Verdict::pass) << rec.reason;
    ASSERT_TRUE(rec.rel_err.has_value());
    EXPECT_LE(*rec.rel_err, 1e-8);
    EXPECT_EQ(rec.reading, "printed");
    EXPECT_TRUE(rec.reason.empty());
}

TEST(VerifyOne, TheoremOnePrintedPrefactorIsDoubled)
{
    // The printed right side is twice the left side already at i = 0.
    const VerificationRecord rec = verify_one({"thm3.1a", 0, thm1_params});
    EXPECT_EQ(rec.verdict, Verdict::fail);
    EXPECT_NEAR(rec.rhs.value / rec.lhs.value, 2.0, 1e-8);
}

TEST(VerifyOne, TheoremFourSecondDisplayPasses)
{
    const VerificationRecord rec = verify_one({"thm3.4b", 0, {{S::alpha, 1.0}, {S::beta, 4.0}}});
    EXPECT_EQ(rec.verdict, Verdict::pass) << rec.reason;
    EXPECT_NEAR(rec.rhs.value, 2.0, 1e-13);
    EXPECT_NEAR(rec.lhs.value, 2.0, 1e-9);
}

TEST(VerifyOne, TheoremOneDoublesForPositiveOffset)
{
    const VerificationRecord rec = verify_one({"thm3.1a", 1, thm1_params});
    EXPECT_EQ(rec.verdict, Verdict::fail);
    EXPECT_NEAR(rec.rhs.value / rec.lhs.value, 2.0, 1e-8);
}

TEST(VerifyOne, DivergentLeftSideIsInconclusive)
{
    const VerificationRecord rec = verify_one({"thm3.13a", 1, {{S::alpha, -5.3}, {S::gamma, 0.6}}});
    EXPECT_EQ(rec.verdict, Verdict::inconclusive);
    EXPECT_FALSE(rec.rel_err.has_value());
    EXPECT_NE(rec.reason.find("lhs"), std::string::npos);
}

TEST(VerifyOne, AlternateReadingsAreRecorded)
{
    const VerificationRecord rec = verify_one({"thm3.15a", 0, {{S::beta, 2.5}, {S::gamma, -0.4}}});
    EXPECT_EQ(rec.reading, "alpha-substituted");
    ASSERT_EQ(rec.alternates.size(), 1u);
    EXPECT_EQ(rec.alternates[0].reading, "alpha-dropped");
    EXPECT_EQ(rec.verdict, Verdict::pass) << rec.reason;
}

TEST(VerifyOne, MalformedBindingsThrow)
{
    EXPECT_THROW(verify_one({"thm3.99a", 0, thm1_params}), UnknownIdentity);
    EXPECT_THROW(verify_one({"thm3.1a", 0, {{S::alpha, 0.3}}}), MissingParam);
    EXPECT_THROW(verify_one({"thm3.1a", 0, {{S::alpha, 0.3}, {S::beta, NAN}, {S::epsilon, 0.4}}}), MissingParam);
}

TEST(Decide, TolerancesAreMonotone)
{
    const EvalResult lhs{1.0 + 3e-9, 0.0, 10, EvalStatus::converged, ""};
    const EvalResult rhs{1.0, 0.0, 10, EvalStatus::converged, ""};
    std::optional<double> err;
    bool passed_before = false;
    for (double tol : {1e-12, 1e-10, 1e-9, 4e-9, 1e-8, 1e-6}) {
        const bool passed = decide(lhs, rhs, tol, err) == Verdict::pass;
        EXPECT_TRUE(passed || !passed_before) << "tol=" << tol;
        passed_before = passed;
    }
    EXPECT_TRUE(passed_before);
    const EvalResult unsure{1.0, 1.0, 10, EvalStatus::inconclusive, "budget"};
    EXPECT_EQ(decide(unsure, rhs, 1.0, err), Verdict::inconclusive);
    EXPECT_FALSE(err.has_value());
}

TEST(Decide, ZeroRightSideUsesFloor)
{
    const EvalResult zero{0.0, 0.0, 1, EvalStatus::converged, ""};
    std::optional<double> err;
    EXPECT_EQ(decide(zero, zero, 1e-8, err), Verdict::pass);
    EXPECT_EQ(*err, 0.0);
}

TEST(SweepConfig, Validation)
{
    SweepConfig c;
    EXPECT_NO_THROW(validate(c));
    c.samples = 0;
    EXPECT_THROW(validate(c), RangeError);
    c = {};
    c.i_max = 9;
    EXPECT_THROW(validate(c), RangeError);
    c = {};
    c.tolerance = 1e-10;
    EXPECT_THROW(validate(c), RangeError);
    c = {};
    c.ids = {"lw2.9"};
    EXPECT_THROW(validate(c), UnknownIdentity);
}

TEST(Rng, PureFunctionOfKey)
{
    EXPECT_EQ(rng::key(42, "lw2.1", 3, 0, 1), rng::key(42, "lw2.1", 3, 0, 1));
    std::set<std::uint64_t> keys;
    for (std::uint64_t seed : {41u, 42u}) {
        for (const char* id : {"lw2.1", "lw2.2"}) {
            for (std::uint64_t k = 0; k < 4; ++k) {
                for (std::uint64_t lane = 0; lane < 3; ++lane) {
                    keys.insert(rng::key(seed, id, k, 0, lane));
                }
            }
        }
    }
    EXPECT_EQ(keys.size(), 2u * 2u * 4u * 3u);
    for (std::uint64_t k = 0; k < 1000; ++k) {
        const double u = rng::unit(rng::splitmix64(k));
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
}

TEST(DrawInstance, StaysInBoxAndRepeats)
{
    const Identity& e = find_identity("thm3.5a");
    for (std::uint64_t k = 0; k < 30; ++k) {
        const auto [inst, rejected] = draw_instance(e, 2, 7, k);
        EXPECT_FALSE(rejected.has_value());
        for (const auto& [sym, range] : e.box(2)) {
            EXPECT_GE(inst.params.at(sym), range.lo);
            EXPECT_LT(inst.params.at(sym), range.hi);
        }
        EXPECT_EQ(inst.params, draw_instance(e, 2, 7, k).first.params);
    }
}

TEST(Sweep, SingleReductionAllPass)
{
    SweepConfig c;
    c.ids = {"lw2.1"};
    c.samples = 50;
    const SweepResult r = run_sweep(c);
    ASSERT_EQ(r.records.size(), 50u);
    for (const VerificationRecord& rec : r.records) {
        EXPECT_EQ(rec.verdict, Verdict::pass) << rec.reason;
        EXPECT_FALSE(rec.i.has_value());
    }
    ASSERT_EQ(r.summary.size(), 1u);
    EXPECT_TRUE(r.summary[0].verified);
    EXPECT_EQ(r.summary[0].pass, 50);
}

TEST(Sweep, RecordCountsAndOrder)
{
    SweepConfig c;
    c.ids = {"lw2.1", "lw2.2"};
    c.samples = 10;
    const SweepResult r = run_sweep(c);
    ASSERT_EQ(r.records.size(), 20u);
    EXPECT_EQ(r.records.front().id, "lw2.1");
    EXPECT_EQ(r.records.back().id, "lw2.2");

    c.ids = {"thm3.2b"};
    c.samples = 3;
    c.i_max = 4;
    const SweepResult t = run_sweep(c);
    ASSERT_EQ(t.records.size(), 15u);
    for (std::size_t k = 0; k < t.records.size(); ++k) {
        EXPECT_EQ(t.records[k].i, static_cast<int>(k / 3));
    }
}

TEST(Sweep, SummaryRowPerIdentity)
{
    SweepConfig c;
    c.samples = 2;
    c.i_max = 0;
    const SweepResult r = run_sweep(c);
    EXPECT_EQ(r.summary.size(), 39u);
    for (const IdentitySummary& s : r.summary) {
        EXPECT_EQ(s.records, 2) << s.id;
        EXPECT_EQ(s.pass + s.fail + s.inconclusive, s.records);
        EXPECT_EQ(s.readings.size(), find_identity(s.id).rhs.size());
    }
}

TEST(Sweep, DeterministicAcrossThreadCounts)
{
    SweepConfig c;
    c.ids = {"lw2.3", "thm3.6a", "thm3.16b"};
    c.samples = 6;
    const SweepResult one = run_sweep(c, 1);
    const SweepResult three = run_sweep(c, 3);
    ASSERT_EQ(one.records.size(), three.records.size());
    for (std::size_t k = 0; k < one.records.size(); ++k) {
        EXPECT_EQ(one.records[k].params, three.records[k].params);
        EXPECT_EQ(one.records[k].verdict, three.records[k].verdict);
        EXPECT_EQ(one.records[k].lhs.value, three.records[k].lhs.value);
        EXPECT_EQ(one.records[k].rhs.value, three.records[k].rhs.value);
    }
    EXPECT_EQ(one.summary, three.summary);
}

TEST(Sweep, SeedChangesDraws)
{
    SweepConfig c;
    c.ids = {"lw2.1"};
    c.samples = 3;
    const SweepResult a = run_sweep(c);
    c.seed = 43;
    const SweepResult b = run_sweep(c);
    EXPECT_NE(a.records[0].params, b.records[0].params);
}

TEST(Sweep, NoSilentDivergence)
{
    // Every record is either trusted on both sides or explains why not.
    SweepConfig c;
    c.samples = 4;
    c.i_max = 2;
    for (const VerificationRecord& rec : run_sweep(c).records) {
        if (rec.verdict == Verdict::inconclusive) {
            EXPECT_FALSE(rec.reason.empty()) << rec.id;
        } else {
            EXPECT_TRUE(rec.lhs.trusted() && rec.rhs.trusted()) << rec.id;
            EXPECT_TRUE(std::isfinite(rec.lhs.value) && std::isfinite(rec.rhs.value)) << rec.id;
        }
    }
}

TEST(Summary, ClassificationThresholds)
{
    std::vector<VerificationRecord> recs(20);
    for (std::size_t k = 0; k < recs.size(); ++k) {
        recs[k].id = "lw2.6";
        recs[k].verdict = k < 19 ? Verdict::pass : Verdict::fail;
    }
    IdentitySummary s = summarize(recs, {"lw2.6"}).front();
    EXPECT_TRUE(s.verified);
    EXPECT_FALSE(s.suspected_misprint);
    EXPECT_DOUBLE_EQ(*s.pass_rate, 0.95);
    for (std::size_t k = 0; k < 11; ++k) {
        recs[k].verdict = Verdict::fail;
    }
    s = summarize(recs, {"lw2.6"}).front();
    EXPECT_FALSE(s.verified);
    EXPECT_TRUE(s.suspected_misprint);
    for (auto& r : recs) {
        r.verdict = Verdict::inconclusive;
    }
    s = summarize(recs, {"lw2.6"}).front();
    EXPECT_FALSE(s.pass_rate.has_value());
    EXPECT_FALSE(s.verified);
}

} // namespace
