#include <kdfkit/report.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace {

using namespace kdfkit;
using nlohmann::json;

ReportDocument small_report()
{
    SweepConfig c;
    c.ids = {"lw2.5", "thm3.16a"};
    c.samples = 4;
    c.i_max = 1;
    return make_report(c, run_sweep(c));
}

TEST(Report, JsonRoundTrip)
{
    const ReportDocument doc = small_report();
    const std::string text = to_json(doc).dump(2);
    const ReportDocument back = report_from_json(json::parse(text));
    EXPECT_TRUE(same_report(doc, back));
    EXPECT_EQ(to_json(back).dump(2), text);
}

TEST(Report, SchemaAndTimingFields)
{
    ReportDocument doc = small_report();
    json j = to_json(doc);
    EXPECT_EQ(j.at("schema"), "kdfkit/1");
    EXPECT_EQ(j.at("tool_version"), tool_version);
    EXPECT_FALSE(j.contains("timing"));
    EXPECT_EQ(j.at("records").size(), 12u);
    EXPECT_EQ(j.at("summary").size(), 2u);
    doc.wall_seconds = 1.5;
    j = to_json(doc);
    EXPECT_EQ(j.at("timing").at("wall_seconds"), 1.5);
    // Timing does not take part in equality.
    EXPECT_TRUE(same_report(doc, small_report()));
}

TEST(Report, RecordCarriesAlternates)
{
    const json j = to_json(small_report());
    const json& rec = j.at("records").at(0);
    EXPECT_EQ(rec.at("id"), "lw2.5");
    EXPECT_EQ(rec.at("reading"), "printed");
    ASSERT_EQ(rec.at("alternates").size(), 1u);
    EXPECT_EQ(rec.at("alternates").at(0).at("reading"), "vandermonde-reduced");
}

TEST(Report, NonFiniteNumbersRoundTrip)
{
    VerificationRecord rec;
    rec.id = "lw2.1";
    rec.params = {{Symbol::alpha, 0.5}};
    rec.lhs = {std::numeric_limits<double>::quiet_NaN(), 0.0, 3, EvalStatus::inconclusive, "overflow"};
    rec.rhs = {std::numeric_limits<double>::infinity(), 0.0, 0, EvalStatus::inconclusive, ""};
    const json j = to_json(rec);
    EXPECT_EQ(j.at("lhs").at("value"), "nan");
    EXPECT_EQ(j.at("rhs").at("value"), "inf");
    EXPECT_TRUE(j.at("rel_err").is_null());
    EXPECT_TRUE(same_record(rec, record_from_json(json::parse(j.dump()))));
}

TEST(Report, CsvShape)
{
    const ReportDocument doc = small_report();
    const std::string csv = to_csv(doc);
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "id,i,alpha,beta,gamma,epsilon,a,b,x,lhs,rhs,rel_err,verdict,lhs_status,rhs_status,reading,reason");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 13);
}

TEST(SweepConfigJson, ParsesAndRejects)
{
    const SweepConfig c =
        sweep_config_from_json(json::parse(R"({"ids": ["lw2.1"], "samples": 7, "seed": 9, "i_max": 3})"));
    EXPECT_EQ(c.ids, std::vector<std::string>{"lw2.1"});
    EXPECT_EQ(c.samples, 7);
    EXPECT_EQ(c.seed, 9u);
    EXPECT_EQ(c.i_max, 3);
    EXPECT_EQ(c.tolerance, default_tolerance);
    EXPECT_TRUE(sweep_config_from_json(json::parse(R"({"ids": "all"})")).ids.empty());
    EXPECT_THROW(sweep_config_from_json(json::parse(R"({"sample": 7})")), RangeError);
    EXPECT_THROW(sweep_config_from_json(json::parse(R"({"ids": "some"})")), RangeError);
    EXPECT_THROW(sweep_config_from_json(json::parse("[1]")), RangeError);
    EXPECT_EQ(sweep_config_from_json(to_json(c)), c);
}

TEST(Report, UnknownSchemaRejected)
{
    json j = to_json(small_report());
    j["schema"] = "kdfkit/0";
    EXPECT_THROW(report_from_json(j), RangeError);
}

} // namespace
