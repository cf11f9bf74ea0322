#pragma once

#include <kdfkit/verifier.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace kdfkit {

inline constexpr const char* tool_version = "0.1.0";
inline constexpr const char* report_schema = "kdfkit/1";

/// The sweep report. timing is excluded from equality and emitted only when
/// requested, so two runs with the same config serialize identically.
struct ReportDocument {
    std::string version = tool_version;
    SweepConfig config;
    std::vector<VerificationRecord> records;
    std::vector<IdentitySummary> summary;
    std::optional<double> wall_seconds;
};

namespace detail {

using nlohmann::json;

/// Non-finite doubles become the strings "nan", "inf" and "-inf".
inline json number_to_json(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    return v;
}

inline double number_from_json(const json& j)
{
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "nan") {
            return std::numeric_limits<double>::quiet_NaN();
        }
        if (s == "inf") {
            return std::numeric_limits<double>::infinity();
        }
        if (s == "-inf") {
            return -std::numeric_limits<double>::infinity();
        }
        throw RangeError("not a number: '" + s + "'");
    }
    return j.get<double>();
}

inline json optional_number(const std::optional<double>& v) { return v ? number_to_json(*v) : json(nullptr); }

inline std::optional<double> optional_number_from(const json& j)
{
    if (j.is_null()) {
        return std::nullopt;
    }
    return number_from_json(j);
}

/// NaN compares equal to NaN; everything else by value.
inline bool same_number(double l, double r) { return (std::isnan(l) && std::isnan(r)) || l == r; }

inline bool same_number(const std::optional<double>& l, const std::optional<double>& r)
{
    return l.has_value() == r.has_value() && (!l || same_number(*l, *r));
}

} // namespace detail

inline nlohmann::json to_json(const EvalResult& r)
{
    return {{"value", detail::number_to_json(r.value)},
            {"abs_error_estimate", detail::number_to_json(r.abs_error_estimate)},
            {"terms_used", r.terms_used},
            {"status", std::string(to_string(r.status))},
            {"detail", r.detail}};
}

inline EvalResult eval_result_from_json(const nlohmann::json& j)
{
    EvalResult r;
    r.value = detail::number_from_json(j.at("value"));
    r.abs_error_estimate = detail::number_from_json(j.at("abs_error_estimate"));
    r.terms_used = j.at("terms_used").get<std::size_t>();
    const auto status = eval_status_from_string(j.at("status").get<std::string>());
    if (!status) {
        throw RangeError("unknown status '" + j.at("status").get<std::string>() + "'");
    }
    r.status = *status;
    r.detail = j.at("detail").get<std::string>();
    return r;
}

inline bool same_result(const EvalResult& l, const EvalResult& r)
{
    return detail::same_number(l.value, r.value) && detail::same_number(l.abs_error_estimate, r.abs_error_estimate)
           && l.terms_used == r.terms_used && l.status == r.status && l.detail == r.detail;
}

inline nlohmann::json to_json(const ParamMap& p)
{
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [s, v] : p) {
        j[std::string(symbol_name(s))] = detail::number_to_json(v);
    }
    return j;
}

inline ParamMap param_map_from_json(const nlohmann::json& j)
{
    ParamMap p;
    for (const auto& [name, v] : j.items()) {
        const auto s = symbol_from_name(name);
        if (!s) {
            throw MissingParam("unknown symbol '" + name + "'");
        }
        p[*s] = detail::number_from_json(v);
    }
    return p;
}

inline nlohmann::json to_json(const VerificationRecord& r)
{
    nlohmann::json alternates = nlohmann::json::array();
    for (const ReadingOutcome& a : r.alternates) {
        alternates.push_back({{"reading", a.reading},
                              {"rhs", to_json(a.rhs)},
                              {"rel_err", detail::optional_number(a.rel_err)},
                              {"verdict", std::string(to_string(a.verdict))},
                              {"reason", a.reason}});
    }
    return {{"id", r.id},
            {"i", r.i ? nlohmann::json(*r.i) : nlohmann::json(nullptr)},
            {"params", to_json(r.params)},
            {"lhs", to_json(r.lhs)},
            {"rhs", to_json(r.rhs)},
            {"rel_err", detail::optional_number(r.rel_err)},
            {"verdict", std::string(to_string(r.verdict))},
            {"reading", r.reading},
            {"reason", r.reason},
            {"alternates", alternates}};
}

inline Verdict verdict_from_json(const nlohmann::json& j)
{
    const auto v = verdict_from_string(j.get<std::string>());
    if (!v) {
        throw RangeError("unknown verdict '" + j.get<std::string>() + "'");
    }
    return *v;
}

inline VerificationRecord record_from_json(const nlohmann::json& j)
{
    VerificationRecord r;
    r.id = j.at("id").get<std::string>();
    if (!j.at("i").is_null()) {
        r.i = j.at("i").get<int>();
    }
    r.params = param_map_from_json(j.at("params"));
    r.lhs = eval_result_from_json(j.at("lhs"));
    r.rhs = eval_result_from_json(j.at("rhs"));
    r.rel_err = detail::optional_number_from(j.at("rel_err"));
    r.verdict = verdict_from_json(j.at("verdict"));
    r.reading = j.at("reading").get<std::string>();
    r.reason = j.at("reason").get<std::string>();
    for (const auto& a : j.at("alternates")) {
        r.alternates.push_back({a.at("reading").get<std::string>(), eval_result_from_json(a.at("rhs")),
                                detail::optional_number_from(a.at("rel_err")), verdict_from_json(a.at("verdict")),
                                a.at("reason").get<std::string>()});
    }
    return r;
}

inline bool same_record(const VerificationRecord& l, const VerificationRecord& r)
{
    if (l.id != r.id || l.i != r.i || l.params.size() != r.params.size() || !same_result(l.lhs, r.lhs)
        || !same_result(l.rhs, r.rhs) || !detail::same_number(l.rel_err, r.rel_err) || l.verdict != r.verdict
        || l.reading != r.reading || l.reason != r.reason || l.alternates.size() != r.alternates.size()) {
        return false;
    }
    for (const auto& [s, v] : l.params) {
        auto it = r.params.find(s);
        if (it == r.params.end() || !detail::same_number(v, it->second)) {
            return false;
        }
    }
    for (std::size_t k = 0; k < l.alternates.size(); ++k) {
        const ReadingOutcome& a = l.alternates[k];
        const ReadingOutcome& b = r.alternates[k];
        if (a.reading != b.reading || !same_result(a.rhs, b.rhs) || !detail::same_number(a.rel_err, b.rel_err)
            || a.verdict != b.verdict || a.reason != b.reason) {
            return false;
        }
    }
    return true;
}

inline nlohmann::json to_json(const SweepConfig& c)
{
    return {{"ids", c.ids.empty() ? nlohmann::json("all") : nlohmann::json(c.ids)},
            {"i_max", c.i_max},
            {"samples", c.samples},
            {"seed", c.seed},
            {"tolerance", c.tolerance},
            {"side_rel_tol", c.side_rel_tol}};
}

/// Missing keys keep their defaults; "ids" is a list or the string "all".
inline SweepConfig sweep_config_from_json(const nlohmann::json& j)
{
    SweepConfig c;
    if (!j.is_object()) {
        throw RangeError("sweep config must be a JSON object");
    }
    for (const auto& [key, v] : j.items()) {
        if (key == "ids") {
            if (v.is_string()) {
                if (v.get<std::string>() != "all") {
                    throw RangeError("ids must be a list or \"all\"");
                }
            } else {
                c.ids = v.get<std::vector<std::string>>();
            }
        } else if (key == "i_max") {
            c.i_max = v.get<int>();
        } else if (key == "samples") {
            c.samples = v.get<int>();
        } else if (key == "seed") {
            c.seed = v.get<std::uint64_t>();
        } else if (key == "tolerance") {
            c.tolerance = v.get<double>();
        } else if (key == "side_rel_tol") {
            c.side_rel_tol = v.get<double>();
        } else {
            throw RangeError("unknown sweep config key '" + key + "'");
        }
    }
    return c;
}

inline nlohmann::json to_json(const IdentitySummary& s)
{
    nlohmann::json readings = nlohmann::json::array();
    for (const ReadingSummary& r : s.readings) {
        readings.push_back({{"reading", r.reading},
                            {"pass", r.pass},
                            {"fail", r.fail},
                            {"inconclusive", r.inconclusive},
                            {"verified", r.verified}});
    }
    return {{"id", s.id},
            {"records", s.records},
            {"pass", s.pass},
            {"fail", s.fail},
            {"inconclusive", s.inconclusive},
            {"conclusive", s.conclusive},
            {"pass_rate", detail::optional_number(s.pass_rate)},
            {"verified", s.verified},
            {"suspected_misprint", s.suspected_misprint},
            {"known_discrepancy", s.known_discrepancy},
            {"readings", readings}};
}

inline IdentitySummary summary_from_json(const nlohmann::json& j)
{
    IdentitySummary s;
    s.id = j.at("id").get<std::string>();
    s.records = j.at("records").get<int>();
    s.pass = j.at("pass").get<int>();
    s.fail = j.at("fail").get<int>();
    s.inconclusive = j.at("inconclusive").get<int>();
    s.conclusive = j.at("conclusive").get<int>();
    s.pass_rate = detail::optional_number_from(j.at("pass_rate"));
    s.verified = j.at("verified").get<bool>();
    s.suspected_misprint = j.at("suspected_misprint").get<bool>();
    s.known_discrepancy = j.at("known_discrepancy").get<std::string>();
    for (const auto& r : j.at("readings")) {
        s.readings.push_back({r.at("reading").get<std::string>(), r.at("pass").get<int>(), r.at("fail").get<int>(),
                              r.at("inconclusive").get<int>(), r.at("verified").get<bool>()});
    }
    return s;
}

inline nlohmann::json to_json(const ReportDocument& doc)
{
    nlohmann::json records = nlohmann::json::array();
    for (const VerificationRecord& r : doc.records) {
        records.push_back(to_json(r));
    }
    nlohmann::json summary = nlohmann::json::array();
    for (const IdentitySummary& s : doc.summary) {
        summary.push_back(to_json(s));
    }
    nlohmann::json j = {{"schema", report_schema},
                        {"tool_version", doc.version},
                        {"config", to_json(doc.config)},
                        {"records", records},
                        {"summary", summary}};
    if (doc.wall_seconds) {
        j["timing"] = {{"wall_seconds", *doc.wall_seconds}};
    }
    return j;
}

inline ReportDocument report_from_json(const nlohmann::json& j)
{
    if (j.at("schema").get<std::string>() != report_schema) {
        throw RangeError("unsupported report schema '" + j.at("schema").get<std::string>() + "'");
    }
    ReportDocument doc;
    doc.version = j.at("tool_version").get<std::string>();
    doc.config = sweep_config_from_json(j.at("config"));
    for (const auto& r : j.at("records")) {
        doc.records.push_back(record_from_json(r));
    }
    for (const auto& s : j.at("summary")) {
        doc.summary.push_back(summary_from_json(s));
    }
    if (j.contains("timing")) {
        doc.wall_seconds = j.at("timing").at("wall_seconds").get<double>();
    }
    return doc;
}

/// Field-by-field equality with NaN equal to NaN; timing is ignored.
inline bool same_report(const ReportDocument& l, const ReportDocument& r)
{
    if (l.version != r.version || !(l.config == r.config) || l.summary.size() != r.summary.size()
        || l.records.size() != r.records.size()) {
        return false;
    }
    for (std::size_t k = 0; k < l.summary.size(); ++k) {
        IdentitySummary a = l.summary[k];
        IdentitySummary b = r.summary[k];
        if (!detail::same_number(a.pass_rate, b.pass_rate)) {
            return false;
        }
        a.pass_rate.reset();
        b.pass_rate.reset();
        if (!(a == b)) {
            return false;
        }
    }
    for (std::size_t k = 0; k < l.records.size(); ++k) {
        if (!same_record(l.records[k], r.records[k])) {
            return false;
        }
    }
    return true;
}

inline ReportDocument make_report(const SweepConfig& config, SweepResult result)
{
    ReportDocument doc;
    doc.config = config;
    doc.records = std::move(result.records);
    doc.summary = std::move(result.summary);
    return doc;
}

namespace detail {

inline std::string csv_number(double v)
{
    if (!std::isfinite(v)) {
        return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        out += ch;
        if (ch == '"') {
            out += '"';
        }
    }
    return out + "\"";
}

} // namespace detail

/// One row per record; unbound symbols leave their column empty.
inline void write_csv(std::ostream& os, const ReportDocument& doc)
{
    os << "id,i";
    for (Symbol s : all_symbols) {
        os << ',' << symbol_name(s);
    }
    os << ",lhs,rhs,rel_err,verdict,lhs_status,rhs_status,reading,reason\n";
    for (const VerificationRecord& r : doc.records) {
        os << detail::csv_field(r.id) << ',' << (r.i ? std::to_string(*r.i) : std::string{});
        for (Symbol s : all_symbols) {
            auto it = r.params.find(s);
            os << ',' << (it == r.params.end() ? std::string{} : detail::csv_number(it->second));
        }
        os << ',' << detail::csv_number(r.lhs.value) << ',' << detail::csv_number(r.rhs.value) << ','
           << (r.rel_err ? detail::csv_number(*r.rel_err) : std::string{}) << ',' << to_string(r.verdict) << ','
           << to_string(r.lhs.status) << ',' << to_string(r.rhs.status) << ',' << detail::csv_field(r.reading) << ','
           << detail::csv_field(r.reason) << '\n';
    }
}

inline std::string to_csv(const ReportDocument& doc)
{
    std::ostringstream os;
    write_csv(os, doc);
    return os.str();
}

} // namespace kdfkit
