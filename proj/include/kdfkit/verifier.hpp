#pragma once

#include <kdfkit/catalog.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace kdfkit {

enum class Verdict { pass, fail, inconclusive };

inline std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

inline std::optional<Verdict> verdict_from_string(std::string_view s)
{
    for (Verdict v : {Verdict::pass, Verdict::fail, Verdict::inconclusive}) {
        if (to_string(v) == s) {
            return v;
        }
    }
    return std::nullopt;
}

inline constexpr double default_tolerance = 1e-8;
inline constexpr double rel_err_floor = 1e-30;
inline constexpr double min_pole_clearance = 0.05;
inline constexpr int max_rejections = 20;

/// Outcome of comparing the left side with one right-side reading.
struct ReadingOutcome {
    std::string reading;
    EvalResult rhs;
    std::optional<double> rel_err;
    Verdict verdict = Verdict::inconclusive;
    std::string reason;
};

struct VerificationRecord {
    std::string id;
    std::optional<int> i;
    ParamMap params;
    EvalResult lhs;
    EvalResult rhs;
    /// Absent when either side is inconclusive.
    std::optional<double> rel_err;
    Verdict verdict = Verdict::inconclusive;
    /// Name of the reading that decides the verdict.
    std::string reading;
    std::string reason;
    /// Every further registered reading, in registry order.
    std::vector<ReadingOutcome> alternates;
};

inline Verdict decide(const EvalResult& lhs, const EvalResult& rhs, double tolerance, std::optional<double>& rel_err)
{
    rel_err.reset();
    if (!lhs.trusted() || !rhs.trusted()) {
        return Verdict::inconclusive;
    }
    const double err = std::abs(lhs.value - rhs.value) / std::max(std::abs(rhs.value), rel_err_floor);
    rel_err = err;
    return err <= tolerance ? Verdict::pass : Verdict::fail;
}

namespace detail {

inline EvalResult guarded(const std::function<EvalResult()>& f)
{
    try {
        return f();
    } catch (const UnknownIdentity&) {
        throw;
    } catch (const MissingParam&) {
        throw;
    } catch (const Error& e) {
        return inconclusive(e.what());
    }
}

inline std::string side_reason(const char* side, const EvalResult& r)
{
    return r.trusted() ? std::string{} : std::string(side) + ": " + (r.detail.empty() ? "not finite" : r.detail);
}

inline std::string join_reasons(std::string l, const std::string& r)
{
    if (l.empty()) {
        return r;
    }
    if (!r.empty()) {
        l += "; " + r;
    }
    return l;
}

} // namespace detail

/// Evaluates both sides independently and compares them. Pole and
/// convergence problems become inconclusive records; only an unknown id or a
/// malformed parameter binding throws.
inline VerificationRecord verify_one(const IdentityInstance& inst, double tolerance = default_tolerance,
                                     double side_rel_tol = default_rel_tol)
{
    const Identity& e = validate(inst);
    VerificationRecord rec;
    rec.id = inst.id;
    rec.i = inst.i;
    rec.params = inst.params;
    rec.lhs = detail::guarded([&] { return evaluate_side(lhs_spec(inst), side_rel_tol); });
    for (std::size_t k = 0; k < e.rhs.size(); ++k) {
        ReadingOutcome out;
        out.reading = e.rhs[k].name;
        out.rhs = detail::guarded([&] { return rhs_value(inst, side_rel_tol, k); });
        out.verdict = decide(rec.lhs, out.rhs, tolerance, out.rel_err);
        out.reason = detail::join_reasons(detail::side_reason("lhs", rec.lhs), detail::side_reason("rhs", out.rhs));
        if (k == 0) {
            rec.rhs = out.rhs;
            rec.rel_err = out.rel_err;
            rec.verdict = out.verdict;
            rec.reading = out.reading;
            rec.reason = out.reason;
        } else {
            rec.alternates.push_back(std::move(out));
        }
    }
    return rec;
}

struct SweepConfig {
    /// Empty selects every registered identity.
    std::vector<std::string> ids;
    int i_max = 2;
    int samples = 25;
    std::uint64_t seed = 42;
    double tolerance = default_tolerance;
    double side_rel_tol = default_rel_tol;

    bool operator==(const SweepConfig&) const = default;
};

inline void validate(const SweepConfig& c)
{
    if (c.samples < 1) {
        throw RangeError("samples must be at least 1");
    }
    if (c.i_max < 0 || c.i_max > max_offset) {
        throw RangeError("i_max must lie in [0, " + std::to_string(max_offset) + "]");
    }
    if (!(c.side_rel_tol >= 1e-15) || !(c.tolerance >= 10.0 * c.side_rel_tol)) {
        throw RangeError("tolerance must be at least 10x the per-side rel_tol, which must be >= 1e-15");
    }
    for (const std::string& id : c.ids) {
        find_identity(id);
    }
}

/// Counter-based generator: every draw is a pure function of its key.
namespace rng {

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t key(std::uint64_t seed, std::string_view id, std::uint64_t sample_index, std::uint64_t attempt,
                         std::uint64_t lane)
{
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ fnv1a(id));
    h = splitmix64(h ^ sample_index);
    h = splitmix64(h ^ attempt);
    return splitmix64(h ^ lane);
}

/// Uniform in [0, 1) with 53 random bits.
inline double unit(std::uint64_t k) { return static_cast<double>(k >> 11) * 0x1.0p-53; }

} // namespace rng

namespace detail {

inline double min_pole_distance(const std::vector<double>& v)
{
    double d = std::numeric_limits<double>::infinity();
    for (double x : v) {
        d = std::min(d, pole_distance(x));
    }
    return d;
}

inline double lhs_denominator_clearance(const SideSpec& side)
{
    return std::visit(
        [](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, KdFSpec>) {
                return std::min({min_pole_distance(s.g_params), min_pole_distance(s.c_params),
                                 min_pole_distance(s.d_params)});
            } else if constexpr (std::is_same_v<T, F3Args>) {
                return pole_distance(s.c);
            } else {
                return min_pole_distance(s.denominator_params);
            }
        },
        side);
}

inline std::optional<std::string> lhs_convergence_issue(const SideSpec& side)
{
    return std::visit(
        [](const auto& s) -> std::optional<std::string> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, KdFSpec>) {
                return kdf_convergence_issue(s);
            } else if constexpr (std::is_same_v<T, F3Args>) {
                return f3_convergence_issue(s);
            } else {
                return series_convergence_issue(s.numerator_params, s.denominator_params, s.argument);
            }
        },
        side);
}

inline double rhs_clearance(const RhsForm& form)
{
    if (const auto* g = std::get_if<GammaSum>(&form)) {
        return pole_clearance(*g);
    }
    return pole_distance(std::get<ScaledHypergeometric>(form).c);
}

/// Why a drawn instance is rejected; nullopt when it is admissible.
inline std::optional<std::string> rejection_reason(const Identity& e, const IdentityInstance& inst)
{
    const SideSpec side = e.lhs(inst.params, inst.i.value_or(0));
    if (lhs_denominator_clearance(side) < min_pole_clearance) {
        return "left-side denominator parameter within 0.05 of a pole";
    }
    if (auto issue = lhs_convergence_issue(side)) {
        return *issue;
    }
    if (rhs_clearance(e.rhs.front().build(inst.params, inst.i.value_or(0))) < min_pole_clearance) {
        return "right-side Gamma argument within 0.05 of a pole";
    }
    return std::nullopt;
}

} // namespace detail

/// Draws a parameter binding uniformly from the identity's box, retrying up
/// to max_rejections times. The instance is returned either way; the string
/// holds the last rejection reason when no admissible draw was found.
inline std::pair<IdentityInstance, std::optional<std::string>> draw_instance(const Identity& e, std::optional<int> i,
                                                                             std::uint64_t seed,
                                                                             std::uint64_t sample_index)
{
    const SamplingBox box = e.box(i.value_or(0));
    IdentityInstance inst{e.id, i, {}};
    std::optional<std::string> reason;
    for (int attempt = 0; attempt <= max_rejections; ++attempt) {
        inst.params.clear();
        for (const auto& [sym, range] : box) {
            const double u = rng::unit(rng::key(seed, e.id, sample_index, attempt, static_cast<std::uint64_t>(sym)));
            inst.params[sym] = range.lo + u * (range.hi - range.lo);
        }
        try {
            reason = detail::rejection_reason(e, inst);
        } catch (const Error& err) {
            reason = err.what();
        }
        if (!reason) {
            return {inst, std::nullopt};
        }
    }
    return {inst, "no admissible draw in " + std::to_string(max_rejections) + " rejections: " + *reason};
}

struct ReadingSummary {
    std::string reading;
    int pass = 0;
    int fail = 0;
    int inconclusive = 0;
    bool verified = false;

    bool operator==(const ReadingSummary&) const = default;
};

struct IdentitySummary {
    std::string id;
    int records = 0;
    int pass = 0;
    int fail = 0;
    int inconclusive = 0;
    int conclusive = 0;
    /// Absent when no record is conclusive.
    std::optional<double> pass_rate;
    bool verified = false;
    bool suspected_misprint = false;
    std::string known_discrepancy;
    std::vector<ReadingSummary> readings;

    bool operator==(const IdentitySummary&) const = default;
};

inline constexpr double verified_pass_rate = 0.95;
inline constexpr double misprint_fail_rate = 0.5;

struct SweepResult {
    std::vector<VerificationRecord> records;
    std::vector<IdentitySummary> summary;
};

inline std::vector<std::string> selected_ids(const SweepConfig& c)
{
    if (!c.ids.empty()) {
        return c.ids;
    }
    std::vector<std::string> out;
    for (const Identity& e : registry()) {
        out.push_back(e.id);
    }
    return out;
}

/// Worker count: hardware concurrency capped by KDFKIT_THREADS when set.
inline unsigned sweep_threads()
{
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("KDFKIT_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) {
            n = std::min(n, static_cast<unsigned>(cap));
        }
    }
    return n;
}

inline std::vector<IdentitySummary> summarize(const std::vector<VerificationRecord>& records,
                                              const std::vector<std::string>& ids)
{
    std::vector<IdentitySummary> out;
    for (const std::string& id : ids) {
        const Identity& e = find_identity(id);
        IdentitySummary s;
        s.id = id;
        s.known_discrepancy = e.known_discrepancy;
        for (const RhsReading& r : e.rhs) {
            s.readings.push_back({r.name});
        }
        auto tally = [](Verdict v, int& pass, int& fail, int& inconclusive) {
            (v == Verdict::pass ? pass : v == Verdict::fail ? fail : inconclusive) += 1;
        };
        for (const VerificationRecord& rec : records) {
            if (rec.id != id) {
                continue;
            }
            ++s.records;
            tally(rec.verdict, s.pass, s.fail, s.inconclusive);
            tally(rec.verdict, s.readings[0].pass, s.readings[0].fail, s.readings[0].inconclusive);
            for (std::size_t k = 0; k < rec.alternates.size() && k + 1 < s.readings.size(); ++k) {
                auto& rs = s.readings[k + 1];
                tally(rec.alternates[k].verdict, rs.pass, rs.fail, rs.inconclusive);
            }
        }
        s.conclusive = s.pass + s.fail;
        if (s.conclusive > 0) {
            s.pass_rate = static_cast<double>(s.pass) / s.conclusive;
            s.verified = *s.pass_rate >= verified_pass_rate;
            s.suspected_misprint = s.fail > misprint_fail_rate * s.conclusive;
        }
        for (ReadingSummary& rs : s.readings) {
            const int conclusive = rs.pass + rs.fail;
            rs.verified = conclusive > 0 && rs.pass >= verified_pass_rate * conclusive;
        }
        out.push_back(std::move(s));
    }
    return out;
}

/// Samples every selected identity; theorem entries get `samples` draws for
/// each i in [0, i_max]. Records come out in (id, sample-index) order
/// whatever the thread count.
inline SweepResult run_sweep(const SweepConfig& config, unsigned threads = sweep_threads())
{
    validate(config);
    const std::vector<std::string> ids = selected_ids(config);

    struct Task {
        const Identity* identity;
        std::optional<int> i;
        std::uint64_t sample_index;
    };
    std::vector<Task> tasks;
    for (const std::string& id : ids) {
        const Identity& e = find_identity(id);
        const int i_count = e.indexed ? config.i_max + 1 : 1;
        for (int ii = 0; ii < i_count; ++ii) {
            for (int k = 0; k < config.samples; ++k) {
                tasks.push_back({&e, e.indexed ? std::optional<int>(ii) : std::nullopt,
                                 static_cast<std::uint64_t>(ii) * config.samples + k});
            }
        }
    }

    std::vector<VerificationRecord> records(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next++; t < tasks.size(); t = next++) {
            const Task& task = tasks[t];
            auto [inst, rejected] = draw_instance(*task.identity, task.i, config.seed, task.sample_index);
            if (rejected) {
                VerificationRecord rec;
                rec.id = inst.id;
                rec.i = inst.i;
                rec.params = inst.params;
                rec.lhs = detail::inconclusive("not evaluated");
                rec.rhs = detail::inconclusive("not evaluated");
                rec.reading = task.identity->rhs.front().name;
                rec.reason = *rejected;
                for (std::size_t k = 1; k < task.identity->rhs.size(); ++k) {
                    rec.alternates.push_back(
                        {task.identity->rhs[k].name, rec.rhs, std::nullopt, Verdict::inconclusive, *rejected});
                }
                records[t] = std::move(rec);
            } else {
                records[t] = verify_one(inst, config.tolerance, config.side_rel_tol);
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < n; ++w) {
        pool.emplace_back(worker);
    }
    worker();
    for (std::thread& th : pool) {
        th.join();
    }
    auto summary = summarize(records, ids);
    return {std::move(records), std::move(summary)};
}

} // namespace kdfkit
