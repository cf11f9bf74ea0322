#include <kdfkit/kdfkit.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace kdfkit;

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_inconclusive = 2;
constexpr int exit_fail = 3;

/// Comma-separated decimals; the empty string is the empty list.
std::vector<double> parse_list(const std::string& text)
{
    std::vector<double> out;
    if (text.empty()) {
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw RangeError("malformed number '" + item + "'");
        }
        if (used != item.size() || !std::isfinite(v)) {
            throw RangeError("malformed number '" + item + "'");
        }
        out.push_back(v);
    }
    if (text.back() == ',') {
        throw RangeError("trailing comma in list '" + text + "'");
    }
    return out;
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int print_eval(const EvalResult& r)
{
    std::cout << "value: " << fmt(r.value) << '\n'
              << "status: " << to_string(r.status) << '\n'
              << "terms_used: " << r.terms_used << '\n'
              << "abs_error_estimate: " << fmt(r.abs_error_estimate) << '\n';
    if (!r.detail.empty()) {
        std::cout << "detail: " << r.detail << '\n';
    }
    return r.trusted() ? exit_ok : exit_inconclusive;
}

struct EvalFlags {
    std::string num, den, h, g, a, b, c, d;
    double z = 0.0, x = 0.0, y = 0.0;
    double a_val = 0.0, b_val = 0.0, c_val = 0.0, a2 = 0.0, b2 = 0.0;
    double rel_tol = default_rel_tol;
};

struct VerifyFlags {
    std::string id;
    std::optional<int> i;
    std::map<Symbol, double> values;
    double tol = default_tolerance;
    double side_rel_tol = default_rel_tol;
};

struct SweepFlags {
    bool all = false;
    std::string ids;
    int i_max = 2;
    int samples = 25;
    std::uint64_t seed = 42;
    double tol = default_tolerance;
    double side_rel_tol = default_rel_tol;
    std::string format = "json";
    std::string out;
    std::string config;
    bool timing = false;
};

SweepConfig build_config(const SweepFlags& f, CLI::App& cmd)
{
    SweepConfig c;
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        if (!in) {
            throw RangeError("cannot read config file '" + f.config + "'");
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw RangeError(std::string("config file is not valid JSON: ") + e.what());
        }
        c = sweep_config_from_json(j);
    }
    if (cmd.count("--all") > 0) {
        c.ids.clear();
    }
    if (cmd.count("--ids") > 0) {
        c.ids.clear();
        std::stringstream ss(f.ids);
        std::string id;
        while (std::getline(ss, id, ',')) {
            c.ids.push_back(id);
        }
    }
    if (cmd.count("--imax") > 0) {
        c.i_max = f.i_max;
    }
    if (cmd.count("--samples") > 0) {
        c.samples = f.samples;
    }
    if (cmd.count("--seed") > 0) {
        c.seed = f.seed;
    }
    if (cmd.count("--tol") > 0) {
        c.tolerance = f.tol;
    }
    if (cmd.count("--side-rel-tol") > 0) {
        c.side_rel_tol = f.side_rel_tol;
    }
    validate(c);
    return c;
}

int run_sweep_command(const SweepFlags& f, CLI::App& cmd)
{
    const SweepConfig config = build_config(f, cmd);
    const auto start = std::chrono::steady_clock::now();
    ReportDocument doc = make_report(config, run_sweep(config));
    if (f.timing) {
        doc.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    std::string text = f.format == "csv" ? to_csv(doc) : to_json(doc).dump(2) + "\n";
    if (f.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream os(f.out);
        if (!os) {
            throw RangeError("cannot write '" + f.out + "'");
        }
        os << text;
    }
    return exit_ok;
}

int run_verify_command(const VerifyFlags& f)
{
    IdentityInstance inst{f.id, f.i, f.values};
    const VerificationRecord rec = verify_one(inst, f.tol, f.side_rel_tol);
    std::cout << to_json(rec).dump(2) << '\n';
    switch (rec.verdict) {
    case Verdict::pass: return exit_ok;
    case Verdict::fail: return exit_fail;
    case Verdict::inconclusive: return exit_inconclusive;
    }
    return exit_inconclusive;
}

int run_tables_command(const std::string& which, double a, double b)
{
    const char column = which.size() == 1 ? which[0] : '?';
    for (int i = -5; i <= 5; ++i) {
        std::cout << which << '_' << i << ' ' << fmt(table_value(column, i, a, b)) << '\n';
    }
    return exit_ok;
}

std::string join_symbols(const std::vector<Symbol>& symbols)
{
    std::string out;
    for (Symbol s : symbols) {
        out += (out.empty() ? "" : ",") + std::string(symbol_name(s));
    }
    return out;
}

int run_list_command()
{
    for (const IdentityListing& e : list_identities()) {
        std::cout << e.id << '\t' << '{' << join_symbols(e.free_symbols) << "}\t(" << e.arguments.first << ", "
                  << e.arguments.second << ")\t" << e.source << '\n';
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Kampe de Feriet summation identities: evaluation and verification"};
    app.require_subcommand(1);
    std::function<int()> action;

    auto* eval = app.add_subcommand("eval", "Evaluate a hypergeometric function");
    eval->require_subcommand(1);
    EvalFlags ef;
    auto add_tol = [&](CLI::App* c) { c->add_option("--rel-tol", ef.rel_tol, "Relative tolerance per side"); };

    auto* pfq = eval->add_subcommand("pfq", "Generalized hypergeometric pFq");
    pfq->add_option("--num", ef.num, "Numerator parameters, comma separated")->required();
    pfq->add_option("--den", ef.den, "Denominator parameters, comma separated")->required();
    pfq->add_option("--z", ef.z, "Argument")->required();
    add_tol(pfq);
    pfq->callback([&] {
        action = [&] { return print_eval(eval_pfq({parse_list(ef.num), parse_list(ef.den), ef.z}, ef.rel_tol)); };
    });

    auto* f21 = eval->add_subcommand("2f1", "Gauss 2F1 with transformation policy");
    f21->add_option("--a", ef.a_val)->required();
    f21->add_option("--b", ef.b_val)->required();
    f21->add_option("--c", ef.c_val)->required();
    f21->add_option("--z", ef.z)->required();
    add_tol(f21);
    f21->callback([&] {
        action = [&] { return print_eval(eval_2f1(ef.a_val, ef.b_val, ef.c_val, ef.z, ef.rel_tol)); };
    });

    auto* kdf = eval->add_subcommand("kdf", "Kampe de Feriet double series");
    // --h names a parameter list here, so help is reachable only as --help.
    kdf->set_help_flag("--help", "Print this help message and exit");
    kdf->add_option("--h", ef.h, "Parameters coupled to m+n (numerator)");
    kdf->add_option("--g", ef.g, "Parameters coupled to m+n (denominator)");
    kdf->add_option("--a", ef.a, "Parameters coupled to m (numerator)");
    kdf->add_option("--b", ef.b, "Parameters coupled to n (numerator)");
    kdf->add_option("--c", ef.c, "Parameters coupled to m (denominator)");
    kdf->add_option("--d", ef.d, "Parameters coupled to n (denominator)");
    kdf->add_option("--x", ef.x)->required();
    kdf->add_option("--y", ef.y)->required();
    add_tol(kdf);
    kdf->callback([&] {
        action = [&] {
            KdFSpec s{parse_list(ef.h), parse_list(ef.g), parse_list(ef.a), parse_list(ef.b),
                      parse_list(ef.c), parse_list(ef.d), ef.x,             ef.y};
            return print_eval(eval_kdf(s, ef.rel_tol));
        };
    });

    auto* f3 = eval->add_subcommand("f3", "Appell F3(a, a2 : b, b2 ; c ; x, y)");
    f3->add_option("--a", ef.a_val)->required();
    f3->add_option("--a2", ef.a2)->required();
    f3->add_option("--b", ef.b_val)->required();
    f3->add_option("--b2", ef.b2)->required();
    f3->add_option("--c", ef.c_val)->required();
    f3->add_option("--x", ef.x)->required();
    f3->add_option("--y", ef.y)->required();
    add_tol(f3);
    f3->callback([&] {
        action = [&] {
            return print_eval(eval_appell_f3(ef.a_val, ef.a2, ef.b_val, ef.b2, ef.c_val, ef.x, ef.y, ef.rel_tol));
        };
    });

    auto* verify = app.add_subcommand("verify", "Verify one identity instance");
    VerifyFlags vf;
    std::map<Symbol, double> raw;
    verify->add_option("id", vf.id, "Identity id, e.g. thm3.1a")->required();
    verify->add_option("--i", vf.i, "Theorem offset");
    for (Symbol s : all_symbols) {
        verify->add_option_function<double>("--" + std::string(symbol_name(s)), [&raw, s](double v) { raw[s] = v; },
                                            "Value of " + std::string(symbol_name(s)));
    }
    verify->add_option("--tol", vf.tol, "Pass tolerance on the relative error");
    verify->add_option("--side-rel-tol", vf.side_rel_tol, "Relative tolerance per side");
    verify->callback([&] {
        vf.values = raw;
        action = [&] { return run_verify_command(vf); };
    });

    auto* sweep = app.add_subcommand("sweep", "Seeded parameter sweep over the catalog");
    SweepFlags sf;
    sweep->add_flag("--all", sf.all, "Every registered identity (the default)");
    sweep->add_option("--ids", sf.ids, "Comma-separated identity ids");
    sweep->add_option("--imax", sf.i_max, "Largest theorem offset");
    sweep->add_option("--samples", sf.samples, "Samples per identity and offset");
    sweep->add_option("--seed", sf.seed, "Seed of the counter-based generator");
    sweep->add_option("--tol", sf.tol, "Pass tolerance on the relative error");
    sweep->add_option("--side-rel-tol", sf.side_rel_tol, "Relative tolerance per side");
    sweep->add_option("--format", sf.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sweep->add_option("--out", sf.out, "Output path instead of stdout");
    sweep->add_option("--config", sf.config, "JSON file mirroring the sweep configuration");
    sweep->add_flag("--timing", sf.timing, "Add wall-clock timing to the JSON report");
    sweep->callback([&] { action = [&] { return run_sweep_command(sf, *sweep); }; });

    auto* tables = app.add_subcommand("tables", "Print a coefficient table column for i in [-5, 5]");
    std::string which;
    double ta = 0.0;
    double tb = 0.0;
    tables->add_option("which", which, "Column A..F")->required()->check(CLI::IsMember({"A", "B", "C", "D", "E", "F"}));
    tables->add_option("--a", ta, "Value of a");
    tables->add_option("--b", tb, "Value of b");
    tables->callback([&] { action = [&] { return run_tables_command(which, ta, tb); }; });

    auto* list = app.add_subcommand("list", "List the registered identities");
    list->callback([&] { action = run_list_command; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_error;
    }
    try {
        return action();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_error;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_error;
    }
}
