#pragma once

#include <kdfkit/errors.hpp>
#include <kdfkit/gamma_sum.hpp>
#include <kdfkit/series.hpp>
#include <kdfkit/summation.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace kdfkit {

enum class Symbol { alpha, beta, gamma, epsilon, a, b, x };

inline constexpr std::array<Symbol, 7> all_symbols = {Symbol::alpha, Symbol::beta, Symbol::gamma, Symbol::epsilon,
                                                      Symbol::a,     Symbol::b,    Symbol::x};

inline std::string_view symbol_name(Symbol s)
{
    switch (s) {
    case Symbol::alpha: return "alpha";
    case Symbol::beta: return "beta";
    case Symbol::gamma: return "gamma";
    case Symbol::epsilon: return "epsilon";
    case Symbol::a: return "a";
    case Symbol::b: return "b";
    case Symbol::x: return "x";
    }
    return "x";
}

inline std::optional<Symbol> symbol_from_name(std::string_view name)
{
    for (Symbol s : all_symbols) {
        if (symbol_name(s) == name) {
            return s;
        }
    }
    return std::nullopt;
}

using ParamMap = std::map<Symbol, double>;

/// Largest theorem offset accepted by the catalog.
inline constexpr int max_offset = 8;

struct IdentityInstance {
    std::string id;
    /// Theorem offset; absent for the reduction formulas.
    std::optional<int> i;
    ParamMap params;
};

using SideSpec = std::variant<KdFSpec, F3Args, PFQSpec>;

/// prefactor_base^prefactor_power * 2F1(a, b; c; z).
struct ScaledHypergeometric {
    double prefactor_base = 1.0;
    double prefactor_power = 0.0;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double z = 0.0;
};

using RhsForm = std::variant<ScaledHypergeometric, GammaSum>;

/// One way of reading a printed right-hand side. The first reading of an
/// identity is the literal one and decides its verdict.
struct RhsReading {
    std::string name;
    std::function<RhsForm(const ParamMap&, int)> build;
};

struct Interval {
    double lo;
    double hi;
};

using SamplingBox = std::map<Symbol, Interval>;

/// How a theorem entry follows from a reduction formula: bind the reduction's
/// symbols (including x) from the theorem's, then apply a summation theorem.
struct DerivationRoute {
    std::string reduction_id;
    TheoremKind theorem;
    std::function<ParamMap(const ParamMap&, int)> substitute;
};

struct Identity {
    std::string id;
    std::vector<Symbol> free_symbols;
    bool indexed = false;
    /// Printed argument pair, e.g. ("1/2", "-1") or ("x", "-x").
    std::pair<std::string, std::string> arguments;
    std::string source;
    std::function<SideSpec(const ParamMap&, int)> lhs;
    std::vector<RhsReading> rhs;
    std::function<SamplingBox(int)> box;
    std::optional<DerivationRoute> route;
    /// Known disagreement between the printed identity and the numerics; empty when none.
    std::string known_discrepancy;
};

namespace detail {

struct Bound {
    const ParamMap& p;
    double operator()(Symbol s) const { return p.at(s); }
};

inline double factorial(int n)
{
    double f = 1.0;
    for (int k = 2; k <= n; ++k) {
        f *= k;
    }
    return f;
}

inline std::string offset_tag(Variant v) { return v == Variant::plus ? "(+i)" : "(-i)"; }

inline std::string route_tag(const std::string& id, const std::string& reduction, TheoremKind kind)
{
    return id + " via " + reduction + " + " + std::string(to_string(kind.family)) + offset_tag(kind.variant);
}

inline std::vector<Identity> build_reductions()
{
    using S = Symbol;
    std::vector<Identity> out;
    const Interval alpha{0.1, 2.0};
    const Interval beta{0.5, 3.0};
    const Interval gamma{0.1, 2.0};
    const Interval eps{0.1, 1.5};
    const Interval xr{-0.5, 0.5};
    auto box = [](SamplingBox b) { return [b](int) { return b; }; };

    // (1-x)^(beta-eps-alpha) 2F1[beta-eps, top; bottom; x]
    auto euler_rhs = [](auto top, auto bottom) {
        return [top, bottom](const ParamMap& p, int) -> RhsForm {
            Bound v{p};
            return ScaledHypergeometric{1.0 - v(S::x), v(S::beta) - v(S::epsilon) - v(S::alpha),
                                        v(S::beta) - v(S::epsilon), top(v), bottom(v), v(S::x)};
        };
    };
    // (1-x)^(-alpha) 2F1[first, top; bottom; x/(x-1)]
    auto pfaff_rhs = [](auto first, auto top, auto bottom) {
        return [first, top, bottom](const ParamMap& p, int) -> RhsForm {
            Bound v{p};
            const double x = v(S::x);
            return ScaledHypergeometric{1.0 - x, -v(S::alpha), first(v), top(v), bottom(v), x / (x - 1.0)};
        };
    };

    out.push_back({"lw2.1",
                   {S::alpha, S::beta, S::gamma, S::epsilon, S::x},
                   false,
                   {"x", "x"},
                   "reduction lw2.1",
                   [](const ParamMap& p, int) -> SideSpec {
                       Bound v{p};
                       const double b = v(S::beta), e = v(S::epsilon), g = v(S::gamma);
                       return KdFSpec{{v(S::alpha)}, {b}, {e}, {b - e, g}, {}, {g + b}, v(S::x), v(S::x)};
                   },
                   {{"printed", euler_rhs([](Bound v) { return v(S::gamma) + v(S::beta) - v(S::alpha); },
                                          [](Bound v) { return v(S::gamma) + v(S::beta); })}},
                   box({{S::alpha, alpha}, {S::beta, beta}, {S::gamma, gamma}, {S::epsilon, eps}, {S::x, xr}}),
                   std::nullopt,
                   {}});

    out.push_back({"lw2.2",
                   {S::alpha, S::beta, S::epsilon, S::x},
                   false,
                   {"x", "x"},
                   "reduction lw2.2",
                   [](const ParamMap& p, int) -> SideSpec {
                       Bound v{p};
                       const double a = v(S::alpha), b = v(S::beta), e = v(S::epsilon);
                       return KdFSpec{{a}, {b}, {e}, {b - e, a / 2.0 + 1.0}, {}, {a / 2.0}, v(S::x), v(S::x)};
                   },
                   {{"printed", euler_rhs([](Bound v) { return 1.0 + v(S::beta) / 2.0; },
                                          [](Bound v) { return v(S::beta) / 2.0; })}},
                   box({{S::alpha, alpha}, {S::beta, beta}, {S::epsilon, eps}, {S::x, xr}}),
                   std::nullopt,
                   {}});

    out.push_back({"lw2.3",
                   {S::alpha, S::beta, S::epsilon, S::x},
                   false,
                   {"x", "x"},
                   "reduction lw2.3",
                   [](const ParamMap& p, int) -> SideSpec {
                       Bound v{p};
                       const double a = v(S::alpha), b = v(S::beta), e = v(S::epsilon);
                       return KdFSpec{{a},
                                      {b},
                                      {e},
                                      {b - e, 1.0 + a / 2.0, (a - b) / 2.0},
                                      {},
                                      {a / 2.0, 1.0 + (a + b) / 2.0},
                                      v(S::x),
                                      v(S::x)};
                   },
                   {{"printed", euler_rhs([](Bound v) { return (v(S::beta) - v(S::alpha)) / 2.0; },
                                          [](Bound v) { return 1.0 + (v(S::alpha) + v(S::beta)) / 2.0; })}},
                   box({{S::alpha, alpha}, {S::beta, beta}, {S::epsilon, eps}, {S::x, xr}}),
                   std::nullopt,
                   {}});

    auto lw24_rhs = pfaff_rhs([](Bound v) { return v(S::beta) - v(S::epsilon); },
                              [](Bound v) { return v(S::alpha) + v(S::gamma); }, [](Bound v) { return v(S::beta); });

    out.push_back({"lw2.4",
                   {S::alpha, S::beta, S::gamma, S::epsilon, S::x},
                   false,
                   {"x", "x/(x-1)"},
                   "reduction lw2.4",
                   [](const ParamMap& p, int) -> SideSpec {
                       Bound v{p};
                       const double x = v(S::x), b = v(S::beta), e = v(S::epsilon);
                       return F3Args{v(S::alpha), b - e, e, v(S::gamma), b, x, x / (x - 1.0)};
                   },
                   {{"printed", lw24_rhs}},
                   box({{S::alpha, alpha}, {S::beta, beta}, {S::gamma, gamma}, {S::epsilon, eps}, {S::x, xr}}),
                   std::nullopt,
                   {}});

    out.push_back(
        {"lw2.5",
         {S::alpha, S::beta, S::gamma, S::epsilon, S::x},
         false,
         {"x", "-x"},
         "reduction lw2.5",
         [](const ParamMap& p, int) -> SideSpec {
             Bound v{p};
             const double b = v(S::beta), e = v(S::epsilon);
             return KdFSpec{{v(S::alpha), v(S::gamma)}, {b}, {}, {e}, {}, {b + e}, v(S::x), -v(S::x)};
         },
         {{"printed", lw24_rhs},
          {"vandermonde-reduced",
           pfaff_rhs([](Bound v) { return v(S::alpha); },
                     [](Bound v) { return v(S::beta) + v(S::epsilon) - v(S::gamma); },
                     [](Bound v) { return v(S::beta) + v(S::epsilon); })}},
         box({{S::alpha, alpha}, {S::beta, beta}, {S::gamma, gamma}, {S::epsilon, eps}, {S::x, xr}}),
         std::nullopt,
         "printed right side repeats lw2.4's and disagrees with the left side; summing the diagonals with "
         "Chu-Vandermonde gives 2F1(alpha, gamma; beta+epsilon; x), whose Pfaff form is registered as the "
         "'vandermonde-reduced' reading"});

    out.push_back({"lw2.6",
                   {S::alpha, S::beta, S::gamma, S::x},
                   false,
                   {"x", "-x"},
                   "reduction lw2.6",
                   [](const ParamMap& p, int) -> SideSpec {
                       Bound v{p};
                       const double g = v(S::gamma);
                       return KdFSpec{{v(S::alpha), g}, {v(S::beta)}, {}, {g / 2.0 + 1.0}, {}, {g / 2.0}, v(S::x),
                                      -v(S::x)};
                   },
                   {{"printed", pfaff_rhs([](Bound v) { return v(S::alpha); },
                                          [](Bound v) { return 1.0 + v(S::beta) / 2.0; },
                                          [](Bound v) { return v(S::beta) / 2.0; })}},
                   box({{S::alpha, alpha}, {S::beta, beta}, {S::gamma, gamma}, {S::x, xr}}),
                   std::nullopt,
                   {}});

    out.push_back({"lw2.7",
                   {S::alpha, S::beta, S::gamma, S::x},
                   false,
                   {"x", "-x"},
                   "reduction lw2.7",
                   [](const ParamMap& p, int) -> SideSpec {
                       Bound v{p};
                       const double b = v(S::beta), g = v(S::gamma);
                       return KdFSpec{{v(S::alpha), g},
                                      {b},
                                      {},
                                      {1.0 + g / 2.0, (g - b) / 2.0},
                                      {},
                                      {g / 2.0, 1.0 + (g + b) / 2.0},
                                      v(S::x),
                                      -v(S::x)};
                   },
                   {{"printed", pfaff_rhs([](Bound v) { return v(S::alpha); },
                                          [](Bound v) { return (v(S::beta) - v(S::gamma)) / 2.0; },
                                          [](Bound v) { return 1.0 + (v(S::gamma) + v(S::beta)) / 2.0; })}},
                   box({{S::alpha, alpha}, {S::beta, beta}, {S::gamma, gamma}, {S::x, xr}}),
                   std::nullopt,
                   {}});
    return out;
}

/// Everything that distinguishes one theorem entry: the +i form (sign = +1)
/// and the -i form (sign = -1) share builders parameterized by that sign.
struct TheoremBlueprint {
    std::string number;
    std::vector<Symbol> free_symbols;
    std::pair<std::string, std::string> arguments;
    std::string reduction_id;
    TheoremFamily family;
    /// Sign of i in the first display; the second display flips it.
    std::function<SideSpec(Bound, double shift)> lhs;
    std::function<ParamMap(Bound, double shift)> substitute;
    std::function<SamplingBox(int i, bool first)> box;
    std::function<GammaSum(Bound, int i, bool first, double alpha_term)> rhs;
    /// For the stray-alpha entries: the value that replaces alpha in the
    /// exponent under the literal reading; nullopt for ordinary entries.
    std::function<double(Bound, double shift)> literal_alpha;
    std::array<std::string, 2> known_discrepancy;
};

inline std::vector<Identity> build_theorems();

} // namespace detail

/// The full registry: seven reductions followed by the 32 theorem entries.
inline const std::vector<Identity>& registry()
{
    static const std::vector<Identity> all = [] {
        auto out = detail::build_reductions();
        auto thm = detail::build_theorems();
        out.insert(out.end(), std::make_move_iterator(thm.begin()), std::make_move_iterator(thm.end()));
        return out;
    }();
    return all;
}

inline const Identity& find_identity(std::string_view id)
{
    const auto& reg = registry();
    auto it = std::find_if(reg.begin(), reg.end(), [&](const Identity& e) { return e.id == id; });
    if (it == reg.end()) {
        throw UnknownIdentity("unknown identity id '" + std::string(id) + "'");
    }
    return *it;
}

/// Checks that exactly the free symbols are bound and that i is present for
/// theorem entries, absent for reductions, and within [0, max_offset].
inline const Identity& validate(const IdentityInstance& inst)
{
    const Identity& e = find_identity(inst.id);
    for (Symbol s : e.free_symbols) {
        auto it = inst.params.find(s);
        if (it == inst.params.end()) {
            throw MissingParam(inst.id + " requires symbol '" + std::string(symbol_name(s)) + "'");
        }
        if (!std::isfinite(it->second)) {
            throw MissingParam(inst.id + ": symbol '" + std::string(symbol_name(s)) + "' is not finite");
        }
    }
    for (const auto& [s, v] : inst.params) {
        if (std::find(e.free_symbols.begin(), e.free_symbols.end(), s) == e.free_symbols.end()) {
            throw MissingParam(inst.id + " does not take symbol '" + std::string(symbol_name(s)) + "'");
        }
    }
    if (e.indexed) {
        if (!inst.i) {
            throw MissingParam(inst.id + " requires the offset i");
        }
        if (*inst.i < 0 || *inst.i > max_offset) {
            throw RangeError(inst.id + ": i must lie in [0, " + std::to_string(max_offset) + "]");
        }
    } else if (inst.i) {
        throw MissingParam(inst.id + " takes no offset i");
    }
    return e;
}

inline SideSpec lhs_spec(const IdentityInstance& inst)
{
    const Identity& e = validate(inst);
    return e.lhs(inst.params, inst.i.value_or(0));
}

inline RhsForm rhs_form(const IdentityInstance& inst, std::size_t reading = 0)
{
    const Identity& e = validate(inst);
    if (reading >= e.rhs.size()) {
        throw RangeError(inst.id + " has " + std::to_string(e.rhs.size()) + " right-side readings");
    }
    return e.rhs[reading].build(inst.params, inst.i.value_or(0));
}

/// Evaluates a closed form; the error estimate scales with the largest term.
inline EvalResult evaluate_gamma_sum(const GammaSum& sum)
{
    CompensatedSum<double> acc;
    double magnitude = 0.0;
    for (const GammaTerm& t : sum) {
        const double v = evaluate_term(t);
        acc.add(v);
        magnitude = std::max(magnitude, std::abs(v));
    }
    const double value = acc.value();
    const double err = 64.0 * 2.220446049250313e-16 * magnitude * static_cast<double>(sum.size());
    if (!std::isfinite(value)) {
        return detail::inconclusive("closed form is not finite", sum.size(), value);
    }
    return {value, err, sum.size(), EvalStatus::converged, {}};
}

inline EvalResult evaluate_rhs_form(const RhsForm& form, double rel_tol)
{
    if (const auto* g = std::get_if<GammaSum>(&form)) {
        return evaluate_gamma_sum(*g);
    }
    const auto& h = std::get<ScaledHypergeometric>(form);
    EvalResult r = eval_2f1(h.a, h.b, h.c, h.z, rel_tol);
    const double scale = std::pow(h.prefactor_base, h.prefactor_power);
    r.value *= scale;
    r.abs_error_estimate *= std::abs(scale);
    return r;
}

inline EvalResult rhs_value(const IdentityInstance& inst, double rel_tol = default_rel_tol, std::size_t reading = 0)
{
    return evaluate_rhs_form(rhs_form(inst, reading), rel_tol);
}

/// Evaluates a left side with the series engine only.
inline EvalResult evaluate_side(const SideSpec& side, double rel_tol = default_rel_tol)
{
    return std::visit(
        [&](const auto& s) -> EvalResult {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, KdFSpec>) {
                return eval_kdf(s, rel_tol);
            } else if constexpr (std::is_same_v<T, F3Args>) {
                return eval_appell_f3(s, rel_tol);
            } else {
                return eval_pfq(s, rel_tol);
            }
        },
        side);
}

struct IdentityListing {
    std::string id;
    std::vector<Symbol> free_symbols;
    std::pair<std::string, std::string> arguments;
    std::string source;
};

inline std::vector<IdentityListing> list_identities()
{
    std::vector<IdentityListing> out;
    for (const Identity& e : registry()) {
        out.push_back({e.id, e.free_symbols, e.arguments, e.source});
    }
    return out;
}

namespace detail {

inline std::vector<Identity> build_theorems()
{
    using S = Symbol;
    const std::string half = "1/2";
    std::vector<TheoremBlueprint> bps;

    auto plain = [](SamplingBox b) { return [b](int, bool) { return b; }; };

    bps.push_back(
        {"3.1",
         {S::alpha, S::beta, S::epsilon},
         {half, half},
         "lw2.1",
         TheoremFamily::gauss2,
         [](Bound v, double k) -> SideSpec {
             const double al = v(S::alpha), be = v(S::beta), ep = v(S::epsilon);
             const double g = 1.0 - al - ep + k;
             return KdFSpec{{al}, {be}, {ep}, {be - ep, g}, {}, {g + be}, 0.5, 0.5};
         },
         [](Bound v, double k) {
             return ParamMap{{S::alpha, v(S::alpha)}, {S::beta, v(S::beta)}, {S::epsilon, v(S::epsilon)},
                             {S::gamma, 1.0 - v(S::alpha) - v(S::epsilon) + k}, {S::x, 0.5}};
         },
         plain({{S::alpha, {0.1, 1.9}}, {S::beta, {0.5, 3.0}}, {S::epsilon, {0.1, 1.5}}}),
         [](Bound v, int i, bool first, double) {
             const double al = v(S::alpha), be = v(S::beta), ep = v(S::epsilon), di = i;
             if (first) {
                 return binomial_gamma_sum(i, true, 1.0, 1.0 - al + di, {be - ep - al + di + 1.0, al - di},
                                           {1.0 - 2.0 * al - ep + be + di, al}, [&](double r) -> GammaArgLists {
                                               return {{(1.0 - 2.0 * al - ep + be + di + r) / 2.0},
                                                       {(be - ep - di + r + 1.0) / 2.0}};
                                           });
             }
             return binomial_gamma_sum(i, false, 1.0, 1.0 - al - di, {be - ep - al - di + 1.0},
                                       {1.0 - 2.0 * al - ep + be - di}, [&](double r) -> GammaArgLists {
                                           return {{(1.0 - 2.0 * al - ep + be - di + r) / 2.0},
                                                   {(be - ep - di + r + 1.0) / 2.0}};
                                       });
         },
         nullptr,
         {"printed right side is exactly twice the left side for every sample; the Gauss-second route gives "
          "the prefactor 2^(-alpha+i) where 2^(1-alpha+i) is printed",
          "printed right side is exactly twice the left side for every sample; the Gauss-second route gives "
          "the prefactor 2^(-alpha-i) where 2^(1-alpha-i) is printed"}});

    bps.push_back(
        {"3.2",
         {S::alpha, S::beta, S::epsilon},
         {half, half},
         "lw2.1",
         TheoremFamily::bailey,
         [](Bound v, double k) -> SideSpec {
             const double al = v(S::alpha), be = v(S::beta), ep = v(S::epsilon);
             return KdFSpec{
                 {al}, {be}, {ep}, {be - ep, 1.0 + al - 2.0 * be + ep + k}, {}, {1.0 + al - be + ep + k}, 0.5, 0.5};
         },
         [](Bound v, double k) {
             return ParamMap{{S::alpha, v(S::alpha)}, {S::beta, v(S::beta)}, {S::epsilon, v(S::epsilon)},
                             {S::gamma, 1.0 + v(S::alpha) - 2.0 * v(S::beta) + v(S::epsilon) + k}, {S::x, 0.5}};
         },
         plain({{S::alpha, {0.1, 1.9}}, {S::beta, {0.5, 3.0}}, {S::epsilon, {0.1, 1.5}}}),
         [](Bound v, int i, bool first, double) {
             const double al = v(S::alpha), be = v(S::beta), ep = v(S::epsilon), di = i;
             if (first) {
                 return binomial_gamma_sum(i, true, 1.0, di + al - 2.0 * be + 2.0 * ep,
                                           {be - ep - di, 1.0 + al - be + ep + di},
                                           {be - ep, 1.0 + al - 2.0 * be + 2.0 * ep + di},
                                           [&](double r) -> GammaArgLists {
                                               return {{ep - be + (1.0 + al + di + r) / 2.0},
                                                       {(1.0 + al - di + r) / 2.0}};
                                           });
             }
             return binomial_gamma_sum(i, false, 1.0, -di + al - 2.0 * be + 2.0 * ep, {1.0 + al - be + ep - di},
                                       {1.0 + al - 2.0 * be + 2.0 * ep - di}, [&](double r) -> GammaArgLists {
                                           return {{ep - be + (1.0 + al - di + r) / 2.0},
                                                   {(1.0 + al - di + r) / 2.0}};
                                       });
         },
         nullptr,
         {}});

    bps.push_back(
        {"3.3",
         {S::alpha, S::beta},
         {"-1", "-1"},
         "lw2.2",
         TheoremFamily::kummer,
         [](Bound v, double k) -> SideSpec {
             const double al = v(S::alpha), be = v(S::beta);
             return KdFSpec{{al}, {be}, {be - 2.0 - k}, {2.0 + k, al / 2.0 + 1.0}, {}, {al / 2.0}, -1.0, -1.0};
         },
         [](Bound v, double k) {
             return ParamMap{{S::alpha, v(S::alpha)}, {S::beta, v(S::beta)}, {S::epsilon, v(S::beta) - 2.0 - k},
                             {S::x, -1.0}};
         },
         [](int i, bool) {
             return SamplingBox{{S::alpha, {-1.9, -0.1}}, {S::beta, {3.0 + i, 9.0 + i}}};
         },
         [](Bound v, int i, bool first, double) {
             const double al = v(S::alpha), be = v(S::beta), di = i;
             if (first) {
                 return binomial_gamma_sum(i, true, 1.0 / factorial(i + 1), -2.0 - al, {be / 2.0},
                                           {be / 2.0 - di - 2.0}, [&](double r) -> GammaArgLists {
                                               return {{be / 4.0 - 1.0 + (r - di) / 2.0},
                                                       {be / 4.0 + 1.0 + (r - di) / 2.0}};
                                           });
             }
             return binomial_gamma_sum(i, false, 1.0, -2.0 - al, {be / 2.0}, {be / 2.0 + di - 2.0},
                                       [&](double r) -> GammaArgLists {
                                           return {{be / 4.0 - 1.0 + (r + di) / 2.0},
                                                   {be / 4.0 + 1.0 + (r - di) / 2.0}};
                                       });
         },
         nullptr,
         {}});

    bps.push_back(
        {"3.4",
         {S::alpha, S::beta},
         {half, half},
         "lw2.2",
         TheoremFamily::gauss2,
         [](Bound v, double k) -> SideSpec {
             const double al = v(S::alpha), be = v(S::beta);
             return KdFSpec{
                 {al}, {be}, {be / 2.0 + 2.0 + k}, {be / 2.0 - 2.0 - k, al / 2.0 + 1.0}, {}, {al / 2.0}, 0.5, 0.5};
         },
         [](Bound v, double k) {
             return ParamMap{{S::alpha, v(S::alpha)}, {S::beta, v(S::beta)},
                             {S::epsilon, v(S::beta) / 2.0 + 2.0 + k}, {S::x, 0.5}};
         },
         plain({{S::alpha, {0.1, 2.0}}, {S::beta, {0.5, 6.0}}}),
         [](Bound v, int i, bool first, double) {
             const double al = v(S::alpha), be = v(S::beta), di = i;
             if (first) {
                 const double sign = i % 2 == 0 ? 1.0 : -1.0;
                 return binomial_gamma_sum(i, true, sign / (be * factorial(i + 1)), al + 3.0 + di, {}, {},
                                           [&](double r) -> GammaArgLists {
                                               return {{be / 4.0 + (r + 1.0) / 2.0},
                                                       {be / 4.0 - di + (r - 1.0) / 2.0}};
                                           });
             }
             return binomial_gamma_sum(i, false, 1.0 / be, al + 3.0 - di, {}, {}, [&](double r) -> GammaArgLists {
                 return {{be / 4.0 + (r + 1.0) / 2.0}, {be / 4.0 + (r - 1.0) / 2.0}};
             });
         },
         nullptr,
         {}});

    bps.push_back(
        {"3.5",
         {S::alpha, S::beta},
         {"-1", "-1"},
         "lw2.3",
         TheoremFamily::kummer,
         [](Bound v, double k) -> SideSpec {
             const double al = v(S::alpha), be = v(S::beta);
             return KdFSpec{{al},
                            {be},
                            {al + be - k},
                            {k - al, 1.0 + al / 2.0, (al - be) / 2.0},
                            {},
                            {al / 2.0, 1.0 + (al + be) / 2.0},
                            -1.0,
                            -1.0};
         },
         [](Bound v, double k) {
             return ParamMap{{S::alpha, v(S::alpha)}, {S::beta, v(S::beta)},
                             {S::epsilon, v(S::alpha) + v(S::beta) - k}, {S::x, -1.0}};
         },
         // The left side converges only for alpha < (1 + k)/2 with k = +-i.
         [](int i, bool first) {
             const double hi = std::min(0.4, (first ? 1.0 + i : 1.0 - i) / 2.0 - 0.1);
             return SamplingBox{{S::alpha, {std::min(-1.9, hi - 1.5), hi}}, {S::beta, {0.5, 5.0}}};
         },
         [](Bound v, int i, bool first, double) {
             const double al = v(S::alpha), be = v(S::beta), di = i;
             if (first) {
                 return binomial_gamma_sum(i, true, 1.0, 0.0, {-al, 1.0 + (al + be) / 2.0},
                                           {di - al, be / 2.0 + 3.0 * al / 2.0 - di + 1.0},
                                           [&](double r) -> GammaArgLists {
                                               return {{be / 4.0 + 3.0 * al / 4.0 + (r + 1.0 - di) / 2.0},
                                                       {be / 4.0 - al / 4.0 + (r + 1.0 - di) / 2.0}};
                                           });
             }
             return binomial_gamma_sum(i, false, 1.0, 0.0, {1.0 + (al + be) / 2.0},
                                       {be / 2.0 + 3.0 * al / 2.0 + di + 1.0}, [&](double r) -> GammaArgLists {
                                           return {{be / 4.0 + 3.0 * al / 4.0 + (r + 1.0 + di) / 2.0},
                                                   {be / 4.0 - al / 4.0 + (r + 1.0 - di) / 2.0}};
                                       });
         },
         nullptr,
         {}});

    bps.push_back(
        {"3.6",
         {S::alpha, S::beta},
         {half, half},
         "lw2.3",
         TheoremFamily::gauss2,
         [](Bound v, double k) -> SideSpec {
             const double al = v(S::alpha), be = v(S::beta);
             return KdFSpec{{al},
                            {be},
                            {be / 2.0 - 3.0 * al / 2.0 - 1.0 + k},
                            {be / 2.0 + 3.0 * al / 2.0 + 1.0 - k, 1.0 + al / 2.0, (al - be) / 2.0},
                            {},
                            {al / 2.0, 1.0 + (al + be) / 2.0},
                            0.5,
                            0.5};
         },
         [](Bound v, double k) {
             return ParamMap{{S::alpha, v(S::alpha)}, {S::beta, v(S::beta)},
                             {S::epsilon, v(S::beta) / 2.0 - 3.0 * v(S::alpha) / 2.0 - 1.0 + k}, {S::x, 0.5}};
         },
         plain({{S::alpha, {0.1, 2.0}}, {S::beta, {0.5, 5.0}}}),
         [](Bound v, int i, bool first, double) {
             const double al = v(S::alpha), be = v(S::beta), di = i;
             if (first) {
                 return binomial_gamma_sum(i, true, 1.0, di - al - 2.0, {al - di + 1.0, 1.0 + (al + be) / 2.0},
                                           {al + 1.0, (be - al) / 2.0}, [&](double r) -> GammaArgLists {
                                               return {{(be - al) / 4.0 + r / 2.0},
                                                       {(be + 3.0 * al) / 4.0 + 1.0 - di + r / 2.0}};
                                           });
             }
             return binomial_gamma_sum(i, false, 1.0, -di - al - 2.0, {1.0 + (al + be) / 2.0}, {(be - al) / 2.0},
                                       [&](double r) -> GammaArgLists {
                                           return {{(be - al) / 4.0 + r / 2.0},
                                                   {(be + 3.0 * al) / 4.0 + 1.0 + r / 2.0}};
                                       });
         },
         nullptr,
         {}});

    bps.push_back(
        {"3.7",
         {S::alpha, S::beta},
         {half, half},
         "lw2.3",
         TheoremFamily::bailey,
         [](Bound v, double k) -> SideSpec {
             const double al = v(S::alpha), be = v(S::beta);
             return KdFSpec{{al},
                            {be},
                            {3.0 * be / 2.0 - al / 2.0 - 1.0 - k},
                            {(al - be) / 2.0 + 1.0 + k, 1.0 + al / 2.0, (al - be) / 2.0},
                            {},
                            {al / 2.0, 1.0 + (al + be) / 2.0},
                            0.5,
                            0.5};
         },
         [](Bound v, double k) {
             return ParamMap{{S::alpha, v(S::alpha)}, {S::beta, v(S::beta)},
                             {S::epsilon, 3.0 * v(S::beta) / 2.0 - v(S::alpha) / 2.0 - 1.0 - k}, {S::x, 0.5}};
         },
         plain({{S::alpha, {0.1, 2.0}}, {S::beta, {0.5, 5.0}}}),
         [](Bound v, int i, bool first, double) {
             const double al = v(S::alpha), be = v(S::beta), di = i;
             if (first) {
                 return binomial_gamma_sum(i, true, 1.0, al - 1.0, {be / 2.0 - al / 2.0 - di, 1.0 + (al + be) / 2.0},
                                           {be / 2.0 - al / 2.0, 1.0 + al}, [&](double r) -> GammaArgLists {
                                               return {{(al + r + 1.0) / 2.0}, {(be + r + 1.0) / 2.0 - di}};
                                           });
             }
             return binomial_gamma_sum(i, false, 1.0, al - 1.0, {1.0 + (al + be) / 2.0}, {1.0 + al},
                                       [&](double r) -> GammaArgLists {
                                           return {{(al + r + 1.0) / 2.0}, {(be + r + 1.0) / 2.0}};
                                       });
         },
         nullptr,
         {}});

    // Theorems 3.8-3.10 sum the Appell F3 form of lw2.4 at x = 1/2 or x = -1.
    auto f3_lhs = [](auto second_b, double x) {
        return [second_b, x](Bound v, double k) -> SideSpec {
            const double al = v(S::alpha), be = v(S::beta), ep = v(S::epsilon);
            return F3Args{al, be - ep, ep, second_b(al, be, ep, k), be, x, x / (x - 1.0)};
        };
    };
    auto f3_subst = [](auto gamma_of, double x) {
        return [gamma_of, x](Bound v, double k) {
            return ParamMap{{S::alpha, v(S::alpha)},
                            {S::beta, v(S::beta)},
                            {S::epsilon, v(S::epsilon)},
                            {S::gamma, gamma_of(v(S::alpha), v(S::beta), v(S::epsilon), k)},
                            {S::x, x}};
        };
    };

    auto g38 = [](double al, double, double ep, double k) { return 1.0 - al - ep + k; };
    bps.push_back(
        {"3.8",
         {S::alpha, S::beta, S::epsilon},
         {half, "-1"},
         "lw2.4",
         TheoremFamily::kummer,
         f3_lhs(g38, 0.5),
         f3_subst(g38, 0.5),
         // The inner 2F1 at -1 needs alpha + 2 epsilon > k.
         [](int i, bool first) {
             const double shift = first ? i / 2.0 : 0.0;
             return SamplingBox{
                 {S::alpha, {0.1, 2.0}}, {S::beta, {0.5, 3.0}}, {S::epsilon, {0.1 + shift, 1.5 + shift}}};
         },
         [](Bound v, int i, bool first, double) {
             const double al = v(S::alpha), be = v(S::beta), ep = v(S::epsilon), di = i;
             if (first) {
                 return binomial_gamma_sum(i, true, 1.0, al - di + 2.0 * ep - 2.0, {1.0 - ep, be},
                                           {1.0 - ep + di, be + ep - di - 1.0}, [&](double r) -> GammaArgLists {
                                               return {{(be + ep - di + r - 1.0) / 2.0},
                                                       {(be - ep - di + r + 1.0) / 2.0}};
                                           });
             }
             return binomial_gamma_sum(i, false, 1.0, al + di + 2.0 * ep - 2.0, {be}, {be + ep + di - 1.0},
                                       [&](double r) -> GammaArgLists {
                                           return {{(be + ep + di + r - 1.0) / 2.0},
                                                   {(be - ep - di + r + 1.0) / 2.0}};
                                       });
         },
         nullptr,
         {}});

    auto g39 = [](double al, double be, double ep, double k) { return be + ep - al - k - 1.0; };
    bps.push_back(
        {"3.9",
         {S::alpha, S::beta, S::epsilon},
         {"-1", half},
         "lw2.4",
         TheoremFamily::gauss2,
         f3_lhs(g39, -1.0),
         f3_subst(g39, -1.0),
         plain({{S::alpha, {0.1, 1.5}}, {S::beta, {0.5, 3.0}}, {S::epsilon, {0.1, 1.5}}}),
         [](Bound v, int i, bool first, double) {
             const double al = v(S::alpha), be = v(S::beta), ep = v(S::epsilon), di = i;
             if (first) {
                 return binomial_gamma_sum(i, true, 1.0, be + ep - al - di - 2.0, {1.0 - ep, be},
                                           {1.0 - ep + di, be + ep - di - 1.0}, [&](double r) -> GammaArgLists {
                                               return {{(be + ep - di + r - 1.0) / 2.0},
                                                       {(be - ep - di + r + 1.0) / 2.0}};
                                           });
             }
             return binomial_gamma_sum(i, false, 1.0, be + ep - al + di - 2.0, {be}, {be + ep + di - 1.0},
                                       [&](double r) -> GammaArgLists {
                                           return {{(be + ep + di + r - 1.0) / 2.0},
                                                   {(be - ep - di + r + 1.0) / 2.0}};
                                       });
         },
         nullptr,
         {}});

    auto g310 = [](double al, double be, double ep, double k) { return 1.0 - al - be + ep + k; };
    bps.push_back(
        {"3.10",
         {S::alpha, S::beta, S::epsilon},
         {"-1", half},
         "lw2.4",
         TheoremFamily::bailey,
         f3_lhs(g310, -1.0),
         f3_subst(g310, -1.0),
         plain({{S::alpha, {0.1, 1.5}}, {S::beta, {0.5, 3.0}}, {S::epsilon, {0.1, 1.5}}}),
         [](Bound v, int i, bool first, double) {
             const double al = v(S::alpha), be = v(S::beta), ep = v(S::epsilon), di = i;
             if (first) {
                 return binomial_gamma_sum(i, true, 1.0, ep - al - be + di, {be - ep + di, be}, {ep, be - ep},
                                           [&](double r) -> GammaArgLists {
                                               return {{(ep + r) / 2.0}, {be - di + (r - ep) / 2.0}};
                                           });
             }
             return binomial_gamma_sum(i, false, 1.0, ep - al - be - di, {be}, {ep}, [&](double r) -> GammaArgLists {
                 return {{(ep + r) / 2.0}, {be + (r - ep) / 2.0}};
             });
         },
         nullptr,
         {"agrees at i=0 only; the Bailey route gives Gamma(beta-epsilon-i) in the prefactor where "
          "Gamma(beta-epsilon+i) is printed",
          {}}});

    bps.push_back(
        {"3.11",
         {S::alpha, S::beta, S::gamma},
         {"-1", "1"},
         "lw2.5",
         TheoremFamily::kummer,
         [](Bound v, double k) -> SideSpec {
             const double al = v(S::alpha), be = v(S::beta), ga = v(S::gamma);
             return KdFSpec{{al, ga}, {be}, {}, {al - be - ga + 1.0 + k}, {}, {al - ga + 1.0 + k}, -1.0, 1.0};
         },
         [](Bound v, double k) {
             return ParamMap{{S::alpha, v(S::alpha)}, {S::beta, v(S::beta)}, {S::gamma, v(S::gamma)},
                             {S::epsilon, v(S::alpha) - v(S::beta) - v(S::gamma) + 1.0 + k}, {S::x, -1.0}};
         },
         // Diagonal convergence needs gamma < 1 + k/2.
         [](int i, bool first) {
             const double hi = first ? 0.9 + i / 2.0 : 0.9 - i / 2.0;
             return SamplingBox{
                 {S::alpha, {0.1, 2.0}}, {S::beta, {0.5, 3.0}}, {S::gamma, {std::min(-0.95, hi - 1.5), hi}}};
         },
         [](Bound v, int i, bool first, double) {
             const double al = v(S::alpha), ga = v(S::gamma), di = i;
             if (first) {
                 return binomial_gamma_sum(i, true, 1.0, di - 2.0 * ga, {1.0 + al - ga + di, ga - di},
                                           {ga, 1.0 + al - 2.0 * ga + di}, [&](double r) -> GammaArgLists {
                                               return {{(al + di + r + 1.0) / 2.0 - ga}, {(al - di + r + 1.0) / 2.0}};
                                           });
             }
             return binomial_gamma_sum(i, false, 1.0, -di - 2.0 * ga, {1.0 + al - ga - di}, {1.0 + al - 2.0 * ga - di},
                                       [&](double r) -> GammaArgLists {
                                           return {{(al - di + r + 1.0) / 2.0 - ga}, {(al - di + r + 1.0) / 2.0}};
                                       });
         },
         nullptr,
         {}});

    bps.push_back(
        {"3.12",
         {S::alpha, S::beta, S::gamma},
         {"-1", "1"},
         "lw2.5",
         TheoremFamily::kummer,
         [](Bound v, double k) -> SideSpec {
             const double al = v(S::alpha), be = v(S::beta), ga = v(S::gamma);
             return KdFSpec{{al, ga}, {be}, {}, {1.0 - al - be + ga + k}, {}, {1.0 - al + ga + k}, -1.0, 1.0};
         },
         [](Bound v, double k) {
             return ParamMap{{S::alpha, v(S::alpha)}, {S::beta, v(S::beta)}, {S::gamma, v(S::gamma)},
                             {S::epsilon, 1.0 - v(S::alpha) - v(S::beta) + v(S::gamma) + k}, {S::x, -1.0}};
         },
         // Diagonal convergence needs alpha < 1 + k/2.
         [](int i, bool first) {
             const double hi = first ? 0.9 + i / 2.0 : 0.9 - i / 2.0;
             return SamplingBox{
                 {S::alpha, {std::min(-0.95, hi - 1.5), hi}}, {S::beta, {0.5, 3.0}}, {S::gamma, {0.1, 2.0}}};
         },
         [](Bound v, int i, bool first, double) {
             const double al = v(S::alpha), ga = v(S::gamma), di = i;
             if (first) {
                 return binomial_gamma_sum(i, true, 1.0, di - 2.0 * al, {al - di, 1.0 - al + di},
                                           {al, 1.0 + ga - 2.0 * al + di}, [&](double r) -> GammaArgLists {
                                               return {{(1.0 + ga + di + r) / 2.0 - al}, {(1.0 + ga - di + r) / 2.0}};
                                           });
             }
             return binomial_gamma_sum(i, false, 1.0, -di - 2.0 * al, {1.0 - al + ga - di}, {1.0 + ga - 2.0 * al - di},
                                       [&](double r) -> GammaArgLists {
                                           return {{(1.0 + ga - di + r) / 2.0 - al}, {(1.0 + ga - di + r) / 2.0}};
                                       });
         },
         nullptr,
         {"fails for every sample including i=0; the Kummer route gives Gamma(1+gamma-alpha+i) in the prefactor "
          "where Gamma(1-alpha+i) is printed",
          {}}});

    bps.push_back(
        {"3.13",
         {S::alpha, S::gamma},
         {"-1", "1"},
         "lw2.6",
         TheoremFamily::gauss2,
         [](Bound v, double k) -> SideSpec {
             const double al = v(S::alpha), ga = v(S::gamma);
             return KdFSpec{{al, ga}, {2.0 * al + 4.0 + 2.0 * k}, {}, {ga / 2.0 + 1.0}, {}, {ga / 2.0}, -1.0, 1.0};
         },
         [](Bound v, double k) {
             return ParamMap{{S::alpha, v(S::alpha)}, {S::gamma, v(S::gamma)},
                             {S::beta, 2.0 * v(S::alpha) + 4.0 + 2.0 * k}, {S::x, -1.0}};
         },
         plain({{S::alpha, {0.1, 5.0}}, {S::gamma, {0.1, 2.0}}}),
         [](Bound v, int i, bool first, double) {
             const double al = v(S::alpha), di = i;
             if (first) {
                 const double sign = i % 2 == 0 ? 1.0 : -1.0;
                 return binomial_gamma_sum(i, true, sign / ((al + 2.0 + di) * factorial(i + 1)), di + 2.0, {}, {},
                                           [&](double r) -> GammaArgLists {
                                               return {{(al + di + r + 3.0) / 2.0}, {(al - di + r + 1.0) / 2.0}};
                                           });
             }
             return binomial_gamma_sum(i, false, 1.0 / (al + 2.0 - di), 2.0 - di, {}, {},
                                       [&](double r) -> GammaArgLists {
                                           return {{(al - di + r + 3.0) / 2.0}, {(al - di + r + 1.0) / 2.0}};
                                       });
         },
         nullptr,
         {}});

    bps.push_back(
        {"3.14",
         {S::alpha, S::beta},
         {half, "-1/2"},
         "lw2.7",
         TheoremFamily::kummer,
         [](Bound v, double k) -> SideSpec {
             const double al = v(S::alpha), be = v(S::beta);
             const double ga = k - al;
             return KdFSpec{{al, ga},
                            {be},
                            {},
                            {1.0 + ga / 2.0, (ga - be) / 2.0},
                            {},
                            {ga / 2.0, 1.0 + (ga + be) / 2.0},
                            0.5,
                            -0.5};
         },
         [](Bound v, double k) {
             return ParamMap{{S::alpha, v(S::alpha)}, {S::beta, v(S::beta)}, {S::gamma, k - v(S::alpha)},
                             {S::x, 0.5}};
         },
         plain({{S::alpha, {0.1, 2.0}}, {S::beta, {0.5, 5.0}}}),
         [](Bound v, int i, bool first, double) {
             const double al = v(S::alpha), be = v(S::beta), di = i;
             if (first) {
                 return binomial_gamma_sum(i, true, 1.0, di - al, {al - di, 1.0 + (be - al + di) / 2.0},
                                           {al, 1.0 + (be - 3.0 * al + di) / 2.0}, [&](double r) -> GammaArgLists {
                                               return {{(be - 3.0 * al + di) / 4.0 + (r + 1.0) / 2.0},
                                                       {(be + al - 3.0 * di) / 4.0 + (r + 1.0) / 2.0}};
                                           });
             }
             return binomial_gamma_sum(i, false, 1.0, -di - al, {1.0 + (be - al - di) / 2.0},
                                       {1.0 + (be - 3.0 * al - di) / 2.0}, [&](double r) -> GammaArgLists {
                                           return {{(be - 3.0 * al - di) / 4.0 + (r + 1.0) / 2.0},
                                                   {(be + al - di) / 4.0 + (r + 1.0) / 2.0}};
                                       });
         },
         nullptr,
         {}});

    // Theorems 3.15 and 3.16 eliminate alpha; the shift k enters alpha itself.
    auto alpha315 = [](Bound v, double k) { return v(S::beta) / 2.0 + 3.0 * v(S::gamma) / 2.0 + 1.0 - k; };
    auto alpha316 = [](Bound v, double k) { return 1.0 - v(S::beta) / 2.0 + v(S::gamma) / 2.0 + k; };
    auto lw27_lhs = [](auto alpha_of) {
        return [alpha_of](Bound v, double k) -> SideSpec {
            const double be = v(S::beta), ga = v(S::gamma);
            return KdFSpec{{alpha_of(v, k), ga},
                           {be},
                           {},
                           {1.0 + ga / 2.0, (ga - be) / 2.0},
                           {},
                           {ga / 2.0, 1.0 + (ga + be) / 2.0},
                           -1.0,
                           1.0};
        };
    };
    auto lw27_subst = [](auto alpha_of) {
        return [alpha_of](Bound v, double k) {
            return ParamMap{{S::alpha, alpha_of(v, k)}, {S::beta, v(S::beta)}, {S::gamma, v(S::gamma)},
                            {S::x, -1.0}};
        };
    };

    bps.push_back(
        {"3.15",
         {S::beta, S::gamma},
         {"-1", "1"},
         "lw2.7",
         TheoremFamily::gauss2,
         lw27_lhs(alpha315),
         lw27_subst(alpha315),
         // Diagonal convergence needs 2 gamma < i (first) or 2 gamma < -i (second).
         [](int i, bool first) {
             const double hi = first ? i / 2.0 - 0.05 : -i / 2.0 - 0.05;
             return SamplingBox{{S::beta, {1.0, 6.0}}, {S::gamma, {std::min(-1.95, hi - 1.5), hi}}};
         },
         [](Bound v, int i, bool first, double alpha_term) {
             const double be = v(S::beta), ga = v(S::gamma), di = i;
             const double pow2 = (be - ga) / 2.0 - alpha_term - 1.0;
             if (first) {
                 return binomial_gamma_sum(i, true, 1.0, pow2, {1.0 + (be + ga) / 2.0, ga - di + 1.0},
                                           {(be - ga) / 2.0, ga + 1.0}, [&](double r) -> GammaArgLists {
                                               return {{(be - ga) / 4.0 + r / 2.0},
                                                       {(be + 3.0 * ga) / 4.0 + 1.0 - di + r / 2.0}};
                                           });
             }
             return binomial_gamma_sum(i, false, 1.0, pow2, {1.0 + (be + ga) / 2.0}, {(be - ga) / 2.0},
                                       [&](double r) -> GammaArgLists {
                                           return {{(be - ga) / 4.0 + r / 2.0},
                                                   {(be + 3.0 * ga) / 4.0 + 1.0 + r / 2.0}};
                                       });
         },
         alpha315,
         {}});

    bps.push_back(
        {"3.16",
         {S::beta, S::gamma},
         {"-1", "1"},
         "lw2.7",
         TheoremFamily::bailey,
         lw27_lhs(alpha316),
         lw27_subst(alpha316),
         [](int i, bool) {
             return SamplingBox{{S::beta, {1.0 + i, 6.0 + i}}, {S::gamma, {0.1, 2.0}}};
         },
         [](Bound v, int i, bool first, double alpha_term) {
             const double be = v(S::beta), ga = v(S::gamma), di = i;
             if (first) {
                 return binomial_gamma_sum(i, true, 1.0, (ga - be) / 2.0 - alpha_term + di,
                                           {(be - ga) / 2.0 - di, 1.0 + (be + ga) / 2.0}, {(be - ga) / 2.0, be - di},
                                           [&](double r) -> GammaArgLists {
                                               return {{(ga + r + 1.0) / 2.0}, {(be + r + 1.0) / 2.0 - di}};
                                           });
             }
             return binomial_gamma_sum(i, false, 1.0, (ga - be) / 2.0 - alpha_term - di, {1.0 + (be + ga) / 2.0},
                                       {be + di}, [&](double r) -> GammaArgLists {
                                           return {{(ga + r + 1.0) / 2.0}, {(be + r + 1.0) / 2.0}};
                                       });
         },
         alpha316,
         {"fails under both alpha readings; the Bailey route gives Gamma(1+gamma) in the prefactor "
          "denominator where Gamma(beta-i) is printed",
          "fails under both alpha readings; the Bailey route gives Gamma(1+gamma) in the prefactor "
          "denominator where Gamma(beta+i) is printed"}});

    std::vector<Identity> out;
    for (const TheoremBlueprint& bp : bps) {
        for (bool first : {true, false}) {
            const double sign = first ? 1.0 : -1.0;
            const std::string id = "thm" + bp.number + (first ? "a" : "b");
            const TheoremKind kind{bp.family, first ? Variant::plus : Variant::minus};
            Identity e;
            e.id = id;
            e.free_symbols = bp.free_symbols;
            e.indexed = true;
            e.arguments = bp.arguments;
            e.source = route_tag(id, bp.reduction_id, kind);
            e.lhs = [lhs = bp.lhs, sign](const ParamMap& p, int i) { return lhs(Bound{p}, sign * i); };
            auto rhs = bp.rhs;
            if (bp.literal_alpha) {
                auto alpha_of = bp.literal_alpha;
                e.rhs.push_back({"alpha-substituted",
                                 [rhs, alpha_of, first, sign](const ParamMap& p, int i) -> RhsForm {
                                     return rhs(Bound{p}, i, first, alpha_of(Bound{p}, sign * i));
                                 }});
                e.rhs.push_back({"alpha-dropped", [rhs, first](const ParamMap& p, int i) -> RhsForm {
                                     return rhs(Bound{p}, i, first, 0.0);
                                 }});
            } else {
                e.rhs.push_back({"printed", [rhs, first](const ParamMap& p, int i) -> RhsForm {
                                     return rhs(Bound{p}, i, first, 0.0);
                                 }});
            }
            e.box = [box = bp.box, first](int i) { return box(i, first); };
            e.route = DerivationRoute{bp.reduction_id, kind,
                                      [subst = bp.substitute, sign](const ParamMap& p, int i) {
                                          return subst(Bound{p}, sign * i);
                                      }};
            e.known_discrepancy = bp.known_discrepancy[first ? 0 : 1];
            out.push_back(std::move(e));
        }
    }
    return out;
}

} // namespace detail

} // namespace kdfkit
