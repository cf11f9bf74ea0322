#include <kdfkit/kdfkit.hpp>

#include <cstdio>

// Evaluates one theorem instance both ways, then runs a small sweep.
int main()
{
    using namespace kdfkit;

    const EvalResult half_pi = eval_2f1(1.0, 1.0, 1.5, 0.5);
    std::printf("2F1(1,1;3/2;1/2) = %.15f (%s, %zu terms)\n", half_pi.value, to_string(half_pi.status).data(),
                half_pi.terms_used);

    const IdentityInstance inst{"thm3.4b", 0, {{Symbol::alpha, 1.0}, {Symbol::beta, 4.0}}};
    const VerificationRecord rec = verify_one(inst);
    std::printf("%s i=0: lhs=%.15f rhs=%.15f verdict=%s\n", rec.id.c_str(), rec.lhs.value, rec.rhs.value,
                to_string(rec.verdict).data());

    SweepConfig config;
    config.ids = {"lw2.1", "lw2.5", "thm3.15a"};
    config.samples = 10;
    const SweepResult sweep = run_sweep(config);
    for (const IdentitySummary& s : sweep.summary) {
        std::printf("%-9s pass=%d fail=%d inconclusive=%d verified=%s\n", s.id.c_str(), s.pass, s.fail,
                    s.inconclusive, s.verified ? "yes" : "no");
        for (const ReadingSummary& r : s.readings) {
            std::printf("    reading %-20s pass=%d fail=%d\n", r.reading.c_str(), r.pass, r.fail);
        }
    }
}
