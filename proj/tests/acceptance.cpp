// One PASS/FAIL line per acceptance criterion. Runtime budgets count as part of the verdict.
#include <cstdio>
#include <cstdlib>

#include "densitymod/selftest.hpp"

using namespace densitymod;

int main(int argc, char** argv) {
    SelftestOptions o;
    if (argc > 1) o.seed = unsigned(std::strtoul(argv[1], nullptr, 10));
    bool all = true;
    run_selftest(o, [&](const CriterionResult& c) {
        bool ok = c.pass && c.within_budget();
        all = all && ok;
        std::printf("%s criterion %d: %s -- %s", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), c.summary.c_str());
        std::printf(" [%.1f s", c.seconds);
        if (c.max_case_seconds > 0) std::printf(", slowest case %.1f s", c.max_case_seconds);
        if (c.budget_seconds > 0) std::printf(", budget %.0f s%s", c.budget_seconds, c.within_budget() ? "" : " EXCEEDED");
        std::printf("]\n");
        if (!c.pass) std::printf("%s\n", c.details.dump(2).c_str());
        std::fflush(stdout);
    });
    return all ? 0 : 1;
}
