// Runs the twelve acceptance criteria and prints one line per criterion.
// Exit status is the number of failing criteria (capped at 1 for ctest).

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eisen/verify.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"acceptance criteria"};
    eisen::verify::Options opt;
    std::vector<std::string> only;
    bool verbose = false;
    app.add_option("--seed", opt.seed, "RNG seed");
    app.add_option("--only", only, "run these suites only");
    app.add_flag("-v,--verbose", verbose, "print every check");
    CLI11_PARSE(app, argc, argv);

    int failed = 0;
    for (const auto& entry : eisen::verify::all_suites()) {
        if (!only.empty() && std::find(only.begin(), only.end(), entry.name) == only.end()) continue;
        const auto res = entry.run(opt);
        const bool ok = res.pass();
        failed += ok ? 0 : 1;
        // Headline: the first failing check, else the first check.
        const eisen::verify::Check* head = res.checks.empty() ? nullptr : &res.checks.front();
        for (const auto& c : res.checks) {
            if (!c.pass) {
                head = &c;
                break;
            }
        }
        std::printf("[%s] criterion %2d %-13s %-28s", ok ? "PASS" : "FAIL", res.criterion, res.name.c_str(),
                    res.title.c_str());
        if (!res.error.empty()) {
            std::printf(" error: %s", res.error.c_str());
        } else if (head) {
            std::printf(" %s = %.3g (tol %.3g)", head->invariant.c_str(), head->observed, head->tolerance);
        }
        std::printf(" [%.1fs / %.0fs]\n", res.seconds, res.time_limit);
        if (verbose || !ok) {
            for (const auto& c : res.checks) {
                std::printf("    %s %s = %.6g (tol %.3g) %s\n", c.pass ? "ok  " : "FAIL", c.invariant.c_str(),
                            c.observed, c.tolerance, c.instance.c_str());
            }
        }
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
