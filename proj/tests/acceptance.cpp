// Acceptance gate: one pass/fail line per criterion. Exits nonzero if any
// criterion fails or exceeds its pinned time limit.

#include <cstdio>

#include "feq/verification.hpp"

#ifndef FEQ_SPECS_DIR
#define FEQ_SPECS_DIR ""
#endif
#ifndef FEQ_CLI_PATH
#define FEQ_CLI_PATH ""
#endif

int main() {
    feq::verification::SuiteConfig cfg;
    cfg.seed = 0;
    cfg.specs_dir = FEQ_SPECS_DIR;
    cfg.cli_path = FEQ_CLI_PATH;

    bool all_ok = true;
    for (const auto& c : feq::verification::run_acceptance_suite(cfg)) {
        std::printf("[%s] criterion %2d: %s (%.2fs / limit %.0fs)%s%s\n",
                    c.passed ? "PASS" : "FAIL", c.id, c.summary.c_str(), c.seconds,
                    c.limit_seconds, c.detail.empty() ? "" : " — ", c.detail.c_str());
        all_ok = all_ok && c.passed;
    }
    return all_ok ? 0 : 1;
}
