// standalone acceptance runner: one pass/fail line per criterion, nonzero
// exit status if any criterion fails.  Pass --fast to skip the randomized
// oracle sweeps (the exact table checks always run).

#include <gfe/acceptance.hpp>

#include <cstdio>
#include <cstring>

int main(int argc, char** argv) {
    bool fast = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--fast") == 0) {
            fast = true;
        } else {
            std::fprintf(stderr, "usage: %s [--fast]\n", argv[0]);
            return 2;
        }
    }
    auto results = gfe::run_acceptance(fast);
    int failures = 0;
    for (const auto& r : results) {
        std::printf("[%s] %2d  %-38s (%.2fs)%s%s\n", r.passed ? "PASS" : "FAIL",
                    r.number, r.name.c_str(), r.seconds, r.detail.empty() ? "" : "  -- ",
                    r.detail.c_str());
        if (!r.passed) ++failures;
    }
    std::printf("%zu criteria, %d failed%s\n", results.size(), failures,
                fast ? " (fast mode)" : "");
    return failures == 0 ? 0 : 1;
}
