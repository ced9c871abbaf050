// Acceptance suite: runs every criterion of the built-in corpus and prints
// one pass/fail line per criterion. Exits nonzero when any criterion fails.

#include <cstdio>

#include "equihom/corpus.hpp"

int main() {
    bool all = true;
    for (const auto& r : equihom::run_acceptance_criteria()) {
        std::printf("criterion %d (%s): %s%s%s%s\n", r.id, r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.detail.empty() ? "" : " [",
                    r.detail.c_str(), r.detail.empty() ? "" : "]");
        all = all && r.pass;
    }
    std::printf("%s\n", all ? "all criteria passed" : "SOME CRITERIA FAILED");
    return all ? 0 : 1;
}
