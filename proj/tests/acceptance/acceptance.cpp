// One line per acceptance criterion; the detail of every check follows its criterion line.
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "suites.hpp"

using namespace glab::tools;

int main() {
    std::map<int, std::vector<std::pair<std::string, Verdict>>> by_criterion;
    for (const auto& s : suite_names()) {
        ExperimentConfig cfg;
        cfg.suite = s;
        try {
            const SuiteResult r = run_suite(cfg);
            for (const auto& v : r.verdicts) by_criterion[v.criterion].emplace_back(s, v);
        } catch (const std::exception& e) {
            by_criterion[suite_criterion(s)].emplace_back(s, Verdict{suite_criterion(s), "suite error", false, e.what()});
        }
    }
    int failed = 0;
    for (int c = 1; c <= 9; ++c) {
        const auto& vs = by_criterion[c];
        bool ok = !vs.empty();
        for (const auto& [s, v] : vs) ok = ok && v.pass;
        std::printf("criterion %d: %s\n", c, ok ? "PASS" : "FAIL");
        for (const auto& [s, v] : vs)
            std::printf("    %s %s: %s -- %s\n", v.pass ? "ok  " : "FAIL", s.c_str(), v.name.c_str(), v.detail.c_str());
        failed += ok ? 0 : 1;
    }
    std::printf("%d of 9 criteria pass\n", 9 - failed);
    return failed == 0 ? 0 : 1;
}
