#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "glab/estimators.hpp"

namespace glab::tools {

struct ExperimentConfig {
    std::string suite;
    std::size_t levels = 0;  // 0: suite default
    std::string host = "l2";
    std::uint64_t seed = 42;
    int trials = 0;  // 0: suite default
    std::size_t max_dim = std::size_t{1} << 18;
};

struct Verdict {
    int criterion = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteResult {
    EstimateReport rows;
    std::vector<Verdict> verdicts;
    nlohmann::json provenance;
    double seconds = 0.0;
    bool passed() const;
};

const std::vector<std::string>& suite_names();
// acceptance criterion served by a suite (lorentz and regularity share criterion 7)
int suite_criterion(const std::string& suite);

// throws std::invalid_argument on an unknown suite or invalid config
SuiteResult run_suite(const ExperimentConfig& cfg);

std::string report_csv(const EstimateReport& rows);
nlohmann::json verdict_json(const SuiteResult& r);
// writes <stem>.csv and <stem>.json
void emit_report(const SuiteResult& r, const std::string& stem);

}  // namespace glab::tools
