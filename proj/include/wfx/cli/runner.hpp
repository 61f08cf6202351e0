#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "wfx/cli/config.hpp"
#include "wfx/cli/csv.hpp"

namespace wfx::cli {

enum ExitCode { exit_ok = 0, exit_tolerance = 1, exit_parse = 2, exit_leakage = 3 };

struct ScenarioSummary {
    std::string scenario;
    std::size_t points = 0;
    double error_ratio = 0.0;  // worst error divided by its tolerance; <= 1 passes
    bool pass = true;
    std::string line() const;
};

struct RunResult {
    std::vector<ResultRecord> records;
    ScenarioSummary summary;
};

// pure: no file I/O; throws TruncationError on leakage, std::invalid_argument on unrunnable input
RunResult execute(const RunConfig& c);

// run <config>: writes the CSV only when the run completes
int run(const std::string& config_path, std::ostream& out, std::ostream& err);

int selftest(std::ostream& out);

}  // namespace wfx::cli
