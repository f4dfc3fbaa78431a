#pragma once

#include "nlsfem/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace nlsfem {

/// Exit statuses of the command-line driver.
enum ExitStatus : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitInvalidConfig = 2,
    kExitDiverged = 3,
};

/// Executes a validated configuration and writes its outputs under config.out:
///   all modes       boundary.csv, report.json
///   mms_sweep       rates.csv, error_series.csv
///   temporal_check  rates.csv, error_series.csv
///   simulate        snap_t*.csv, norm_series.csv, error_series.csv (manufactured source)
/// On divergence, outputs written so far are kept, error.json is added and
/// kExitDiverged is returned.
int run(const RunConfig& config, std::ostream& log);

/// parse_config + run. Validation failures print a JSON error document to
/// `err`, write no files and return kExitInvalidConfig.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace nlsfem
