#pragma once

#include <optional>
#include <string>

#include "hopfcorr/io.hpp"
#include "hopfcorr/presets.hpp"

namespace hopfcorr {

/// One CLI invocation. Paths are empty when absent.
struct RunConfig {
    std::string command;
    std::string presentation;      // preset name (with ?params) or file path
    std::string cocycle_path;
    std::string functional_path;
    std::string coreps_path;
    int cutoff = 3;
    int max_deg = 3;
    double eps_num = 1e-9;
    double eps_psd = 1e-8;
    std::string backend;           // "", "exact", "float"
    int horizon = 4;
    std::string properness_level = "1"; // M
    std::string alpha;             // "", "id", "tau:<t>"
    std::string t = "0";
    std::string s = "1";
    int radius = 3;
    std::string out;               // artifact output path
    std::string report_out;        // optional report path
};

/// Dispatches one command, returns the report. Constructed artifacts are
/// written to cfg.out. Throws on unusable inputs (ParseError,
/// ValidationFailed, ...).
Report run_command(const RunConfig& cfg);

/// pass -> 0, fail -> 1, indeterminate -> 2.
int exit_code(const Report& r);

} // namespace hopfcorr
