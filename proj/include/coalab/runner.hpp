#pragma once

#include "coalab/config.hpp"

#include <string>
#include <vector>

namespace coalab {

enum ExitCode : int { exit_pass = 0, exit_tolerance_failure = 1, exit_invalid_config = 2 };

struct RunOutcome {
    int exit_code = exit_pass;
    std::vector<std::string> files;  // written reports, JSON first
    std::string summary;             // one line for the terminal
};

/// Runs `config.command`, writing `<out>/<command>.json` and any CSV tables.
/// The report's "data" member depends only on (command, config); wall-clock
/// time appears only under "metadata".
RunOutcome run(const ExperimentConfig& config);

}  // namespace coalab
