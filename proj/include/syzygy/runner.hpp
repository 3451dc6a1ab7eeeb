#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "syzygy/scenario.hpp"

namespace syzygy {

/// Exit-code contract of the command line tool.
enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_hypothesis_not_met = 2,
    exit_collision_stop = 3,
    exit_violation = 4,
};

struct RunResult {
    int exit_code = exit_ok;
    std::string summary;  // one human-readable line
};

/// Execute one command against a scenario, writing the command's files plus
/// the echoed canonical scenario and a digest manifest into out_dir.
/// Commands: simulate, events, verify-thm1, verify-thm2, verify-thm3, sweep,
/// oracle-minf. Workers only affect sweep scheduling, never its output bytes.
RunResult run_command(const std::string& command, const Scenario& scenario,
                      const std::filesystem::path& out_dir,
                      std::optional<std::uint64_t> seed_override = {}, int workers = 1);

}  // namespace syzygy
