#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sgi/config.hpp"
#include "sgi/core.hpp"

namespace sgi::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericalError = 3, kNoConvergence = 4 };

struct RunManifest {
    std::string preset = "table1";
    std::optional<std::filesystem::path> config;
    std::filesystem::path out = "out";
    std::string outputs = "all";   // fig2|fig3|fig4|fig5|fig6|all, comma separated
    std::size_t samples_per_stage = 400;
    bool trap_on = true;
    bool rotation_on = true;
    TrapSign trap_sign = TrapSign::AsWritten;
    bool swap_arms = false;
    bool seedless = false;         // no RNG is used anywhere
};

struct SweepSpec {
    std::optional<double> omega_min;
    std::optional<double> omega_max;
    std::optional<long long> points;
    std::optional<std::vector<double>> d_list;
    std::optional<std::vector<double>> n_list;
};

/// Resolves the preset or config file and applies the option flags.
RunConfig resolve_config(const RunManifest& manifest);

/// Each command throws sgi::Error; run_cli maps errors to exit codes.
void cmd_run(const RunManifest& manifest, std::ostream& log);
void cmd_sweep(const RunManifest& manifest, const SweepSpec& sweep, std::ostream& log);
void cmd_tune(const RunManifest& manifest, std::ostream& log);
void cmd_validate(const RunManifest& manifest, std::ostream& out);

int exit_code_for(const std::exception& e) noexcept;

/// Full command line front end.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sgi::cli
