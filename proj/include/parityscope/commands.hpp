#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "parityscope/scenario.hpp"

namespace pscope {

struct CommandOptions {
    std::optional<std::filesystem::path> out_dir; // files are written only when set
    int hamming = -1;                             // −1 for all four
    bool quiet = false;
};

struct CheckResult {
    std::string name;
    std::string status; // pass, fail, skip
    double value = 0.0;
    double threshold = 0.0;
    std::string note;
};

/// Oracle comparisons against the perturbative formulas.
std::vector<CheckResult> run_validation(const ValidationConfig& config, std::vector<std::string>* warnings = nullptr);

int cmd_dispersive(const ScenarioConfig& config, const CommandOptions& options, std::ostream& out);
int cmd_simulate(const ScenarioConfig& config, const CommandOptions& options, std::ostream& out);
int cmd_sweep(const ScenarioConfig& config, const CommandOptions& options, std::ostream& out);
int cmd_validate(const ScenarioConfig& config, const CommandOptions& options, std::ostream& out);
int cmd_scenario_list(std::ostream& out);

} // namespace pscope
