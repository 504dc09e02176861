#pragma once

#include <nlohmann/json.hpp>

#include "copson_cli/problem_spec.hpp"

namespace copson::cli {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitNegative = 2;  // not admissible, embedding fails, a check failed

struct CommandResult {
    int exit_code = kExitOk;
    nlohmann::json report;
};

struct CommandOptions {
    bool oracle = false;
};

CommandResult cmd_admissible(const ProblemSpec& spec);
CommandResult cmd_phi(const ProblemSpec& spec);
CommandResult cmd_discretize(const ProblemSpec& spec);
CommandResult cmd_embed(const ProblemSpec& spec, const CommandOptions& opts = {});
CommandResult cmd_assoc(const ProblemSpec& spec);
CommandResult cmd_verify(const ProblemSpec& spec);

// Runs a command by name, mapping library errors to exit codes and a JSON
// error report.
CommandResult run_command(const std::string& name, const ProblemSpec& spec,
                          const CommandOptions& opts = {});

}  // namespace copson::cli
