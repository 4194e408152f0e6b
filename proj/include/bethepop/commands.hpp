#pragma once

#include <string>

#include "bethepop/error.hpp"
#include "bethepop/json_io.hpp"

namespace bp {

struct CommandResult {
  json report;
  bool pass = false;
};

// populate, verify, solve, kernel-check, gaudin-check, dwg-check, fold-check.
// Input errors propagate as Error; other failures end up in the report.
CommandResult run_command(const std::string& subcommand, const json& request);

bool is_input_error(ErrorCode c);

const std::vector<std::string>& subcommands();

}  // namespace bp
