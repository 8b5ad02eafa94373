#pragma once

#include "ghost/workspace.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ghost {

enum ExitCode : int { kOk = 0, kRejected = 1, kInputError = 2 };

struct CliOptions {
    std::optional<std::string> out;  // certificate output path
    std::vector<std::string> family; // module names for decompose-e
};

// args[0] is the subcommand. `ws` may be null for commands that need no
// workspace (verify, dim-bound).
int run_command(const Workspace* ws, const std::vector<std::string>& args, const CliOptions& opt, std::ostream& out,
                std::ostream& err);

}  // namespace ghost
