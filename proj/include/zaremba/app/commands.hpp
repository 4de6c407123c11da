#pragma once

#include <optional>
#include <string>

#include "config.hpp"

namespace zaremba::app {

struct CommandOptions {
    std::string out_dir = ".";
    int threads = 1;
    std::optional<double> guard_threshold;
    bool force_continuation = false;
};

// Each command writes its artifacts into opt.out_dir. Errors are reported by exception:
// config_error for bad input, numerical_error for numerical failure.
void cmd_solve(RunConfig cfg, const CommandOptions& opt);
void cmd_converge(RunConfig cfg, const CommandOptions& opt);
void cmd_eigs(RunConfig cfg, const CommandOptions& opt);
void cmd_grid(RunConfig cfg, const CommandOptions& opt);

}  // namespace zaremba::app
