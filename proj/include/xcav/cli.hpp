#pragma once

#include <optional>
#include <string>

namespace xcav {

struct CliOptions {
    std::string config_path;
    std::optional<std::string> out_dir;   // overrides [output] dir
    std::optional<std::size_t> grid_n;    // overrides [grid] n
    unsigned threads = 1;
    bool quiet = false;
};

int cmd_rocking(const CliOptions& opts);
int cmd_fieldmap(const CliOptions& opts);
int cmd_invert(const CliOptions& opts);
int cmd_chi(const CliOptions& opts);
int cmd_validate(const CliOptions& opts);

/// Dispatch + exception-to-exit-code mapping: 0 success, 1 config error,
/// 2 numerical/validity error, 3 I/O error.
int run_command(const std::string& command, const CliOptions& opts);

} // namespace xcav
