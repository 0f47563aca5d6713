#pragma once
#include <iosfwd>
#include <string>

#include "dipgp/config.hpp"

namespace dipgp {

struct CmdOptions {
    std::string out_dir = ".";
    int threads = 1;
    bool allow_conditional = false;
};

// Subcommand drivers. Each writes its artifacts (CSV/JSON, optional binary
// snapshots) under out_dir, prints a human-readable report to `out`, and
// returns the process exit code: 0 success, 1 validation, 2 numerical
// accuracy, 3 divergence. Unexpected exceptions propagate to the CLI, which
// maps them to the same codes.
int cmd_kernel_check(const RunConfig& cfg, const CmdOptions& opts, std::ostream& out);
int cmd_gp_run(const RunConfig& cfg, const CmdOptions& opts, std::ostream& out);
int cmd_converge(const RunConfig& cfg, const CmdOptions& opts, std::ostream& out);
int cmd_fock(const RunConfig& cfg, const CmdOptions& opts, std::ostream& out);

/// Map an in-flight exception to the documented exit codes.
int exit_code_for(const std::exception& e);

} // namespace dipgp
