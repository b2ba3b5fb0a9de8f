#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "topspin/config.hpp"

namespace topspin {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 1,
  kExitNumericFailure = 2,
  kExitSelftestFailure = 3,
};

/// Shortest decimal string that reads back as the same double.
std::string format_double(double x);

/// CSV writers; every numeric field goes through format_double.
void write_diagram_csv(std::ostream& out, const std::vector<CriticalPoint>& rows);
void write_branch_csv(std::ostream& out, const std::vector<BranchSample>& rows);
void write_trajectory_csv(std::ostream& out, const ReducedTrajectory& traj);
void write_trajectory_csv(std::ostream& out, const ChartTrajectory& traj);

/// Plain-text summary of a bifurcation analysis (the contents of report.txt).
std::string format_report(const InvariantPotential& p, const BifurcationReport& report);

/// Runs one of classify, branch, sweep, simulate, probe, selftest and returns
/// the process exit code. Progress goes to `out`, errors to `err`. `cfg` is
/// ignored by selftest.
int run_subcommand(std::string_view name, const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace topspin
