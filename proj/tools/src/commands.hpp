#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "run_config.hpp"

namespace arp::cli {

/// One run of plain MMAS (or the restart procedure with mode "rp") on the
/// configured problem. Prints key/value lines.
int cmd_solve(const RunConfig& config, std::ostream& out, std::ostream& log);

/// Estimates every configured mode's failure curve and writes curve.csv,
/// table.csv and trace.csv into the output directory. Prints the table.
int cmd_experiment(const RunConfig& config, std::ostream& out, std::ostream& log);

/// Reads a failure curve ("t,p" or "t,pHat" columns, t = 1, 2, ...) and
/// prints the optimal restart time and g there.
int cmd_tmin(const std::filesystem::path& curve_file, std::ostream& out);

/// Parses a TSPLIB file and prints "<metric> <dimension>".
int cmd_check(const std::filesystem::path& instance_file, std::ostream& out);

/// Parses a curve CSV as described for cmd_tmin.
FailureCurve read_curve_csv(std::istream& in);

}  // namespace arp::cli
