// SPDX-License-Identifier: Apache-2.0
//
// Command implementations behind the nightsched executable. Every command
// writes line-tagged, space-separated text that gnuplot reads directly;
// comment lines start with '#'.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "nightsched/evolve.hpp"
#include "nightsched/instance_io.hpp"

namespace nightsched {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitInstance = 3,
    kExitRange = 4,
};

/// Shortest text that parses back to the same double; always '.' decimal.
std::string format_number(double value);

/// Parses a schedule listing. Each non-comment row is either
/// "start ticket loops" or "SCHED member start ticket loops"; start is Unix
/// seconds or a UTC timestamp. SCHED rows are filtered by member (default 0).
Schedule parse_schedule(const ProblemInstance& instance, std::string_view text, std::optional<int> member = {});

void cmd_schedule(const std::string& instance_path, const GAParams& params, std::ostream& out);

/// With runs set, rows carry the run index and run r uses seed + r.
void cmd_simple_ga(const std::string& instance_path, const GAParams& params, std::optional<int> runs, std::ostream& out);

void cmd_gen_scenario(const ScenarioOptions& options, std::ostream& out);

void cmd_evaluate(const std::string& instance_path, const std::string& schedule_path, std::optional<int> member,
                  std::ostream& out);

/// Parses arguments, dispatches, maps errors onto ExitCode.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nightsched
