#ifndef MOMSJUMP_CLI_HPP
#define MOMSJUMP_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "momsjump/config.hpp"
#include "momsjump/diagnostics.hpp"

namespace momsjump {

struct CommandOptions {
  std::string data_path;
  std::string response;  // empty: last column
  std::string out_dir = "momsjump_out";
  std::vector<std::string> chain_files;
  SamplerConfig config;
};

/// Each command writes its files under `out_dir` and reports to `log`.
/// Failures are thrown as momsjump::Error subclasses.
void cmd_enumerate(const CommandOptions& opts, std::ostream& log);
void cmd_sample(const CommandOptions& opts, std::ostream& log);
void cmd_diagnose(const CommandOptions& opts, std::ostream& log);
void cmd_bench(const CommandOptions& opts, std::ostream& log);

/// Per-indicator ESS/iter and ESS/second of two matched runs; "." marks an
/// undefined indicator.
std::string bench_table(const std::vector<std::string>& names, const ChainSummary& moms, const ChainSummary& rj);

/// Parses the command line, dispatches, and maps errors to exit codes
/// (0 success, 2 usage, 3 data, 4 numerical).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace momsjump

#endif  // MOMSJUMP_CLI_HPP
