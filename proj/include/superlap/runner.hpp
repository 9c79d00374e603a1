#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "superlap/config.hpp"

namespace superlap {

enum class Command { solve, eigs, heat, extend, perimeter, verify };

Command parse_command(const std::string& name);
std::string to_string(Command command);

/// Process exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitConfig = 2,
  kExitCompatibility = 3,
  kExitNumerical = 4,
};

/// Runs one command and writes its artifacts below `out_dir`. Library errors
/// propagate; `run_cli` maps them to exit codes.
int run(const RunConfig& config, Command command, std::uint64_t seed,
        const std::filesystem::path& out_dir, std::ostream& log);

/// Reads the config file, runs the command and converts exceptions into exit
/// codes with a message on `err`. An empty `out_override` uses output.dir.
int run_cli(const std::string& command, const std::filesystem::path& config_path,
            std::uint64_t seed, const std::string& out_override, std::ostream& log,
            std::ostream& err);

}  // namespace superlap
