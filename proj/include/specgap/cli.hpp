#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace specgap::cli {

enum class Command { bound, eig1d, verifyThm1, rearrangeCheck, constants, domainSweep, vdberg, gjCompare };

std::string to_string(Command c);
Command command_from_string(const std::string& name);

struct RunConfig {
  Command command = Command::bound;
  std::string input;                            // JSON file, empty when the command has a default
  std::string output = "specgap_out";           // writes <output>.json and <output>.csv
  std::map<std::string, std::string> overrides;  // --set key=value
  unsigned workers = 0;                         // 0: SPECGAP_WORKERS or hardware concurrency
  std::uint64_t seed = 1;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

/// Executes one command; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and calls run().
int main_entry(int argc, char** argv);

}  // namespace specgap::cli
