#pragma once

#include "bincs/sparse_matrix.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace bincs::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kInvalid = 3,
    kMalformedInput = 4,
};

/// Environment variable consulted for the default experiment seed.
inline constexpr const char* kSeedEnv = "BINCS_SEED";
inline constexpr std::uint64_t kDefaultSeed = 1;

/// `start:stop:step`, `start:stop`, or a single value; comma-separated lists
/// concatenate. Stop is included when the step lands on it.
/// Throws std::invalid_argument on bad syntax.
std::vector<Index> parse_k_range(std::string_view text);

/// Runs the command line (args excludes the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bincs::cli
