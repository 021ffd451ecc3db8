#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hamoeba {

inline constexpr const char* kVersion = "0.1.0";

/// Command-line entry point. args excludes the program name.
/// Exit codes: 0 success, 1 usage / validation / infeasible, 2 numerical.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Prepends `key = value` lines from `path` as --key value arguments unless
/// the key already appears in args ('#' starts a comment; `flag = true`
/// becomes a bare --flag, `flag = false` is dropped).
std::vector<std::string> merge_config_file(const std::vector<std::string>& args, const std::string& path);

}  // namespace hamoeba
