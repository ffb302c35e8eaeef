#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gaussweyl::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Exit codes: 0 success or report, 1 verification failure, 2 usage error,
/// 3 I/O error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "4/3", "1.3333", "-2.5e-1".
double parse_real(const std::string& text);

/// "re,im".
std::vector<double> parse_list(const std::string& text);

}  // namespace gaussweyl::cli
