#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toric::cli {

inline constexpr const char* kToolName = "toric-correlator";
inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kIdentityFailure = 1, kConfigError = 2 };

/// Parses args (without the program name) and runs one command. Reports go to out,
/// diagnostics and failure witnesses to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace toric::cli
