#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "inexact/serialize.hpp"

namespace inexact::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode { kOk = 0, kUsage = 2, kResourceLimit = 3, kNonConvergence = 4 };

/// args excludes the program name. Results go to `out` unless --out names a
/// file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Problem from the "problem", "n", "k", "L", "tribes" and "table" keys.
BooleanProblem problem_from_config(const json& config);

}  // namespace inexact::cli
