#pragma once

// Command-line front end. Exit codes: 0 success, 1 a checked statement does
// not hold, 2 usage or domain error, 3 resource or precision failure.

#include <ostream>
#include <string>
#include <vector>

namespace qprod::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

/// Labels accepted by `verify --theorem`, in the order `verify --all` runs them.
const std::vector<std::string>& verify_labels();

/// `args` excludes the program name. Reports go to `out` unless --output is
/// given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qprod::cli
