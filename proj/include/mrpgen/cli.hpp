#pragma once
#include <ostream>
#include <string>
#include <vector>

namespace mrpgen::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomainFailure = 1;
inline constexpr int kUsageError = 2;

// Report schema version; bump when a field name changes.
inline constexpr int kReportSchema = 1;

// `args` excludes the program name. Reports go to `out`, diagnostics (one
// "error[<code>]: ..." line per failure) to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace mrpgen::cli
