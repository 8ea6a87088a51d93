#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace masseykit::cli {

/// Runs one command (argv without the program name). Writes the report to
/// `out` and diagnostics to `err`. Returns 0 on success, 1 on mathematical
/// refusal (planner refusal, undefined product, failed embedding check),
/// 2 on malformed input. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace masseykit::cli
