#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dpsim/phase_sequences.hpp"

namespace dpsim::cli {

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1, ///< `verify` found a failing criterion
    kInvalidArgs = 2,
    kNumerical = 3,
};

/// One phase (radians) per line; blank lines and `#` comments ignored.
/// Errors name `source` and the 1-based line number.
PhaseList parse_phase_text(std::string_view text, std::string_view source = "<input>");
PhaseList load_phase_file(const std::string& path);

/// Full command line without the program name. CSV goes to `out` unless
/// --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace dpsim::cli
