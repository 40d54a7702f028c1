#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace valconv::cli {

// Exit codes: 0 success, 1 property or identity violation, 2 invalid input.
enum ExitCode : int { kOk = 0, kViolation = 1, kInvalidInput = 2 };

// Runs the valconv command line on args (without the program name).
// color_default is used when VALCONV_COLOR is unset.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color_default = false);

// VALCONV_COLOR: 0/never/off/false disable, 1/always/on/true enable, anything else keeps the default.
bool color_enabled(bool color_default);

}  // namespace valconv::cli
