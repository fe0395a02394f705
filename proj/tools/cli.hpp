#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cys::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kNumeric = 3,
    kRecognition = 4,
};

/// Runs the driver on argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cys::cli
