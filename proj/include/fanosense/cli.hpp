#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fanosense::cli {

enum ExitCode : int { ok = 0, config_error = 1, numerical_failure = 2, validation_failure = 3 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace fanosense::cli
