#pragma once

#include <string>
#include <vector>

namespace gdpm {

/// Runs the command-line frontend. Exit status: 0 on success, 1 on a usage
/// error, 2 when reading or processing the data fails.
int run_cli(const std::vector<std::string>& args);

int run_cli(int argc, char** argv);

}  // namespace gdpm
