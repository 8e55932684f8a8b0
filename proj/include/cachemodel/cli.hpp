#pragma once

#include <string>
#include <vector>

namespace cachemodel {

/// Command-line entry point; returns the process exit code. The vector
/// overload (arguments without the program name) exists so tests can drive
/// the CLI in-process.
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);

}  // namespace cachemodel
