#pragma once

namespace lociso::cli {

// Parses arguments, runs one subcommand and returns the process status:
// 0 verdict produced, 1 error, 2 inconclusive.
int run(int argc, char** argv);

}  // namespace lociso::cli
