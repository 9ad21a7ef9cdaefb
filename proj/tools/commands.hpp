#pragma once

namespace deft::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kDataError = 1,
  kConfigError = 2,
  kNetworkError = 3,
};

int run(int argc, char** argv);

}  // namespace deft::cli
