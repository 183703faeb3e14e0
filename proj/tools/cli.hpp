#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lpot::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kUsageError = 2,
  kQuadratureFailure = 3,
};

/// Runs the lpot command line. Output goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace lpot::cli
