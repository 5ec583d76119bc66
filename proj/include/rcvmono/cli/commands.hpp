#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rcvmono::cli {

/// Process exit codes; a total function of the outcome class.
enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kTie = 2,
  kVerificationMismatch = 3,
  kWitnessUnavailable = 4,
};

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace rcvmono::cli
