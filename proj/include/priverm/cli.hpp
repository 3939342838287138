#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace priverm {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitInputError = 2,
    kExitBudget = 3,
    kExitIo = 4,
};

// args excludes the program name. Never throws; every failure maps to an
// exit code with a message on `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace priverm
