#pragma once

#include <iosfwd>

namespace crossint::cli {

enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailed = 1,
    kInvalidConfig = 2,
    kBudgetExhausted = 3,
};

// Runs one `crossint` invocation. Reports go to `out` (or the --out file),
// warnings and errors to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace crossint::cli
