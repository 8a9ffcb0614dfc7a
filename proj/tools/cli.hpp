#pragma once

#include <iosfwd>

namespace ineq::cli {

/// Exit codes shared by every subcommand.
enum Exit : int {
    kOk = 0,
    kFailed = 1,       // verification failed, bound violated, invalid sweep records
    kUsage = 2,        // bad flags, bad parameters, unparseable input
    kNumeric = 3,      // evaluation failed (domain error, quadrature budget, non-finite sample)
    kNotConvex = 4,    // bound: convexity hypothesis rejected by the grid check
};

/// Parses argv and runs one subcommand. Machine-readable payload goes to
/// `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ineq::cli
