#pragma once

#include <ostream>

namespace pseudocyl::cli {

/// Process exit codes. Every error path maps to exactly one of these.
enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,       // unexpected failure (bug)
  kConfigError = 2,         // bad flags or parameters outside their domain
  kBelowThreshold = 3,      // requested period T <= T1, no orbit exists
  kIoError = 4,             // unreadable input or unwritable output
  kNumericalError = 5,      // a solver missed its tolerance
  kDegenerateOrbit = 6,     // energy at or outside the closed-orbit window
  kVerificationFailed = 7,  // verify ran but some criterion failed
};

/// Entry point behind the pseudocyl executable. Output directory defaults to
/// $PSEUDOCYL_OUT_DIR, else the working directory.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pseudocyl::cli
