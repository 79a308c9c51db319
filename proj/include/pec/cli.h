// Copyright 2026 The pec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PEC_CLI_H_
#define PEC_CLI_H_

#include <ostream>

namespace pec {

// Process exit codes of the `pec` tool.
enum ExitCode : int {
  kExitOk = 0,
  // Unreadable or malformed input, bad flags.
  kExitInputError = 1,
  // An internal invariant failed, or selftest found a mismatch.
  kExitInternal = 2,
  // shadowed/loops/verify found a violation (see --invert).
  kExitFindings = 3,
};

// Runs one `pec` command line. Regular output goes to `out`, diagnostics to
// `err`. The PEC_LOG environment variable sets the log level (trace, debug,
// info, warn, error, off; default warn).
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace pec

#endif  // PEC_CLI_H_
