// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>

namespace leosim {

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitRuntime = 2 };

/// Entry point of the leosim tool; writes progress to `out` and
/// diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace leosim
