#pragma once

namespace tailfit {

/// Entry point for the tailfit command-line tool. Returns the process
/// exit status: 0 on success, 1 on usage errors, 2 on library errors.
int run_cli(int argc, char** argv);

}  // namespace tailfit
