#pragma once

namespace relief {

// Parses argv and dispatches to one of the subcommands: profile, score,
// generate, benchmark. Exit codes: 0 success, 2 usage error, 3 data error,
// 4 internal error.
int run_cli(int argc, const char* const* argv);

}  // namespace relief
