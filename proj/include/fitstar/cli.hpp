#pragma once

namespace fitstar {

/// Entry point behind the command-line binary. Exit codes: 0 success,
/// 1 configuration or usage error, 2 the planner ran but found no solution.
int cli_main(int argc, const char* const* argv);

}  // namespace fitstar
