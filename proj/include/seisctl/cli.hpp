#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace seisctl {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

/**
 * @brief Entry point of the `seisctl` tool.
 *
 * Subcommands: `run <cfg> [--out DIR]`, `validate <cfg>`,
 * `oracle <cfg> [--cells N]` and `compare <csvA> <csvB> [--cols a,b] [--rtol x] [--atol y]`.
 * Returns 0 on success, 1 for invalid input or a compare mismatch and 2 for
 * runtime failures.
 */
int cli_main(int argc, const char* const* argv);
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seisctl
