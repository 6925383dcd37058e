#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eacl {

enum ExitCode : int { kExitOk = 0, kExitInput = 2, kExitModelDomain = 3 };

// Entry point behind the `eacl` executable. Subcommands: sim, sweep-voltage,
// fit-steady, fit-transient, fit-dc, gen-synthetic, hri, depolarize-demo.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eacl
