#pragma once

namespace elastica {

inline constexpr const char* kToolVersion = "1.0.0";

// Parses argv and dispatches to one of the subcommands (hierarchy, psdo,
// flow, curve, spectrum, verify).  Every run prints a JSON manifest echoing
// the full resolved configuration and the tool version; --out also writes
// the manifest and the subcommand's data files into that directory.
// Returns 0 on success, 1 on computation errors (including failed verify
// suites), 2 on configuration errors.
int run_cli(int argc, const char* const* argv);

}  // namespace elastica
