#pragma once
// Command-line frontend.  One verb per invocation:
//   epc                EP-condition verdict for (group, Lambda)
//   classify           exhaustive sweep over small groups and all Lambda, CSV
//   gen-obstruction    build a ribboned-wall instance (figure or searched)
//   verify-obstruction re-check the condition flags of an instance file
//   solve              packing / half-packing / cover on a graph file
//   encode             constraint rewrites between graph files
//   export-dot         DOT rendering of a graph or instance file
//   pipeline           EPC -> parameters -> instance -> duality table
// Reports are plain text or JSON (--format); identical flags give identical
// bytes.

#include <ostream>
#include <string>
#include <vector>

namespace eposa {

// Runs one invocation (args exclude the program name), writing the report to
// `out` and diagnostics to `err`.  Returns the process exit code: 0 success,
// 1 usage/validation error, 2 explosion or budget overrun.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// main() adapter over cli_run with the standard streams.
int cli_main(int argc, char** argv);

}  // namespace eposa
