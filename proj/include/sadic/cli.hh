/* cli.hh -- command-line entry point, callable in-process for tests
 */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sadic {

/// Runs one CLI invocation. Exit code 0 for success/accepted verdicts, 1 for
/// rejected or failed verdicts, 2 for parse and guard errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The cross-pipeline equivalence suite behind `selfcheck`; returns the
/// number of discrepancies (0 on a healthy build).
std::size_t run_selfcheck(std::size_t cases, std::uint64_t seed, std::ostream& out);

} // namespace sadic
