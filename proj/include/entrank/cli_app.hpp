#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entrank {

// Command-line driver.  `in` backs stdin-style tensor input; reports go to
// `out`, diagnostics to `err`.  Returns the process exit code: 0 on success
// (including uncertified fallback results), 2 on malformed input, 3 on a
// violated precondition.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace entrank
