#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace loosetile {

// Full CLI entry point, library-callable for tests. args excludes argv[0].
// Exit codes: 0 success, 1 no/none answers, 2 usage error, 3 budget exhausted.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace loosetile
