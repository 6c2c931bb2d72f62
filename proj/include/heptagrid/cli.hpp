#pragma once

#include <iosfwd>

namespace hepta {

/// Entry point of the `hepta` tool. Returns 0 on success, 2 when the
/// command line does not parse and 1 when the command fails.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace hepta
