#pragma once

#include <iosfwd>

namespace pulseloss::cli {

/// Exit codes: 0 ok, 1 validation failure, 2 config error, 3 unsupported.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pulseloss::cli
