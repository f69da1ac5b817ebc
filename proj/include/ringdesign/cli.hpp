#pragma once

#include <ostream>

namespace ringdesign {

/// Entry point of the command-line tool. Data goes to `out`, diagnostics and
/// JSON errors to `err`. Returns 0 on success, 2 on usage errors and 1 on
/// solver or simulation failures.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ringdesign
