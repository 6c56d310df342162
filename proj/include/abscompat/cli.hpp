#pragma once

#include <iosfwd>

namespace abscompat {

/// Entry point of the `abscompat` tool. Exit codes: 0 true/pass, 1 false,
/// 2 usage, parse or numerical errors, 3 counterexample found (fuzz).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace abscompat
