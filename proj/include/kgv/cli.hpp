#pragma once
#include <iosfwd>

namespace kgv {

// runs the kgv command line; report goes to out (or --out), diagnostics to err.
// returns 0 iff every verdict passes, 1 on failed verdicts, 2 on usage or input errors
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kgv
