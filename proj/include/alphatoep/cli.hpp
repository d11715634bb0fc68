#pragma once

#include <iosfwd>

namespace alphatoep {

/// Entry point shared by the binary and the tests; returns the process exit
/// code and never throws (invalid input yields a one-line diagnostic on err
/// and a nonzero code).
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace alphatoep
