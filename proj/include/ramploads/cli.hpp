#pragma once

#include <iosfwd>

namespace ramploads {

/// Entry point behind the `ramploads` executable. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ramploads
