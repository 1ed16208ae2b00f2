#pragma once

#include <iosfwd>

namespace dlct::cli {

// Exit codes: 0 success, 1 validation/usage error, 2 I/O error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int cli_main(int argc, const char* const* argv);

} // namespace dlct::cli
