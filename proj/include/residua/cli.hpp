#pragma once

#include <iosfwd>

namespace residua::cli {

/// Exit codes: 0 success, 1 law failure or mismatch, 2 usage or input error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace residua::cli
