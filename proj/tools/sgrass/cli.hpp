#pragma once

#include <iosfwd>

namespace sgrass::cli {

/// Runs one command line. Exit status: 0 on success, 1 on a runtime failure,
/// 2 on a usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sgrass::cli
