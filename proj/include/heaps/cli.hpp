#pragma once

#include <iosfwd>

namespace heaps::cli {

/// Entry point of the `heapsprof` tool. Returns 0 on success, 1 on a usage
/// error (help text on `err`) and 2 on a data or precondition error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace heaps::cli
