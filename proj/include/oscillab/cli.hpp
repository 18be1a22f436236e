#pragma once

#include <iosfwd>

namespace oscillab::cli {

// Exit codes: 0 pass, 1 failed check, 2 usage or parse error,
// 3 domain error, 4 degenerate corpus.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace oscillab::cli
