#pragma once

#include <ostream>

namespace phinfer {

// Entry point of the phinfer tool. Exit codes: 0 success, 1 invalid
// instance (no source text, mismatch), 2 usage or format error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace phinfer
