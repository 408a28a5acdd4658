#pragma once

#include <ostream>

namespace tatecup {

// Exit codes: 0 success, 1 check failure, 2 input error, 3 resource cap.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tatecup
