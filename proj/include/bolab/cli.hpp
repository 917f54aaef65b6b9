#pragma once

namespace bolab::cli {

inline constexpr const char* version = "0.1.0";

// Exit codes: 0 success, 2 invalid input or configuration, 3 a numerical
// check failed or the computation broke down, 1 anything unexpected.
int run(int argc, const char* const* argv);

}  // namespace bolab::cli
