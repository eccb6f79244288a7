// The qf command line: check, analyze, form, enumerate, gen, quotient, iso.
//
// Exit codes: 0 success or every property holds, 1 a property fails,
// 2 usage or input error.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qf {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFails = 1;
inline constexpr int kExitInput = 2;

// args excludes the program name.
int run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace qf
