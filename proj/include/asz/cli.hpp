#pragma once

#include <string>
#include <vector>

namespace asz::cli {

// exit codes
inline constexpr int kOk = 0;
inline constexpr int kInvalid = 1;
inline constexpr int kMismatch = 2;

int dispatch(int argc, char** argv);
// args excludes the program name
int dispatch(const std::vector<std::string>& args);

// "3", "1-7", "1,2,5-6"
std::vector<int> parse_int_list(const std::string& s);

}  // namespace asz::cli
