#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace maghom::cli {

// Exit codes. Verdict-style commands map Diagonal/NonDiagonal/DiagonalUpTo to 0/1/2.
inline constexpr int kOk = 0;
inline constexpr int kFail = 1;
inline constexpr int kInconclusive = 2;
inline constexpr int kUsage = 64;
inline constexpr int kDataError = 65;
inline constexpr int kNoInput = 66;
inline constexpr int kInternal = 70;
inline constexpr int kCantCreate = 73;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace maghom::cli
