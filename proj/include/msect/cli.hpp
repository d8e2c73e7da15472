#pragma once

#include "msect/exact_core.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace msect::cli {

inline constexpr int kExitYes = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitUndecided = 2;  // indeterminate or unsupported
inline constexpr int kExitUsage = 64;

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Parses "x1,x2,...,xn" with optional surrounding parentheses or brackets.
/// Entries may be rationals "p/q"; denominators are cleared by their LCM.
IntVector parse_vector(std::string_view text);

/// One vector literal per line; blank lines and '#' comments are skipped.
std::vector<IntVector> parse_vector_list(std::string_view text);

/// Runs one command. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace msect::cli
