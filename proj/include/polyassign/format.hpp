#pragma once

#include <string>
#include <string_view>

namespace polyassign {

// Shortest decimal text that parses back to exactly `value`; "inf", "-inf" and
// "nan" for non-finite values.
std::string format_number(double value);

// Inverse of format_number. Throws kParse on trailing garbage.
double parse_number(std::string_view text);

}  // namespace polyassign
