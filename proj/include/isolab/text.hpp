#pragma once

#include <string>
#include <string_view>

#include "isolab/ratfunc.hpp"

namespace isolab {

// Canonical text: terms in descending grlex order, e.g. "3*a1^2 - 2*a1*a2 + 1/8".
std::string to_string(const MultiPoly& p);
// "num" when the denominator is 1, otherwise "(num)/(den)".
std::string to_string(const RatFunc& f);

// Accepts + - * / ^ (integer exponents), parentheses, integers and identifiers.
RatFunc parse_ratfunc(std::string_view text);
MultiPoly parse_poly(std::string_view text);

}  // namespace isolab
