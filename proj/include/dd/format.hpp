#pragma once

#include <string>

namespace dd {

// Locale-independent decimal formatting via std::to_chars.
// `significant` caps significant digits, general (printf %g-like) style.
std::string format_double(double value, int significant = 9);

// Fixed decimals, e.g. format_fixed(3.14159, 2) == "3.14".
std::string format_fixed(double value, int decimals);

}  // namespace dd
