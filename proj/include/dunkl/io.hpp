// Number formatting and parsing shared by the CSV/JSON writers.
#ifndef DUNKL_IO_HPP
#define DUNKL_IO_HPP

#include <string>
#include <string_view>

namespace dunkl {

/// Shortest round-trip decimal when precision is 17, otherwise the value
/// rounded to `precision` significant digits.
std::string format_number(double v, int precision = 17);

/// Strict parse of a complete decimal string; throws std::invalid_argument.
double parse_number(std::string_view s);

}  // namespace dunkl

#endif
