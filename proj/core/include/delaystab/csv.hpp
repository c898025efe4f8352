#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>

namespace delaystab::csv {

/// Shortest round-trip-safe text for a double ("%.17g"); inf/nan spelled out.
[[nodiscard]] std::string number(double v);

void header(std::ostream& out, std::initializer_list<std::string_view> columns);
void row(std::ostream& out, std::initializer_list<double> values);

}  // namespace delaystab::csv
