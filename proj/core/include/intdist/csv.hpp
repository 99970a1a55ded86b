#pragma once

#include <span>
#include <string>
#include <string_view>

namespace intdist {

/// printf "%.12g"; non-finite values print as nan, inf, -inf.
std::string format_number(double x);

/// Quotes a field (doubling inner quotes) when it contains a comma, quote,
/// CR or LF; returns it unchanged otherwise.
std::string csv_field(std::string_view text);

/// One CSV record terminated by "\n".
std::string csv_record(std::span<const std::string> fields);

}  // namespace intdist
