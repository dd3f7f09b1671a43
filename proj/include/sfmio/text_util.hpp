#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sfmio {

/// Formats a binary64 with 17 significant digits, enough to recover the
/// exact value when parsed back.
std::string format_g17(double value);

/// strtod over the whole token; nullopt when anything is left over.
std::optional<double> parse_double(std::string_view token);
std::optional<std::int64_t> parse_int(std::string_view token);

/// Splits on runs of blanks/tabs; never returns empty tokens.
std::vector<std::string_view> split_fields(std::string_view line);

std::string_view trim(std::string_view s);

/// Case-sensitive ordering that compares digit runs numerically, so
/// "img2" sorts before "img10".
bool natural_less(std::string_view a, std::string_view b);

/// Reads one line and strips a trailing '\r' (files written on Windows).
bool get_line(std::istream& in, std::string& line);

}  // namespace sfmio
