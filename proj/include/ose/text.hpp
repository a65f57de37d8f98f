#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ose {

/// Formats with 8 significant digits and guarantees a decimal marker, so
/// whole values print as "0.0" / "1.0" rather than bare integers.
std::string format_float8(double v);

/// The double nearest to v's 8-significant-digit decimal rendering; used
/// to keep JSON output at the same precision as text output.
double round8(double v);

/// Strict full-string double parse (no trailing junk); rejects NaN/Inf.
bool parse_double(std::string_view text, double& out);

/// Strict full-string parse of a non-negative integer.
bool parse_uint(std::string_view text, unsigned long long& out);

/// Splits on runs of ASCII whitespace; no empty fields.
std::vector<std::string> split_whitespace(std::string_view text);

/// Removes a trailing carriage return, for CRLF input read in text mode.
void strip_cr(std::string& line);

std::string ascii_lower(std::string_view text);

std::string trim(std::string_view text);

} // namespace ose
