#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace dpsim::text {

/// Shortest-safe round-trip form: 17 significant digits.
std::string format_double(double x);

/// Parses the whole of `s` as a double (surrounding whitespace allowed).
/// Returns false on any trailing garbage.
bool parse_double(std::string_view s, double& out);

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);

} // namespace dpsim::text
