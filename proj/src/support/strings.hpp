#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "support/source_span.hpp"

namespace acscan::strings {

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
bool starts_with(std::string_view s, std::string_view prefix);
bool ends_with(std::string_view s, std::string_view suffix);
std::string replace_all(std::string s, std::string_view from, std::string_view to);

// Forward slashes regardless of platform input.
std::string normalize_path(std::string_view path);

LineCol line_col_at(std::string_view source, std::size_t offset);

} // namespace acscan::strings
