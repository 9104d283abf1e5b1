#pragma once

// Small text helpers shared by the readers and writers.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bessu::text {

std::string_view trim(std::string_view s);

/// Splits one CSV record, honouring double-quoted fields ("" escapes a quote).
std::vector<std::string> split_record(std::string_view line, char delimiter = ',');

std::optional<double> parse_double(std::string_view s);

/// Shortest representation that parses back to the same double.
std::string format_double(double value);

std::string to_lower(std::string_view s);

}  // namespace bessu::text
