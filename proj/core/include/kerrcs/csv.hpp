#pragma once

#include <optional>
#include <string>

namespace kerrcs {

// Shortest round-trip representation; identical input gives identical bytes.
std::string format_number(double value);

// Undefined values render as an empty field.
std::string format_number(const std::optional<double>& value);

}  // namespace kerrcs
