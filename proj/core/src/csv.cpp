#include "kerrcs/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace kerrcs {

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0
  std::array<char, 32> buf{};
  const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), result.ptr);
}

std::string format_number(const std::optional<double>& value) {
  return value ? format_number(*value) : std::string{};
}

}  // namespace kerrcs
