#pragma once

// Flat key-value scenario files:
//
//     # comment
//     [section]
//     key = value
//
// Values are scalars, bracketed lists `[a, b, c]`, `linspace(a, b, n)` or the
// inclusive `range(a, b[, step])`.

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kerrcs::app {

/// Malformed or out-of-range configuration. The message carries the source
/// and, where known, the line and field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RawValue {
  std::string text;
  int line = 0;
};

struct RawConfig {
  std::string source;
  /// Keyed by "section.key".
  std::map<std::string, RawValue> entries;
};

RawConfig parse_config(std::string_view text, std::string source);

/// Reads and parses a file; unreadable files are a ConfigError.
RawConfig load_config(const std::string& path);

/// Expands a scalar or list expression to its numeric values; `is_list`
/// reports whether list syntax was used. Throws ConfigError naming `where`.
std::vector<double> parse_numbers(std::string_view text, const std::string& where, bool& is_list);

/// Identifiers of a bracketed list (or a single bare identifier).
std::vector<std::string> parse_words(std::string_view text, const std::string& where);

}  // namespace kerrcs::app
