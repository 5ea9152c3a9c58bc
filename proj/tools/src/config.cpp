#include "kerrcs/app/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace kerrcs::app {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
  return true;
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(trim(s.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double to_number(std::string_view s, const std::string& where) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end || !std::isfinite(v))
    throw ConfigError(where + ": '" + std::string(s) + "' is not a finite number");
  return v;
}

// "name(args)" -> args, or nullopt-like empty view with ok = false.
bool call_arguments(std::string_view s, std::string_view name, std::string_view& args) {
  if (s.substr(0, name.size()) != name) return false;
  auto rest = trim(s.substr(name.size()));
  if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')') return false;
  args = rest.substr(1, rest.size() - 2);
  return true;
}

}  // namespace

RawConfig parse_config(std::string_view text, std::string source) {
  RawConfig cfg{std::move(source), {}};
  std::string section;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    auto view = std::string_view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const std::string where = cfg.source + ":" + std::to_string(line_no);
    if (view.front() == '[') {
      if (view.back() != ']' || !is_identifier(trim(view.substr(1, view.size() - 2))))
        throw ConfigError(where + ": malformed section header");
      section = std::string(trim(view.substr(1, view.size() - 2)));
      continue;
    }
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected 'key = value'");
    const auto key = trim(view.substr(0, eq));
    const auto value = trim(view.substr(eq + 1));
    if (!is_identifier(key)) throw ConfigError(where + ": malformed key");
    if (section.empty()) throw ConfigError(where + ": field '" + std::string(key) + "' outside any section");
    if (value.empty()) throw ConfigError(where + ": field '" + std::string(key) + "' has no value");
    const std::string full = section + "." + std::string(key);
    if (cfg.entries.contains(full))
      throw ConfigError(where + ": field '" + full + "' given twice (first on line " +
                        std::to_string(cfg.entries[full].line) + ")");
    cfg.entries[full] = {std::string(value), line_no};
  }
  return cfg;
}

RawConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot read config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

std::vector<double> parse_numbers(std::string_view text, const std::string& where, bool& is_list) {
  text = trim(text);
  std::string_view args;
  is_list = true;
  if (text.front() == '[') {
    if (text.back() != ']') throw ConfigError(where + ": unterminated list");
    const auto inner = trim(text.substr(1, text.size() - 2));
    if (inner.empty()) throw ConfigError(where + ": empty list");
    std::vector<double> out;
    for (auto item : split_commas(inner)) out.push_back(to_number(item, where));
    return out;
  }
  if (call_arguments(text, "linspace", args)) {
    const auto parts = split_commas(args);
    if (parts.size() != 3) throw ConfigError(where + ": linspace takes (start, stop, count)");
    const double a = to_number(parts[0], where);
    const double b = to_number(parts[1], where);
    const double n = to_number(parts[2], where);
    if (n < 1 || n != std::floor(n) || n > 1e6) throw ConfigError(where + ": linspace count must be an integer in [1, 1e6]");
    const auto count = static_cast<int>(n);
    if (count == 1) return {a};
    std::vector<double> out;
    for (int i = 0; i < count; ++i) out.push_back(i == count - 1 ? b : a + (b - a) * i / (count - 1));
    return out;
  }
  if (call_arguments(text, "range", args)) {
    const auto parts = split_commas(args);
    if (parts.size() != 2 && parts.size() != 3) throw ConfigError(where + ": range takes (start, stop[, step])");
    const double a = to_number(parts[0], where);
    const double b = to_number(parts[1], where);
    const double step = parts.size() == 3 ? to_number(parts[2], where) : 1.0;
    if (!(step > 0.0)) throw ConfigError(where + ": range step must be positive");
    if (b < a) throw ConfigError(where + ": empty range");
    const double count = std::floor((b - a) / step + 1e-9) + 1.0;
    if (count > 1e6) throw ConfigError(where + ": range has more than 1e6 values");
    std::vector<double> out;
    for (int i = 0; i < static_cast<int>(count); ++i) out.push_back(a + i * step);
    return out;
  }
  is_list = false;
  return {to_number(text, where)};
}

std::vector<std::string> parse_words(std::string_view text, const std::string& where) {
  text = trim(text);
  std::vector<std::string> out;
  if (text.front() == '[') {
    if (text.back() != ']') throw ConfigError(where + ": unterminated list");
    const auto inner = trim(text.substr(1, text.size() - 2));
    if (inner.empty()) throw ConfigError(where + ": empty list");
    for (auto item : split_commas(inner)) {
      if (!is_identifier(item)) throw ConfigError(where + ": '" + std::string(item) + "' is not a name");
      out.emplace_back(item);
    }
    return out;
  }
  if (!is_identifier(text)) throw ConfigError(where + ": '" + std::string(text) + "' is not a name");
  out.emplace_back(text);
  return out;
}

}  // namespace kerrcs::app
