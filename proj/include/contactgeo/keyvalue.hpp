#pragma once

// Line format shared by catalog and config files:
//
//   # comment
//   key = <json value>
//
// Blank lines separate blocks. Values are parsed as JSON, so strings are
// quoted and lists use brackets.

#include <nlohmann/json.hpp>

#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace contactgeo {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what), line_(0) {}
  ConfigError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct KeyValue {
  std::string key;
  nlohmann::json value;
  std::size_t line = 0;
};

using KeyValueBlock = std::vector<KeyValue>;

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

inline std::vector<KeyValueBlock> parse_key_value_blocks(const std::string& text) {
  std::vector<KeyValueBlock> blocks(1);
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = detail::trim(raw);
    if (s.empty()) {
      if (!blocks.back().empty()) blocks.emplace_back();
      continue;
    }
    if (s.front() == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
    KeyValue kv;
    kv.key = detail::trim(s.substr(0, eq));
    kv.line = line;
    if (kv.key.empty()) throw ConfigError("empty key", line);
    try {
      kv.value = nlohmann::json::parse(detail::trim(s.substr(eq + 1)));
    } catch (const nlohmann::json::parse_error&) {
      throw ConfigError("value for '" + kv.key + "' is not valid JSON", line);
    }
    blocks.back().push_back(std::move(kv));
  }
  if (blocks.back().empty()) blocks.pop_back();
  return blocks;
}

}  // namespace contactgeo
